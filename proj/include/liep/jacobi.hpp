#pragma once

#include <array>
#include <vector>

#include "liep/hom.hpp"

namespace liep {

/// J_gamma(u,v,w) = gamma(gamma(u^v)^w) + gamma(gamma(v^w)^u) + gamma(gamma(w^u)^v).
KElem jacobi_value(const HomGamma& g, const KElem& u, const KElem& v, const KElem& w);

/// Mod-p Jacobi invariants J(j,k,l) = a(j,k)a(j+k+rho,l) + a(k,l)a(k+l+rho,j)
/// + a(l,j)a(l+j+rho,k), computed from the leading-coefficient table alone.
class JTable {
public:
    explicit JTable(const HomGamma& g);

    int at(long j, long k, long l) const;
    long window_base() const { return base_; }
    int size() const { return d_; }

    /// A first-index lookup j+k+rho fell outside the window and was folded
    /// back by periodicity.
    bool used_extension() const { return used_extension_; }

private:
    int d_;
    long base_;
    std::vector<int> cube_;
    bool used_extension_;
};

JTable j_table(const HomGamma& g);

/// Certified value of lambda(gamma): J(gamma) = p^lambda, with the witness
/// triple, the offset, the coefficient valuation and the proven bounds.
struct LambdaReport {
    u64 p = 0;
    long i = 0;
    long rho = 0;
    long v = 0;
    long lambda = 0;
    std::array<long, 3> witness{};
    long y_main = 0;     // lambda - (3i + 13 - 2p)
    long lower_bound = 0; // 3i + 3 + 2v
    long upper_bound = 0; // 3i + 3d - 6 + 2rho
};

/// Scan over the basis triples kappa^j, kappa^k, kappa^l, i <= j < k < l < i+d
/// (they generate all Jacobi values by alternating trilinearity). Triples with
/// a nonzero mod-p invariant contribute j+k+l+2rho directly; the rest are
/// evaluated in full. Parallelized over triples; the result is independent of
/// the thread count.
LambdaReport lambda_report(const HomGamma& g);

/// Reference scan: every triple evaluated with full arithmetic, serially.
LambdaReport lambda_report_serial(const HomGamma& g);

/// y = lambda - (3i+3) for gamma = c theta_a with c a unit; certified to lie
/// in {0,1,2}, and to vanish for p = 5.
long y_one_param(const HomGamma& g);

} // namespace liep
