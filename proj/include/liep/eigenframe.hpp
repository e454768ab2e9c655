#pragma once

#include <vector>

#include "liep/hom.hpp"

namespace liep {

/// Discrete logarithms of the Galois embedding: sigma_a = sigma^{k_a},
/// sigma_{1-a} = sigma^{l_a}, with r^{k_a} = a and r^{l_a} = 1-a mod p.
class WeightCtx {
public:
    explicit WeightCtx(const PrimeCtx& ctx);

    const PrimeCtx& ctx() const { return *ctx_; }
    long k(long a) const;
    long l(long a) const;

    /// m_a(u,v) = omega^{u k_a + v l_a} mod p^N.
    u64 m_weight(long a, long u, long v) const;

    /// t_a(x,y) = m_a(x,y) - m_a(y,x) mod p^N.
    u64 t_weight(long a, long x, long y) const;

private:
    void check(long a) const;
    const PrimeCtx* ctx_;
    std::vector<long> dlog_; // dlog_[x] = discrete log of x base r, x in 1..p-1
};

/// Gamma_gamma(x,y,z): the scalar carrying the whole Jacobi sum on
/// eigenvectors, J_gamma(e_x,e_y,e_z) = Gamma_gamma(x,y,z) e_x e_y e_z.
KElem gamma_capital(const WeightCtx& w, const HomGamma& g, long x, long y, long z);

/// Mod-p values of the one-parameter polynomials f, g at (x,y,z) relative to
/// level i, plus the combined criterion value
/// E = a^{3i}(1-a)^{2i} f + a^{2i}(1-a)^{3i} g.
struct FGValue {
    int f;
    int g;
    int e;
};
FGValue f_g(u64 p, long a, long i, long x, long y, long z);

/// Closed forms F1 = a(1-a)^2(2a-1)(a^2+a-1), G1 = a^2(1-a)(2a-1)(a^2-3a+1)
/// together with F2 = f(i,i+1,i+4), G2 = g(i,i+1,i+4) and the factorization
/// residual F2 G1 - F1 G2 - a^4(1-a)^4(2a-1)^3(a^2+a-1)(a^2-3a+1).
struct FGConstants {
    int f1;
    int g1;
    int f2;
    int g2;
    int factorization_residual; // zero when the identity holds
};
FGConstants fg_constants(u64 p, long a);

/// Dual-path check at (x,y,z): the direct Jacobi sum on eigenvectors against
/// the Gamma route, and (for one-parameter gamma) the mod-p membership
/// criterion of E against the measured valuation.
struct CrosscheckResult {
    bool gamma_path_ok;      // J_gamma(e_x,e_y,e_z) == Gamma * e_x e_y e_z
    bool membership_ok;      // one-parameter only; true otherwise
    long direct_val;         // val of the direct Jacobi value (kValInfinity if 0)
    long discrepancy_val;    // val of the difference between the two paths
    bool ok() const { return gamma_path_ok && membership_ok; }
};
CrosscheckResult crosscheck(const WeightCtx& w, const HomGamma& g, long x, long y, long z);

} // namespace liep
