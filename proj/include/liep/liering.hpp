#pragma once

#include <array>
#include <vector>

#include "liep/hom.hpp"
#include "liep/howell.hpp"

namespace liep {

/// Element of L_{i,m}(gamma) in the canonical generator basis: exponent x_j
/// of the class of kappa^{i+j}, reduced mod its additive order p^{o_j}.
struct LElem {
    std::vector<u64> x;
    bool operator==(const LElem& o) const { return x == o.x; }
};

/// Finite presentation of L_{i,m}(gamma) = p^i / p^m with the bracket
/// [x, y] = gamma(x ^ y) mod p^m, materialized as structure constants over
/// the generators g_j = kappa^{i+j} + p^m.
class LieRing {
public:
    LieRing(const HomGamma& g, long m);

    u64 p() const { return ctx_->p(); }
    long i() const { return i_; }
    long m() const { return m_; }
    int rank() const { return d_; }

    /// Additive-order exponents: g_j has order p^{orders()[j]}.
    const std::vector<int>& orders() const { return orders_; }

    /// log_p |L| = m - i.
    long order_exponent() const { return m_ - i_; }

    LElem zero() const;
    LElem generator(int j) const;
    LElem add(const LElem& a, const LElem& b) const;
    LElem neg(const LElem& a) const;
    LElem smul(u64 c, const LElem& a) const;
    LElem bracket(const LElem& a, const LElem& b) const;
    bool is_zero(const LElem& a) const;

    /// Structure constants of [g_j, g_k], j < k.
    const std::vector<u64>& bracket_coeffs(int j, int k) const;

    struct JacobiResult {
        bool ok;
        std::array<int, 3> witness; // violating generator triple when !ok
    };
    /// Checks the Jacobi identity on every generator triple; passes exactly
    /// when m <= lambda(gamma) (for levels where the quotient bracket is
    /// well-defined, i.e. i + rho >= 0).
    JacobiResult check_jacobi() const;

    struct Series {
        std::vector<long> order_exponents; // |L_n| = p^{e_n}, n = 1, 2, ...
        int nilpotency_class;
    };
    /// Lower central series via Howell spans; callers should have seen
    /// check_jacobi() pass, otherwise the series need not make sense.
    Series lower_central_series() const;

    /// Multiplication by theta = 1 + kappa as an additive map on L.
    LElem theta_apply(const LElem& a) const;

private:
    std::vector<u64> embed(const LElem& a) const;   // into (Z/p^E)^d
    LElem unembed(const std::vector<u64>& v) const;
    LElem decompose(const KElem& w) const;          // class of w mod p^m

    const PrimeCtx* ctx_;
    long i_;
    long m_;
    int d_;
    int e_max_;
    u64 q_; // p^{e_max}
    std::vector<int> orders_;
    std::vector<u64> order_pows_;                   // p^{o_j}
    std::vector<std::vector<u64>> brackets_;        // j<k upper triangle
};

} // namespace liep
