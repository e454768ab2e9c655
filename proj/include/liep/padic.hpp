#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "liep/errors.hpp"

namespace liep {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

/// Sentinel valuation of an element that vanishes to working precision.
inline constexpr long kValInfinity = std::numeric_limits<long>::max() / 4;

/// Immutable arithmetic context for K = Q_p(theta), theta a primitive p-th
/// root of unity. Elements are polynomials in the uniformizer kappa =
/// theta - 1 with coefficients carried mod p^N; the minimal polynomial of
/// kappa is ((1+x)^p - 1)/x, whose constant term is p and leading term 1.
///
/// Everything here is computed once at construction and never mutated, so a
/// context can be shared freely between threads.
class PrimeCtx {
public:
    PrimeCtx(u64 p, int precision);

    u64 p() const { return p_; }
    int d() const { return d_; }              // p - 1, the Z_p-rank of O
    int precision() const { return n_; }      // coefficients known mod p^N
    int capacity() const { return cap_; }     // kappa-adic capacity M = d*N
    u64 modulus() const { return pn_; }       // p^N
    u64 r() const { return r_; }              // least generator of (Z/pZ)^*
    u64 omega() const { return omega_; }      // Teichmueller unit, omega = r mod p

    /// Minimal-polynomial coefficients of kappa, ascending, d+1 entries
    /// (exact integers; they all fit in u64 for the supported p).
    const std::vector<u64>& kappa_min_poly() const { return min_poly_; }

    /// omega^e mod p^N for any integer exponent (reduced mod d).
    u64 omega_pow(long e) const;

    /// Inverse of a p-unit mod p^N.
    u64 inv_unit_mod(u64 u) const;

    u64 mul_mod(u64 a, u64 b) const { return static_cast<u64>((u128)a * b % pn_); }
    u64 add_mod(u64 a, u64 b) const { u64 s = a + b; return s >= pn_ || s < a ? s - pn_ : s; }
    u64 sub_mod(u64 a, u64 b) const { return a >= b ? a - b : a + (pn_ - b); }
    u64 pow_mod(u64 base, u64 exp) const;

    /// p-adic valuation of a residue in [0, p^N); N for zero.
    int val_p(u64 c) const;

    /// Precision policy for work at level i: enough kappa-capacity to certify
    /// every invariant value that can arise there, with slack.
    static int default_precision(u64 p, long i);

    // --- internal tables used by KElem (public for the .cpp, stable API not implied)
    const std::vector<u64>& p_over_kappa() const { return g_; }       // -p/kappa as a polynomial
    const std::vector<u64>& kappa_d_row() const { return kd_row_; }   // kappa^d in the power basis
    const std::vector<u64>& frobenius_poly(long j) const;             // (1+kappa)^j - 1, j in 1..p-1
    const std::vector<u64>& frobenius_unit(long j) const;             // ((1+kappa)^j - 1)/kappa

    bool same(const PrimeCtx& other) const { return this == &other; }

private:
    u64 p_;
    int d_;
    int n_;
    int cap_;
    u64 pn_;
    u64 r_;
    u64 omega_;
    std::vector<u64> min_poly_;
    std::vector<u64> g_;
    std::vector<u64> kd_row_;
    std::vector<u64> omega_pows_;                 // omega^0..omega^{d-1}
    std::vector<std::vector<u64>> frob_;          // index j-1
    std::vector<std::vector<u64>> frob_unit_;
};

/// Element of K as kappa^shift * (c_0 + c_1 kappa + ... + c_{d-1} kappa^{d-1})
/// with the c_j carried mod p^N. The mantissa is known mod kappa^prec, so the
/// value is known mod kappa^(shift+prec); known_prec() reports that absolute
/// precision. Representations are non-canonical: two elements are equal iff
/// their difference vanishes within the smaller of their precisions.
class KElem {
public:
    KElem() = default;

    static KElem zero(const PrimeCtx& ctx);
    static KElem one(const PrimeCtx& ctx);
    static KElem kappa_pow(const PrimeCtx& ctx, long j);
    static KElem theta(const PrimeCtx& ctx);      // 1 + kappa
    static KElem from_integer(const PrimeCtx& ctx, i64 n);
    static KElem from_parts(const PrimeCtx& ctx, long shift, std::vector<u64> coeffs);

    const PrimeCtx& ctx() const { return *ctx_; }
    long shift() const { return shift_; }
    int mantissa_prec() const { return prec_; }
    long known_prec() const { return shift_ + prec_; }
    std::span<const u64> coeffs() const { return coeffs_; }

    KElem operator+(const KElem& o) const;
    KElem operator-(const KElem& o) const;
    KElem operator-() const;
    KElem operator*(const KElem& o) const;
    KElem scaled(u64 zp_scalar) const;            // multiply by an integer mod p^N
    KElem pow_int(long e) const;                  // e < 0 needs a unit mantissa

    /// kappa-adic valuation read off the coefficient vector: shift +
    /// min_j (d*val_p(c_j) + j). The d terms have pairwise distinct
    /// valuations, so the minimum is exact. kValInfinity when every
    /// coefficient vanishes mod p^N; callers must read that as
    /// "at least known_prec()".
    long val() const;

    /// val() but certified against the tracked precision; throws
    /// PrecisionExhausted when the element vanishes to precision.
    long certified_val() const;

    bool is_zero_to_prec() const;

    /// Canonical digits b_n in {0..p-1} with value = sum b_n kappa^n,
    /// for positions digit_base() <= n < upto.
    std::vector<int> kappa_digits(long upto) const;
    long digit_base() const { return shift_ < 0 ? shift_ : 0; }

    /// Digit at position t after verifying val >= t.
    int leading_coeff(long t) const;

    /// value * kappa^{-t}; absolute precision drops by t.
    KElem div_kappa(long t) const;

    /// Same value re-expressed with the given shift. Raising the shift
    /// divides the mantissa by a kappa power and needs val >= new_shift.
    KElem rebased(long new_shift) const;

    /// Galois automorphism sigma_j: theta -> theta^j, gcd(j, p) = 1.
    KElem galois(long j) const;

    /// Multiplicative inverse of a unit of O (val == 0).
    KElem inv_unit() const;

    /// Equal within the smaller known precision.
    bool same_class(const KElem& o) const;

    std::string to_string() const;

private:
    friend KElem eigenvector(const PrimeCtx&, long);

    KElem(const PrimeCtx& ctx, long shift, std::vector<u64> coeffs, int prec)
        : ctx_(&ctx), shift_(shift), prec_(prec), coeffs_(std::move(coeffs)) {}

    void require_same_ctx(const KElem& o) const;
    long mantissa_val() const;                    // kValInfinity when zero mod p^N

    const PrimeCtx* ctx_ = nullptr;
    long shift_ = 0;
    int prec_ = 0;
    std::vector<u64> coeffs_;
};

/// sigma-eigenvector e_x with eigenvalue omega^x, val(e_x) = x, and leading
/// digit 1; computed by averaging kappa^x over the Galois group against the
/// character omega^{-x}.
KElem eigenvector(const PrimeCtx& ctx, long x);

} // namespace liep
