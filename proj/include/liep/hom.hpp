#pragma once

#include <map>
#include <optional>
#include <vector>

#include "liep/padic.hpp"
#include "liep/rng.hpp"

namespace liep {

/// theta_a(x ^ y) = sigma_a(x) sigma_{1-a}(y) - sigma_{1-a}(x) sigma_a(y),
/// for 2 <= a <= (p-1)/2. Alternating and Z_p-bilinear.
KElem theta_eval(const PrimeCtx& ctx, long a, const KElem& x, const KElem& y);

/// Leading-coefficient table of a homomorphism: entries a(j,k) in {0..p-1}
/// over the window j,k in [i, i+d), extended outside the window by the
/// period-d shift of valuations. Also carries the offset rho.
class CoeffTable {
public:
    CoeffTable(u64 p, long window_base, long rho, std::vector<int> entries);

    long rho() const { return rho_; }
    long window_base() const { return base_; }
    int size() const { return d_; }

    /// a(j,k) for arbitrary integers, indices reduced into the window mod d.
    int at(long j, long k) const;

    /// c(k) = a(k+1, k).
    int c(long k) const { return at(k + 1, k); }

    /// True when at(j,k) was ever queried outside [base, base+d).
    bool used_extension() const { return used_extension_; }

private:
    long reduce(long j) const;

    u64 p_;
    int d_;
    long base_;
    long rho_;
    std::vector<int> entries_; // d*d, row-major (j-base, k-base)
    mutable bool used_extension_ = false;
};

/// gamma = sum_a c_a theta_a in Hom_theta(p^i ^ p^i, p^{2i+1}), given by its
/// coefficient family c_a for a in {2..(p-1)/2}. Construction validates
/// val(c_a) >= 5-p and precomputes the window images gamma(kappa^j ^ kappa^k)
/// together with the surjectivity data; the object is immutable afterwards.
class HomGamma {
public:
    HomGamma(const PrimeCtx& ctx, long i, std::map<long, KElem> coeffs);

    static HomGamma one_param(const PrimeCtx& ctx, long i, long a);
    static HomGamma one_param(const PrimeCtx& ctx, long i, long a, KElem c);

    const PrimeCtx& ctx() const { return *ctx_; }
    long i() const { return i_; }
    const std::map<long, KElem>& coeffs() const { return coeffs_; }

    /// min_a val(c_a).
    long v() const { return v_; }

    /// Exactly one nonzero coefficient and it is a unit; returns its index.
    std::optional<long> one_param_index() const;

    /// gamma(x ^ y).
    KElem eval(const KElem& x, const KElem& y) const;

    /// Cached gamma(kappa^j ^ kappa^k) for j,k in the window [i, i+d).
    const KElem& pair_image(long j, long k, bool* negated = nullptr) const;

    /// True iff the image ideal is exactly p^{2i+1}; image_val receives the
    /// minimal valuation over the window wedge images.
    bool check_surjective(long* image_val = nullptr) const;

    /// Offset rho(gamma) = min val(gamma(kappa^j ^ kappa^k)) - j - k over the
    /// window; throws NotSurjective outside hat-H_i.
    long offset() const;

    const CoeffTable& coeff_table() const;

private:
    const PrimeCtx* ctx_;
    long i_;
    std::map<long, KElem> coeffs_;
    long v_;
    std::vector<KElem> window_; // j<k pairs, row-major upper triangle
    long image_val_;
    bool surjective_;
    long rho_ = 0;
    std::optional<CoeffTable> table_;
    KElem zero_;
};

/// Seeded sampler: each c_a = kappa^{v_a} u with v_a uniform in {5-p..3} and
/// u a uniform unit of O, resampled until the result is surjective.
HomGamma random_surjective_gamma(const PrimeCtx& ctx, long i, SplitMix64& rng, int max_tries = 20000);

} // namespace liep
