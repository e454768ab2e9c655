#include "liep/hom.hpp"

#include <algorithm>

namespace liep {

KElem theta_eval(const PrimeCtx& ctx, long a, const KElem& x, const KElem& y) {
    if (a < 2 || a > static_cast<long>(ctx.p() - 1) / 2)
        throw IndexOutOfRange("theta_a index must lie in {2..(p-1)/2}, got " + std::to_string(a));
    long b = static_cast<long>(ctx.p()) + 1 - a; // 1 - a mod p
    KElem xa = x.galois(a), xb = x.galois(b);
    KElem ya = y.galois(a), yb = y.galois(b);
    return xa * yb - xb * ya;
}

// ---------------------------------------------------------------------------
// CoeffTable

CoeffTable::CoeffTable(u64 p, long window_base, long rho, std::vector<int> entries)
    : p_(p), d_(static_cast<int>(p - 1)), base_(window_base), rho_(rho), entries_(std::move(entries)) {}

long CoeffTable::reduce(long j) const {
    long off = (j - base_) % d_;
    if (off < 0) off += d_;
    if (off != j - base_) used_extension_ = true;
    return off;
}

int CoeffTable::at(long j, long k) const {
    return entries_[static_cast<size_t>(reduce(j)) * d_ + static_cast<size_t>(reduce(k))];
}

// ---------------------------------------------------------------------------
// HomGamma

HomGamma::HomGamma(const PrimeCtx& ctx, long i, std::map<long, KElem> coeffs)
    : ctx_(&ctx), i_(i), coeffs_(std::move(coeffs)), zero_(KElem::zero(ctx)) {
    if (i < 0) throw IndexOutOfRange("level i must be >= 0");
    const long a_max = static_cast<long>(ctx.p() - 1) / 2;
    long floor = 5 - static_cast<long>(ctx.p());
    v_ = kValInfinity;
    bool any = false;
    for (const auto& [a, c] : coeffs_) {
        if (a < 2 || a > a_max)
            throw IndexOutOfRange("coefficient index " + std::to_string(a) + " outside {2..(p-1)/2}");
        if (!c.ctx().same(ctx)) throw ContextMismatch("coefficient built on a different context");
        long cv = c.val();
        if (cv == kValInfinity) continue;
        if (cv < floor)
            throw IndexOutOfRange("val(c_" + std::to_string(a) + ") = " + std::to_string(cv) +
                                  " below the admissible floor " + std::to_string(floor));
        v_ = std::min(v_, cv);
        any = true;
    }
    if (!any) throw NotSurjective("the zero map is not in hat-H_i");

    // Window images gamma(kappa^j ^ kappa^k), i <= j < k < i+d.
    const int d = ctx.d();
    std::vector<KElem> powers;
    powers.reserve(d);
    for (int t = 0; t < d; ++t) powers.push_back(KElem::kappa_pow(ctx, i + t));
    window_.reserve(static_cast<size_t>(d) * (d - 1) / 2);
    image_val_ = kValInfinity;
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            KElem w = eval(powers[j], powers[k]);
            long wv = w.val();
            if (wv != kValInfinity) {
                if (wv >= w.known_prec())
                    throw PrecisionExhausted("window image not resolved at this precision");
                image_val_ = std::min(image_val_, wv);
            }
            window_.push_back(std::move(w));
        }
    surjective_ = (image_val_ == 2 * i + 1);

    if (surjective_) {
        rho_ = kValInfinity;
        for (int j = 0; j < d; ++j)
            for (int k = j + 1; k < d; ++k) {
                const KElem& w = pair_image(i + j, i + k);
                long wv = w.val();
                if (wv == kValInfinity) continue;
                rho_ = std::min(rho_, wv - (i + j) - (i + k));
            }
        std::vector<int> entries(static_cast<size_t>(d) * d, 0);
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                if (j == k) continue;
                bool neg = false;
                const KElem& w = pair_image(i + j, i + k, &neg);
                int digit = w.leading_coeff((i + j) + (i + k) + rho_);
                if (neg && digit != 0) digit = static_cast<int>(ctx.p()) - digit;
                entries[static_cast<size_t>(j) * d + k] = digit;
            }
        table_.emplace(ctx.p(), i, rho_, std::move(entries));
    }
}

HomGamma HomGamma::one_param(const PrimeCtx& ctx, long i, long a) {
    return one_param(ctx, i, a, KElem::one(ctx));
}

HomGamma HomGamma::one_param(const PrimeCtx& ctx, long i, long a, KElem c) {
    std::map<long, KElem> m;
    m.emplace(a, std::move(c));
    return HomGamma(ctx, i, std::move(m));
}

std::optional<long> HomGamma::one_param_index() const {
    std::optional<long> found;
    for (const auto& [a, c] : coeffs_) {
        if (c.is_zero_to_prec()) continue;
        if (found) return std::nullopt;
        if (c.val() != 0) return std::nullopt;
        found = a;
    }
    return found;
}

KElem HomGamma::eval(const KElem& x, const KElem& y) const {
    KElem acc = KElem::zero(*ctx_);
    for (const auto& [a, c] : coeffs_) {
        if (c.is_zero_to_prec()) continue;
        acc = acc + c * theta_eval(*ctx_, a, x, y);
    }
    return acc;
}

const KElem& HomGamma::pair_image(long j, long k, bool* negated) const {
    long oj = j - i_, ok = k - i_;
    const int d = ctx_->d();
    if (oj < 0 || oj >= d || ok < 0 || ok >= d)
        throw IndexOutOfRange("pair_image outside the window");
    if (negated) *negated = false;
    if (oj == ok) return zero_;
    if (oj > ok) {
        std::swap(oj, ok);
        if (negated) *negated = true;
    }
    // upper-triangle row-major offset
    size_t idx = static_cast<size_t>(oj) * (2 * d - oj - 1) / 2 + static_cast<size_t>(ok - oj - 1);
    return window_[idx];
}

bool HomGamma::check_surjective(long* image_val) const {
    if (image_val) *image_val = image_val_;
    return surjective_;
}

long HomGamma::offset() const {
    if (!surjective_)
        throw NotSurjective("offset is defined for surjective gamma only (image val " +
                            std::to_string(image_val_) + ", expected " + std::to_string(2 * i_ + 1) + ")");
    return rho_;
}

const CoeffTable& HomGamma::coeff_table() const {
    if (!table_) throw NotSurjective("coefficient table needs a surjective gamma");
    return *table_;
}

HomGamma random_surjective_gamma(const PrimeCtx& ctx, long i, SplitMix64& rng, int max_tries) {
    const long a_max = static_cast<long>(ctx.p() - 1) / 2;
    const long v_lo = 5 - static_cast<long>(ctx.p());
    const KElem ki = KElem::kappa_pow(ctx, i);
    const KElem ki1 = KElem::kappa_pow(ctx, i + 1);
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        std::map<long, KElem> coeffs;
        long vmin = 4;
        for (long a = 2; a <= a_max; ++a) {
            long va = rng.range(v_lo, 3);
            vmin = std::min(vmin, va);
            std::vector<u64> mant(ctx.d());
            for (auto& c : mant) c = rng.below(ctx.modulus());
            if (mant[0] % ctx.p() == 0) mant[0] += 1; // force a unit mantissa
            coeffs.emplace(a, KElem::from_parts(ctx, va, std::move(mant)));
        }
        // sound rejections before building the whole window: a map with all
        // coefficients in p lands inside p^{2i+2}, and a single wedge image
        // below p^{2i+1} already rules the candidate out
        if (vmin > 0) continue;
        KElem w = KElem::zero(ctx);
        for (const auto& [a, c] : coeffs) w = w + c * theta_eval(ctx, a, ki, ki1);
        long wv = w.val();
        if (wv < 2 * i + 1 && wv < w.known_prec()) continue;
        HomGamma g(ctx, i, std::move(coeffs));
        if (g.check_surjective()) return g;
    }
    throw NotSurjective("sampler failed to draw a surjective gamma in " +
                        std::to_string(max_tries) + " tries");
}

} // namespace liep
