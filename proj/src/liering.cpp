#include "liep/liering.hpp"

#include <algorithm>

namespace liep {

namespace {

u64 pow_u64(u64 b, int e) {
    u64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

LieRing::LieRing(const HomGamma& g, long m) : ctx_(&g.ctx()), i_(g.i()), m_(m), d_(g.ctx().d()) {
    if (m_ <= i_) throw IndexOutOfRange("need m > i");
    const PrimeCtx& ctx = *ctx_;

    orders_.resize(d_);
    e_max_ = 0;
    for (int j = 0; j < d_; ++j) {
        long num = m_ - i_ - j;
        int o = num > 0 ? static_cast<int>((num + d_ - 1) / d_) : 0;
        if (o > ctx.precision())
            throw PrecisionTooSmall("generator order p^" + std::to_string(o) +
                                    " exceeds the coefficient modulus; raise N");
        orders_[j] = o;
        e_max_ = std::max(e_max_, o);
    }
    q_ = pow_u64(ctx.p(), e_max_);
    order_pows_.resize(d_);
    for (int j = 0; j < d_; ++j) order_pows_[j] = pow_u64(ctx.p(), orders_[j]);

    long total = 0;
    for (int j = 0; j < d_; ++j) total += orders_[j];
    if (total != m_ - i_)
        throw BoundViolation("generator orders do not multiply to p^(m-i)");

    brackets_.reserve(static_cast<size_t>(d_) * (d_ - 1) / 2);
    for (int j = 0; j < d_; ++j)
        for (int k = j + 1; k < d_; ++k) {
            const KElem& w = g.pair_image(i_ + j, i_ + k);
            brackets_.push_back(decompose(w).x);
        }
}

LElem LieRing::decompose(const KElem& w) const {
    if (w.known_prec() < m_)
        throw PrecisionExhausted("image known mod kappa^" + std::to_string(w.known_prec()) +
                                 ", need mod kappa^" + std::to_string(m_));
    long wv = w.val();
    if (wv != kValInfinity && wv < i_)
        throw IndexOutOfRange("element lies outside p^i");
    KElem r = w.rebased(i_);
    LElem out;
    out.x.resize(d_);
    auto cs = r.coeffs();
    for (int j = 0; j < d_; ++j) out.x[j] = orders_[j] == 0 ? 0 : cs[j] % order_pows_[j];
    return out;
}

LElem LieRing::zero() const {
    LElem a;
    a.x.assign(d_, 0);
    return a;
}

LElem LieRing::generator(int j) const {
    LElem a = zero();
    if (j < 0 || j >= d_) throw IndexOutOfRange("generator index");
    if (orders_[j] > 0) a.x[static_cast<size_t>(j)] = 1;
    return a;
}

LElem LieRing::add(const LElem& a, const LElem& b) const {
    LElem r = zero();
    for (int j = 0; j < d_; ++j)
        if (orders_[j] > 0) r.x[j] = (a.x[j] + b.x[j]) % order_pows_[j];
    return r;
}

LElem LieRing::neg(const LElem& a) const {
    LElem r = zero();
    for (int j = 0; j < d_; ++j)
        if (orders_[j] > 0) r.x[j] = (order_pows_[j] - a.x[j]) % order_pows_[j];
    return r;
}

LElem LieRing::smul(u64 c, const LElem& a) const {
    LElem r = zero();
    for (int j = 0; j < d_; ++j)
        if (orders_[j] > 0) r.x[j] = static_cast<u64>((u128)c * a.x[j] % order_pows_[j]);
    return r;
}

bool LieRing::is_zero(const LElem& a) const {
    return std::all_of(a.x.begin(), a.x.end(), [](u64 v) { return v == 0; });
}

const std::vector<u64>& LieRing::bracket_coeffs(int j, int k) const {
    if (j < 0 || k <= j || k >= d_) throw IndexOutOfRange("bracket pair");
    size_t idx = static_cast<size_t>(j) * (2 * d_ - j - 1) / 2 + static_cast<size_t>(k - j - 1);
    return brackets_[idx];
}

LElem LieRing::bracket(const LElem& a, const LElem& b) const {
    LElem r = zero();
    for (int j = 0; j < d_; ++j)
        for (int k = j + 1; k < d_; ++k) {
            u64 aj = a.x[j] % q_, bk = b.x[k] % q_;
            u64 ak = a.x[k] % q_, bj = b.x[j] % q_;
            u64 pos = static_cast<u64>((u128)aj * bk % q_);
            u64 negt = static_cast<u64>((u128)ak * bj % q_);
            u64 c = pos >= negt ? pos - negt : pos + (q_ - negt);
            if (c == 0) continue;
            const std::vector<u64>& s = bracket_coeffs(j, k);
            for (int t = 0; t < d_; ++t) {
                if (orders_[t] == 0 || s[t] == 0) continue;
                u64 add = static_cast<u64>((u128)c * s[t] % order_pows_[t]);
                r.x[t] = (r.x[t] + add) % order_pows_[t];
            }
        }
    return r;
}

LieRing::JacobiResult LieRing::check_jacobi() const {
    for (int j = 0; j < d_; ++j)
        for (int k = j + 1; k < d_; ++k)
            for (int l = k + 1; l < d_; ++l) {
                LElem gj = generator(j), gk = generator(k), gl = generator(l);
                LElem s = add(add(bracket(bracket(gj, gk), gl), bracket(bracket(gk, gl), gj)),
                              bracket(bracket(gl, gj), gk));
                if (!is_zero(s)) return {false, {j, k, l}};
            }
    return {true, {-1, -1, -1}};
}

std::vector<u64> LieRing::embed(const LElem& a) const {
    std::vector<u64> v(d_, 0);
    for (int j = 0; j < d_; ++j)
        v[j] = static_cast<u64>((u128)a.x[j] * pow_u64(ctx_->p(), e_max_ - orders_[j]) % q_);
    return v;
}

LElem LieRing::unembed(const std::vector<u64>& v) const {
    LElem a = zero();
    for (int j = 0; j < d_; ++j) {
        u64 f = pow_u64(ctx_->p(), e_max_ - orders_[j]);
        if (v[j] % f != 0) throw BoundViolation("vector escapes the coordinate lattice");
        a.x[j] = (v[j] / f) % std::max<u64>(order_pows_[j], 1);
    }
    return a;
}

LieRing::Series LieRing::lower_central_series() const {
    Series s;
    s.order_exponents.push_back(order_exponent());

    // current term as a Howell span in the embedded coordinates
    HowellSpan cur(ctx_->p(), e_max_, d_);
    for (int j = 0; j < d_; ++j) cur.add_generator(embed(generator(j)));
    if (cur.order_exponent() != order_exponent())
        throw BoundViolation("L_1 span order mismatch");

    int n = 1;
    const int cap = static_cast<int>(m_ - i_) + 2;
    while (true) {
        HowellSpan next(ctx_->p(), e_max_, d_);
        for (const auto& row : cur.rows()) {
            LElem b = unembed(row);
            for (int j = 0; j < d_; ++j) next.add_generator(embed(bracket(b, generator(j))));
        }
        if (next.is_zero()) break;
        if (next.order_exponent() >= cur.order_exponent())
            throw BoundViolation("lower central series does not descend; ring is not nilpotent");
        s.order_exponents.push_back(next.order_exponent());
        cur = std::move(next);
        if (++n > cap) throw BoundViolation("lower central series exceeded its length cap");
    }
    s.nilpotency_class = n;
    return s;
}

LElem LieRing::theta_apply(const LElem& a) const {
    // theta * kappa^{i+j} = kappa^{i+j} + kappa^{i+j+1}; the top power folds
    // through the minimal polynomial.
    LElem r = zero();
    const auto& mp = ctx_->kappa_min_poly();
    for (int j = 0; j < d_; ++j) {
        if (a.x[j] == 0) continue;
        // contribution of x_j * g_j
        if (orders_[j] > 0) r.x[j] = (r.x[j] + a.x[j]) % order_pows_[j];
        if (j + 1 < d_) {
            if (orders_[j + 1] > 0) r.x[j + 1] = (r.x[j + 1] + a.x[j]) % order_pows_[j + 1];
        } else {
            for (int t = 0; t < d_; ++t) {
                if (orders_[t] == 0) continue;
                u64 coeff = (order_pows_[t] - mp[t] % order_pows_[t]) % order_pows_[t];
                u64 add = static_cast<u64>((u128)a.x[j] * coeff % order_pows_[t]);
                r.x[t] = (r.x[t] + add) % order_pows_[t];
            }
        }
    }
    return r;
}

} // namespace liep
