#include "liep/eigenframe.hpp"

#include "liep/jacobi.hpp"

namespace liep {

namespace {

u64 powm(u64 b, long e, u64 q) {
    u64 r = 1;
    b %= q;
    u64 k = static_cast<u64>(e);
    while (k) {
        if (k & 1) r = static_cast<u64>((u128)r * b % q);
        b = static_cast<u64>((u128)b * b % q);
        k >>= 1;
    }
    return r;
}

} // namespace

WeightCtx::WeightCtx(const PrimeCtx& ctx) : ctx_(&ctx) {
    const u64 p = ctx.p();
    dlog_.assign(p, -1);
    u64 x = 1;
    for (long e = 0; e < static_cast<long>(p - 1); ++e) {
        dlog_[x] = e;
        x = x * ctx.r() % p;
    }
}

void WeightCtx::check(long a) const {
    if (a < 2 || a > static_cast<long>(ctx_->p() - 1) / 2)
        throw IndexOutOfRange("weight index a outside {2..(p-1)/2}");
}

long WeightCtx::k(long a) const {
    check(a);
    return dlog_[static_cast<size_t>(a)];
}

long WeightCtx::l(long a) const {
    check(a);
    return dlog_[static_cast<size_t>(ctx_->p() + 1 - a)];
}

u64 WeightCtx::m_weight(long a, long u, long v) const {
    return ctx_->omega_pow(u * k(a) + v * l(a));
}

u64 WeightCtx::t_weight(long a, long x, long y) const {
    return ctx_->sub_mod(m_weight(a, x, y), m_weight(a, y, x));
}

KElem gamma_capital(const WeightCtx& w, const HomGamma& g, long x, long y, long z) {
    const PrimeCtx& ctx = w.ctx();
    KElem acc = KElem::zero(ctx);
    for (const auto& [a, ca] : g.coeffs()) {
        if (ca.is_zero_to_prec()) continue;
        for (const auto& [b, cb] : g.coeffs()) {
            if (cb.is_zero_to_prec()) continue;
            u64 txy = w.t_weight(b, x, y);
            u64 tyz = w.t_weight(b, y, z);
            u64 tzx = w.t_weight(b, z, x);
            u64 lab = ctx.add_mod(ctx.add_mod(ctx.mul_mod(txy, w.m_weight(a, x + y, z)),
                                              ctx.mul_mod(tyz, w.m_weight(a, y + z, x))),
                                  ctx.mul_mod(tzx, w.m_weight(a, z + x, y)));
            u64 rab = ctx.add_mod(ctx.add_mod(ctx.mul_mod(txy, w.m_weight(a, z, x + y)),
                                              ctx.mul_mod(tyz, w.m_weight(a, x, y + z))),
                                  ctx.mul_mod(tzx, w.m_weight(a, y, z + x)));
            long one_minus_a = static_cast<long>(ctx.p()) + 1 - a;
            acc = acc + ca * cb.galois(a).scaled(lab) - ca * cb.galois(one_minus_a).scaled(rab);
        }
    }
    return acc;
}

FGValue f_g(u64 p, long a, long i, long x, long y, long z) {
    if (a < 2 || a > static_cast<long>(p - 1) / 2)
        throw IndexOutOfRange("index a outside {2..(p-1)/2}");
    if (i < 0 || x < i || y < i || z < i) throw IndexOutOfRange("need x, y, z >= i >= 0");
    const u64 A = static_cast<u64>(a) % p;
    const u64 B = (p + 1 - static_cast<u64>(a)) % p; // 1 - a
    const u64 AB = A * B % p;
    const long xb = x - i, yb = y - i, zb = z - i;

    // one cyclic summand of f: A^{2u} (AB)^v B^t, and its mirror (AB)^u A^{2v} B^t
    auto fterm = [&](long u, long v, long t) {
        u64 pos = powm(A, 2 * u, p) * powm(AB, v, p) % p * powm(B, t, p) % p;
        u64 neg = powm(AB, u, p) * powm(A, 2 * v, p) % p * powm(B, t, p) % p;
        return (pos + p - neg) % p;
    };
    // one cyclic summand of g: -(AB)^u B^{2v} A^t + B^{2u} (AB)^v A^t
    auto gterm = [&](long u, long v, long t) {
        u64 neg = powm(AB, u, p) * powm(B, 2 * v, p) % p * powm(A, t, p) % p;
        u64 pos = powm(B, 2 * u, p) * powm(AB, v, p) % p * powm(A, t, p) % p;
        return (pos + p - neg) % p;
    };

    u64 f = (fterm(xb, yb, zb) + fterm(yb, zb, xb) + fterm(zb, xb, yb)) % p;
    u64 gg = (gterm(xb, yb, zb) + gterm(yb, zb, xb) + gterm(zb, xb, yb)) % p;
    u64 e = (powm(A, 3 * i, p) * powm(B, 2 * i, p) % p * f +
             powm(A, 2 * i, p) * powm(B, 3 * i, p) % p * gg) %
            p;
    return {static_cast<int>(f), static_cast<int>(gg), static_cast<int>(e)};
}

FGConstants fg_constants(u64 p, long a) {
    if (a < 2 || a > static_cast<long>(p - 1) / 2)
        throw IndexOutOfRange("index a outside {2..(p-1)/2}");
    const u64 A = static_cast<u64>(a) % p;
    const u64 B = (p + 1 - static_cast<u64>(a)) % p;        // 1 - a
    const u64 TA = (2 * A + p - 1) % p;                     // 2a - 1
    const u64 QP = (A * A + A + p - 1) % p;                 // a^2 + a - 1
    const u64 QM = (A * A + 3 * p - 3 * A + 1) % p;         // a^2 - 3a + 1

    u64 f1 = A * powm(B, 2, p) % p * TA % p * QP % p;
    // a^2 (a-1) (2a-1) (a^2-3a+1): the sign that agrees with the six-term sum
    u64 g1 = powm(A, 2, p) * ((A + p - 1) % p) % p * TA % p * QM % p;
    FGValue v2 = f_g(p, a, 0, 0, 1, 4);

    u64 lhs = (static_cast<u64>(v2.f) * g1 % p + p - f1 * static_cast<u64>(v2.g) % p) % p;
    u64 rhs = powm(A, 4, p) * powm(B, 4, p) % p * powm(TA, 3, p) % p * QP % p * QM % p;
    int residual = static_cast<int>((lhs + p - rhs) % p);
    return {static_cast<int>(f1), static_cast<int>(g1), v2.f, v2.g, residual};
}

CrosscheckResult crosscheck(const WeightCtx& w, const HomGamma& g, long x, long y, long z) {
    const PrimeCtx& ctx = w.ctx();
    KElem ex = eigenvector(ctx, x), ey = eigenvector(ctx, y), ez = eigenvector(ctx, z);
    KElem direct = jacobi_value(g, ex, ey, ez);
    KElem via_gamma = gamma_capital(w, g, x, y, z) * ex * ey * ez;
    KElem diff = direct - via_gamma;

    CrosscheckResult res;
    res.gamma_path_ok = diff.is_zero_to_prec();
    res.discrepancy_val = res.gamma_path_ok ? kValInfinity : diff.val();
    long dv = direct.val();
    res.direct_val = (dv == kValInfinity || dv >= direct.known_prec()) ? kValInfinity : dv;

    res.membership_ok = true;
    if (auto a = g.one_param_index()) {
        FGValue fg = f_g(ctx.p(), *a, g.i(), x, y, z);
        bool in_deeper = res.direct_val == kValInfinity || res.direct_val >= x + y + z + 1;
        res.membership_ok = in_deeper == (fg.e == 0);
    }
    return res;
}

} // namespace liep
