#include "liep/padic.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace liep {

namespace {

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

u64 pow_u64_checked(u64 base, int exp, bool& overflow) {
    u64 r = 1;
    for (int k = 0; k < exp; ++k) {
        if (r > (u64(1) << 62) / base) { overflow = true; return 0; }
        r *= base;
    }
    overflow = false;
    return r;
}

// Least g generating (Z/pZ)^*, by direct order computation.
u64 least_generator(u64 p) {
    for (u64 g = 2; g < p; ++g) {
        u64 x = g % p;
        u64 ord = 1;
        while (x != 1) {
            x = x * g % p;
            ++ord;
        }
        if (ord == p - 1) return g;
    }
    throw NotPrime("no generator mod " + std::to_string(p));
}

} // namespace

PrimeCtx::PrimeCtx(u64 p, int precision) : p_(p), n_(precision) {
    if (p < 5 || !is_prime_u64(p)) throw NotPrime("p must be a prime >= 5, got " + std::to_string(p));
    if (precision < 2) throw PrecisionTooSmall("precision N must be >= 2, got " + std::to_string(precision));

    d_ = static_cast<int>(p - 1);
    cap_ = d_ * n_;
    bool overflow = false;
    pn_ = pow_u64_checked(p_, n_, overflow);
    if (overflow) throw PrecisionTooSmall("p^N does not fit in 62 bits; lower N");

    // Binomials binom(p, k), exact in u64 for the supported range of p.
    std::vector<u64> binom(p_ + 1, 0);
    binom[0] = 1;
    for (u64 row = 1; row <= p_; ++row)
        for (u64 k = row; k >= 1; --k) binom[k] += binom[k - 1];

    min_poly_.assign(d_ + 1, 0);
    for (int j = 0; j <= d_; ++j) min_poly_[j] = binom[j + 1] % pn_;
    // constant term p, leading term 1
    assert(min_poly_[0] == p_ % pn_ && min_poly_[d_] == 1);

    // kappa^d = -sum_{j<d} m_j kappa^j
    kd_row_.assign(d_, 0);
    for (int j = 0; j < d_; ++j) kd_row_[j] = (pn_ - min_poly_[j]) % pn_;

    // -p/kappa: kappa * g(kappa) = -p with g_j = m_{j+1}
    g_.assign(d_, 0);
    for (int j = 0; j < d_; ++j) g_[j] = min_poly_[j + 1];

    r_ = least_generator(p_);

    // Teichmueller lift: iterate the p-power map from r until fixed mod p^N.
    u64 w = r_ % pn_;
    for (int it = 0; it < 4 * n_ + 8; ++it) {
        u64 nw = pow_mod(w, p_);
        if (nw == w) break;
        w = nw;
    }
    omega_ = w;
    if (pow_mod(omega_, p_) != omega_ || pow_mod(omega_, p_ - 1) != 1 || omega_ % p_ != r_ % p_)
        throw BoundViolation("Teichmueller iteration failed to stabilize");

    omega_pows_.assign(d_, 1);
    for (int e = 1; e < d_; ++e) omega_pows_[e] = mul_mod(omega_pows_[e - 1], omega_);

    // (1+kappa)^j - 1 and its unit cofactor ((1+kappa)^j - 1)/kappa, per
    // residue j. Both have degree < d before any reduction except j = d,
    // where the degree-d term folds through kd_row_.
    frob_.resize(d_);
    frob_unit_.resize(d_);
    std::vector<u64> jrow(p_ + 1, 0);
    jrow[0] = 1;
    for (u64 j = 1; j <= p_ - 1; ++j) {
        for (u64 k = j; k >= 1; --k) jrow[k] = (jrow[k] + jrow[k - 1]) % pn_;
        std::vector<u64> unit(d_, 0);
        for (u64 t = 1; t <= j; ++t) unit[t - 1] = jrow[t]; // t-1 <= j-1 <= d-1
        std::vector<u64> full(d_, 0);
        for (u64 t = 1; t <= std::min<u64>(j, d_ - 1); ++t) full[t] = jrow[t];
        if (j == p_ - 1) // degree-d term
            for (int t = 0; t < d_; ++t) full[t] = add_mod(full[t], kd_row_[t]);
        frob_unit_[j - 1] = std::move(unit);
        frob_[j - 1] = std::move(full);
    }
}

u64 PrimeCtx::pow_mod(u64 base, u64 exp) const {
    u64 r = 1, b = base % pn_;
    while (exp) {
        if (exp & 1) r = mul_mod(r, b);
        b = mul_mod(b, b);
        exp >>= 1;
    }
    return r;
}

u64 PrimeCtx::omega_pow(long e) const {
    long m = e % d_;
    if (m < 0) m += d_;
    return omega_pows_[m];
}

u64 PrimeCtx::inv_unit_mod(u64 u) const {
    if (u % p_ == 0) throw BoundViolation("inverse of a non-unit mod p^N");
    // Order of (Z/p^N)^* is p^{N-1}(p-1); use Euler's theorem.
    u64 order = pn_ / p_ * (p_ - 1);
    return pow_mod(u, order - 1);
}

int PrimeCtx::val_p(u64 c) const {
    if (c == 0) return n_;
    int v = 0;
    while (c % p_ == 0) {
        c /= p_;
        ++v;
    }
    return v;
}

int PrimeCtx::default_precision(u64 p, long i) {
    long d = static_cast<long>(p) - 1;
    long need = 3 * (i + d) + 3 * d + 6;
    return static_cast<int>((need + d - 1) / d) + 2;
}

const std::vector<u64>& PrimeCtx::frobenius_poly(long j) const {
    long m = j % static_cast<long>(p_);
    if (m < 0) m += p_;
    if (m == 0) throw NotCoprime("sigma_j needs gcd(j, p) = 1");
    return frob_[m - 1];
}

const std::vector<u64>& PrimeCtx::frobenius_unit(long j) const {
    long m = j % static_cast<long>(p_);
    if (m < 0) m += p_;
    if (m == 0) throw NotCoprime("sigma_j needs gcd(j, p) = 1");
    return frob_unit_[m - 1];
}

// ---------------------------------------------------------------------------
// mantissa helpers (vectors of length d, coefficients mod p^N)

namespace {

std::vector<u64> poly_mul(const PrimeCtx& c, const std::vector<u64>& a, const std::vector<u64>& b) {
    const int d = c.d();
    std::vector<u64> full(2 * d - 1, 0);
    for (int i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (b[j] == 0) continue;
            full[i + j] = c.add_mod(full[i + j], c.mul_mod(a[i], b[j]));
        }
    }
    const auto& row = c.kappa_d_row();
    for (int t = 2 * d - 2; t >= d; --t) {
        u64 top = full[t];
        if (top == 0) continue;
        full[t] = 0;
        for (int j = 0; j < d; ++j)
            full[t - d + j] = c.add_mod(full[t - d + j], c.mul_mod(top, row[j]));
    }
    full.resize(d);
    return full;
}

// Multiply a mantissa by kappa^t, t >= 0.
std::vector<u64> poly_shift_up(const PrimeCtx& c, std::vector<u64> v, long t) {
    const int d = c.d();
    const auto& row = c.kappa_d_row();
    for (long s = 0; s < t; ++s) {
        u64 top = v[d - 1];
        for (int j = d - 1; j >= 1; --j) v[j] = v[j - 1];
        v[0] = 0;
        if (top != 0)
            for (int j = 0; j < d; ++j) v[j] = c.add_mod(v[j], c.mul_mod(top, row[j]));
    }
    return v;
}

// One exact division step by kappa: caller guarantees the constant digit is
// zero (c_0 divisible by p as a residue). Uses p/kappa = -g(kappa).
void poly_div_kappa_step(const PrimeCtx& c, std::vector<u64>& v) {
    const int d = c.d();
    u64 c0 = v[0];
    assert(c0 % c.p() == 0);
    u64 t = c0 / c.p();
    const auto& g = c.p_over_kappa();
    for (int j = 0; j + 1 < d; ++j) v[j] = c.sub_mod(v[j + 1], c.mul_mod(t, g[j]));
    v[d - 1] = c.sub_mod(0, c.mul_mod(t, g[d - 1]));
}

// Extract `count` canonical digits of a mantissa, mutating it into the
// remaining cofactor.
std::vector<int> poly_digits(const PrimeCtx& c, std::vector<u64>& v, long count) {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(count));
    for (long n = 0; n < count; ++n) {
        int b = static_cast<int>(v[0] % c.p());
        out.push_back(b);
        v[0] = c.sub_mod(v[0], static_cast<u64>(b));
        poly_div_kappa_step(c, v);
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// KElem

KElem KElem::zero(const PrimeCtx& ctx) {
    return KElem(ctx, 0, std::vector<u64>(ctx.d(), 0), ctx.capacity());
}

KElem KElem::one(const PrimeCtx& ctx) {
    std::vector<u64> c(ctx.d(), 0);
    c[0] = 1;
    return KElem(ctx, 0, std::move(c), ctx.capacity());
}

KElem KElem::kappa_pow(const PrimeCtx& ctx, long j) {
    std::vector<u64> c(ctx.d(), 0);
    c[0] = 1;
    return KElem(ctx, j, std::move(c), ctx.capacity());
}

KElem KElem::theta(const PrimeCtx& ctx) {
    std::vector<u64> c(ctx.d(), 0);
    c[0] = 1;
    if (ctx.d() > 1) c[1] = 1;
    return KElem(ctx, 0, std::move(c), ctx.capacity());
}

KElem KElem::from_integer(const PrimeCtx& ctx, i64 n) {
    std::vector<u64> c(ctx.d(), 0);
    i64 m = n % static_cast<i64>(ctx.modulus());
    if (m < 0) m += static_cast<i64>(ctx.modulus());
    c[0] = static_cast<u64>(m);
    return KElem(ctx, 0, std::move(c), ctx.capacity());
}

KElem KElem::from_parts(const PrimeCtx& ctx, long shift, std::vector<u64> coeffs) {
    if (coeffs.size() != static_cast<size_t>(ctx.d()))
        throw ParseError("element literal needs exactly d coefficients");
    for (auto& c : coeffs) c %= ctx.modulus();
    return KElem(ctx, shift, std::move(coeffs), ctx.capacity());
}

void KElem::require_same_ctx(const KElem& o) const {
    if (!ctx_ || !o.ctx_ || !ctx_->same(*o.ctx_))
        throw ContextMismatch("operands belong to different arithmetic contexts");
}

long KElem::mantissa_val() const {
    const int d = ctx_->d();
    long best = kValInfinity;
    for (int j = 0; j < d; ++j) {
        if (coeffs_[j] == 0) continue;
        long v = static_cast<long>(d) * ctx_->val_p(coeffs_[j]) + j;
        best = std::min(best, v);
    }
    return best;
}

long KElem::val() const {
    long mv = mantissa_val();
    return mv == kValInfinity ? kValInfinity : shift_ + mv;
}

long KElem::certified_val() const {
    long mv = mantissa_val();
    if (mv >= prec_)
        throw PrecisionExhausted("valuation not certifiable: element vanishes to precision " +
                                 std::to_string(known_prec()));
    return shift_ + mv;
}

bool KElem::is_zero_to_prec() const { return mantissa_val() >= prec_; }

KElem KElem::operator+(const KElem& o) const {
    require_same_ctx(o);
    const PrimeCtx& c = *ctx_;
    long s = std::min(shift_, o.shift_);
    std::vector<u64> a = poly_shift_up(c, coeffs_, shift_ - s);
    std::vector<u64> b = poly_shift_up(c, o.coeffs_, o.shift_ - s);
    int pa = static_cast<int>(std::min<long>(c.capacity(), prec_ + (shift_ - s)));
    int pb = static_cast<int>(std::min<long>(c.capacity(), o.prec_ + (o.shift_ - s)));
    for (int j = 0; j < c.d(); ++j) a[j] = c.add_mod(a[j], b[j]);
    return KElem(c, s, std::move(a), std::min(pa, pb));
}

KElem KElem::operator-() const {
    const PrimeCtx& c = *ctx_;
    std::vector<u64> a(coeffs_);
    for (auto& x : a) x = c.sub_mod(0, x);
    return KElem(c, shift_, std::move(a), prec_);
}

KElem KElem::operator-(const KElem& o) const { return *this + (-o); }

KElem KElem::operator*(const KElem& o) const {
    require_same_ctx(o);
    const PrimeCtx& c = *ctx_;
    std::vector<u64> prod = poly_mul(c, coeffs_, o.coeffs_);
    long va = std::min<long>(mantissa_val(), c.capacity());
    long vb = std::min<long>(o.mantissa_val(), c.capacity());
    long prec = std::min<long>({static_cast<long>(c.capacity()), va + o.prec_, vb + prec_,
                                static_cast<long>(prec_) + o.prec_});
    return KElem(c, shift_ + o.shift_, std::move(prod), static_cast<int>(prec));
}

KElem KElem::scaled(u64 zp_scalar) const {
    const PrimeCtx& c = *ctx_;
    u64 w = zp_scalar % c.modulus();
    std::vector<u64> a(coeffs_);
    for (auto& x : a) x = c.mul_mod(x, w);
    long prec = std::min<long>(c.capacity(),
                               static_cast<long>(prec_) + static_cast<long>(c.d()) * c.val_p(w));
    return KElem(c, shift_, std::move(a), static_cast<int>(prec));
}

KElem KElem::pow_int(long e) const {
    const PrimeCtx& c = *ctx_;
    if (e == 0) return one(c);
    KElem base = e > 0 ? *this : inv_unit();
    unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
    KElem acc = one(c);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

std::vector<int> KElem::kappa_digits(long upto) const {
    const PrimeCtx& c = *ctx_;
    if (upto > known_prec())
        throw PrecisionExhausted("digits requested beyond known precision " +
                                 std::to_string(known_prec()));
    long base = digit_base();
    if (upto <= base) return {};
    std::vector<int> out(static_cast<size_t>(upto - base), 0);
    long count = upto - shift_; // mantissa digits needed
    if (count <= 0) return out; // all requested positions sit below the shift
    std::vector<u64> work(coeffs_);
    std::vector<int> mdig = poly_digits(c, work, count);
    for (long n = 0; n < count; ++n) {
        long pos = shift_ + n;
        if (pos >= base) out[static_cast<size_t>(pos - base)] = mdig[static_cast<size_t>(n)];
    }
    return out;
}

int KElem::leading_coeff(long t) const {
    if (t >= known_prec())
        throw PrecisionExhausted("digit position " + std::to_string(t) +
                                 " is beyond known precision " + std::to_string(known_prec()));
    long v = val();
    if (v != kValInfinity && v < t)
        throw IndexOutOfRange("leading_coeff below the valuation (val = " + std::to_string(v) +
                              ", t = " + std::to_string(t) + ")");
    if (v == kValInfinity || t < digit_base()) return 0;
    auto dig = kappa_digits(t + 1);
    return dig[static_cast<size_t>(t - digit_base())];
}

KElem KElem::div_kappa(long t) const {
    return KElem(*ctx_, shift_ - t, coeffs_, prec_);
}

KElem KElem::rebased(long new_shift) const {
    const PrimeCtx& c = *ctx_;
    if (new_shift == shift_) return *this;
    if (new_shift < shift_) {
        long t = shift_ - new_shift;
        std::vector<u64> v = poly_shift_up(c, coeffs_, t);
        int prec = static_cast<int>(std::min<long>(c.capacity(), prec_ + t));
        return KElem(c, new_shift, std::move(v), prec);
    }
    long t = new_shift - shift_;
    if (t >= prec_)
        throw PrecisionExhausted("rebase drops every known digit");
    std::vector<u64> v(coeffs_);
    for (long s = 0; s < t; ++s) {
        if (v[0] % c.p() != 0)
            throw IndexOutOfRange("rebase needs val >= " + std::to_string(new_shift));
        poly_div_kappa_step(c, v);
    }
    return KElem(c, new_shift, std::move(v), prec_ - static_cast<int>(t));
}

KElem KElem::galois(long j) const {
    const PrimeCtx& c = *ctx_;
    long m = j % static_cast<long>(c.p());
    if (m < 0) m += c.p();
    if (m == 0) throw NotCoprime("sigma_j needs gcd(j, p) = 1");
    if (m == 1) return *this;

    // sigma_j(kappa^s * f(kappa)) = kappa^s * u_j^s * f(sigma_j(kappa)) with
    // u_j = ((1+kappa)^j - 1)/kappa a unit; composition by Horner.
    const int d = c.d();
    bool constant_mantissa = true;
    for (int t = 1; t < d; ++t)
        if (coeffs_[t] != 0) { constant_mantissa = false; break; }
    KElem image = KElem::zero(c);
    if (constant_mantissa) {
        image.coeffs_[0] = coeffs_[0];
    } else {
        KElem bpoly(c, 0, c.frobenius_poly(m), c.capacity());
        for (int t = d - 1; t >= 0; --t) {
            image = image * bpoly;
            std::vector<u64> cur = image.coeffs_;
            cur[0] = c.add_mod(cur[0], coeffs_[t]);
            image = KElem(c, 0, std::move(cur), image.prec_);
        }
    }
    KElem unit(c, 0, c.frobenius_unit(m), c.capacity());
    KElem result = image * unit.pow_int(shift_);
    result.shift_ = shift_;
    result.prec_ = prec_; // automorphisms preserve the filtration
    return result;
}

KElem KElem::inv_unit() const {
    const PrimeCtx& c = *ctx_;
    if (shift_ != 0 || mantissa_val() != 0)
        throw BoundViolation("inv_unit needs a unit of O (val == 0, shift == 0)");
    // Newton iteration x <- x(2 - ux) from the inverse of the constant term;
    // the residual squares each round, so log2(capacity) rounds suffice.
    std::vector<u64> x(c.d(), 0);
    x[0] = c.inv_unit_mod(coeffs_[0]);
    KElem inv(c, 0, std::move(x), c.capacity());
    KElem u(c, 0, coeffs_, c.capacity());
    KElem two = from_integer(c, 2);
    for (int it = 0; it < 16; ++it) {
        KElem corr = two - u * inv;
        inv = inv * corr;
        inv.prec_ = c.capacity();
        KElem check = u * inv - one(c);
        if (check.mantissa_val() >= c.capacity()) break;
    }
    KElem check = u * inv - one(c);
    if (check.mantissa_val() < c.capacity())
        throw BoundViolation("unit inversion failed to converge");
    inv.prec_ = prec_;
    return inv;
}

bool KElem::same_class(const KElem& o) const {
    require_same_ctx(o);
    KElem diff = *this - o;
    return diff.is_zero_to_prec();
}

std::string KElem::to_string() const {
    std::ostringstream os;
    os << "kappa^" << shift_ << " * (";
    for (int j = 0; j < ctx_->d(); ++j) {
        if (j) os << " + ";
        os << coeffs_[j];
        if (j) os << "*k^" << j;
    }
    os << ") [prec " << known_prec() << "]";
    return os.str();
}

KElem eigenvector(const PrimeCtx& ctx, long x) {
    if (x < 0 || x + ctx.d() >= ctx.capacity())
        throw PrecisionExhausted("eigenvector index too large for capacity " +
                                 std::to_string(ctx.capacity()));
    const int d = ctx.d();
    // (1/d) sum_m omega^{-xm} sigma^m(kappa^x); sigma^m(kappa^x) = kappa^x u^x
    // with u the unit cofactor of (1+kappa)^{r^m} - 1.
    KElem acc = KElem::zero(ctx);
    u64 rm = 1;
    for (int m = 0; m < d; ++m) {
        KElem unit(ctx, 0, ctx.frobenius_unit(static_cast<long>(rm)), ctx.capacity());
        KElem term = unit.pow_int(x).scaled(ctx.omega_pow(-x * m));
        acc = acc + term;
        rm = rm * ctx.r() % ctx.p();
    }
    acc = acc.scaled(ctx.inv_unit_mod(static_cast<u64>(d) % ctx.modulus()));
    KElem e = acc.div_kappa(-x); // attach kappa^x
    if (e.leading_coeff(x) != 1)
        throw BoundViolation("eigenvector normalization failed");
    return e;
}

} // namespace liep
