#include "liep/jacobi.hpp"

#include <algorithm>
#include <tuple>

namespace liep {

KElem jacobi_value(const HomGamma& g, const KElem& u, const KElem& v, const KElem& w) {
    return g.eval(g.eval(u, v), w) + g.eval(g.eval(v, w), u) + g.eval(g.eval(w, u), v);
}

JTable::JTable(const HomGamma& g) {
    const CoeffTable& t = g.coeff_table();
    d_ = t.size();
    base_ = g.i();
    long rho = t.rho();
    cube_.assign(static_cast<size_t>(d_) * d_ * d_, 0);
    const long p = static_cast<long>(g.ctx().p());
    for (long j = base_; j < base_ + d_; ++j)
        for (long k = base_; k < base_ + d_; ++k)
            for (long l = base_; l < base_ + d_; ++l) {
                long s = static_cast<long>(t.at(j, k)) * t.at(j + k + rho, l) +
                         static_cast<long>(t.at(k, l)) * t.at(k + l + rho, j) +
                         static_cast<long>(t.at(l, j)) * t.at(l + j + rho, k);
                size_t idx = static_cast<size_t>(j - base_) * d_ * d_ +
                             static_cast<size_t>(k - base_) * d_ + static_cast<size_t>(l - base_);
                cube_[idx] = static_cast<int>(s % p);
            }
    used_extension_ = t.used_extension();
}

int JTable::at(long j, long k, long l) const {
    auto red = [this](long x) {
        long off = (x - base_) % d_;
        return off < 0 ? off + d_ : off;
    };
    return cube_[static_cast<size_t>(red(j)) * d_ * d_ + static_cast<size_t>(red(k)) * d_ +
                 static_cast<size_t>(red(l))];
}

JTable j_table(const HomGamma& g) { return JTable(g); }

namespace {

struct TripleVal {
    long val;
    long j, k, l;
};

LambdaReport finish_report(const HomGamma& g, const std::vector<TripleVal>& vals) {
    const PrimeCtx& ctx = g.ctx();
    const long i = g.i(), d = ctx.d();
    LambdaReport rep;
    rep.p = ctx.p();
    rep.i = i;
    rep.rho = g.offset();
    rep.v = g.v();
    rep.lower_bound = 3 * i + 3 + 2 * rep.v;
    rep.upper_bound = 3 * i + 3 * d - 6 + 2 * rep.rho;

    long best = kValInfinity;
    std::array<long, 3> witness{-1, -1, -1};
    for (const TripleVal& t : vals) {
        if (t.val < best) {
            best = t.val;
            witness = {t.j, t.k, t.l};
        }
    }
    if (best == kValInfinity)
        throw PrecisionExhausted("no Jacobi value resolved below capacity; lambda not certified");
    rep.lambda = best;
    rep.witness = witness;
    rep.y_main = rep.lambda - (3 * i + 13 - 2 * static_cast<long>(ctx.p()));
    if (rep.lambda < rep.lower_bound || rep.lambda > rep.upper_bound || rep.y_main < 0)
        throw BoundViolation("lambda = " + std::to_string(rep.lambda) +
                             " escapes its certified bounds [" + std::to_string(rep.lower_bound) +
                             ", " + std::to_string(rep.upper_bound) + "]");
    return rep;
}

// Certified valuation of one Jacobi basis value, or kValInfinity when it
// vanishes to precision; in the latter case the precision must already sit
// above the proven upper bound so the triple cannot carry the minimum.
long certified_or_infinite(const KElem& jv, long upper_bound) {
    long v = jv.val();
    if (v == kValInfinity || v >= jv.known_prec()) {
        if (jv.known_prec() <= upper_bound)
            throw PrecisionExhausted("Jacobi value unresolved below the lambda upper bound");
        return kValInfinity;
    }
    return v;
}

} // namespace

LambdaReport lambda_report(const HomGamma& g) {
    const PrimeCtx& ctx = g.ctx();
    const long i = g.i(), d = ctx.d();
    const long rho = g.offset();
    const long upper = 3 * i + 3 * d - 6 + 2 * rho;
    JTable jt(g);

    std::vector<std::tuple<long, long, long>> triples;
    triples.reserve(static_cast<size_t>(d) * (d - 1) * (d - 2) / 6);
    for (long j = i; j < i + d; ++j)
        for (long k = j + 1; k < i + d; ++k)
            for (long l = k + 1; l < i + d; ++l) triples.emplace_back(j, k, l);

    std::vector<TripleVal> vals(triples.size());
    std::vector<size_t> slow; // triples whose mod-p invariant vanishes
    for (size_t t = 0; t < triples.size(); ++t) {
        auto [j, k, l] = triples[t];
        if (int e = jt.at(j, k, l); e != 0) {
            vals[t] = {j + k + l + 2 * rho, j, k, l};
        } else {
            vals[t] = {kValInfinity, j, k, l};
            slow.push_back(t);
        }
    }

#pragma omp parallel for schedule(dynamic)
    for (long s = 0; s < static_cast<long>(slow.size()); ++s) {
        size_t t = slow[static_cast<size_t>(s)];
        auto [j, k, l] = triples[t];
        KElem jv = jacobi_value(g, KElem::kappa_pow(ctx, j), KElem::kappa_pow(ctx, k),
                                KElem::kappa_pow(ctx, l));
        vals[t].val = certified_or_infinite(jv, upper);
    }

    return finish_report(g, vals);
}

LambdaReport lambda_report_serial(const HomGamma& g) {
    const PrimeCtx& ctx = g.ctx();
    const long i = g.i(), d = ctx.d();
    const long upper = 3 * i + 3 * d - 6 + 2 * g.offset();
    std::vector<TripleVal> vals;
    for (long j = i; j < i + d; ++j)
        for (long k = j + 1; k < i + d; ++k)
            for (long l = k + 1; l < i + d; ++l) {
                KElem jv = jacobi_value(g, KElem::kappa_pow(ctx, j), KElem::kappa_pow(ctx, k),
                                        KElem::kappa_pow(ctx, l));
                vals.push_back({certified_or_infinite(jv, upper), j, k, l});
            }
    return finish_report(g, vals);
}

long y_one_param(const HomGamma& g) {
    if (!g.one_param_index())
        throw NotOneParameter("y is defined for gamma = c theta_a with c a unit");
    LambdaReport rep = lambda_report(g);
    long y = rep.lambda - (3 * g.i() + 3);
    if (y < 0 || y > 2)
        throw BoundViolation("one-parameter y = " + std::to_string(y) + " outside {0,1,2}");
    if (g.ctx().p() == 5 && y != 0)
        throw BoundViolation("p = 5 must give y = 0, got " + std::to_string(y));
    return y;
}

} // namespace liep
