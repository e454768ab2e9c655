#include <algorithm>

#include "doctest.h"
#include "liep/jacobi.hpp"
#include "liep/liering.hpp"

using namespace liep;

TEST_SUITE("howell") {

TEST_CASE("basic spans over Z/25") {
    HowellSpan s(5, 2, 2);
    s.add_generator({5, 0});
    s.add_generator({0, 5});
    CHECK(s.order_exponent() == 2);
    CHECK(s.contains({5, 5}));
    CHECK(s.contains({20, 10}));
    CHECK_FALSE(s.contains({1, 0}));
    CHECK_FALSE(s.contains({5, 1}));
}

TEST_CASE("howell closure makes trailing memberships visible") {
    HowellSpan s(5, 2, 2);
    s.add_generator({5, 1});
    // 5 * (5,1) = (0,5) is in the span; greedy reduction must see it
    CHECK(s.contains({0, 5}));
    CHECK(s.contains({5, 1}));
    CHECK(s.contains({10, 2}));
    CHECK_FALSE(s.contains({0, 1}));
    CHECK(s.order_exponent() == 2); // cyclic of order 25
}

TEST_CASE("displacing a pivot keeps the span") {
    HowellSpan s(5, 3, 3);
    s.add_generator({25, 5, 1});
    s.add_generator({5, 1, 0});
    s.add_generator({1, 0, 0});
    CHECK(s.contains({25, 5, 1}));
    CHECK(s.contains({5, 1, 0}));
    CHECK(s.contains({1, 2, 3}) == s.contains({0, 2, 3}) ); // (1,0,0) absorbs the lead
    CHECK(s.order_exponent() == 9);
}

TEST_CASE("zero span") {
    HowellSpan s(7, 2, 3);
    CHECK(s.is_zero());
    s.add_generator({0, 0, 0});
    CHECK(s.is_zero());
    CHECK(s.order_exponent() == 0);
}

} // TEST_SUITE

TEST_SUITE("liering") {

TEST_CASE("orders and size") {
    PrimeCtx ctx(5, PrimeCtx::default_precision(5, 6));
    HomGamma g = HomGamma::one_param(ctx, 6, 2);
    LieRing L(g, 21); // lambda for this gamma
    CHECK(L.orders() == std::vector<int>{4, 4, 4, 3});
    CHECK(L.order_exponent() == 15);
}

TEST_CASE("abelian quotients") {
    PrimeCtx ctx(7, 9);
    HomGamma g = HomGamma::one_param(ctx, 2, 3);
    LieRing L(g, 5); // m <= 2i+1, image vanishes mod p^m
    for (int j = 0; j < L.rank(); ++j)
        for (int k = j + 1; k < L.rank(); ++k)
            for (u64 c : L.bracket_coeffs(j, k)) CHECK(c == 0);
    CHECK(L.check_jacobi().ok);
    auto series = L.lower_central_series();
    CHECK(series.nilpotency_class == 1);
    CHECK(L.order_exponent() == 3);
}

TEST_CASE("bracket laws and the direct expansion") {
    PrimeCtx ctx(7, PrimeCtx::default_precision(7, 6));
    HomGamma g = HomGamma::one_param(ctx, 6, 2);
    LambdaReport rep = lambda_report(g);
    LieRing L(g, rep.lambda);

    SplitMix64 rng(12);
    auto rand_elem = [&]() {
        LElem e = L.zero();
        for (int j = 0; j < L.rank(); ++j) e.x[static_cast<size_t>(j)] = rng.next() >> 20;
        return L.add(e, L.zero()); // canonicalize
    };
    for (int t = 0; t < 6; ++t) {
        LElem x = rand_elem(), y = rand_elem();
        CHECK(L.is_zero(L.bracket(x, x)));
        CHECK(L.is_zero(L.add(L.bracket(x, y), L.bracket(y, x))));
    }

    // [g_j, g_k] reconstructs gamma(kappa^{i+j} ^ kappa^{i+k}) mod p^m
    for (int j = 0; j < L.rank(); ++j)
        for (int k = j + 1; k < L.rank(); ++k) {
            const auto& sc = L.bracket_coeffs(j, k);
            KElem sum = KElem::zero(ctx);
            for (int t = 0; t < L.rank(); ++t)
                sum = sum + KElem::kappa_pow(ctx, L.i() + t).scaled(sc[static_cast<size_t>(t)]);
            KElem direct = g.eval(KElem::kappa_pow(ctx, L.i() + j), KElem::kappa_pow(ctx, L.i() + k));
            CHECK((sum - direct).val() >= L.m());
        }
}

TEST_CASE("jacobi boundary at lambda") {
    PrimeCtx ctx(5, PrimeCtx::default_precision(5, 6));
    HomGamma g = HomGamma::one_param(ctx, 6, 2);
    LambdaReport rep = lambda_report(g);
    CHECK(rep.lambda == 21);

    LieRing at(g, rep.lambda);
    CHECK(at.check_jacobi().ok);

    LieRing beyond(g, rep.lambda + 1);
    auto jr = beyond.check_jacobi();
    CHECK_FALSE(jr.ok);
    CHECK(jr.witness[0] >= 0);

    auto series = at.lower_central_series();
    CHECK(series.nilpotency_class <= 4);
    CHECK(series.nilpotency_class > 1);
    // weakly decreasing term orders, and [L,L] is bounded by p^{m-2i-1}
    for (size_t n = 1; n < series.order_exponents.size(); ++n)
        CHECK(series.order_exponents[n] <= series.order_exponents[n - 1]);
    if (series.order_exponents.size() > 1)
        CHECK(series.order_exponents[1] <= at.m() - 2 * at.i() - 1);
}

TEST_CASE("theta acts as a ring automorphism") {
    PrimeCtx ctx(7, PrimeCtx::default_precision(7, 6));
    HomGamma g = HomGamma::one_param(ctx, 6, 3);
    LambdaReport rep = lambda_report(g);
    LieRing L(g, rep.lambda);

    for (int j = 0; j < L.rank(); ++j)
        for (int k = j + 1; k < L.rank(); ++k) {
            LElem lhs = L.theta_apply(L.bracket(L.generator(j), L.generator(k)));
            LElem rhs = L.bracket(L.theta_apply(L.generator(j)), L.theta_apply(L.generator(k)));
            CHECK(lhs == rhs);
        }

    // theta is invertible: its generator images span the whole ring
    int emax = *std::max_element(L.orders().begin(), L.orders().end());
    HowellSpan span(L.p(), emax, L.rank());
    for (int j = 0; j < L.rank(); ++j) {
        LElem img = L.theta_apply(L.generator(j));
        std::vector<u64> emb(L.rank());
        for (int t = 0; t < L.rank(); ++t) {
            u64 f = 1;
            for (int s = 0; s < emax - L.orders()[static_cast<size_t>(t)]; ++s) f *= L.p();
            emb[static_cast<size_t>(t)] = img.x[static_cast<size_t>(t)] * f;
        }
        span.add_generator(emb);
    }
    CHECK(span.order_exponent() == L.order_exponent());
}

TEST_CASE("input validation") {
    PrimeCtx ctx(5, 8);
    HomGamma g = HomGamma::one_param(ctx, 2, 2);
    CHECK_THROWS_AS(LieRing(g, 2), IndexOutOfRange);
    CHECK_THROWS_AS(LieRing(g, 1), IndexOutOfRange);
}

} // TEST_SUITE
