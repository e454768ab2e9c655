// Compares the parallel lambda scan (mod-p short-circuit + OpenMP) against
// the serial full-arithmetic reference on a few representative inputs.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "liep/jacobi.hpp"

using namespace liep;

namespace {

template <typename F>
double time_ms(F&& f, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void bench_case(const char* label, const HomGamma& g, int reps) {
    LambdaReport fast{}, slow{};
    double t_fast = time_ms([&] { fast = lambda_report(g); }, reps);
    double t_slow = time_ms([&] { slow = lambda_report_serial(g); }, reps);
    bool agree = fast.lambda == slow.lambda && fast.witness == slow.witness;
    std::printf("%-28s lambda=%3ld  kernel %8.2f ms  reference %8.2f ms  speedup %5.2fx  %s\n",
                label, fast.lambda, t_fast, t_slow, t_slow / t_fast,
                agree ? "agree" : "DISAGREE");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; kernel still uses the mod-p short-circuit\n");
#endif

    {
        PrimeCtx ctx(7, PrimeCtx::default_precision(7, 5));
        HomGamma g = HomGamma::one_param(ctx, 5, 3);
        bench_case("p=7  theta_3  i=5", g, 5);
    }
    {
        PrimeCtx ctx(13, PrimeCtx::default_precision(13, 4));
        HomGamma g = HomGamma::one_param(ctx, 4, 5);
        bench_case("p=13 theta_5  i=4", g, 3);
    }
    {
        PrimeCtx ctx(13, PrimeCtx::default_precision(13, 12));
        SplitMix64 rng(99);
        HomGamma g = random_surjective_gamma(ctx, 12, rng);
        bench_case("p=13 mixed    i=12", g, 3);
    }
    return 0;
}
