#include "uniteq/numeric.hpp"
#include "uniteq/sieve13.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_square_filter(benchmark::State& state) {
    const uniteq::sieve13::SquareFilter filter;
    const auto ctx = filter.context(5, 1);
    unsigned long t = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(filter.may_be_square(ctx, t));
        t += 2;
        if (t > 2'000'000)
            t = 1;
    }
}
BENCHMARK(BM_square_filter);

void BM_ext_mult_order(benchmark::State& state) {
    const mpz_class m = 371293; // 13^5
    mpz_class a = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(uniteq::numeric::ext_mult_order(m, a));
        do {
            a += 1;
            if (a > 4096)
                a = 2;
        } while (a % 13 == 0);
    }
}
BENCHMARK(BM_ext_mult_order);

void BM_step1_range(benchmark::State& state) {
    const auto c = uniteq::sieve13::SieveCase::v();
    const uniteq::sieve13::SquareFilter filter;
    for (auto _ : state) {
        auto out = uniteq::sieve13::step1_range(c, 2, 4, 4, filter);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_step1_range);

} // namespace

BENCHMARK_MAIN();
