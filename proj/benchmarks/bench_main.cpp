#include <benchmark/benchmark.h>

#include "rankinlab/analytic.hpp"
#include "rankinlab/eisen.hpp"
#include "rankinlab/forms.hpp"

using namespace rankinlab;

static void BM_theta_power_table(benchmark::State& state) {
    for (auto _ : state) {
        auto t = forms::theta_power_table_real(static_cast<int>(state.range(0)), 20000);
        benchmark::DoNotOptimize(t.data());
    }
}
BENCHMARK(BM_theta_power_table)->Arg(4)->Arg(8)->Arg(12);

static void BM_rep_numbers_3sq(benchmark::State& state) {
    for (auto _ : state) {
        auto t = forms::rep_numbers({{1, 1, 1}}, state.range(0));
        benchmark::DoNotOptimize(t.data());
    }
}
BENCHMARK(BM_rep_numbers_3sq)->Arg(2000)->Arg(20000);

static void BM_zeta_c(benchmark::State& state) {
    Complex s{2.5, 7.0};
    for (auto _ : state) benchmark::DoNotOptimize(analytic::zeta_c(s));
}
BENCHMARK(BM_zeta_c);

static void BM_scriptE_coeff(benchmark::State& state) {
    int64_t n = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eisen::scriptE_coeff(2, 100 + (n++ % 100)));
    }
}
BENCHMARK(BM_scriptE_coeff);

static void BM_eval_theta(benchmark::State& state) {
    Complex z{0.3, 0.02};
    for (auto _ : state) benchmark::DoNotOptimize(forms::eval_theta(z));
}
BENCHMARK(BM_eval_theta);

static void BM_cusp_system(benchmark::State& state) {
    for (auto _ : state) {
        auto s = forms::cusp_system(state.range(0));
        benchmark::DoNotOptimize(s.cusps.data());
    }
}
BENCHMARK(BM_cusp_system)->Arg(12)->Arg(120);

BENCHMARK_MAIN();
