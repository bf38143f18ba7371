// Serial reference versus OpenMP kernel, one pair per parallel hot path.
#include <benchmark/benchmark.h>

#include <random>

#include "secretary/adversary.hpp"
#include "secretary/analysis.hpp"
#include "secretary/composition.hpp"
#include "secretary/derand.hpp"
#include "secretary/rs_families.hpp"

using namespace secretary;

namespace {

OrderDistribution random_support(int n, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Permutation> s;
    for (int i = 0; i < count; ++i) s.push_back(random_permutation(n, rng));
    return OrderDistribution::uniform(std::move(s));
}

void BM_worst_case_serial(benchmark::State& st) {
    const auto d = random_support(8, 64, 1);
    for (auto _ : st) benchmark::DoNotOptimize(worst_case_success_all_serial(d));
}
void BM_worst_case_parallel(benchmark::State& st) {
    const auto d = random_support(8, 64, 1);
    for (auto _ : st) benchmark::DoNotOptimize(worst_case_success_all(d));
}

const ValueAssignment& mc_values() {
    static const ValueAssignment v = [] {
        std::vector<double> x(200);
        for (int i = 0; i < 200; ++i) x[i] = (i * 37) % 200;
        return ValueAssignment(x);
    }();
    return v;
}
void BM_mc_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(mc_estimate_serial(SinglePolicy{74}, mc_values(), 200000, 3));
}
void BM_mc_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(mc_estimate(SinglePolicy{74}, mc_values(), 200000, 3));
}

void BM_concentration_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(concentration_check_serial(1000, 100, 500, 0.5, 100000, 4));
}
void BM_concentration_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(concentration_check(1000, 100, 500, 0.5, 100000, 4));
}

const ReductionFamily& verify_fam() {
    static const ReductionFamily f = build_single_code(4000, 17, 3);
    return f;
}
void BM_verify_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(verify_family_serial(verify_fam()));
}
void BM_verify_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(verify_family(verify_fam()));
}

void BM_compose_serial(benchmark::State& st) {
    const auto fam = build_single_code(2000, 7, 3);
    const auto small = OrderDistribution::all_permutations(7);
    for (auto _ : st) benchmark::DoNotOptimize(compose_serial(fam, small));
}
void BM_compose_parallel(benchmark::State& st) {
    const auto fam = build_single_code(2000, 7, 3);
    const auto small = OrderDistribution::all_permutations(7);
    for (auto _ : st) benchmark::DoNotOptimize(compose(fam, small));
}

const SemitoneSequence& capture_seq() {
    static const SemitoneSequence s = [] {
        std::mt19937_64 rng(5);
        return find_semitone({random_permutation(1024, rng)}, 10);
    }();
    return s;
}
MultiPolicy capture_policy() {
    MultiPolicy p;
    p.m = 512;
    p.k = 1;
    return p;
}
void BM_capture_serial(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(hard_capture_frequency_serial(capture_seq(), 1024, capture_policy(), 0.5, 20000, 6));
}
void BM_capture_parallel(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(hard_capture_frequency(capture_seq(), 1024, capture_policy(), 0.5, 20000, 6));
}

void BM_greedy_serial(benchmark::State& st) {
    GreedyOptions opt;
    opt.parallel = false;
    for (auto _ : st) benchmark::DoNotOptimize(greedy_find_single(6, 3, 2, 0.4, 0, opt));
}
void BM_greedy_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(greedy_find_single(6, 3, 2, 0.4, 0));
}

}  // namespace

BENCHMARK(BM_worst_case_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_worst_case_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_concentration_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_concentration_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compose_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compose_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_capture_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_capture_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_greedy_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_greedy_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
