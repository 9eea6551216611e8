// Fast kernels against the serial dense reference.

#include <benchmark/benchmark.h>

#include <random>

#include "qcs/canon.hpp"
#include "qcs/db.hpp"
#include "qcs/reference.hpp"

using namespace qcs;

namespace {

Circuit random_circuit(int n, int depth, unsigned seed) {
    std::mt19937_64 rng(seed);
    const auto layers = enumerate_layers(n, gate_set(GateSetId::CliffordT));
    std::uniform_int_distribution<std::size_t> pick(0, layers.size() - 1);
    Circuit c(n);
    for (int d = 0; d < depth; ++d) c.push_back(layers[pick(rng)]);
    return c;
}

void BM_matmul_fast(benchmark::State& st) {
    const auto n = static_cast<int>(st.range(0));
    const RingMatrix a = evaluate(random_circuit(n, 6, 1)), b = evaluate(random_circuit(n, 6, 2));
    for (auto _ : st) benchmark::DoNotOptimize(matmul(a, b));
}

void BM_matmul_reference(benchmark::State& st) {
    const auto n = static_cast<int>(st.range(0));
    const RingMatrix a = evaluate(random_circuit(n, 6, 1)), b = evaluate(random_circuit(n, 6, 2));
    for (auto _ : st) benchmark::DoNotOptimize(reference::matmul(a, b));
}

void BM_evaluate_fast(benchmark::State& st) {
    const Circuit c = random_circuit(static_cast<int>(st.range(0)), 8, 3);
    for (auto _ : st) benchmark::DoNotOptimize(evaluate(c));
}

void BM_evaluate_reference(benchmark::State& st) {
    const Circuit c = random_circuit(static_cast<int>(st.range(0)), 8, 3);
    for (auto _ : st) benchmark::DoNotOptimize(reference::evaluate(c));
}

void BM_canonical_fast(benchmark::State& st) {
    const auto n = static_cast<int>(st.range(0));
    const RingMatrix u = evaluate(random_circuit(n, 6, 4));
    const Canonicalizer& canon = canonicalizer(n);
    for (auto _ : st) benchmark::DoNotOptimize(canon.key(u));
}

void BM_canonical_reference(benchmark::State& st) {
    const RingMatrix u = evaluate(random_circuit(static_cast<int>(st.range(0)), 6, 4));
    for (auto _ : st) benchmark::DoNotOptimize(reference::canonical_key(u));
}

void BM_generate_parallel(benchmark::State& st) {
    GenerateOptions o;
    o.threads = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(generate(2, GateSetId::CliffordT, 4, DbMode::Classed, o));
}

void BM_generate_reference(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(reference::generate(2, GateSetId::CliffordT, 4, DbMode::Classed));
}

}  // namespace

BENCHMARK(BM_matmul_fast)->DenseRange(1, 3);
BENCHMARK(BM_matmul_reference)->DenseRange(1, 3);
BENCHMARK(BM_evaluate_fast)->DenseRange(1, 3);
BENCHMARK(BM_evaluate_reference)->DenseRange(1, 3);
BENCHMARK(BM_canonical_fast)->DenseRange(1, 3);
BENCHMARK(BM_canonical_reference)->DenseRange(1, 3);
BENCHMARK(BM_generate_parallel)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_generate_reference)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
