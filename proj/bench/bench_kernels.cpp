// Serial reference against the OpenMP path for the heavy kernels.

#include "qhe/borel.hpp"
#include "qhe/envelope.hpp"
#include "qhe/extensions.hpp"
#include "qhe/kernels.hpp"
#include "qhe/pipeline.hpp"
#include "qhe/qh.hpp"

#include <benchmark/benchmark.h>

#include <memory>
#include <string>

#ifndef QHE_CORPUS_DIR
#define QHE_CORPUS_DIR "corpus"
#endif

using namespace qhe;

namespace {

AlgebraPtr input(const char* name) {
    return load_algebra(std::string(QHE_CORPUS_DIR) + "/" + name + ".json").algebra;
}

const AlgebraPtr& a2() {
    static AlgebraPtr a = input("a2");
    return a;
}

const AlgebraPtr& a2_tilde() {
    static AlgebraPtr t = std::make_shared<const FiniteDimAlgebra>(tilde_extension(*a2()));
    return t;
}

Window window_for(const AlgebraPtr& a, int factor) {
    const int N = a->filtration_length();
    return Window::symmetric(factor * N, N);
}

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }
int factor_of(const benchmark::State& s) { return static_cast<int>(s.range(1)); }

void BM_build_C(benchmark::State& state) {
    Window w = window_for(a2(), factor_of(state));
    for (auto _ : state) benchmark::DoNotOptimize(build_C(a2(), w, exec_of(state)));
}

void BM_build_D(benchmark::State& state) {
    WindowedCategory c = build_C(a2_tilde(), window_for(a2_tilde(), factor_of(state)));
    for (auto _ : state) benchmark::DoNotOptimize(build_D(c, exec_of(state)));
}

void BM_associativity(benchmark::State& state) {
    WindowedCategory c = build_C(a2(), window_for(a2(), factor_of(state)));
    auto triples = sample_triples(*c.alg, 10000, 1);
    for (auto _ : state) benchmark::DoNotOptimize(check_associativity(*c.alg, triples, exec_of(state)));
}

void BM_certify_D(benchmark::State& state) {
    WindowedCategory c = build_C(a2_tilde(), window_for(a2_tilde(), factor_of(state)));
    WindowedCategory d = build_D(c);
    QHContext q = make_context(d, {OrderBase::first, true});
    for (auto _ : state) benchmark::DoNotOptimize(certify_quasi_hereditary(q, Side::left, exec_of(state)));
}

void BM_borel_suite(benchmark::State& state) {
    WindowedCategory c = build_C(a2(), window_for(a2(), factor_of(state)));
    for (auto _ : state) benchmark::DoNotOptimize(first_order_suite(c, nullptr, exec_of(state)));
}

// args: {parallel, window factor}
void sizes(benchmark::internal::Benchmark* b) {
    for (int par : {0, 1})
        for (int f : {4, 8}) b->Args({par, f});
    b->ArgNames({"parallel", "factor"})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_build_C)->Apply(sizes);
BENCHMARK(BM_build_D)->Apply(sizes);
BENCHMARK(BM_associativity)->Apply(sizes);
BENCHMARK(BM_certify_D)->Apply(sizes);
BENCHMARK(BM_borel_suite)->Apply(sizes);

BENCHMARK_MAIN();
