#include <benchmark/benchmark.h>

#include "dpc/oracle.hpp"
#include "dpc/path_compress.hpp"
#include "dpc/tree_marking.hpp"

namespace {

using namespace dpc;

// Central edge 0 = (1, 2) with `n_left` leaf subtrees on the left endpoint
// and `n_right` on the right.
WeightedGraph broom(int n_left, int n_right) {
    std::vector<WeightedGraph::EdgeInput> edges;
    edges.push_back({1, 2, Rational(5), 0});
    for (int i = 0; i < n_left; ++i) edges.push_back({1, 100 + i, Rational(1 + i % 3), 0});
    for (int j = 0; j < n_right; ++j) edges.push_back({2, 200 + j, Rational(2 + j % 4), 0});
    return WeightedGraph::build(edges);
}

WeightedGraph long_path(int n) {
    std::vector<WeightedGraph::EdgeInput> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, Rational(1 + (i * 7) % 9), 0});
    return WeightedGraph::build(edges);
}

void bench_enumerate(benchmark::State& state, Exec exec) {
    const WeightedGraph tree = broom(9, 9);
    const OptimalMarking om = optimal_marking(tree, 0);
    for (auto _ : state) {
        auto v = enumerate_markings(tree, 0, om.marking, om.unit_count, kEnumerationCap, exec);
        benchmark::DoNotOptimize(v);
    }
}

void bench_grid(benchmark::State& state, Exec exec) {
    const WeightedGraph p = long_path(8);
    const ContractionRequest req = make_request(p, {3});
    const PathMergePlan plan = merge_single_edge(p, 3);
    GridSpec spec;
    spec.step = Rational(1, 64);
    spec.ranges = {{Rational(0), Rational(8)}, {Rational(0), Rational(8)}};
    const std::vector<EdgeId> vary = {2, 4};
    for (auto _ : state) {
        auto v = grid_search_path(p, req, plan.redistribution, spec, vary, kGridCellCap, exec);
        benchmark::DoNotOptimize(v);
    }
}

void bench_sample(benchmark::State& state, Exec exec) {
    const WeightedGraph p = long_path(10);
    const ContractionRequest req = make_request(p, {4});
    const PathMergePlan plan = merge_single_edge(p, 4);
    for (auto _ : state) {
        auto v = sample_redistributions(p, req, plan.redistribution, 2000, 42, true, exec);
        benchmark::DoNotOptimize(v);
    }
}

void BM_EnumerateSerial(benchmark::State& s) { bench_enumerate(s, Exec::Serial); }
void BM_EnumerateParallel(benchmark::State& s) { bench_enumerate(s, Exec::Parallel); }
void BM_GridSerial(benchmark::State& s) { bench_grid(s, Exec::Serial); }
void BM_GridParallel(benchmark::State& s) { bench_grid(s, Exec::Parallel); }
void BM_SampleSerial(benchmark::State& s) { bench_sample(s, Exec::Serial); }
void BM_SampleParallel(benchmark::State& s) { bench_sample(s, Exec::Parallel); }

}  // namespace

BENCHMARK(BM_EnumerateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
