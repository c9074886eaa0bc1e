#include <benchmark/benchmark.h>

#include "blogrec/eval/synth.hpp"
#include "blogrec/knn/similarity.hpp"

namespace {

using namespace blogrec;

const eval::SynthCorpus& corpus() {
  static const auto c = eval::synth_generate(eval::SynthConfig{});
  return c;
}

void BM_BlogSim(benchmark::State& state) {
  const auto measure = state.range(0) ? knn::Measure::kPearson : knn::Measure::kCosine;
  const auto threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(knn::build_blog_sim(corpus().graph, 50, measure, threads).nnz());
  }
}
BENCHMARK(BM_BlogSim)->ArgsProduct({{0, 1}, {1, 4}})->Unit(benchmark::kMillisecond);

void BM_AppBlogSim(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        knn::build_app_blog_sim(corpus().graph, corpus().usage, 50).nnz());
  }
}
BENCHMARK(BM_AppBlogSim)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
