#include <random>

#include <benchmark/benchmark.h>

#include "blogrec/eval/synth.hpp"
#include "blogrec/fm/encoding.hpp"
#include "blogrec/fm/recommender.hpp"
#include "blogrec/fm/train.hpp"

namespace {

using namespace blogrec;

fm::FmModel random_model(std::size_t features, std::size_t k) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 0.1);
  fm::FmModel m(features, k);
  for (auto& w : m.linear()) w = g(rng);
  for (auto& z : m.factor_table()) z = g(rng);
  return m;
}

// Scoring cost is O(k * active features): MF has 2, app-FM up to 12.
void BM_Predict(benchmark::State& state) {
  const auto space = fm::FeatureSpace::app_fm(2000, 500, 100);
  const auto model = random_model(space.total(), static_cast<std::size_t>(state.range(1)));
  std::vector<corpus::Index> apps;
  for (corpus::Index a = 0; a < state.range(0); ++a) apps.push_back(a * 7);
  const auto x = fm::encode_app_fm(17, 42, apps, space);
  for (auto _ : state) benchmark::DoNotOptimize(fm::predict(model, x));
}
BENCHMARK(BM_Predict)->ArgsProduct({{0, 5, 10}, {5, 32}});

void BM_SgdEpoch(benchmark::State& state) {
  eval::SynthConfig sc;
  sc.users = 1000;
  sc.blogs = 300;
  const auto corpus = eval::synth_generate(sc);
  const auto enc = state.range(0) ? fm::Encoding::kAppFm : fm::Encoding::kMf;
  const auto* usage = state.range(0) ? &corpus.usage : nullptr;
  const auto space = enc == fm::Encoding::kAppFm
                         ? fm::FeatureSpace::app_fm(sc.users, sc.blogs, sc.apps)
                         : fm::FeatureSpace::mf(sc.users, sc.blogs);
  const auto data = fm::build_instances(corpus.graph, usage, space, 1.0, 3);
  fm::TrainConfig cfg;
  cfg.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(fm::train(data, space.total(), cfg).epoch_loss);
  state.SetItemsProcessed(state.iterations() * static_cast<long>(data.size()));
}
BENCHMARK(BM_SgdEpoch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
