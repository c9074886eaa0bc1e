#include <algorithm>

#include "blogrec/error.hpp"
#include "blogrec/eval/evaluate.hpp"
#include "blogrec/eval/split.hpp"
#include "blogrec/knn/recommender.hpp"

namespace blogrec::knn {

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

BlendWeight learn_alpha(const eval::EvalSplit& holdout, const corpus::AppUsage& usage,
                        std::span<const double> grid, std::size_t k, Measure measure,
                        unsigned threads) {
  if (grid.empty()) throw ConfigError("alpha grid is empty");
  for (double a : grid) (void)BlendWeight(a);  // range check up front

  AppItemCfScorer scorer(holdout.train, usage, k, BlendWeight(grid.front()), measure, threads);
  eval::EvalOptions options;
  options.ns = {1};
  options.threads = threads;

  double best_alpha = grid.front();
  double best_mrr = -1.0;
  for (double a : grid) {
    scorer.set_alpha(BlendWeight(a));
    const double mrr = eval::evaluate(scorer, holdout, options).mrr;
    if (mrr > best_mrr || (mrr == best_mrr && a < best_alpha)) {
      best_mrr = mrr;
      best_alpha = a;
    }
  }
  return BlendWeight(best_alpha);
}

}  // namespace blogrec::knn
