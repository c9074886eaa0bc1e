#pragma once

#include <span>
#include <string>
#include <vector>

#include "blogrec/corpus/matrix.hpp"
#include "blogrec/eval/scorer.hpp"
#include "blogrec/knn/scoring.hpp"
#include "blogrec/knn/similarity.hpp"

namespace blogrec::eval {
struct EvalSplit;
}

namespace blogrec::knn {

// ItemCF over the training follow graph. Keeps a pointer to `train`, which
// must outlive the scorer.
class ItemCfScorer final : public eval::Scorer {
 public:
  ItemCfScorer(const corpus::FollowGraph& train, std::size_t k, Measure measure = Measure::kCosine,
               unsigned threads = 1);

  std::string name() const override { return "itemcf"; }
  std::vector<double> score(Index user, std::span<const Index> candidates) const override;

  const SimMatrix& similarity() const noexcept { return sim_; }

 private:
  const corpus::FollowGraph* train_;
  SimMatrix sim_;
};

// App-aware ItemCF: blends the app→blog and blog→blog channels.
class AppItemCfScorer final : public eval::Scorer {
 public:
  AppItemCfScorer(const corpus::FollowGraph& train, const corpus::AppUsage& usage, std::size_t k,
                  BlendWeight alpha, Measure measure = Measure::kCosine, unsigned threads = 1);

  std::string name() const override { return "itemcf-app"; }
  std::vector<double> score(Index user, std::span<const Index> candidates) const override;

  BlendWeight alpha() const noexcept { return alpha_; }
  void set_alpha(BlendWeight alpha) noexcept { alpha_ = alpha; }

 private:
  const corpus::FollowGraph* train_;
  corpus::BinaryCsr app_rows_;
  SimMatrix blog_sim_;
  SimMatrix app_sim_;
  BlendWeight alpha_;
};

// 0.0, 0.1, ..., 1.0
std::vector<double> default_alpha_grid();

// Picks the grid value with the best MRR on `holdout`; ties to the smaller
// alpha. Similarities are built from holdout.train.
BlendWeight learn_alpha(const eval::EvalSplit& holdout, const corpus::AppUsage& usage,
                        std::span<const double> grid, std::size_t k,
                        Measure measure = Measure::kCosine, unsigned threads = 1);

}  // namespace blogrec::knn
