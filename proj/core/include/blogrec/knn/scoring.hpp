#pragma once

#include <span>
#include <vector>

#include "blogrec/knn/similarity.hpp"

namespace blogrec::knn {

// Trade-off between the app channel (alpha) and the blog channel (1 - alpha).
class BlendWeight {
 public:
  // Throws ConfigError outside [0, 1].
  explicit BlendWeight(double alpha);
  double value() const noexcept { return alpha_; }

  friend bool operator==(const BlendWeight&, const BlendWeight&) = default;

 private:
  double alpha_;
};

// u S for a binary user row over sim.rows() sources. Dense over sim.cols().
std::vector<double> score_user(Incidence user_row, const SimMatrix& sim);

// alpha * (A_i S_a) + (1 - alpha) * (u_i S).
std::vector<double> blend_score(Incidence app_row, Incidence blog_row,
                                const SimMatrix& app_blog, const SimMatrix& blog_blog,
                                BlendWeight alpha);

// Top n targets by descending score, skipping `exclude`; ties to the smaller
// index.
std::vector<Index> recommend_topn(std::span<const double> scores, std::span<const Index> exclude,
                                  std::size_t n);

}  // namespace blogrec::knn
