#include "blogrec/knn/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "blogrec/error.hpp"

namespace blogrec::knn {

BlendWeight::BlendWeight(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigError("blend weight must lie in [0, 1], got " + std::to_string(alpha));
  }
}

std::vector<double> score_user(Incidence user_row, const SimMatrix& sim) {
  if (user_row.dim != sim.rows()) {
    throw ContractError("user row dimension " + std::to_string(user_row.dim) +
                        " does not match similarity rows " + std::to_string(sim.rows()));
  }
  std::vector<double> scores(sim.cols(), 0.0);
  for (Index s : user_row.support) {
    for (const auto& e : sim.row(s)) scores[e.target] += e.sim;
  }
  return scores;
}

std::vector<double> blend_score(Incidence app_row, Incidence blog_row, const SimMatrix& app_blog,
                                const SimMatrix& blog_blog, BlendWeight alpha) {
  if (app_blog.cols() != blog_blog.cols()) {
    throw ContractError("app and blog similarity matrices target different blog spaces");
  }
  const std::vector<double> from_apps = score_user(app_row, app_blog);
  std::vector<double> blended = score_user(blog_row, blog_blog);
  const double a = alpha.value();
  for (std::size_t i = 0; i < blended.size(); ++i) {
    blended[i] = a * from_apps[i] + (1.0 - a) * blended[i];
  }
  return blended;
}

std::vector<Index> recommend_topn(std::span<const double> scores, std::span<const Index> exclude,
                                  std::size_t n) {
  if (n < 1) throw ConfigError("recommend_topn needs n >= 1");
  std::vector<char> skip(scores.size(), 0);
  for (Index e : exclude) {
    if (e < scores.size()) skip[e] = 1;
  }
  std::vector<Index> pool;
  pool.reserve(scores.size());
  for (Index i = 0; i < scores.size(); ++i) {
    if (!skip[i]) pool.push_back(i);
  }
  const std::size_t take = std::min(n, pool.size());
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take), pool.end(),
                    [&](Index a, Index b) { return scores[a] != scores[b] ? scores[a] > scores[b] : a < b; });
  pool.resize(take);
  return pool;
}

}  // namespace blogrec::knn
