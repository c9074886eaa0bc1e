#include "blogrec/knn/recommender.hpp"

#include <string>

#include "blogrec/error.hpp"

namespace blogrec::knn {
namespace {

std::vector<double> pick(const std::vector<double>& dense, std::span<const Index> candidates) {
  std::vector<double> out;
  out.reserve(candidates.size());
  for (Index c : candidates) {
    if (c >= dense.size()) throw ContractError("candidate blog " + std::to_string(c) + " out of range");
    out.push_back(dense[c]);
  }
  return out;
}

}  // namespace

ItemCfScorer::ItemCfScorer(const corpus::FollowGraph& train, std::size_t k, Measure measure,
                           unsigned threads)
    : train_(&train), sim_(build_blog_sim(train, k, measure, threads)) {}

std::vector<double> ItemCfScorer::score(Index user, std::span<const Index> candidates) const {
  return pick(score_user({train_->followed(user), train_->num_blogs()}, sim_), candidates);
}

AppItemCfScorer::AppItemCfScorer(const corpus::FollowGraph& train, const corpus::AppUsage& usage,
                                 std::size_t k, BlendWeight alpha, Measure measure,
                                 unsigned threads)
    : train_(&train),
      app_rows_(usage.incidence()),
      blog_sim_(build_blog_sim(train, k, measure, threads)),
      app_sim_(build_app_blog_sim(train, usage, k, measure, threads)),
      alpha_(alpha) {}

std::vector<double> AppItemCfScorer::score(Index user, std::span<const Index> candidates) const {
  return pick(blend_score({app_rows_.row(user), app_rows_.cols()},
                          {train_->followed(user), train_->num_blogs()}, app_sim_, blog_sim_,
                          alpha_),
              candidates);
}

}  // namespace blogrec::knn
