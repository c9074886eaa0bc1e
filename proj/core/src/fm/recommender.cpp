#include "blogrec/fm/recommender.hpp"

#include <string>

#include "blogrec/error.hpp"
#include "blogrec/fm/encoding.hpp"
#include "blogrec/fm/sampling.hpp"

namespace blogrec::fm {

std::vector<SparseInstance> build_instances(const corpus::FollowGraph& train,
                                            const corpus::AppUsage* usage,
                                            const FeatureSpace& space, double neg_ratio,
                                            std::uint64_t seed) {
  const bool with_apps = space.encoding() == Encoding::kAppFm;
  if (with_apps && (usage == nullptr || usage->num_users() != train.num_users())) {
    throw ContractError("app-FM instances need app usage for every user");
  }
  std::vector<std::vector<Index>> apps(with_apps ? train.num_users() : 0);
  for (std::size_t u = 0; u < apps.size(); ++u) apps[u] = usage->apps_of(u);

  auto encode = [&](Index u, Index b, double label) {
    SparseInstance x = with_apps ? encode_app_fm(u, b, apps[u], space) : encode_mf(u, b, space);
    x.label = label;
    return x;
  };

  std::vector<SparseInstance> instances;
  for (std::size_t u = 0; u < train.num_users(); ++u) {
    for (Index b : train.followed(u)) instances.push_back(encode(static_cast<Index>(u), b, 1.0));
  }
  for (const auto& [u, b] : sample_negatives(train, neg_ratio, seed).pairs) {
    instances.push_back(encode(u, b, 0.0));
  }
  return instances;
}

FmFit fit(const corpus::FollowGraph& train, const corpus::AppUsage* usage, Encoding encoding,
          const TrainConfig& config, const EpochCallback& on_epoch) {
  config.validate();
  FeatureSpace space = FeatureSpace::mf(train.num_users(), train.num_blogs());
  if (encoding == Encoding::kAppFm) {
    if (usage == nullptr) throw ContractError("app-FM needs app usage");
    space = FeatureSpace::app_fm(train.num_users(), train.num_blogs(), usage->num_apps());
  }
  const auto instances = build_instances(train, usage, space, config.neg_ratio, config.seed);
  return {space, fm::train(instances, space.total(), config, on_epoch)};
}

namespace {

std::vector<double> predict_candidates(const FmModel& model, const FeatureSpace& space, Index user,
                                       std::span<const Index> apps,
                                       std::span<const Index> candidates) {
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (Index c : candidates) {
    const SparseInstance x = space.encoding() == Encoding::kAppFm
                                 ? encode_app_fm(user, c, apps, space)
                                 : encode_mf(user, c, space);
    scores.push_back(predict(model, x));
  }
  return scores;
}

}  // namespace

std::vector<Index> score_candidates(const FmModel& model, const FeatureSpace& space, Index user,
                                    std::span<const Index> apps, std::span<const Index> candidates) {
  return eval::rank_by_score(candidates, predict_candidates(model, space, user, apps, candidates));
}

FmScorer::FmScorer(FmModel model, FeatureSpace space, const corpus::AppUsage* usage)
    : model_(std::move(model)), space_(space), usage_(usage) {
  if (space_.total() != model_.num_features()) {
    throw ContractError("feature space and model disagree on feature count");
  }
  if (space_.encoding() == Encoding::kAppFm && usage_ == nullptr) {
    throw ContractError("app-FM scorer needs app usage");
  }
}

std::string FmScorer::name() const { return std::string(to_string(space_.encoding())); }

std::vector<double> FmScorer::score(Index user, std::span<const Index> candidates) const {
  std::vector<Index> apps;
  if (space_.encoding() == Encoding::kAppFm) apps = usage_->apps_of(user);
  return predict_candidates(model_, space_, user, apps, candidates);
}

}  // namespace blogrec::fm
