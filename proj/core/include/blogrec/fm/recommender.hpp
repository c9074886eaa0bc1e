#pragma once

#include <span>
#include <string>
#include <vector>

#include "blogrec/corpus/matrix.hpp"
#include "blogrec/eval/scorer.hpp"
#include "blogrec/fm/model.hpp"
#include "blogrec/fm/train.hpp"

namespace blogrec::fm {

// Follows of `train` as label-1 instances plus sampled label-0 negatives,
// encoded for `space`. `usage` is required for the app-FM encoding.
std::vector<SparseInstance> build_instances(const corpus::FollowGraph& train,
                                            const corpus::AppUsage* usage,
                                            const FeatureSpace& space, double neg_ratio,
                                            std::uint64_t seed);

struct FmFit {
  FeatureSpace space;
  TrainResult result;
};

FmFit fit(const corpus::FollowGraph& train, const corpus::AppUsage* usage, Encoding encoding,
          const TrainConfig& config, const EpochCallback& on_epoch = {});

// Candidates by descending predicted score, ties to the smaller blog index.
// `apps` is ignored under the MF encoding.
std::vector<Index> score_candidates(const FmModel& model, const FeatureSpace& space, Index user,
                                    std::span<const Index> apps, std::span<const Index> candidates);

class FmScorer final : public eval::Scorer {
 public:
  // `usage` must outlive the scorer; nullptr for MF.
  FmScorer(FmModel model, FeatureSpace space, const corpus::AppUsage* usage);

  std::string name() const override;
  std::vector<double> score(Index user, std::span<const Index> candidates) const override;

  const FmModel& model() const noexcept { return model_; }
  const FeatureSpace& space() const noexcept { return space_; }

 private:
  FmModel model_;
  FeatureSpace space_;
  const corpus::AppUsage* usage_;
};

}  // namespace blogrec::fm
