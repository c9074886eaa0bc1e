#pragma once

#include <vector>

#include "blogrec/corpus/matrix.hpp"
#include "blogrec/eval/scorer.hpp"

namespace blogrec::eval {

// Non-personalized: every blog scores its training follower count.
class PopScorer final : public Scorer {
 public:
  explicit PopScorer(const corpus::FollowGraph& train);

  std::string name() const override { return "pop"; }
  std::vector<double> score(Index user, std::span<const Index> candidates) const override;

  std::span<const std::size_t> counts() const noexcept { return counts_; }

 private:
  std::vector<std::size_t> counts_;
};

PopScorer pop_baseline(const corpus::FollowGraph& train);

}  // namespace blogrec::eval
