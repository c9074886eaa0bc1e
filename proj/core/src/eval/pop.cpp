#include "blogrec/eval/pop.hpp"

#include <string>

#include "blogrec/error.hpp"

namespace blogrec::eval {

PopScorer::PopScorer(const corpus::FollowGraph& train) : counts_(train.follower_counts()) {
  if (train.num_follows() == 0) throw DataError("popularity baseline needs a nonempty train graph");
}

std::vector<double> PopScorer::score(Index /*user*/, std::span<const Index> candidates) const {
  std::vector<double> out;
  out.reserve(candidates.size());
  for (Index c : candidates) {
    if (c >= counts_.size()) throw ContractError("candidate blog " + std::to_string(c) + " out of range");
    out.push_back(static_cast<double>(counts_[c]));
  }
  return out;
}

PopScorer pop_baseline(const corpus::FollowGraph& train) { return PopScorer(train); }

}  // namespace blogrec::eval
