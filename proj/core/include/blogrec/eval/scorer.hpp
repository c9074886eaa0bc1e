#pragma once

#include <span>
#include <string>
#include <vector>

#include "blogrec/corpus/vocab.hpp"

namespace blogrec::eval {

using corpus::Index;

// Anything that can rank candidate blogs for a user. Implementations must be
// safe to call concurrently through a const reference.
class Scorer {
 public:
  virtual ~Scorer() = default;

  virtual std::string name() const = 0;

  // One score per candidate, in candidate order. Higher is better.
  virtual std::vector<double> score(Index user, std::span<const Index> candidates) const = 0;
};

// Candidates by descending score, ties to the smaller blog index.
std::vector<Index> rank_by_score(std::span<const Index> candidates, std::span<const double> scores);

}  // namespace blogrec::eval
