#pragma once

#include <string>
#include <vector>

#include "blogrec/eval/evaluate.hpp"
#include "blogrec/eval/scorer.hpp"
#include "blogrec/eval/split.hpp"

namespace blogrec::testing {

using corpus::Index;

// Scores looked up from a per-user table indexed by blog.
class TableScorer final : public eval::Scorer {
 public:
  explicit TableScorer(std::vector<std::vector<double>> table) : table_(std::move(table)) {}
  std::string name() const override { return "table"; }
  std::vector<double> score(Index user, std::span<const Index> candidates) const override;

 private:
  std::vector<std::vector<double>> table_;
};

// Uniform scores from a hash of (seed, user, blog).
class HashScorer final : public eval::Scorer {
 public:
  explicit HashScorer(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "random"; }
  std::vector<double> score(Index user, std::span<const Index> candidates) const override;

 private:
  std::uint64_t seed_;
};

// Ten users whose ranked pools are spelled out as strings, 'R' marking a
// relevant blog at that rank. Expected values are counted by hand.
struct MetricFixture {
  eval::EvalSplit split;
  TableScorer scorer{{}};
  std::vector<double> p1, p5, p10, rr;  // per user
  double mean_p1, mean_p5, mean_p10, mrr;
};

MetricFixture metric_fixture();

// `users` users, each with one test blog and five candidates among six blogs
// drawn per user, one train follow elsewhere.
eval::EvalSplit one_plus_five_split(std::size_t users, std::uint64_t seed);

}  // namespace blogrec::testing
