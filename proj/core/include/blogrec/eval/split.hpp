#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "blogrec/corpus/matrix.hpp"
#include "blogrec/corpus/vocab.hpp"

namespace blogrec::eval {

using corpus::Index;

// Per-user train/test partition of the follow graph with sampled negative
// candidates for the ranking protocol.
struct EvalSplit {
  corpus::FollowGraph train;
  std::vector<std::vector<Index>> test;        // sorted, disjoint from train
  std::vector<std::vector<Index>> candidates;  // sorted, disjoint from train and test
  std::uint64_t seed = 0;

  std::size_t num_users() const noexcept { return test.size(); }
};

struct SplitConfig {
  double train_frac = 0.8;
  std::size_t neg_mult = 5;
  std::uint64_t seed = 42;
};

// Shuffles each user's follows, puts the first ceil(train_frac * d) in train
// and the rest in test. Users with one follow are train-only. Each user gets
// neg_mult * |test| candidates drawn from blogs they do not follow.
EvalSplit split_follows(const corpus::FollowGraph& graph, const SplitConfig& config = {});

// train.tsv, test.tsv (user<TAB>blog) and candidates.tsv in `dir`.
void write_split(const std::filesystem::path& dir, const EvalSplit& split,
                 const corpus::Vocab& users, const corpus::Vocab& blogs);

}  // namespace blogrec::eval
