#include "fixtures.hpp"

#include <algorithm>

#include "blogrec/random.hpp"

namespace blogrec::testing {

std::vector<double> TableScorer::score(Index user, std::span<const Index> candidates) const {
  std::vector<double> s;
  for (Index b : candidates) s.push_back(table_.at(user).at(b));
  return s;
}

std::vector<double> HashScorer::score(Index user, std::span<const Index> candidates) const {
  std::vector<double> s;
  for (Index b : candidates) {
    const auto h = derive_seed(derive_seed(seed_, user), b);
    s.push_back(static_cast<double>(h >> 11) * 0x1.0p-53);
  }
  return s;
}

MetricFixture metric_fixture() {
  // pool sizes are 6 x |test|, matching five candidates per test blog
  const std::vector<std::string> ranks{
      "R.....",
      "...R..",
      "R.R.........",
      ".R..R.......",
      ".....R",
      "RRRRR" + std::string(25, '.'),
      "..R...",
      ".RRR" + std::string(14, '.'),
      "R.......R...",
      "....R....R..",
  };
  MetricFixture f;
  f.p1 = {1, 0, 1, 0, 0, 1, 0, 0, 1, 0};
  f.p5 = {0.2, 0.2, 0.4, 0.4, 0.0, 1.0, 0.2, 0.6, 0.2, 0.2};
  f.p10 = {0.1, 0.1, 0.2, 0.2, 0.1, 0.5, 0.1, 0.3, 0.2, 0.2};
  f.rr = {1.0, 0.25, 1.0, 0.5, 1.0 / 6.0, 1.0, 1.0 / 3.0, 0.5, 1.0, 0.2};
  f.mean_p1 = 0.4;
  f.mean_p5 = 0.34;
  f.mean_p10 = 0.2;
  f.mrr = 0.595;

  constexpr std::size_t kBlogs = 40;
  std::vector<std::vector<Index>> train(ranks.size());
  std::vector<std::vector<double>> table(ranks.size(), std::vector<double>(kBlogs, -1.0));
  f.split.test.resize(ranks.size());
  f.split.candidates.resize(ranks.size());
  for (std::size_t u = 0; u < ranks.size(); ++u) {
    const std::size_t pool = ranks[u].size();
    for (std::size_t pos = 0; pos < pool; ++pos) {
      // scatter ranks over blog ids so index order carries no signal
      const auto blog = static_cast<Index>((pos * 7 + u) % pool);
      table[u][blog] = static_cast<double>(pool - pos);
      (ranks[u][pos] == 'R' ? f.split.test[u] : f.split.candidates[u]).push_back(blog);
    }
    std::sort(f.split.test[u].begin(), f.split.test[u].end());
    std::sort(f.split.candidates[u].begin(), f.split.candidates[u].end());
    train[u] = {static_cast<Index>(30 + u)};
  }
  f.split.train = corpus::FollowGraph::from_rows(kBlogs, train);
  f.scorer = TableScorer(std::move(table));
  return f;
}

eval::EvalSplit one_plus_five_split(std::size_t users, std::uint64_t seed) {
  constexpr std::size_t kBlogs = 50;
  eval::EvalSplit split;
  split.seed = seed;
  split.test.resize(users);
  split.candidates.resize(users);
  std::vector<std::vector<Index>> train(users);
  Rng rng(seed);
  for (std::size_t u = 0; u < users; ++u) {
    train[u] = {static_cast<Index>(std::uniform_int_distribution<std::size_t>(0, kBlogs - 1)(rng))};
    auto six = sample_complement(kBlogs, train[u], 6, rng);
    std::shuffle(six.begin(), six.end(), rng);
    split.test[u] = {six[0]};
    split.candidates[u].assign(six.begin() + 1, six.end());
    std::sort(split.candidates[u].begin(), split.candidates[u].end());
  }
  split.train = corpus::FollowGraph::from_rows(kBlogs, train);
  return split;
}

}  // namespace blogrec::testing
