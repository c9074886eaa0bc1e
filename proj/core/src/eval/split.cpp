#include "blogrec/eval/split.hpp"

#include <algorithm>
#include <fstream>

#include "blogrec/error.hpp"
#include "blogrec/random.hpp"

namespace blogrec::eval {

EvalSplit split_follows(const corpus::FollowGraph& graph, const SplitConfig& config) {
  if (!(config.train_frac > 0.0 && config.train_frac < 1.0)) {
    throw ConfigError("train_frac must lie in (0, 1)");
  }
  const std::size_t m = graph.num_users();
  EvalSplit split;
  split.seed = config.seed;
  split.test.resize(m);
  split.candidates.resize(m);
  std::vector<std::vector<Index>> train_rows(m);

  for (std::size_t u = 0; u < m; ++u) {
    auto followed = graph.followed(u);
    std::vector<Index> order(followed.begin(), followed.end());
    if (order.size() <= 1) {
      train_rows[u] = std::move(order);
      continue;
    }
    Rng rng(derive_seed(config.seed, u));
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t n_train = std::clamp<std::size_t>(
        ceil_fraction(config.train_frac, order.size()), 1, order.size());
    train_rows[u].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    auto& test = split.test[u];
    test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
    std::sort(test.begin(), test.end());
    split.candidates[u] =
        sample_complement(graph.num_blogs(), followed, config.neg_mult * test.size(), rng);
  }
  split.train = corpus::FollowGraph::from_rows(graph.num_blogs(), std::move(train_rows));
  return split;
}

namespace {

void write_rows(const std::filesystem::path& path, const std::vector<std::vector<Index>>& rows,
                const corpus::Vocab& users, const corpus::Vocab& blogs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (std::size_t u = 0; u < rows.size(); ++u) {
    for (Index b : rows[u]) out << users.id(static_cast<Index>(u)) << '\t' << blogs.id(b) << '\n';
  }
}

}  // namespace

void write_split(const std::filesystem::path& dir, const EvalSplit& split,
                 const corpus::Vocab& users, const corpus::Vocab& blogs) {
  std::vector<std::vector<Index>> train(split.train.num_users());
  for (std::size_t u = 0; u < train.size(); ++u) {
    auto r = split.train.followed(u);
    train[u].assign(r.begin(), r.end());
  }
  write_rows(dir / "train.tsv", train, users, blogs);
  write_rows(dir / "test.tsv", split.test, users, blogs);
  write_rows(dir / "candidates.tsv", split.candidates, users, blogs);
}

}  // namespace blogrec::eval
