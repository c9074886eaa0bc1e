#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "blogrec/corpus/vocab.hpp"

namespace blogrec::corpus {

// Row-compressed sparse binary matrix. Each row holds strictly increasing
// column indices.
class BinaryCsr {
 public:
  BinaryCsr() = default;

  // Rows may arrive unsorted and with duplicates; both are normalized.
  // Throws ContractError if any column index is >= cols.
  static BinaryCsr from_rows(std::size_t cols, std::vector<std::vector<Index>> rows);

  std::size_t rows() const noexcept { return offsets_.size() - 1; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return indices_.size(); }

  std::span<const Index> row(std::size_t r) const;
  std::size_t row_size(std::size_t r) const { return offsets_[r + 1] - offsets_[r]; }
  bool contains(std::size_t r, Index c) const;

  // Per-column entry counts.
  std::vector<std::size_t> col_counts() const;
  BinaryCsr transpose() const;

  friend bool operator==(const BinaryCsr&, const BinaryCsr&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Index> indices_;
};

// The user × blog follow relation R. An entry means R_ij = 1; absence means
// unobserved.
class FollowGraph {
 public:
  FollowGraph() = default;
  explicit FollowGraph(BinaryCsr follows) : follows_(std::move(follows)) {}

  static FollowGraph from_rows(std::size_t num_blogs, std::vector<std::vector<Index>> rows) {
    return FollowGraph(BinaryCsr::from_rows(num_blogs, std::move(rows)));
  }

  std::size_t num_users() const noexcept { return follows_.rows(); }
  std::size_t num_blogs() const noexcept { return follows_.cols(); }
  std::size_t num_follows() const noexcept { return follows_.nnz(); }

  std::span<const Index> followed(std::size_t user) const { return follows_.row(user); }
  bool follows(std::size_t user, Index blog) const { return follows_.contains(user, blog); }

  const BinaryCsr& csr() const noexcept { return follows_; }
  std::vector<std::size_t> follower_counts() const { return follows_.col_counts(); }

  friend bool operator==(const FollowGraph&, const FollowGraph&) = default;

 private:
  BinaryCsr follows_;
};

struct AppCount {
  Index app;
  std::uint64_t count;

  friend bool operator==(const AppCount&, const AppCount&) = default;
};

struct AppRecord {
  Index user;
  Index app;
  std::uint64_t count;
};

inline constexpr std::size_t kDefaultTopApps = 10;

// The user × app usage matrix A after the per-user most-frequent filter.
class AppUsage {
 public:
  AppUsage() = default;

  // Repeated (user, app) records are summed. Per user only the top_k apps by
  // count are kept; ties go to the smaller app index. Rows are stored in app
  // index order.
  static AppUsage from_records(std::size_t num_users, std::size_t num_apps,
                               std::span<const AppRecord> records,
                               std::size_t top_k = kDefaultTopApps);

  std::size_t num_users() const noexcept { return offsets_.size() - 1; }
  std::size_t num_apps() const noexcept { return num_apps_; }
  std::size_t nnz() const noexcept { return entries_.size(); }

  std::span<const AppCount> row(std::size_t user) const;
  std::vector<Index> apps_of(std::size_t user) const;

  // Binary user × app presence matrix.
  BinaryCsr incidence() const;
  std::vector<std::size_t> user_counts() const;

  friend bool operator==(const AppUsage&, const AppUsage&) = default;

 private:
  std::size_t num_apps_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<AppCount> entries_;
};

}  // namespace blogrec::corpus
