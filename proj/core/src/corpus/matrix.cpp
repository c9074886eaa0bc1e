#include "blogrec/corpus/matrix.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "blogrec/error.hpp"

namespace blogrec::corpus {

BinaryCsr BinaryCsr::from_rows(std::size_t cols, std::vector<std::vector<Index>> rows) {
  BinaryCsr m;
  m.cols_ = cols;
  m.offsets_.reserve(rows.size() + 1);
  for (auto& r : rows) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    if (!r.empty() && r.back() >= cols) {
      throw ContractError("column index " + std::to_string(r.back()) +
                          " out of range for matrix with " + std::to_string(cols) + " columns");
    }
    m.indices_.insert(m.indices_.end(), r.begin(), r.end());
    m.offsets_.push_back(m.indices_.size());
  }
  return m;
}

std::span<const Index> BinaryCsr::row(std::size_t r) const {
  if (r >= rows()) {
    throw ContractError("row " + std::to_string(r) + " out of range (" + std::to_string(rows()) +
                        " rows)");
  }
  return std::span<const Index>(indices_).subspan(offsets_[r], offsets_[r + 1] - offsets_[r]);
}

bool BinaryCsr::contains(std::size_t r, Index c) const {
  auto rr = row(r);
  return std::binary_search(rr.begin(), rr.end(), c);
}

std::vector<std::size_t> BinaryCsr::col_counts() const {
  std::vector<std::size_t> counts(cols_, 0);
  for (Index c : indices_) ++counts[c];
  return counts;
}

BinaryCsr BinaryCsr::transpose() const {
  BinaryCsr t;
  t.cols_ = rows();
  auto counts = col_counts();
  t.offsets_.assign(cols_ + 1, 0);
  for (std::size_t c = 0; c < cols_; ++c) t.offsets_[c + 1] = t.offsets_[c] + counts[c];
  t.indices_.resize(indices_.size());
  std::vector<std::size_t> cursor(t.offsets_.begin(), t.offsets_.end() - 1);
  // Walking rows in order keeps every transposed row sorted.
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) {
      t.indices_[cursor[indices_[k]]++] = static_cast<Index>(r);
    }
  }
  return t;
}

AppUsage AppUsage::from_records(std::size_t num_users, std::size_t num_apps,
                                std::span<const AppRecord> records, std::size_t top_k) {
  if (top_k < 1) throw ConfigError("top_k must be at least 1");
  std::vector<std::map<Index, std::uint64_t>> per_user(num_users);
  for (const auto& rec : records) {
    if (rec.user >= num_users || rec.app >= num_apps) {
      throw ContractError("app record (" + std::to_string(rec.user) + ", " +
                          std::to_string(rec.app) + ") out of range");
    }
    if (rec.count == 0) throw ContractError("app usage count must be positive");
    per_user[rec.user][rec.app] += rec.count;
  }

  AppUsage usage;
  usage.num_apps_ = num_apps;
  usage.offsets_.reserve(num_users + 1);
  std::vector<AppCount> row;
  for (const auto& apps : per_user) {
    row.clear();
    for (const auto& [app, count] : apps) row.push_back({app, count});
    if (row.size() > top_k) {
      std::stable_sort(row.begin(), row.end(), [](const AppCount& a, const AppCount& b) {
        return a.count != b.count ? a.count > b.count : a.app < b.app;
      });
      row.resize(top_k);
      std::sort(row.begin(), row.end(),
                [](const AppCount& a, const AppCount& b) { return a.app < b.app; });
    }
    usage.entries_.insert(usage.entries_.end(), row.begin(), row.end());
    usage.offsets_.push_back(usage.entries_.size());
  }
  return usage;
}

std::span<const AppCount> AppUsage::row(std::size_t user) const {
  if (user >= num_users()) {
    throw ContractError("user " + std::to_string(user) + " out of range for app usage with " +
                        std::to_string(num_users()) + " users");
  }
  return std::span<const AppCount>(entries_).subspan(offsets_[user],
                                                     offsets_[user + 1] - offsets_[user]);
}

std::vector<Index> AppUsage::apps_of(std::size_t user) const {
  std::vector<Index> apps;
  for (const auto& e : row(user)) apps.push_back(e.app);
  return apps;
}

BinaryCsr AppUsage::incidence() const {
  std::vector<std::vector<Index>> rows(num_users());
  for (std::size_t u = 0; u < num_users(); ++u) rows[u] = apps_of(u);
  return BinaryCsr::from_rows(num_apps_, std::move(rows));
}

std::vector<std::size_t> AppUsage::user_counts() const {
  std::vector<std::size_t> counts(num_apps_, 0);
  for (const auto& e : entries_) ++counts[e.app];
  return counts;
}

}  // namespace blogrec::corpus
