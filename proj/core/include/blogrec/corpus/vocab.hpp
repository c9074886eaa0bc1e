#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace blogrec::corpus {

using Index = std::uint32_t;

enum class EntityKind { kUser, kBlog, kApp };

std::string_view to_string(EntityKind kind);

// Bijection between external string ids and dense indices 0..size()-1.
// Indices are handed out in first-seen order.
class Vocab {
 public:
  explicit Vocab(EntityKind kind) : kind_(kind) {}

  EntityKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return reverse_.size(); }
  bool empty() const noexcept { return reverse_.empty(); }

  // Returns the existing index for `id`, or assigns the next one.
  Index intern(std::string_view id);
  std::optional<Index> find(std::string_view id) const;

  const std::string& id(Index index) const;
  std::span<const std::string> ids() const noexcept { return reverse_; }

  friend bool operator==(const Vocab& a, const Vocab& b) {
    return a.kind_ == b.kind_ && a.reverse_ == b.reverse_;
  }

 private:
  EntityKind kind_;
  std::unordered_map<std::string, Index> forward_;
  std::vector<std::string> reverse_;
};

}  // namespace blogrec::corpus
