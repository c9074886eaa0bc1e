#include "blogrec/corpus/vocab.hpp"

#include <limits>

#include "blogrec/error.hpp"

namespace blogrec::corpus {

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::kUser:
      return "user";
    case EntityKind::kBlog:
      return "blog";
    case EntityKind::kApp:
      return "app";
  }
  return "unknown";
}

Index Vocab::intern(std::string_view id) {
  auto [it, inserted] = forward_.try_emplace(std::string(id), static_cast<Index>(reverse_.size()));
  if (inserted) {
    if (reverse_.size() >= std::numeric_limits<Index>::max()) {
      throw DataError("vocabulary overflow for " + std::string(to_string(kind_)) + " ids");
    }
    reverse_.emplace_back(id);
  }
  return it->second;
}

std::optional<Index> Vocab::find(std::string_view id) const {
  auto it = forward_.find(std::string(id));
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocab::id(Index index) const {
  if (index >= reverse_.size()) {
    throw ContractError("vocab index " + std::to_string(index) + " out of range for " +
                        std::string(to_string(kind_)) + " vocabulary of size " +
                        std::to_string(reverse_.size()));
  }
  return reverse_[index];
}

}  // namespace blogrec::corpus
