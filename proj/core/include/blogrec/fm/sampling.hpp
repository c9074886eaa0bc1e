#pragma once

#include <cstdint>
#include <vector>

#include "blogrec/corpus/matrix.hpp"

namespace blogrec::fm {

using corpus::Index;

struct UserBlogPair {
  Index user;
  Index blog;

  friend bool operator==(const UserBlogPair&, const UserBlogPair&) = default;
};

struct NegativeSample {
  std::vector<UserBlogPair> pairs;  // grouped by user, blogs increasing
  // Users that did not have ceil(ratio * d) unfollowed blogs to draw from.
  std::size_t short_users = 0;
};

// ceil(ratio * d) unfollowed blogs per user, uniformly without replacement.
NegativeSample sample_negatives(const corpus::FollowGraph& graph, double ratio, std::uint64_t seed);

}  // namespace blogrec::fm
