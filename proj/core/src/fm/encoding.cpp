#include "blogrec/fm/encoding.hpp"

#include <algorithm>

#include "blogrec/error.hpp"

namespace blogrec::fm {

SparseInstance encode_mf(std::size_t user, std::size_t blog, const FeatureSpace& space) {
  SparseInstance x;
  x.features = {{space.user_feature(user), 1.0}, {space.blog_feature(blog), 1.0}};
  return x;
}

SparseInstance encode_app_fm(std::size_t user, std::size_t blog, std::span<const Index> apps,
                             const FeatureSpace& space) {
  SparseInstance x = encode_mf(user, blog, space);
  const std::size_t first_app = x.features.size();
  for (Index a : apps) x.features.push_back({space.app_feature(a), 1.0});
  std::sort(x.features.begin() + static_cast<std::ptrdiff_t>(first_app), x.features.end(),
            [](const Feature& a, const Feature& b) { return a.index < b.index; });
  for (std::size_t i = first_app + 1; i < x.features.size(); ++i) {
    if (x.features[i - 1].index == x.features[i].index) {
      throw ContractError("duplicate app in app-FM encoding");
    }
  }
  return x;
}

}  // namespace blogrec::fm
