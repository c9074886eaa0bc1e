#pragma once

#include <span>

#include "blogrec/fm/model.hpp"

namespace blogrec::fm {

// Two one-hot entries: user p and blog m+q.
SparseInstance encode_mf(std::size_t user, std::size_t blog, const FeatureSpace& space);

// MF entries plus one entry per app the user uses, at m+n+a. `apps` may be in
// any order but must be duplicate-free.
SparseInstance encode_app_fm(std::size_t user, std::size_t blog, std::span<const Index> apps,
                             const FeatureSpace& space);

}  // namespace blogrec::fm
