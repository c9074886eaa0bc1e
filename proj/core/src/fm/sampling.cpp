#include "blogrec/fm/sampling.hpp"

#include "blogrec/error.hpp"
#include "blogrec/random.hpp"

namespace blogrec::fm {
namespace {

constexpr std::uint64_t kNegativeStream = 0x6E65676174697665ULL;

}  // namespace

NegativeSample sample_negatives(const corpus::FollowGraph& graph, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0)) throw ConfigError("negative sampling ratio must be positive");
  NegativeSample out;
  for (std::size_t u = 0; u < graph.num_users(); ++u) {
    const auto followed = graph.followed(u);
    const std::size_t need = ceil_fraction(ratio, followed.size());
    if (need == 0) continue;
    Rng rng(derive_seed(seed ^ kNegativeStream, u));
    const auto blogs = sample_complement(graph.num_blogs(), followed, need, rng);
    if (blogs.size() < need) ++out.short_users;
    for (Index b : blogs) out.pairs.push_back({static_cast<Index>(u), b});
  }
  return out;
}

}  // namespace blogrec::fm
