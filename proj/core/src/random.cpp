#include "blogrec/random.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace blogrec {

std::vector<corpus::Index> sample_complement(std::size_t universe,
                                             std::span<const corpus::Index> excluded,
                                             std::size_t count, Rng& rng) {
  const std::size_t available = universe - std::min(universe, excluded.size());
  const std::size_t take = std::min(count, available);
  if (take == 0) return {};

  // Floyd's algorithm on ranks within the complement.
  std::unordered_set<std::size_t> picked;
  picked.reserve(take * 2);
  std::vector<std::size_t> ranks;
  ranks.reserve(take);
  for (std::size_t j = available - take; j < available; ++j) {
    std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
    if (!picked.insert(t).second) {
      picked.insert(j);
      t = j;
    }
    ranks.push_back(t);
  }
  std::sort(ranks.begin(), ranks.end());

  std::vector<corpus::Index> out;
  out.reserve(take);
  std::size_t skipped = 0;
  for (std::size_t r : ranks) {
    std::size_t value = r + skipped;
    while (skipped < excluded.size() && excluded[skipped] <= value) {
      ++skipped;
      value = r + skipped;
    }
    out.push_back(static_cast<corpus::Index>(value));
  }
  return out;
}

std::size_t ceil_fraction(double frac, std::size_t n) {
  const double raw = std::ceil(frac * static_cast<double>(n) - 1e-9);
  return raw <= 0.0 ? 0 : static_cast<std::size_t>(raw);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace blogrec
