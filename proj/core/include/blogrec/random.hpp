#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "blogrec/corpus/vocab.hpp"

namespace blogrec {

using Rng = std::mt19937_64;

// `count` distinct values drawn uniformly from [0, universe) minus the sorted
// set `excluded`, returned in increasing order. Draws fewer when fewer remain.
std::vector<corpus::Index> sample_complement(std::size_t universe,
                                             std::span<const corpus::Index> excluded,
                                             std::size_t count, Rng& rng);

// ceil(frac * n), robust to representation error in frac (0.8 * 10 -> 8).
std::size_t ceil_fraction(double frac, std::size_t n);

// Stable per-stream seed derived from a base seed and a stream id.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace blogrec
