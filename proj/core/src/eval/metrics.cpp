#include "blogrec/eval/metrics.hpp"

#include <algorithm>

#include "blogrec/error.hpp"

namespace blogrec::eval {
namespace {

bool is_relevant(std::span<const corpus::Index> relevant, corpus::Index item) {
  return std::find(relevant.begin(), relevant.end(), item) != relevant.end();
}

}  // namespace

double precision_at(std::span<const corpus::Index> ranked, std::span<const corpus::Index> relevant,
                    std::size_t n) {
  if (n < 1) throw ConfigError("precision_at needs n >= 1");
  const std::size_t depth = std::min(n, ranked.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < depth; ++i) hits += is_relevant(relevant, ranked[i]) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(n);
}

double reciprocal_rank(std::span<const corpus::Index> ranked,
                       std::span<const corpus::Index> relevant) {
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (is_relevant(relevant, ranked[i])) return 1.0 / static_cast<double>(i + 1);
  }
  return 0.0;
}

}  // namespace blogrec::eval
