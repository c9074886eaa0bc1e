#pragma once

#include <span>

#include "blogrec/corpus/vocab.hpp"

namespace blogrec::eval {

// |top-n ∩ relevant| / n. Short lists still divide by n.
double precision_at(std::span<const corpus::Index> ranked, std::span<const corpus::Index> relevant,
                    std::size_t n);

// 1 / rank of the first relevant item, 0 if none appears.
double reciprocal_rank(std::span<const corpus::Index> ranked,
                       std::span<const corpus::Index> relevant);

}  // namespace blogrec::eval
