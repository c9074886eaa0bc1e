#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "blogrec/corpus/matrix.hpp"

namespace blogrec::knn {

using corpus::Index;

enum class Measure { kCosine, kPearson };

std::string_view to_string(Measure measure);
Measure parse_measure(std::string_view name);

// Binary incidence vector: the sorted set of users that touched an item,
// inside a user space of size `dim`.
struct Incidence {
  std::span<const Index> support;
  std::size_t dim;
};

// dot(a,b) / (|a| |b|); 0 when either vector is all-zero.
double cosine_sim(Incidence a, Incidence b);

// Signed Pearson correlation over all `dim` coordinates, implicit zeros
// included in the means; 0 when either vector has zero variance.
double pearson_sim(Incidence a, Incidence b);

// Closed forms from co-occurrence counts. Both are computed as
// sign(num) * sqrt(num^2 / den) with integral num and den so that equal
// similarities come out bit-identical.
double cosine_from_counts(std::size_t common, std::size_t size_a, std::size_t size_b);
double pearson_from_counts(std::size_t common, std::size_t size_a, std::size_t size_b,
                           std::size_t dim);

struct SimEntry {
  Index target;
  double sim;

  friend bool operator==(const SimEntry&, const SimEntry&) = default;
};

// Row-wise top-K pruned similarity matrix. Rows are source items, columns
// target items; each row holds at most K entries in target index order.
class SimMatrix {
 public:
  SimMatrix() = default;
  SimMatrix(std::size_t rows, std::size_t cols, Measure measure, std::vector<std::size_t> offsets,
            std::vector<SimEntry> entries);

  std::size_t rows() const noexcept { return offsets_.size() - 1; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  Measure measure() const noexcept { return measure_; }

  std::span<const SimEntry> row(std::size_t r) const;

  friend bool operator==(const SimMatrix&, const SimMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  Measure measure_ = Measure::kCosine;
  std::vector<std::size_t> offsets_{0};
  std::vector<SimEntry> entries_;
};

struct TopKOptions {
  std::size_t k = 50;
  Measure measure = Measure::kCosine;
  // Source and target share an index space; drop the diagonal.
  bool exclude_self = false;
  unsigned threads = 1;
};

// `sources` and `targets` are item × user incidence matrices over the same
// user space (cols()). For every source, keeps the k targets with highest
// similarity, ties to the smaller target index, zero similarities dropped.
// Candidate pairs come from an inverted-index join over shared users.
SimMatrix build_topk_sim(const corpus::BinaryCsr& sources, const corpus::BinaryCsr& targets,
                         const TopKOptions& options);

// Blog × blog similarity from the follow graph.
SimMatrix build_blog_sim(const corpus::FollowGraph& graph, std::size_t k,
                         Measure measure = Measure::kCosine, unsigned threads = 1);
// App × blog similarity (S_a), binary app incidence against followers.
SimMatrix build_app_blog_sim(const corpus::FollowGraph& graph, const corpus::AppUsage& usage,
                             std::size_t k, Measure measure = Measure::kCosine,
                             unsigned threads = 1);

// `source<TAB>target<TAB>similarity`, 9 fractional digits, row-major.
void write_sim_tsv(std::ostream& out, const SimMatrix& sim);
SimMatrix read_sim_tsv(std::istream& in, std::size_t rows, std::size_t cols, Measure measure);

}  // namespace blogrec::knn
