#include "blogrec/knn/similarity.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <thread>

#include "blogrec/error.hpp"

namespace blogrec::knn {
namespace {

void check_incidence(Incidence v) {
  if (!v.support.empty() && v.support.back() >= v.dim) {
    throw ContractError("incidence index " + std::to_string(v.support.back()) +
                        " outside dimension " + std::to_string(v.dim));
  }
}

std::size_t common_count(Incidence a, Incidence b) {
  if (a.dim != b.dim) {
    throw ContractError("similarity of vectors with dimensions " + std::to_string(a.dim) + " and " +
                        std::to_string(b.dim));
  }
  check_incidence(a);
  check_incidence(b);
  std::size_t common = 0;
  auto ia = a.support.begin();
  auto ib = b.support.begin();
  while (ia != a.support.end() && ib != b.support.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return common;
}

bool ranks_before(const SimEntry& a, const SimEntry& b) {
  return a.sim != b.sim ? a.sim > b.sim : a.target < b.target;
}

}  // namespace

std::string_view to_string(Measure measure) {
  return measure == Measure::kCosine ? "cosine" : "pearson";
}

Measure parse_measure(std::string_view name) {
  if (name == "cosine") return Measure::kCosine;
  if (name == "pearson") return Measure::kPearson;
  throw ConfigError("unknown similarity measure '" + std::string(name) + "'");
}

double cosine_from_counts(std::size_t common, std::size_t size_a, std::size_t size_b) {
  if (size_a == 0 || size_b == 0 || common == 0) return 0.0;
  const double num = static_cast<double>(common) * static_cast<double>(common);
  const double den = static_cast<double>(size_a) * static_cast<double>(size_b);
  return std::sqrt(num / den);
}

double pearson_from_counts(std::size_t common, std::size_t size_a, std::size_t size_b,
                           std::size_t dim) {
  const auto m = static_cast<std::int64_t>(dim);
  const auto a = static_cast<std::int64_t>(size_a);
  const auto b = static_cast<std::int64_t>(size_b);
  const std::int64_t var_a = a * m - a * a;
  const std::int64_t var_b = b * m - b * b;
  if (var_a == 0 || var_b == 0) return 0.0;
  const std::int64_t cov = static_cast<std::int64_t>(common) * m - a * b;
  if (cov == 0) return 0.0;
  const double num = static_cast<double>(cov) * static_cast<double>(cov);
  const double den = static_cast<double>(var_a) * static_cast<double>(var_b);
  const double mag = std::sqrt(std::min(1.0, num / den));
  return cov > 0 ? mag : -mag;
}

double cosine_sim(Incidence a, Incidence b) {
  return cosine_from_counts(common_count(a, b), a.support.size(), b.support.size());
}

double pearson_sim(Incidence a, Incidence b) {
  return pearson_from_counts(common_count(a, b), a.support.size(), b.support.size(), a.dim);
}

SimMatrix::SimMatrix(std::size_t rows, std::size_t cols, Measure measure,
                     std::vector<std::size_t> offsets, std::vector<SimEntry> entries)
    : cols_(cols), measure_(measure), offsets_(std::move(offsets)), entries_(std::move(entries)) {
  if (offsets_.size() != rows + 1 || offsets_.front() != 0 || offsets_.back() != entries_.size()) {
    throw ContractError("similarity matrix offsets do not match its entries");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (offsets_[r + 1] < offsets_[r]) throw ContractError("similarity offsets decrease");
    for (std::size_t i = offsets_[r]; i < offsets_[r + 1]; ++i) {
      const auto& e = entries_[i];
      if (e.target >= cols_ || !std::isfinite(e.sim)) {
        throw ContractError("invalid similarity entry in row " + std::to_string(r));
      }
      if (i > offsets_[r] && entries_[i - 1].target >= e.target) {
        throw ContractError("similarity row " + std::to_string(r) + " not sorted by target");
      }
    }
  }
}

std::span<const SimEntry> SimMatrix::row(std::size_t r) const {
  if (r >= rows()) throw ContractError("similarity row " + std::to_string(r) + " out of range");
  return std::span<const SimEntry>(entries_).subspan(offsets_[r], offsets_[r + 1] - offsets_[r]);
}

SimMatrix build_topk_sim(const corpus::BinaryCsr& sources, const corpus::BinaryCsr& targets,
                         const TopKOptions& options) {
  if (options.k < 1) throw ConfigError("top-k similarity needs k >= 1");
  if (sources.cols() != targets.cols()) {
    throw ContractError("source and target similarity inputs have different user dimensions");
  }
  if (options.exclude_self && sources.rows() != targets.rows()) {
    throw ContractError("self exclusion requires a shared index space");
  }
  const std::size_t dim = sources.cols();
  const std::size_t num_targets = targets.rows();
  const corpus::BinaryCsr user_targets = targets.transpose();
  std::vector<std::size_t> target_size(num_targets);
  for (std::size_t t = 0; t < num_targets; ++t) target_size[t] = targets.row_size(t);

  std::vector<std::vector<SimEntry>> rows(sources.rows());

  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> common(num_targets, 0);
    std::vector<Index> touched;
    std::vector<SimEntry> cand;
    for (std::size_t s = begin; s < end; ++s) {
      const std::size_t size_s = sources.row_size(s);
      touched.clear();
      for (Index u : sources.row(s)) {
        for (Index t : user_targets.row(u)) {
          if (common[t]++ == 0) touched.push_back(t);
        }
      }
      auto sim_of = [&](Index t) {
        return options.measure == Measure::kCosine
                   ? cosine_from_counts(common[t], size_s, target_size[t])
                   : pearson_from_counts(common[t], size_s, target_size[t], dim);
      };
      cand.clear();
      std::size_t positives = 0;
      for (Index t : touched) {
        if (options.exclude_self && t == s) continue;
        double sim = sim_of(t);
        if (sim != 0.0) cand.push_back({t, sim});
        if (sim > 0.0) ++positives;
      }
      // Pairs without a shared user still carry a negative Pearson value;
      // they matter only when the positive neighbours do not fill k slots.
      if (options.measure == Measure::kPearson && positives < options.k && size_s > 0 &&
          size_s < dim) {
        cand.clear();
        for (Index t = 0; t < num_targets; ++t) {
          if (options.exclude_self && t == s) continue;
          double sim = sim_of(t);
          if (sim != 0.0) cand.push_back({t, sim});
        }
      }
      for (Index t : touched) common[t] = 0;

      if (cand.size() > options.k) {
        std::nth_element(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(options.k),
                         cand.end(), ranks_before);
        cand.resize(options.k);
      }
      std::sort(cand.begin(), cand.end(),
                [](const SimEntry& a, const SimEntry& b) { return a.target < b.target; });
      rows[s] = cand;
    }
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || sources.rows() < 2 * threads) {
    work(0, sources.rows());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (sources.rows() + threads - 1) / threads;
    for (std::size_t begin = 0; begin < sources.rows(); begin += chunk) {
      pool.emplace_back(work, begin, std::min(sources.rows(), begin + chunk));
    }
  }

  std::vector<std::size_t> offsets{0};
  std::vector<SimEntry> entries;
  for (auto& r : rows) {
    entries.insert(entries.end(), r.begin(), r.end());
    offsets.push_back(entries.size());
  }
  return SimMatrix(sources.rows(), num_targets, options.measure, std::move(offsets),
                   std::move(entries));
}

SimMatrix build_blog_sim(const corpus::FollowGraph& graph, std::size_t k, Measure measure,
                         unsigned threads) {
  const corpus::BinaryCsr blogs = graph.csr().transpose();
  return build_topk_sim(blogs, blogs, {k, measure, true, threads});
}

SimMatrix build_app_blog_sim(const corpus::FollowGraph& graph, const corpus::AppUsage& usage,
                             std::size_t k, Measure measure, unsigned threads) {
  if (graph.num_users() != usage.num_users()) {
    throw ContractError("follow graph and app usage disagree on user count");
  }
  return build_topk_sim(usage.incidence().transpose(), graph.csr().transpose(),
                        {k, measure, false, threads});
}

void write_sim_tsv(std::ostream& out, const SimMatrix& sim) {
  for (std::size_t r = 0; r < sim.rows(); ++r) {
    for (const auto& e : sim.row(r)) out << fmt::format("{}\t{}\t{:.9f}\n", r, e.target, e.sim);
  }
}

SimMatrix read_sim_tsv(std::istream& in, std::size_t rows, std::size_t cols, Measure measure) {
  std::vector<std::size_t> offsets{0};
  std::vector<SimEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  std::size_t current = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::size_t source = 0;
    Index target = 0;
    double sim = 0.0;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%zu\t%u\t%lf%c", &source, &target, &sim, &tail) != 3) {
      throw ParseError("<similarity>", line_no, "expected source<TAB>target<TAB>similarity");
    }
    if (source >= rows || source < current) {
      throw ParseError("<similarity>", line_no, "source out of range or not row-major");
    }
    while (current < source) {
      offsets.push_back(entries.size());
      ++current;
    }
    entries.push_back({target, sim});
  }
  while (offsets.size() < rows + 1) offsets.push_back(entries.size());
  return SimMatrix(rows, cols, measure, std::move(offsets), std::move(entries));
}

}  // namespace blogrec::knn
