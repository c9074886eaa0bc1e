#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blogrec/eval/scorer.hpp"
#include "blogrec/eval/split.hpp"

namespace blogrec::eval {

// User groups by training follow count. With thresholds {5, 10, ...} a user
// lands in "G5" if it has fewer than 5 train follows, "G10" for [5, 10), and
// so on; past the last threshold t the label is "G{t}+".
struct BucketSpec {
  std::vector<std::size_t> thresholds{5, 10, 20, 50, 100};

  void validate() const;
  std::size_t bucket_of(std::size_t train_count) const;
  std::vector<std::string> labels() const;
};

struct EvalOptions {
  std::vector<std::size_t> ns{1, 5, 10};
  BucketSpec buckets;
  unsigned threads = 1;
};

struct UserOutcome {
  Index user;
  std::size_t bucket;
  std::vector<double> p_at;  // parallel to MetricReport::ns
  double rr;
};

struct BucketMetrics {
  std::string label;
  std::vector<double> p_at;
  double mrr = 0.0;
  std::size_t count = 0;
};

struct MetricReport {
  std::string model;
  std::uint64_t seed = 0;
  std::vector<std::size_t> ns;
  std::vector<double> p_at;  // parallel to ns
  double mrr = 0.0;
  std::vector<BucketMetrics> buckets;
  std::size_t users_evaluated = 0;
  std::vector<UserOutcome> per_user;  // in user index order

  double precision(std::size_t n) const;
  const BucketMetrics& bucket(const std::string& label) const;
};

// Ranks every user's test blogs together with its candidates and averages
// P@N and reciprocal rank, overall and per bucket. Users without test blogs
// are skipped.
MetricReport evaluate(const Scorer& scorer, const EvalSplit& split, const EvalOptions& options = {});

struct SignTest {
  std::size_t wins = 0;    // users where a beats b
  std::size_t losses = 0;
  std::size_t ties = 0;
  double p_value = 1.0;    // two-sided exact binomial

  bool significant(double alpha = 0.05) const { return p_value < alpha; }
};

// Paired sign test on per-user reciprocal rank. Both reports must cover the
// same users.
SignTest paired_sign_test(const MetricReport& a, const MetricReport& b);

}  // namespace blogrec::eval
