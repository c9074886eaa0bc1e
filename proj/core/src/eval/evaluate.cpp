#include "blogrec/eval/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "blogrec/error.hpp"
#include "blogrec/eval/metrics.hpp"

namespace blogrec::eval {

std::vector<Index> rank_by_score(std::span<const Index> candidates, std::span<const double> scores) {
  if (candidates.size() != scores.size()) {
    throw ContractError("scorer returned " + std::to_string(scores.size()) + " scores for " +
                        std::to_string(candidates.size()) + " candidates");
  }
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return candidates[a] < candidates[b];
  });
  std::vector<Index> ranked;
  ranked.reserve(order.size());
  for (std::size_t i : order) ranked.push_back(candidates[i]);
  return ranked;
}

void BucketSpec::validate() const {
  if (thresholds.empty()) throw ConfigError("bucket thresholds are empty");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] < 1 || (i > 0 && thresholds[i] <= thresholds[i - 1])) {
      throw ConfigError("bucket thresholds must be strictly increasing and >= 1");
    }
  }
}

std::size_t BucketSpec::bucket_of(std::size_t train_count) const {
  auto it = std::upper_bound(thresholds.begin(), thresholds.end(), train_count);
  return static_cast<std::size_t>(it - thresholds.begin());
}

std::vector<std::string> BucketSpec::labels() const {
  std::vector<std::string> out;
  for (std::size_t t : thresholds) out.push_back("G" + std::to_string(t));
  out.push_back("G" + std::to_string(thresholds.back()) + "+");
  return out;
}

double MetricReport::precision(std::size_t n) const {
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] == n) return p_at[i];
  }
  throw ContractError("report has no P@" + std::to_string(n));
}

const BucketMetrics& MetricReport::bucket(const std::string& label) const {
  for (const auto& b : buckets) {
    if (b.label == label) return b;
  }
  throw ContractError("report has no bucket " + label);
}

MetricReport evaluate(const Scorer& scorer, const EvalSplit& split, const EvalOptions& options) {
  options.buckets.validate();
  if (options.ns.empty()) throw ConfigError("no cutoffs N given for P@N");
  for (std::size_t n : options.ns) {
    if (n < 1) throw ConfigError("P@N cutoffs must be >= 1");
  }
  if (split.train.num_users() != split.test.size() ||
      split.candidates.size() != split.test.size()) {
    throw ContractError("evaluation split has inconsistent user counts");
  }

  std::vector<Index> users;
  for (std::size_t u = 0; u < split.num_users(); ++u) {
    if (!split.test[u].empty()) users.push_back(static_cast<Index>(u));
  }
  if (users.empty()) throw DataError("no user has test blogs to evaluate");

  std::vector<UserOutcome> outcomes(users.size());
  const std::string model = scorer.name();

  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<Index> pool;
    for (std::size_t i = begin; i < end; ++i) {
      const Index u = users[i];
      const auto& test = split.test[u];
      const auto& cand = split.candidates[u];
      pool.clear();
      std::merge(test.begin(), test.end(), cand.begin(), cand.end(), std::back_inserter(pool));
      std::vector<Index> ranked;
      try {
        ranked = rank_by_score(pool, scorer.score(u, pool));
      } catch (const std::exception& e) {
        throw ScorerError("scorer '" + model + "' failed for user " + std::to_string(u) + ": " +
                          e.what());
      }
      UserOutcome& out = outcomes[i];
      out.user = u;
      out.bucket = options.buckets.bucket_of(split.train.followed(u).size());
      out.p_at.clear();
      for (std::size_t n : options.ns) out.p_at.push_back(precision_at(ranked, test, n));
      out.rr = reciprocal_rank(ranked, test);
    }
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || users.size() < 2 * threads) {
    work(0, users.size());
  } else {
    const std::size_t chunk = (users.size() + threads - 1) / threads;
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(users.size(), begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, t, begin, end] {
          try {
            work(begin, end);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Fixed user order keeps the reduction identical for any thread count.
  const auto labels = options.buckets.labels();
  const std::size_t num_n = options.ns.size();
  MetricReport report;
  report.model = model;
  report.seed = split.seed;
  report.ns = options.ns;
  report.p_at.assign(num_n, 0.0);
  report.buckets.resize(labels.size());
  for (std::size_t b = 0; b < labels.size(); ++b) {
    report.buckets[b].label = labels[b];
    report.buckets[b].p_at.assign(num_n, 0.0);
  }
  for (const auto& o : outcomes) {
    auto& bucket = report.buckets[o.bucket];
    for (std::size_t j = 0; j < num_n; ++j) {
      report.p_at[j] += o.p_at[j];
      bucket.p_at[j] += o.p_at[j];
    }
    report.mrr += o.rr;
    bucket.mrr += o.rr;
    ++bucket.count;
  }
  const auto total = static_cast<double>(outcomes.size());
  for (auto& v : report.p_at) v /= total;
  report.mrr /= total;
  for (auto& bucket : report.buckets) {
    if (bucket.count == 0) continue;
    for (auto& v : bucket.p_at) v /= static_cast<double>(bucket.count);
    bucket.mrr /= static_cast<double>(bucket.count);
  }
  report.users_evaluated = outcomes.size();
  report.per_user = std::move(outcomes);
  return report;
}

SignTest paired_sign_test(const MetricReport& a, const MetricReport& b) {
  if (a.per_user.size() != b.per_user.size()) {
    throw ContractError("sign test needs reports over the same users");
  }
  SignTest result;
  for (std::size_t i = 0; i < a.per_user.size(); ++i) {
    if (a.per_user[i].user != b.per_user[i].user) {
      throw ContractError("sign test needs reports over the same users");
    }
    const double ra = a.per_user[i].rr;
    const double rb = b.per_user[i].rr;
    if (ra > rb) {
      ++result.wins;
    } else if (ra < rb) {
      ++result.losses;
    } else {
      ++result.ties;
    }
  }
  const std::size_t n = result.wins + result.losses;
  if (n == 0) return result;
  const std::size_t k = std::min(result.wins, result.losses);
  // P(X <= k) for X ~ Binomial(n, 1/2), summed in log space.
  double tail = 0.0;
  const double log_half_n = static_cast<double>(n) * std::log(0.5);
  for (std::size_t i = 0; i <= k; ++i) {
    const double log_choose = std::lgamma(static_cast<double>(n) + 1.0) -
                              std::lgamma(static_cast<double>(i) + 1.0) -
                              std::lgamma(static_cast<double>(n - i) + 1.0);
    tail += std::exp(log_choose + log_half_n);
  }
  result.p_value = std::min(1.0, 2.0 * tail);
  return result;
}

}  // namespace blogrec::eval
