#include "blogrec/eval/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "blogrec/error.hpp"
#include "blogrec/random.hpp"

namespace blogrec::eval {
namespace {

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// Pareto(x_min = 1, tail) via inversion; U is kept away from 0.
double pareto(Rng& rng, double tail) {
  const double u = 1.0 - uniform01(rng);  // (0, 1]
  return std::pow(u, -1.0 / tail);
}

}  // namespace

void SynthConfig::validate() const {
  auto fail = [](const std::string& why) { throw ConfigError("infeasible synthetic config: " + why); };
  if (topics < 1) fail("topics must be >= 1");
  if (users < topics || blogs < topics || apps < topics) fail("every count must be >= topics");
  if (!(app_coupling >= 0.0 && app_coupling <= 1.0)) fail("app_coupling must lie in [0, 1]");
  if (!(primary_weight >= 0.0 && primary_weight <= 1.0)) fail("primary_weight must lie in [0, 1]");
  if (!(follow_noise >= 0.0 && follow_noise <= 1.0)) fail("follow_noise must lie in [0, 1]");
  if (!(topic_zipf >= 0.0) || !(blog_tail > 0.0) || !(follow_tail > 0.0)) fail("tails must be positive");
  if (min_follows < 1) fail("min_follows must be >= 1");
  if (!(max_follow_frac > 0.0 && max_follow_frac <= 1.0)) fail("max_follow_frac must lie in (0, 1]");
  if (static_cast<double>(min_follows) > max_follow_frac * static_cast<double>(blogs)) {
    fail("min_follows exceeds the follow cap");
  }
  if (min_apps > max_apps) fail("min_apps > max_apps");
  if (max_apps > apps) fail("max_apps exceeds the app catalog");
}

SynthCorpus synth_generate(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const std::size_t T = config.topics;

  SynthCorpus out;
  for (std::size_t u = 0; u < config.users; ++u) out.users.intern("u" + std::to_string(u));
  for (std::size_t b = 0; b < config.blogs; ++b) out.blogs.intern("b" + std::to_string(b));
  for (std::size_t a = 0; a < config.apps; ++a) out.apps.intern("a" + std::to_string(a));

  std::vector<double> topic_pop(T);
  for (std::size_t t = 0; t < T; ++t) topic_pop[t] = std::pow(static_cast<double>(t + 1), -config.topic_zipf);
  std::discrete_distribution<std::size_t> pick_topic(topic_pop.begin(), topic_pop.end());

  std::vector<std::vector<Index>> blogs_of(T);
  std::vector<std::vector<double>> blog_weight_of(T);
  for (std::size_t b = 0; b < config.blogs; ++b) {
    const auto t = static_cast<Index>(b % T);
    out.blog_topic.push_back(t);
    blogs_of[t].push_back(static_cast<Index>(b));
    blog_weight_of[t].push_back(pareto(rng, config.blog_tail));
  }
  std::vector<std::discrete_distribution<std::size_t>> pick_blog;
  for (std::size_t t = 0; t < T; ++t) {
    pick_blog.emplace_back(blog_weight_of[t].begin(), blog_weight_of[t].end());
  }

  std::vector<std::vector<Index>> apps_of(T);
  for (std::size_t a = 0; a < config.apps; ++a) {
    const auto t = static_cast<Index>(a % T);
    out.app_topic.push_back(t);
    apps_of[t].push_back(static_cast<Index>(a));
  }

  const auto cap = std::max<std::size_t>(
      config.min_follows,
      static_cast<std::size_t>(config.max_follow_frac * static_cast<double>(config.blogs)));

  std::vector<std::vector<Index>> follow_rows(config.users);
  std::vector<corpus::AppRecord> records;

  for (std::size_t u = 0; u < config.users; ++u) {
    const auto primary = static_cast<Index>(pick_topic(rng));
    Index secondary = primary;
    if (T > 1) {
      while (secondary == primary) secondary = static_cast<Index>(pick_topic(rng));
    }
    out.user_topic.push_back(primary);
    out.user_secondary.push_back(secondary);
    auto mixture_topic = [&] {
      return uniform01(rng) < config.primary_weight ? primary : secondary;
    };

    const double raw_degree = static_cast<double>(config.min_follows) * pareto(rng, config.follow_tail);
    const std::size_t degree = std::min<std::size_t>(
        cap, static_cast<std::size_t>(std::min(raw_degree, static_cast<double>(cap))));

    std::set<Index> follows;
    std::size_t attempts = 0;
    while (follows.size() < degree && attempts < 50 * degree) {
      ++attempts;
      const std::size_t t = uniform01(rng) < config.follow_noise ? pick_topic(rng) : mixture_topic();
      follows.insert(blogs_of[t][pick_blog[t](rng)]);
    }
    // Topic pools exhausted for very heavy users: top up uniformly.
    while (follows.size() < degree) {
      follows.insert(static_cast<Index>(
          std::uniform_int_distribution<std::size_t>(0, config.blogs - 1)(rng)));
    }
    follow_rows[u].assign(follows.begin(), follows.end());

    const std::size_t n_apps =
        std::uniform_int_distribution<std::size_t>(config.min_apps, config.max_apps)(rng);
    std::set<Index> used;
    attempts = 0;
    while (used.size() < n_apps && attempts < 50 * n_apps) {
      ++attempts;
      Index app;
      if (uniform01(rng) < config.app_coupling) {
        const auto& pool = apps_of[mixture_topic()];
        app = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      } else {
        app = static_cast<Index>(std::uniform_int_distribution<std::size_t>(0, config.apps - 1)(rng));
      }
      if (used.insert(app).second) {
        records.push_back({static_cast<Index>(u), app,
                           std::uniform_int_distribution<std::uint64_t>(1, 50)(rng)});
      }
    }
  }

  out.graph = corpus::FollowGraph::from_rows(config.blogs, std::move(follow_rows));
  out.usage = corpus::AppUsage::from_records(config.users, config.apps, records);
  return out;
}

}  // namespace blogrec::eval
