#pragma once

#include <cstdint>
#include <vector>

#include "blogrec/corpus/matrix.hpp"
#include "blogrec/corpus/vocab.hpp"

namespace blogrec::eval {

using corpus::Index;

// Planted-topic generator standing in for a real follow/app corpus.
//
// Every entity has a topic mixture. Blogs and apps carry a single topic;
// users carry a primary topic with weight `primary_weight` and a secondary
// topic with the rest. Topic popularity follows a power law with exponent
// `topic_zipf`, and blog popularity within a topic is Pareto distributed, so
// follower counts are heavy tailed. Each user's follow count is discrete
// Pareto (min `min_follows`, tail index `follow_tail`) capped at
// `max_follow_frac` of the catalog. Each app slot is drawn from the user's
// topic mixture with probability `app_coupling` and uniformly otherwise, so 0
// makes apps pure noise and 1 makes them reveal the user's topics.
struct SynthConfig {
  std::size_t users = 2000;
  std::size_t blogs = 500;
  std::size_t apps = 100;
  std::size_t topics = 8;
  double app_coupling = 0.8;
  std::uint64_t seed = 42;

  double primary_weight = 0.75;
  double follow_noise = 0.2;      // follows drawn from global popularity
  double topic_zipf = 0.8;
  double blog_tail = 3.0;
  std::size_t min_follows = 5;
  double follow_tail = 1.1;
  double max_follow_frac = 0.4;
  std::size_t min_apps = 6;
  std::size_t max_apps = 14;      // raw distinct apps before the top-10 filter

  void validate() const;
};

struct SynthCorpus {
  corpus::Vocab users{corpus::EntityKind::kUser};
  corpus::Vocab blogs{corpus::EntityKind::kBlog};
  corpus::Vocab apps{corpus::EntityKind::kApp};
  corpus::FollowGraph graph;
  corpus::AppUsage usage;
  std::vector<Index> user_topic;       // primary topic
  std::vector<Index> user_secondary;
  std::vector<Index> blog_topic;
  std::vector<Index> app_topic;
};

SynthCorpus synth_generate(const SynthConfig& config);

}  // namespace blogrec::eval
