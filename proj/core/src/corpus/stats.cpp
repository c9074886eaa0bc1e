#include "blogrec/corpus/stats.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>

#include "blogrec/error.hpp"
#include "blogrec/knn/similarity.hpp"

namespace blogrec::corpus {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string_view to_string(DegreeAxis axis) {
  switch (axis) {
    case DegreeAxis::kBlogFollowers:
      return "blog-followers";
    case DegreeAxis::kUserFollowees:
      return "user-followees";
    case DegreeAxis::kAppUsers:
      return "app-users";
    case DegreeAxis::kUserApps:
      return "user-apps";
  }
  return "unknown";
}

std::size_t degree_bucket(std::size_t degree) {
  if (degree == 0) throw ContractError("degree_bucket needs degree >= 1");
  static constexpr std::size_t kSteps[] = {1, 2, 5};
  std::size_t bound = 1;
  for (std::size_t decade = 1;; decade *= 10) {
    for (std::size_t step : kSteps) {
      std::size_t b = step * decade;
      if (b > degree) return bound;
      bound = b;
    }
  }
}

DegreeHistogram degree_histogram(std::span<const std::size_t> degrees, DegreeAxis axis) {
  if (degrees.empty()) throw DataError("degree histogram of an empty matrix");
  DegreeHistogram hist{axis, {}};
  std::vector<std::size_t> bounds;
  for (std::size_t d : degrees) {
    if (d > 0) bounds.push_back(degree_bucket(d));
  }
  std::sort(bounds.begin(), bounds.end());
  for (std::size_t b : bounds) {
    if (hist.bins.empty() || hist.bins.back().lower_bound != b) {
      hist.bins.push_back({b, 0});
    }
    ++hist.bins.back().count;
  }
  return hist;
}

DegreeHistogram degree_histogram(const FollowGraph& graph, DegreeAxis axis) {
  std::vector<std::size_t> degrees;
  switch (axis) {
    case DegreeAxis::kBlogFollowers:
      degrees = graph.follower_counts();
      break;
    case DegreeAxis::kUserFollowees:
      for (std::size_t u = 0; u < graph.num_users(); ++u) degrees.push_back(graph.csr().row_size(u));
      break;
    default:
      throw ContractError("axis " + std::string(to_string(axis)) + " does not apply to follow data");
  }
  return degree_histogram(degrees, axis);
}

DegreeHistogram degree_histogram(const AppUsage& usage, DegreeAxis axis) {
  std::vector<std::size_t> degrees;
  switch (axis) {
    case DegreeAxis::kAppUsers:
      degrees = usage.user_counts();
      break;
    case DegreeAxis::kUserApps:
      for (std::size_t u = 0; u < usage.num_users(); ++u) degrees.push_back(usage.row(u).size());
      break;
    default:
      throw ContractError("axis " + std::string(to_string(axis)) + " does not apply to app data");
  }
  return degree_histogram(degrees, axis);
}

std::vector<Index> by_popularity(std::span<const std::size_t> counts) {
  std::vector<Index> order(counts.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return counts[a] > counts[b]; });
  return order;
}

CrossSimHeatmap cross_heatmap(const FollowGraph& graph, const AppUsage& usage, std::size_t p,
                              std::size_t q) {
  if (graph.num_users() != usage.num_users()) {
    throw ContractError("follow graph and app usage disagree on user count");
  }
  if (p > usage.num_apps() || q > graph.num_blogs()) {
    throw ConfigError("heatmap size " + std::to_string(p) + "x" + std::to_string(q) +
                      " exceeds " + std::to_string(usage.num_apps()) + " apps / " +
                      std::to_string(graph.num_blogs()) + " blogs");
  }
  const BinaryCsr app_users = usage.incidence().transpose();
  const BinaryCsr blog_users = graph.csr().transpose();
  const std::size_t m = graph.num_users();

  CrossSimHeatmap heat;
  heat.app_ids = by_popularity(usage.user_counts());
  heat.app_ids.resize(p);
  heat.blog_ids = by_popularity(graph.follower_counts());
  heat.blog_ids.resize(q);
  heat.values.reserve(p * q);
  for (Index a : heat.app_ids) {
    for (Index b : heat.blog_ids) {
      heat.values.push_back(knn::cosine_sim({app_users.row(a), m}, {blog_users.row(b), m}));
    }
  }
  return heat;
}

void write_histogram_csv(std::ostream& out, const DegreeHistogram& hist) {
  out << "bucket,count\n";
  for (const auto& bin : hist.bins) out << bin.lower_bound << ',' << bin.count << '\n';
}

void write_heatmap_csv(std::ostream& out, const CrossSimHeatmap& heatmap, const Vocab& apps,
                       const Vocab& blogs) {
  out << "app";
  for (Index b : heatmap.blog_ids) out << ',' << csv_field(blogs.id(b));
  out << '\n';
  for (std::size_t i = 0; i < heatmap.app_ids.size(); ++i) {
    out << csv_field(apps.id(heatmap.app_ids[i]));
    for (std::size_t j = 0; j < heatmap.blog_ids.size(); ++j) {
      out << ',' << fmt::format("{:.6f}", heatmap.at(i, j));
    }
    out << '\n';
  }
}

}  // namespace blogrec::corpus
