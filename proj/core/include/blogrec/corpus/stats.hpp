#pragma once

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "blogrec/corpus/matrix.hpp"
#include "blogrec/corpus/vocab.hpp"

namespace blogrec::corpus {

enum class DegreeAxis { kBlogFollowers, kUserFollowees, kAppUsers, kUserApps };

// "blog-followers", "user-followees", "app-users", "user-apps".
std::string_view to_string(DegreeAxis axis);

struct HistogramBin {
  std::size_t lower_bound;
  std::size_t count;

  friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

struct DegreeHistogram {
  DegreeAxis axis;
  // Nonempty buckets only, increasing lower bound.
  std::vector<HistogramBin> bins;
};

// Lower bound of the 1-2-5 log ladder bucket (1, 2, 5, 10, 20, 50, ...)
// containing `degree`. degree must be >= 1.
std::size_t degree_bucket(std::size_t degree);

// Entities with degree 0 are not counted.
DegreeHistogram degree_histogram(std::span<const std::size_t> degrees, DegreeAxis axis);
DegreeHistogram degree_histogram(const FollowGraph& graph, DegreeAxis axis);
DegreeHistogram degree_histogram(const AppUsage& usage, DegreeAxis axis);

// Cosine similarity between the p most-used apps and the q most-followed
// blogs, each side a binary user-incidence vector.
struct CrossSimHeatmap {
  std::vector<Index> app_ids;
  std::vector<Index> blog_ids;
  std::vector<double> values;  // row-major, app_ids.size() × blog_ids.size()

  double at(std::size_t app_row, std::size_t blog_col) const {
    return values[app_row * blog_ids.size() + blog_col];
  }
};

CrossSimHeatmap cross_heatmap(const FollowGraph& graph, const AppUsage& usage, std::size_t p,
                              std::size_t q);

// Indices ordered by descending count, ties by smaller index.
std::vector<Index> by_popularity(std::span<const std::size_t> counts);

// bucket,count
void write_histogram_csv(std::ostream& out, const DegreeHistogram& hist);
// Header row of blog ids; each following row is an app id then 6-decimal values.
void write_heatmap_csv(std::ostream& out, const CrossSimHeatmap& heatmap, const Vocab& apps,
                       const Vocab& blogs);

}  // namespace blogrec::corpus
