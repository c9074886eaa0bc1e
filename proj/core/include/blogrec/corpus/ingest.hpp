#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "blogrec/corpus/matrix.hpp"
#include "blogrec/corpus/vocab.hpp"

namespace blogrec::corpus {

struct IngestReport {
  std::size_t lines = 0;
  std::size_t duplicate_edges = 0;
  // App lines whose user is absent from the follow vocabulary.
  std::size_t dropped_unknown_user = 0;
  // (user, app) pairs removed by the per-user top-k filter.
  std::size_t filtered_apps = 0;
};

struct FollowCorpus {
  Vocab users{EntityKind::kUser};
  Vocab blogs{EntityKind::kBlog};
  FollowGraph graph;
  IngestReport report;
};

struct AppCorpus {
  Vocab apps{EntityKind::kApp};
  AppUsage usage;
  IngestReport report;
};

// `user<TAB>blog` per line, no header. Blank lines are ignored.
FollowCorpus read_follows(std::istream& in, std::string_view source = "<follows>");
FollowCorpus ingest_follows(const std::filesystem::path& path);

// `user<TAB>app<TAB>count` per line, no header, count a positive integer.
AppCorpus read_apps(std::istream& in, const Vocab& users, std::size_t top_k = kDefaultTopApps,
                    std::string_view source = "<apps>");
AppCorpus ingest_apps(const std::filesystem::path& path, const Vocab& users,
                      std::size_t top_k = kDefaultTopApps);

// Edge export in the same formats, rows in user index order.
void write_follows(std::ostream& out, const FollowGraph& graph, const Vocab& users,
                   const Vocab& blogs);
void write_apps(std::ostream& out, const AppUsage& usage, const Vocab& users, const Vocab& apps);

}  // namespace blogrec::corpus
