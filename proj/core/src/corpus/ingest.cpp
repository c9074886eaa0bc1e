#include "blogrec/corpus/ingest.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "blogrec/error.hpp"

namespace blogrec::corpus {
namespace {

// Splits on TAB. Returns the number of fields found (up to fields.size()+1 so
// that an extra field is detectable).
std::size_t split_tabs(std::string_view line, std::span<std::string_view> fields) {
  std::size_t n = 0;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    std::string_view field = line.substr(start, tab == std::string_view::npos ? tab : tab - start);
    if (n < fields.size()) fields[n] = field;
    ++n;
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return n;
}

std::string_view chomp(const std::string& raw) {
  std::string_view line(raw);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

}  // namespace

FollowCorpus read_follows(std::istream& in, std::string_view source) {
  FollowCorpus corpus;
  std::vector<std::vector<Index>> rows;
  std::string raw;
  std::size_t line_no = 0;
  std::size_t edges = 0;
  std::string src(source);
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = chomp(raw);
    if (line.empty()) continue;
    std::array<std::string_view, 2> f;
    std::size_t n = split_tabs(line, f);
    if (n != 2) {
      throw ParseError(src, line_no, "expected 2 tab-separated fields, found " + std::to_string(n));
    }
    if (f[0].empty() || f[1].empty()) throw ParseError(src, line_no, "empty id field");
    Index u = corpus.users.intern(f[0]);
    Index b = corpus.blogs.intern(f[1]);
    if (u >= rows.size()) rows.resize(u + 1);
    rows[u].push_back(b);
    ++edges;
  }
  corpus.report.lines = line_no;
  if (edges == 0) throw DataError(src + ": no follow edges");
  corpus.graph = FollowGraph::from_rows(corpus.blogs.size(), std::move(rows));
  corpus.report.duplicate_edges = edges - corpus.graph.num_follows();
  return corpus;
}

FollowCorpus ingest_follows(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_follows(in, path.string());
}

AppCorpus read_apps(std::istream& in, const Vocab& users, std::size_t top_k,
                    std::string_view source) {
  AppCorpus corpus;
  std::vector<AppRecord> records;
  std::unordered_set<std::uint64_t> distinct;
  std::string raw;
  std::size_t line_no = 0;
  std::string src(source);
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = chomp(raw);
    if (line.empty()) continue;
    std::array<std::string_view, 3> f;
    std::size_t n = split_tabs(line, f);
    if (n != 3) {
      throw ParseError(src, line_no, "expected 3 tab-separated fields, found " + std::to_string(n));
    }
    if (f[0].empty() || f[1].empty()) throw ParseError(src, line_no, "empty id field");
    long long count = 0;
    auto [ptr, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), count);
    if (ec != std::errc() || ptr != f[2].data() + f[2].size()) {
      throw ParseError(src, line_no, "count is not an integer: '" + std::string(f[2]) + "'");
    }
    if (count <= 0) throw ParseError(src, line_no, "count must be positive");
    auto user = users.find(f[0]);
    if (!user) {
      ++corpus.report.dropped_unknown_user;
      continue;
    }
    Index app = corpus.apps.intern(f[1]);
    records.push_back({*user, app, static_cast<std::uint64_t>(count)});
    distinct.insert((static_cast<std::uint64_t>(*user) << 32) | app);
  }
  corpus.report.lines = line_no;
  corpus.usage = AppUsage::from_records(users.size(), corpus.apps.size(), records, top_k);
  corpus.report.filtered_apps = distinct.size() - corpus.usage.nnz();
  return corpus;
}

AppCorpus ingest_apps(const std::filesystem::path& path, const Vocab& users, std::size_t top_k) {
  auto in = open_input(path);
  return read_apps(in, users, top_k, path.string());
}

void write_follows(std::ostream& out, const FollowGraph& graph, const Vocab& users,
                   const Vocab& blogs) {
  for (std::size_t u = 0; u < graph.num_users(); ++u) {
    const auto& uid = users.id(static_cast<Index>(u));
    for (Index b : graph.followed(u)) out << uid << '\t' << blogs.id(b) << '\n';
  }
}

void write_apps(std::ostream& out, const AppUsage& usage, const Vocab& users, const Vocab& apps) {
  for (std::size_t u = 0; u < usage.num_users(); ++u) {
    const auto& uid = users.id(static_cast<Index>(u));
    for (const auto& e : usage.row(u)) out << uid << '\t' << apps.id(e.app) << '\t' << e.count << '\n';
  }
}

}  // namespace blogrec::corpus
