#include "blogrec/eval/report_io.hpp"

#include <fmt/format.h>

#include <json.hpp>
#include <ostream>
#include <string>

namespace blogrec::eval {

using ordered_json = nlohmann::ordered_json;

std::string report_json(const MetricReport& report) {
  ordered_json j;
  j["model"] = report.model;
  j["seed"] = report.seed;
  ordered_json p_at = ordered_json::object();
  for (std::size_t i = 0; i < report.ns.size(); ++i) p_at[std::to_string(report.ns[i])] = report.p_at[i];
  j["p_at"] = p_at;
  j["mrr"] = report.mrr;
  ordered_json buckets = ordered_json::object();
  for (const auto& b : report.buckets) {
    ordered_json bp = ordered_json::object();
    for (std::size_t i = 0; i < report.ns.size(); ++i) bp[std::to_string(report.ns[i])] = b.p_at[i];
    buckets[b.label] = {{"p_at", bp}, {"mrr", b.mrr}, {"count", b.count}};
  }
  j["buckets"] = buckets;
  j["users_evaluated"] = report.users_evaluated;
  return j.dump(2) + "\n";
}

namespace {

void write_header_metrics(std::ostream& out, const std::vector<std::size_t>& ns) {
  for (std::size_t n : ns) out << ",p@" << n;
  out << ",mrr\n";
}

void write_metrics(std::ostream& out, const std::vector<double>& p_at, double mrr) {
  for (double v : p_at) out << ',' << fmt::format("{:.6f}", v);
  out << ',' << fmt::format("{:.6f}", mrr) << '\n';
}

}  // namespace

void write_bucket_csv(std::ostream& out, const MetricReport& report) {
  out << "bucket,count";
  write_header_metrics(out, report.ns);
  for (const auto& b : report.buckets) {
    out << b.label << ',' << b.count;
    write_metrics(out, b.p_at, b.mrr);
  }
}

void write_comparison_csv(std::ostream& out, std::span<const MetricReport> reports) {
  if (reports.empty()) return;
  out << "model,users";
  write_header_metrics(out, reports.front().ns);
  for (const auto& r : reports) {
    out << r.model << ',' << r.users_evaluated;
    write_metrics(out, r.p_at, r.mrr);
  }
}

}  // namespace blogrec::eval
