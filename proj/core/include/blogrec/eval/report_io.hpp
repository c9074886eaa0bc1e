#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "blogrec/eval/evaluate.hpp"

namespace blogrec::eval {

// {"model", "seed", "p_at": {"1", "5", ...}, "mrr",
//  "buckets": {"G5": {"p_at", "mrr", "count"}, ...}, "users_evaluated"}
std::string report_json(const MetricReport& report);

// bucket,count,p@N...,mrr
void write_bucket_csv(std::ostream& out, const MetricReport& report);
// One row per model: model,users,p@N...,mrr
void write_comparison_csv(std::ostream& out, std::span<const MetricReport> reports);

}  // namespace blogrec::eval
