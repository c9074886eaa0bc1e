#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "blogrec/error.hpp"
#include "blogrec/eval/evaluate.hpp"
#include "blogrec/eval/split.hpp"
#include "blogrec/eval/synth.hpp"
#include "blogrec/fm/train.hpp"
#include "blogrec/knn/similarity.hpp"

namespace blogrec::cli {

enum class Command { kIngest, kStats, kTrain, kEvaluate, kSynth };

std::string_view to_string(Command command);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitDivergence = 4;
inline constexpr int kExitInternal = 1;

// Invalid flag values or combinations.
class UsageError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// --help or --version; `text` is what CLI11 would have printed.
class HelpRequested : public std::exception {
 public:
  explicit HelpRequested(std::string text) : text_(std::move(text)) {}
  const char* what() const noexcept override { return text_.c_str(); }

 private:
  std::string text_;
};

struct RunConfig {
  Command command = Command::kEvaluate;
  std::string follows;
  std::string apps;
  std::string out;
  // pop, itemcf, itemcf-app, mf, app-fm in the order given.
  std::vector<std::string> models;
  std::uint64_t seed = 42;
  unsigned threads = 1;

  std::size_t top_apps = corpus::kDefaultTopApps;
  std::size_t heatmap_apps = 20;
  std::size_t heatmap_blogs = 20;

  fm::TrainConfig train;
  std::size_t knn_k = 50;
  knn::Measure measure = knn::Measure::kCosine;
  std::vector<double> alpha_grid;
  eval::SplitConfig split;
  std::vector<std::size_t> ns{1, 5, 10};
  eval::BucketSpec buckets;

  eval::SynthConfig synth;

  // Throws UsageError. Also pushes `seed` into the split, train and synth
  // configs so every stage sees the one recorded seed.
  void finalize();
};

inline const std::vector<std::string> kAllModels{"pop", "itemcf", "itemcf-app", "mf", "app-fm"};

// args excludes the program name. Throws UsageError or HelpRequested.
RunConfig parse_args(std::span<const std::string> args);

// Executes one command, writing artifacts and manifest.json under config.out.
// Progress lines go to `log`. Throws the core error types.
void run(const RunConfig& config, std::ostream& log);

// parse_args + run with the exit code mapping: 0 ok, 2 usage, 3 data,
// 4 divergence, 1 anything else.
int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err);

// FNV-1a 64 of a file's bytes.
std::uint64_t file_checksum(const std::string& path);
// 16 lowercase hex digits, as recorded in manifests.
std::string format_checksum(std::uint64_t checksum);

}  // namespace blogrec::cli
