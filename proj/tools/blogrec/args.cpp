#include <algorithm>
#include <sstream>

#include <CLI11.hpp>

#include "blogrec/cli.hpp"
#include "blogrec/knn/recommender.hpp"

namespace blogrec::cli {
namespace {

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::vector<T> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::istringstream field(item);
    T value{};
    if (!(field >> value) || !(field >> std::ws).eof()) {
      throw UsageError(std::string(flag) + ": bad list element '" + item + "'");
    }
    values.push_back(value);
  }
  if (values.empty()) throw UsageError(std::string(flag) + ": empty list");
  return values;
}

std::vector<std::string> split_models(const std::vector<std::string>& raw) {
  std::vector<std::string> models;
  for (const auto& entry : raw) {
    std::stringstream in(entry);
    std::string name;
    while (std::getline(in, name, ',')) {
      if (name == "all") {
        models.insert(models.end(), kAllModels.begin(), kAllModels.end());
      } else {
        models.push_back(name);
      }
    }
  }
  return models;
}

struct RawFlags {
  std::vector<std::string> models;
  std::string alpha_grid;
  std::string ns;
  std::string buckets;
  std::string measure = "cosine";
  std::string loss = "logistic";
};

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--out", c.out, "Output directory")->required();
  sub->add_option("--seed", c.seed, "Random seed");
}

void add_inputs(CLI::App* sub, RunConfig& c, bool apps_flags) {
  sub->add_option("--follows", c.follows, "user<TAB>blog edge file")->required();
  if (apps_flags) {
    sub->add_option("--apps", c.apps, "user<TAB>app<TAB>count file");
    sub->add_option("--top-apps", c.top_apps, "Most-used apps kept per user");
  }
}

void add_model_flags(CLI::App* sub, RunConfig& c, RawFlags& raw) {
  sub->add_option("--model", raw.models, "pop|itemcf|itemcf-app|mf|app-fm, comma list or all");
  sub->add_option("--k", c.train.k, "FM latent dimension");
  sub->add_option("--lr", c.train.learning_rate, "SGD learning rate");
  sub->add_option("--lambda", c.train.lambda, "L2 weight");
  sub->add_option("--epochs", c.train.epochs, "SGD passes");
  sub->add_option("--neg-ratio", c.train.neg_ratio, "Sampled negatives per follow");
  sub->add_option("--init-scale", c.train.init_scale, "Std dev of initial latent factors");
  sub->add_option("--loss", raw.loss, "logistic|squared");
  sub->add_option("--knn-k", c.knn_k, "Neighbors kept per item");
  sub->add_option("--measure", raw.measure, "cosine|pearson");
  sub->add_option("--alpha-grid", raw.alpha_grid, "Blend weights tried for itemcf-app");
  sub->add_option("--train-frac", c.split.train_frac, "Share of each user's follows in train");
  sub->add_option("--neg-mult", c.split.neg_mult, "Negative candidates per test blog");
  sub->add_option("--threads", c.threads, "Worker threads");
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::kIngest: return "ingest";
    case Command::kStats: return "stats";
    case Command::kTrain: return "train";
    case Command::kEvaluate: return "evaluate";
    case Command::kSynth: return "synth";
  }
  return "?";
}

void RunConfig::finalize() {
  split.seed = seed;
  train.seed = seed;
  synth.seed = seed;
  if (out.empty()) throw UsageError("--out is required");
  if (threads == 0) throw UsageError("--threads must be at least 1");

  const bool needs_models = command == Command::kTrain || command == Command::kEvaluate;
  if (!needs_models) {
    if (!models.empty()) throw UsageError("--model only applies to train and evaluate");
  } else {
    if (models.empty()) {
      if (command == Command::kTrain) throw UsageError("train needs --model");
      models = kAllModels;
      if (apps.empty()) {
        std::erase_if(models, [](const auto& m) { return m == "itemcf-app" || m == "app-fm"; });
      }
    }
    for (const auto& m : models) {
      if (std::find(kAllModels.begin(), kAllModels.end(), m) == kAllModels.end()) {
        throw UsageError("unknown model '" + m + "'");
      }
      if ((m == "itemcf-app" || m == "app-fm") && apps.empty()) {
        throw UsageError("model " + m + " needs --apps");
      }
    }
    std::vector<std::string> seen;
    for (const auto& m : models) {
      if (std::find(seen.begin(), seen.end(), m) != seen.end()) {
        throw UsageError("model '" + m + "' listed twice");
      }
      seen.push_back(m);
    }
    if (command == Command::kTrain && models.size() != 1) {
      throw UsageError("train takes exactly one --model");
    }
    if (command == Command::kTrain && models.front() == "pop") {
      throw UsageError("pop has no trained parameters");
    }
  }
  if (command == Command::kStats && (heatmap_apps == 0 || heatmap_blogs == 0)) {
    throw UsageError("heatmap size must be positive");
  }
  if (top_apps == 0) throw UsageError("--top-apps must be at least 1");
  if (knn_k == 0) throw UsageError("--knn-k must be at least 1");
  if (alpha_grid.empty()) alpha_grid = knn::default_alpha_grid();
  for (double a : alpha_grid) {
    if (!(a >= 0.0 && a <= 1.0)) throw UsageError("--alpha-grid values must lie in [0, 1]");
  }
  if (ns.empty() || std::find(ns.begin(), ns.end(), 0u) != ns.end()) {
    throw UsageError("--at values must be at least 1");
  }
  try {
    train.validate();
    buckets.validate();
    synth.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  if (!(split.train_frac > 0.0 && split.train_frac < 1.0)) {
    throw UsageError("--train-frac must lie in (0, 1)");
  }
  if (split.neg_mult == 0) throw UsageError("--neg-mult must be at least 1");
}

RunConfig parse_args(std::span<const std::string> args) {
  RunConfig c;
  RawFlags raw;
  CLI::App app{"Blog recommendation experiments", "blogrec"};
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "Build vocabularies and matrix dumps");
  add_inputs(ingest, c, true);
  add_common(ingest, c);

  auto* stats = app.add_subcommand("stats", "Degree histograms and the app/blog heatmap");
  add_inputs(stats, c, true);
  stats->add_option("--heatmap-apps", c.heatmap_apps, "Most-used apps in the heatmap");
  stats->add_option("--heatmap-blogs", c.heatmap_blogs, "Most-followed blogs in the heatmap");
  add_common(stats, c);

  auto* train = app.add_subcommand("train", "Fit one model on the whole follow graph");
  add_inputs(train, c, true);
  add_model_flags(train, c, raw);
  add_common(train, c);

  auto* evaluate = app.add_subcommand("evaluate", "Split, train and rank held-out follows");
  add_inputs(evaluate, c, true);
  add_model_flags(evaluate, c, raw);
  evaluate->add_option("--at", raw.ns, "Cutoffs for P@N, comma list");
  evaluate->add_option("--buckets", raw.buckets, "User group thresholds, comma list");
  add_common(evaluate, c);

  auto* synth = app.add_subcommand("synth", "Generate a planted-topic corpus");
  synth->add_option("--num-users", c.synth.users, "Users to generate");
  synth->add_option("--num-blogs", c.synth.blogs, "Blogs to generate");
  synth->add_option("--num-apps", c.synth.apps, "Apps to generate");
  synth->add_option("--topics", c.synth.topics, "Planted topics");
  synth->add_option("--coupling", c.synth.app_coupling, "0 = apps are noise, 1 = apps follow topics");
  add_common(synth, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    if (app.exit(e, out, err) == 0) throw HelpRequested(out.str());
    throw UsageError(e.what());
  }

  if (ingest->parsed()) c.command = Command::kIngest;
  if (stats->parsed()) c.command = Command::kStats;
  if (train->parsed()) c.command = Command::kTrain;
  if (evaluate->parsed()) c.command = Command::kEvaluate;
  if (synth->parsed()) c.command = Command::kSynth;

  c.models = split_models(raw.models);
  try {
    c.measure = knn::parse_measure(raw.measure);
    c.train.loss = fm::parse_loss(raw.loss);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  if (!raw.alpha_grid.empty()) c.alpha_grid = parse_list<double>(raw.alpha_grid, "--alpha-grid");
  if (!raw.ns.empty()) c.ns = parse_list<std::size_t>(raw.ns, "--at");
  if (!raw.buckets.empty()) {
    c.buckets.thresholds = parse_list<std::size_t>(raw.buckets, "--buckets");
  }
  c.finalize();
  return c;
}

}  // namespace blogrec::cli
