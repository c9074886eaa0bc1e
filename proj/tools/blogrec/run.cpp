#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "blogrec/cli.hpp"
#include "blogrec/corpus/ingest.hpp"
#include "blogrec/corpus/stats.hpp"
#include "blogrec/eval/pop.hpp"
#include "blogrec/eval/report_io.hpp"
#include "blogrec/fm/model_io.hpp"
#include "blogrec/fm/recommender.hpp"
#include "blogrec/knn/recommender.hpp"
#include "blogrec/random.hpp"

namespace blogrec::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Salts the seed of the inner split that itemcf-app tunes its blend weight on.
constexpr std::uint64_t kAlphaStream = 0x616c706861;

// Tracks every file written into the run directory for the manifest.
class Artifacts {
 public:
  explicit Artifacts(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  std::ofstream open(const std::string& name) {
    const fs::path p = dir_ / name;
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw DataError("cannot write " + p.string());
    names_.push_back(name);
    return out;
  }

  fs::path claim(const std::string& name) {
    names_.push_back(name);
    return dir_ / name;
  }

  const fs::path& dir() const { return dir_; }

  json listing() const {
    json files = json::array();
    for (const auto& name : names_) {
      const fs::path p = dir_ / name;
      files.push_back({{"path", name},
                       {"bytes", fs::file_size(p)},
                       {"fnv1a64", format_checksum(file_checksum(p.string()))}});
    }
    return files;
  }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

json config_json(const RunConfig& c) {
  json j;
  j["command"] = std::string(to_string(c.command));
  j["follows"] = c.follows;
  j["apps"] = c.apps;
  j["out"] = c.out;
  j["models"] = c.models;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["top_apps"] = c.top_apps;
  j["heatmap_apps"] = c.heatmap_apps;
  j["heatmap_blogs"] = c.heatmap_blogs;
  j["train"] = {{"k", c.train.k},
                {"lr", c.train.learning_rate},
                {"lambda", c.train.lambda},
                {"epochs", c.train.epochs},
                {"loss", std::string(fm::to_string(c.train.loss))},
                {"neg_ratio", c.train.neg_ratio},
                {"init_scale", c.train.init_scale}};
  j["knn"] = {{"k", c.knn_k},
              {"measure", std::string(knn::to_string(c.measure))},
              {"alpha_grid", c.alpha_grid}};
  j["split"] = {{"train_frac", c.split.train_frac}, {"neg_mult", c.split.neg_mult}};
  j["eval"] = {{"at", c.ns}, {"buckets", c.buckets.thresholds}};
  const auto& s = c.synth;
  j["synth"] = {{"users", s.users},
                {"blogs", s.blogs},
                {"apps", s.apps},
                {"topics", s.topics},
                {"app_coupling", s.app_coupling},
                {"primary_weight", s.primary_weight},
                {"follow_noise", s.follow_noise},
                {"topic_zipf", s.topic_zipf},
                {"blog_tail", s.blog_tail},
                {"min_follows", s.min_follows},
                {"follow_tail", s.follow_tail},
                {"max_follow_frac", s.max_follow_frac},
                {"min_apps", s.min_apps},
                {"max_apps", s.max_apps}};
  return j;
}

json input_json(const std::string& path) {
  if (!fs::is_regular_file(path)) throw DataError("cannot open " + path);
  return {{"path", path},
          {"bytes", fs::file_size(path)},
          {"fnv1a64", format_checksum(file_checksum(path))}};
}

struct Inputs {
  corpus::FollowCorpus follows;
  std::optional<corpus::AppCorpus> apps;

  const corpus::AppUsage* usage() const { return apps ? &apps->usage : nullptr; }
};

Inputs load_inputs(const RunConfig& c, json& manifest) {
  manifest["inputs"] = json::array();
  manifest["inputs"].push_back(input_json(c.follows));
  if (!c.apps.empty()) manifest["inputs"].push_back(input_json(c.apps));
  Inputs in{corpus::ingest_follows(c.follows), std::nullopt};
  if (!c.apps.empty()) in.apps = corpus::ingest_apps(c.apps, in.follows.users, c.top_apps);
  return in;
}

json ingest_json(const corpus::IngestReport& r) {
  return {{"lines", r.lines},
          {"duplicate_edges", r.duplicate_edges},
          {"dropped_unknown_user", r.dropped_unknown_user},
          {"filtered_apps", r.filtered_apps}};
}

void write_vocab(Artifacts& art, const std::string& name, const corpus::Vocab& vocab) {
  auto out = art.open(name);
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    out << i << '\t' << vocab.id(static_cast<corpus::Index>(i)) << '\n';
  }
}

void write_training_log_header(std::ostream& out) { out << "epoch\tloss\n"; }

fm::FmFit fit_logged(Artifacts& art, const std::string& log_name, const corpus::FollowGraph& train,
                     const corpus::AppUsage* usage, fm::Encoding encoding, const RunConfig& c,
                     std::ostream& log) {
  auto out = art.open(log_name);
  write_training_log_header(out);
  return fm::fit(train, usage, encoding, c.train, [&](std::size_t epoch, double loss) {
    out << epoch << '\t' << fmt::format("{:.9f}", loss) << '\n';
    out.flush();
    if (epoch == c.train.epochs) log << fmt::format("  epoch {} loss {:.6f}\n", epoch, loss);
  });
}

knn::BlendWeight tune_alpha(const corpus::FollowGraph& graph, const corpus::AppUsage& usage,
                            const RunConfig& c) {
  eval::SplitConfig inner = c.split;
  inner.seed = derive_seed(c.seed, kAlphaStream);
  const auto holdout = eval::split_follows(graph, inner);
  return knn::learn_alpha(holdout, usage, c.alpha_grid, c.knn_k, c.measure, c.threads);
}

void cmd_ingest(const RunConfig& c, Artifacts& art, json& manifest, std::ostream& log) {
  const auto in = load_inputs(c, manifest);
  const auto& f = in.follows;
  write_vocab(art, "users.tsv", f.users);
  write_vocab(art, "blogs.tsv", f.blogs);
  {
    auto out = art.open("follows.tsv");
    corpus::write_follows(out, f.graph, f.users, f.blogs);
  }
  json results = {{"users", f.graph.num_users()},
                  {"blogs", f.graph.num_blogs()},
                  {"follows", f.graph.num_follows()},
                  {"follows_ingest", ingest_json(f.report)}};
  if (in.apps) {
    write_vocab(art, "apps.tsv", in.apps->apps);
    auto out = art.open("app_usage.tsv");
    corpus::write_apps(out, in.apps->usage, f.users, in.apps->apps);
    results["apps"] = in.apps->usage.num_apps();
    results["app_entries"] = in.apps->usage.nnz();
    results["apps_ingest"] = ingest_json(in.apps->report);
  }
  log << fmt::format("ingest: {} users, {} blogs, {} follows\n", f.graph.num_users(),
                     f.graph.num_blogs(), f.graph.num_follows());
  manifest["results"] = results;
}

void write_hist(Artifacts& art, const corpus::DegreeHistogram& hist) {
  auto out = art.open(fmt::format("hist_{}.csv", corpus::to_string(hist.axis)));
  corpus::write_histogram_csv(out, hist);
}

void cmd_stats(const RunConfig& c, Artifacts& art, json& manifest, std::ostream& log) {
  const auto in = load_inputs(c, manifest);
  const auto& g = in.follows.graph;
  write_hist(art, corpus::degree_histogram(g, corpus::DegreeAxis::kBlogFollowers));
  write_hist(art, corpus::degree_histogram(g, corpus::DegreeAxis::kUserFollowees));
  json results = {{"users", g.num_users()}, {"blogs", g.num_blogs()}};
  if (in.apps) {
    const auto& usage = in.apps->usage;
    write_hist(art, corpus::degree_histogram(usage, corpus::DegreeAxis::kAppUsers));
    write_hist(art, corpus::degree_histogram(usage, corpus::DegreeAxis::kUserApps));
    const std::size_t p = std::min(c.heatmap_apps, usage.num_apps());
    const std::size_t q = std::min(c.heatmap_blogs, g.num_blogs());
    const auto heat = corpus::cross_heatmap(g, usage, p, q);
    auto out = art.open("heatmap.csv");
    corpus::write_heatmap_csv(out, heat, in.apps->apps, in.follows.blogs);
    results["heatmap"] = {{"apps", p}, {"blogs", q}};
  }
  log << fmt::format("stats: {} users, {} blogs\n", g.num_users(), g.num_blogs());
  manifest["results"] = results;
}

void cmd_train(const RunConfig& c, Artifacts& art, json& manifest, std::ostream& log) {
  const auto in = load_inputs(c, manifest);
  const auto& g = in.follows.graph;
  const std::string& model = c.models.front();
  json results = {{"model", model}};
  log << fmt::format("train {}: {} users, {} blogs\n", model, g.num_users(), g.num_blogs());
  if (model == "itemcf" || model == "itemcf-app") {
    {
      auto out = art.open("blog_sim.tsv");
      knn::write_sim_tsv(out, knn::build_blog_sim(g, c.knn_k, c.measure, c.threads));
    }
    if (model == "itemcf-app") {
      auto out = art.open("app_blog_sim.tsv");
      knn::write_sim_tsv(out,
                         knn::build_app_blog_sim(g, *in.usage(), c.knn_k, c.measure, c.threads));
      const auto alpha = tune_alpha(g, *in.usage(), c);
      results["alpha"] = alpha.value();
      log << fmt::format("  alpha {:.2f}\n", alpha.value());
    }
  } else {
    const auto encoding = fm::parse_encoding(model);
    const auto fit = fit_logged(art, "training_log.tsv", g,
                                encoding == fm::Encoding::kAppFm ? in.usage() : nullptr, encoding,
                                c, log);
    fm::save_model(art.claim("model.txt"), fit.space, fit.result.model);
    results["final_loss"] = fit.result.epoch_loss.back();
  }
  manifest["results"] = results;
}

json summary_json(const eval::MetricReport& r) {
  json p = json::object();
  for (std::size_t i = 0; i < r.ns.size(); ++i) p[std::to_string(r.ns[i])] = r.p_at[i];
  return {{"users", r.users_evaluated}, {"p_at", p}, {"mrr", r.mrr}};
}

void cmd_evaluate(const RunConfig& c, Artifacts& art, json& manifest, std::ostream& log) {
  const auto in = load_inputs(c, manifest);
  const auto split = eval::split_follows(in.follows.graph, c.split);
  fs::create_directories(art.dir() / "split");
  eval::write_split(art.dir() / "split", split, in.follows.users, in.follows.blogs);
  for (const char* name : {"split/train.tsv", "split/test.tsv", "split/candidates.tsv"}) {
    art.claim(name);
  }

  const eval::EvalOptions options{c.ns, c.buckets, c.threads};
  std::vector<eval::MetricReport> reports;
  json results = json::object();
  for (const auto& model : c.models) {
    json detail = json::object();
    std::unique_ptr<eval::Scorer> scorer;
    if (model == "pop") {
      scorer = std::make_unique<eval::PopScorer>(split.train);
    } else if (model == "itemcf") {
      scorer = std::make_unique<knn::ItemCfScorer>(split.train, c.knn_k, c.measure, c.threads);
    } else if (model == "itemcf-app") {
      const auto alpha = tune_alpha(split.train, *in.usage(), c);
      detail["alpha"] = alpha.value();
      scorer = std::make_unique<knn::AppItemCfScorer>(split.train, *in.usage(), c.knn_k, alpha,
                                                      c.measure, c.threads);
    } else {
      const auto encoding = fm::parse_encoding(model);
      const auto* usage = encoding == fm::Encoding::kAppFm ? in.usage() : nullptr;
      log << fmt::format("train {}\n", model);
      auto fit = fit_logged(art, fmt::format("training_log_{}.tsv", model), split.train, usage,
                            encoding, c, log);
      fm::save_model(art.claim(fmt::format("model_{}.txt", model)), fit.space, fit.result.model);
      detail["final_loss"] = fit.result.epoch_loss.back();
      scorer = std::make_unique<fm::FmScorer>(std::move(fit.result.model), fit.space, usage);
    }

    auto report = eval::evaluate(*scorer, split, options);
    {
      auto out = art.open(fmt::format("report_{}.json", model));
      out << eval::report_json(report) << '\n';
    }
    {
      auto out = art.open(fmt::format("buckets_{}.csv", model));
      eval::write_bucket_csv(out, report);
    }
    log << fmt::format("{:<10} users={} p@{}={:.4f} mrr={:.4f}\n", model, report.users_evaluated,
                       report.ns.front(), report.p_at.front(), report.mrr);
    detail.update(summary_json(report));
    results[model] = detail;
    reports.push_back(std::move(report));
  }

  {
    auto out = art.open("comparison.csv");
    eval::write_comparison_csv(out, reports);
  }
  {
    auto out = art.open("significance.csv");
    out << "model_a,model_b,wins,losses,ties,p_value\n";
    for (std::size_t a = 0; a < reports.size(); ++a) {
      for (std::size_t b = a + 1; b < reports.size(); ++b) {
        const auto t = eval::paired_sign_test(reports[a], reports[b]);
        out << fmt::format("{},{},{},{},{},{:.6g}\n", reports[a].model, reports[b].model, t.wins,
                           t.losses, t.ties, t.p_value);
      }
    }
  }
  manifest["results"] = results;
}

void cmd_synth(const RunConfig& c, Artifacts& art, json& manifest, std::ostream& log) {
  manifest["inputs"] = json::array();
  const auto corpus = eval::synth_generate(c.synth);
  {
    auto out = art.open("follows.tsv");
    corpus::write_follows(out, corpus.graph, corpus.users, corpus.blogs);
  }
  {
    auto out = art.open("apps.tsv");
    corpus::write_apps(out, corpus.usage, corpus.users, corpus.apps);
  }
  {
    auto out = art.open("topics.tsv");
    out << "kind\tid\ttopic\tsecondary\n";
    for (std::size_t u = 0; u < corpus.users.size(); ++u) {
      out << "user\t" << corpus.users.id(static_cast<corpus::Index>(u)) << '\t'
          << corpus.user_topic[u] << '\t' << corpus.user_secondary[u] << '\n';
    }
    for (std::size_t b = 0; b < corpus.blogs.size(); ++b) {
      out << "blog\t" << corpus.blogs.id(static_cast<corpus::Index>(b)) << '\t'
          << corpus.blog_topic[b] << "\t-\n";
    }
    for (std::size_t a = 0; a < corpus.apps.size(); ++a) {
      out << "app\t" << corpus.apps.id(static_cast<corpus::Index>(a)) << '\t'
          << corpus.app_topic[a] << "\t-\n";
    }
  }
  log << fmt::format("synth: {} users, {} blogs, {} follows, {} app entries\n",
                     corpus.graph.num_users(), corpus.graph.num_blogs(),
                     corpus.graph.num_follows(), corpus.usage.nnz());
  manifest["results"] = {{"follows", corpus.graph.num_follows()},
                         {"app_entries", corpus.usage.nnz()}};
}

}  // namespace

std::uint64_t file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::string format_checksum(std::uint64_t checksum) { return fmt::format("{:016x}", checksum); }

void run(const RunConfig& config, std::ostream& log) {
  Artifacts art{fs::path(config.out)};
  json manifest;
  manifest["tool"] = "blogrec";
  manifest["manifest_version"] = 1;
  manifest["command"] = std::string(to_string(config.command));
  manifest["seed"] = config.seed;
  manifest["config"] = config_json(config);

  auto finish = [&](const std::string& status) {
    manifest["status"] = status;
    manifest["outputs"] = art.listing();
    std::ofstream out(art.dir() / "manifest.json", std::ios::binary);
    if (!out) throw DataError("cannot write " + (art.dir() / "manifest.json").string());
    out << manifest.dump(2) << '\n';
  };

  try {
    switch (config.command) {
      case Command::kIngest: cmd_ingest(config, art, manifest, log); break;
      case Command::kStats: cmd_stats(config, art, manifest, log); break;
      case Command::kTrain: cmd_train(config, art, manifest, log); break;
      case Command::kEvaluate: cmd_evaluate(config, art, manifest, log); break;
      case Command::kSynth: cmd_synth(config, art, manifest, log); break;
    }
  } catch (const std::exception& e) {
    manifest["error"] = e.what();
    finish("failed");
    throw;
  }
  finish("ok");
}

int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = parse_args(args);
    run(config, out);
    return kExitOk;
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const DivergenceError& e) {
    err << "divergence: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace blogrec::cli
