#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "blogrec/cli.hpp"

namespace blogrec::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> sorted_lines(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  std::sort(lines.begin(), lines.end());
  return lines;
}

int run_cli(std::vector<std::string> args, std::string* err = nullptr) {
  std::ostringstream out, e;
  const int code = main_entry(args, out, e);
  if (err) *err = e.str();
  return code;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("blogrec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  std::string path(const std::string& name) const { return (root_ / name).string(); }

  void make_corpus() {
    ASSERT_EQ(run_cli({"synth", "--num-users", "300", "--num-blogs", "100", "--num-apps", "30",
                       "--out", path("syn")}),
              kExitOk);
  }

  std::vector<std::string> evaluate_args(const std::string& out, const std::string& models) {
    return {"evaluate", "--follows", path("syn/follows.tsv"), "--apps", path("syn/apps.tsv"),
            "--model", models, "--epochs", "5", "--lr", "0.01", "--out", path(out)};
  }

  fs::path root_;
};

TEST(ParseArgs, FlagsReachConfig) {
  const std::vector<std::string> args{
      "evaluate", "--follows", "f.tsv", "--apps", "a.tsv", "--model", "mf,app-fm", "--k", "7",
      "--lr", "0.2", "--lambda", "0.5", "--epochs", "3", "--neg-ratio", "2", "--knn-k", "9",
      "--alpha-grid", "0,0.5,1", "--train-frac", "0.7", "--neg-mult", "4", "--seed", "11",
      "--measure", "pearson", "--at", "1,3", "--buckets", "2,8", "--out", "o"};
  const auto c = parse_args(args);
  EXPECT_EQ(c.command, Command::kEvaluate);
  EXPECT_EQ(c.models, (std::vector<std::string>{"mf", "app-fm"}));
  EXPECT_EQ(c.train.k, 7u);
  EXPECT_EQ(c.train.learning_rate, 0.2);
  EXPECT_EQ(c.train.lambda, 0.5);
  EXPECT_EQ(c.train.epochs, 3u);
  EXPECT_EQ(c.train.neg_ratio, 2.0);
  EXPECT_EQ(c.knn_k, 9u);
  EXPECT_EQ(c.alpha_grid, (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(c.split.train_frac, 0.7);
  EXPECT_EQ(c.split.neg_mult, 4u);
  EXPECT_EQ(c.measure, knn::Measure::kPearson);
  EXPECT_EQ(c.ns, (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(c.buckets.thresholds, (std::vector<std::size_t>{2, 8}));
  EXPECT_EQ(c.seed, 11u);
  EXPECT_EQ(c.split.seed, 11u);
  EXPECT_EQ(c.train.seed, 11u);
}

TEST(ParseArgs, DefaultModelsDependOnApps) {
  const auto with = parse_args(std::vector<std::string>{"evaluate", "--follows", "f", "--apps", "a", "--out", "o"});
  EXPECT_EQ(with.models, kAllModels);
  const auto without = parse_args(std::vector<std::string>{"evaluate", "--follows", "f", "--out", "o"});
  EXPECT_EQ(without.models, (std::vector<std::string>{"pop", "itemcf", "mf"}));
}

TEST(ParseArgs, UsageErrors) {
  using V = std::vector<std::string>;
  const std::vector<V> bad{
      {},
      {"bogus"},
      {"evaluate", "--follows", "f"},
      {"evaluate", "--out", "o"},
      {"evaluate", "--follows", "f", "--out", "o", "--model", "svd"},
      {"evaluate", "--follows", "f", "--out", "o", "--model", "app-fm"},
      {"evaluate", "--follows", "f", "--out", "o", "--model", "pop,pop"},
      {"train", "--follows", "f", "--out", "o"},
      {"train", "--follows", "f", "--out", "o", "--model", "mf,itemcf"},
      {"train", "--follows", "f", "--out", "o", "--model", "pop"},
      {"evaluate", "--follows", "f", "--out", "o", "--k", "0"},
      {"evaluate", "--follows", "f", "--out", "o", "--lr", "-1"},
      {"evaluate", "--follows", "f", "--out", "o", "--alpha-grid", "0,2"},
      {"evaluate", "--follows", "f", "--out", "o", "--alpha-grid", "0,x"},
      {"evaluate", "--follows", "f", "--out", "o", "--train-frac", "1"},
      {"evaluate", "--follows", "f", "--out", "o", "--buckets", "5,3"},
      {"evaluate", "--follows", "f", "--out", "o", "--measure", "l2"},
      {"evaluate", "--follows", "f", "--out", "o", "--epochs", "many"},
      {"synth", "--out", "o", "--coupling", "2"},
      {"ingest", "--follows", "f", "--out", "o", "--model", "mf"},
  };
  for (const auto& args : bad) {
    EXPECT_THROW(parse_args(args), UsageError) << (args.empty() ? "" : args[0]);
    EXPECT_EQ(run_cli(args), kExitUsage);
  }
}

TEST(ParseArgs, HelpExitsZero) {
  std::ostringstream out, err;
  EXPECT_EQ(main_entry(std::vector<std::string>{"--help"}, out, err), kExitOk);
  EXPECT_NE(out.str().find("evaluate"), std::string::npos);
  EXPECT_EQ(run_cli({"evaluate", "--help"}), kExitOk);
}

TEST_F(CliTest, MissingInputIsDataError) {
  std::string err;
  EXPECT_EQ(run_cli({"evaluate", "--follows", path("none.tsv"), "--out", path("o")}, &err), kExitData);
  EXPECT_NE(err.find("none.tsv"), std::string::npos);
}

TEST_F(CliTest, MalformedInputIsDataError) {
  std::ofstream(path("bad.tsv")) << "a\tb\nc\n";
  EXPECT_EQ(run_cli({"ingest", "--follows", path("bad.tsv"), "--out", path("o")}), kExitData);
}

TEST_F(CliTest, DivergenceExitCode) {
  make_corpus();
  EXPECT_EQ(run_cli({"train", "--follows", path("syn/follows.tsv"), "--model", "mf", "--loss",
                     "squared", "--lr", "1e6", "--out", path("t")}),
            kExitDivergence);
  const auto manifest = json::parse(slurp(path("t/manifest.json")));
  EXPECT_EQ(manifest["status"], "failed");
}

TEST_F(CliTest, EvaluatePopReportSchema) {
  make_corpus();
  ASSERT_EQ(run_cli(evaluate_args("e", "pop")), kExitOk);
  const auto report = json::parse(slurp(path("e/report_pop.json")));
  EXPECT_TRUE(report.contains("p_at"));
  EXPECT_TRUE(report.contains("mrr"));
  EXPECT_EQ(report["seed"], 42);
  EXPECT_TRUE(fs::exists(path("e/buckets_pop.csv")));
  EXPECT_TRUE(fs::exists(path("e/split/test.tsv")));
}

TEST_F(CliTest, ComparisonHasOneRowPerModel) {
  make_corpus();
  ASSERT_EQ(run_cli(evaluate_args("e", "all")), kExitOk);
  std::istringstream lines(slurp(path("e/comparison.csv")));
  std::vector<std::string> models;
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) models.push_back(line.substr(0, line.find(',')));
  EXPECT_EQ(models, kAllModels);
  std::istringstream sig(slurp(path("e/significance.csv")));
  std::size_t rows = 0;
  while (std::getline(sig, line)) ++rows;
  EXPECT_EQ(rows, 1u + 10u);
}

TEST_F(CliTest, ManifestEchoesConfigAndChecksums) {
  make_corpus();
  ASSERT_EQ(run_cli(evaluate_args("e", "mf")), kExitOk);
  const auto m = json::parse(slurp(path("e/manifest.json")));
  EXPECT_EQ(m["seed"], 42);
  EXPECT_EQ(m["status"], "ok");
  EXPECT_EQ(m["config"]["train"]["epochs"], 5);
  EXPECT_EQ(m["config"]["train"]["lr"], 0.01);
  ASSERT_EQ(m["inputs"].size(), 2u);
  EXPECT_EQ(m["inputs"][0]["fnv1a64"],
            format_checksum(file_checksum(path("syn/follows.tsv"))));
  bool listed = false;
  for (const auto& o : m["outputs"]) listed |= o["path"] == "model_mf.txt";
  EXPECT_TRUE(listed);
}

TEST_F(CliTest, RepeatedRunsAreByteIdentical) {
  make_corpus();
  const std::string before = slurp(path("syn/follows.tsv"));
  ASSERT_EQ(run_cli(evaluate_args("a", "all")), kExitOk);
  ASSERT_EQ(run_cli(evaluate_args("b", "all")), kExitOk);
  for (const auto& entry : fs::directory_iterator(path("a"))) {
    const auto name = entry.path().filename().string();
    if (name == "manifest.json" || entry.is_directory()) continue;
    EXPECT_EQ(slurp(entry.path()), slurp(root_ / "b" / name)) << name;
  }
  EXPECT_EQ(slurp(path("syn/follows.tsv")), before);
}

TEST_F(CliTest, IngestStatsTrainArtifacts) {
  make_corpus();
  const auto f = path("syn/follows.tsv");
  const auto a = path("syn/apps.tsv");
  ASSERT_EQ(run_cli({"ingest", "--follows", f, "--apps", a, "--out", path("i")}), kExitOk);
  EXPECT_EQ(sorted_lines(path("i/follows.tsv")), sorted_lines(f));
  for (const char* name : {"users.tsv", "blogs.tsv", "apps.tsv", "app_usage.tsv"}) {
    EXPECT_TRUE(fs::exists(root_ / "i" / name)) << name;
  }
  ASSERT_EQ(run_cli({"stats", "--follows", f, "--apps", a, "--out", path("s")}), kExitOk);
  for (const char* name : {"hist_blog-followers.csv", "hist_user-followees.csv",
                           "hist_app-users.csv", "hist_user-apps.csv", "heatmap.csv"}) {
    EXPECT_TRUE(fs::exists(root_ / "s" / name)) << name;
  }
  ASSERT_EQ(run_cli({"train", "--follows", f, "--apps", a, "--model", "app-fm", "--epochs", "2",
                     "--out", path("t")}),
            kExitOk);
  EXPECT_TRUE(fs::exists(path("t/model.txt")));
  std::istringstream log(slurp(path("t/training_log.tsv")));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(log, line)) ++rows;
  EXPECT_EQ(rows, 3u);
  ASSERT_EQ(run_cli({"train", "--follows", f, "--apps", a, "--model", "itemcf-app", "--out",
                     path("k")}),
            kExitOk);
  EXPECT_TRUE(fs::exists(path("k/app_blog_sim.tsv")));
  EXPECT_TRUE(json::parse(slurp(path("k/manifest.json")))["results"].contains("alpha"));
}

}  // namespace
}  // namespace blogrec::cli
