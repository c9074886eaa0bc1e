#include <cmath>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "blogrec/error.hpp"
#include "blogrec/fm/encoding.hpp"
#include "blogrec/fm/model.hpp"
#include "blogrec/fm/model_io.hpp"
#include "blogrec/fm/recommender.hpp"
#include "blogrec/fm/sampling.hpp"
#include "blogrec/fm/train.hpp"
#include "oracles.hpp"

namespace blogrec::fm {
namespace {

using corpus::FollowGraph;

std::vector<std::pair<Index, double>> entries(const SparseInstance& x) {
  std::vector<std::pair<Index, double>> out;
  for (const auto& f : x.features) out.emplace_back(f.index, f.value);
  return out;
}

TEST(Predict, ZeroModelScoresZero) {
  FmModel m(6, 3);
  const std::vector<Feature> x{{1, 1.0}, {4, 1.0}};
  EXPECT_EQ(predict(m, x), 0.0);
}

TEST(Predict, HandExample) {
  FmModel m(2, 2);
  m.bias() = 0.1;
  m.linear()[0] = 0.2;
  m.linear()[1] = 0.3;
  m.factor(0)[0] = 1.0;
  m.factor(1)[0] = 0.5;
  m.factor(1)[1] = 0.5;
  const std::vector<Feature> x{{0, 1.0}, {1, 1.0}};
  EXPECT_NEAR(predict(m, x), 1.1, 1e-15);
}

TEST(Predict, SingleFeatureHasNoPairTerm) {
  Rng rng(1);
  const auto m = testing::random_model(rng, 5, 4);
  const std::vector<Feature> x{{3, 1.5}};
  EXPECT_DOUBLE_EQ(predict(m, x), m.bias() + 1.5 * m.linear()[3]);
}

TEST(Predict, TwoFeaturesHandExpansion) {
  Rng rng(2);
  const auto m = testing::random_model(rng, 5, 3);
  const std::vector<Feature> x{{1, 0.5}, {4, -2.0}};
  double dot = 0.0;
  for (std::size_t f = 0; f < 3; ++f) dot += m.factor(1)[f] * m.factor(4)[f];
  const double want = m.bias() + 0.5 * m.linear()[1] - 2.0 * m.linear()[4] + dot * 0.5 * -2.0;
  EXPECT_NEAR(predict(m, x), want, 1e-14);
}

TEST(Predict, MatchesPairwiseOracle) {
  Rng rng(3);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t F = std::uniform_int_distribution<std::size_t>(1, 50)(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const auto m = testing::random_model(rng, F, k);
    const auto x = testing::random_features(rng, F, 12);
    EXPECT_NEAR(predict(m, x), testing::predict_oracle(m, x), 1e-10);
  }
}

TEST(Predict, RejectsBadInstances) {
  FmModel m(4, 2);
  EXPECT_THROW(predict(m, std::vector<Feature>{{4, 1.0}}), ContractError);
  EXPECT_THROW(predict(m, std::vector<Feature>{{2, 1.0}, {1, 1.0}}), ContractError);
  EXPECT_THROW(predict(m, std::vector<Feature>{{1, 1.0}, {1, 1.0}}), ContractError);
  EXPECT_THROW(FmModel(4, 0), ConfigError);
}

TEST(EncodeMf, OffsetArithmetic) {
  EXPECT_EQ(entries(encode_mf(0, 0, FeatureSpace::mf(3, 4))),
            (std::vector<std::pair<Index, double>>{{0, 1.0}, {3, 1.0}}));
  EXPECT_EQ(entries(encode_mf(2, 4, FeatureSpace::mf(3, 5))),
            (std::vector<std::pair<Index, double>>{{2, 1.0}, {7, 1.0}}));
  EXPECT_THROW(encode_mf(3, 0, FeatureSpace::mf(3, 5)), ContractError);
  EXPECT_THROW(encode_mf(0, 5, FeatureSpace::mf(3, 5)), ContractError);
}

TEST(EncodeMf, EqualsBiasedDotProductExactly) {
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 20)(rng);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 20)(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const auto space = FeatureSpace::mf(m, n);
    const auto model = testing::random_model(rng, space.total(), k);
    const std::size_t p = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
    const std::size_t q = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    const auto u = model.factor(p);
    const auto v = model.factor(m + q);
    double dot = 0.0;
    for (std::size_t f = 0; f < k; ++f) dot += u[f] * v[f];
    const double direct = model.bias() + model.linear()[p] + model.linear()[m + q] + dot;
    EXPECT_EQ(predict(model, encode_mf(p, q, space)), direct);
  }
}

TEST(EncodeAppFm, OffsetArithmetic) {
  const auto space = FeatureSpace::app_fm(2, 2, 3);
  const std::vector<Index> apps{2};
  EXPECT_EQ(entries(encode_app_fm(1, 0, apps, space)),
            (std::vector<std::pair<Index, double>>{{1, 1.0}, {2, 1.0}, {6, 1.0}}));
  const std::vector<Index> unsorted{2, 0};
  EXPECT_EQ(entries(encode_app_fm(0, 1, unsorted, space)),
            (std::vector<std::pair<Index, double>>{{0, 1.0}, {3, 1.0}, {4, 1.0}, {6, 1.0}}));
  const std::vector<Index> dup{1, 1};
  EXPECT_THROW(encode_app_fm(0, 0, dup, space), ContractError);
  const std::vector<Index> bad{3};
  EXPECT_THROW(encode_app_fm(0, 0, bad, space), ContractError);
}

TEST(EncodeAppFm, NoAppsMatchesMf) {
  const auto space = FeatureSpace::app_fm(4, 6, 3);
  EXPECT_EQ(entries(encode_app_fm(3, 5, {}, space)), entries(encode_mf(3, 5, space)));
}

TEST(EncodeAppFm, AppBlogCrossTerm) {
  Rng rng(6);
  const auto space = FeatureSpace::app_fm(2, 2, 2);
  auto model = testing::random_model(rng, space.total(), 4);
  for (double& z : model.factor(1)) z = 0.0;  // silence the user factor
  const std::vector<Index> apps{0, 1};
  const auto x = encode_app_fm(1, 0, apps, space);
  const auto zq = model.factor(2);
  double cross = 0.0;
  for (Index a : {4u, 5u}) {
    for (std::size_t f = 0; f < 4; ++f) cross += model.factor(a)[f] * zq[f];
  }
  double app_app = 0.0;
  for (std::size_t f = 0; f < 4; ++f) app_app += model.factor(4)[f] * model.factor(5)[f];
  const double linear =
      model.bias() + model.linear()[1] + model.linear()[2] + model.linear()[4] + model.linear()[5];
  EXPECT_NEAR(predict(model, x) - linear - app_app, cross, 1e-12);
  EXPECT_NEAR(predict(model, x), testing::predict_oracle(model, x.features), 1e-12);
}

TEST(SampleNegatives, RatioOneMatchesFollowCount) {
  const auto g = FollowGraph::from_rows(100, {{5, 50, 99}});
  const auto s = sample_negatives(g, 1.0, 9);
  ASSERT_EQ(s.pairs.size(), 3u);
  for (const auto& p : s.pairs) EXPECT_FALSE(g.follows(p.user, p.blog));
  EXPECT_EQ(s.short_users, 0u);
}

TEST(SampleNegatives, ForcedChoice) {
  std::vector<Index> all(9);
  std::iota(all.begin(), all.end(), Index{0});
  all.erase(all.begin() + 4);
  const auto g = FollowGraph::from_rows(9, {all});
  const auto s = sample_negatives(g, 1.0 / 8.0, 1);
  ASSERT_EQ(s.pairs.size(), 1u);
  EXPECT_EQ(s.pairs[0].blog, 4u);
  const auto greedy = sample_negatives(g, 1.0, 1);
  EXPECT_EQ(greedy.pairs.size(), 1u);
  EXPECT_EQ(greedy.short_users, 1u);
}

TEST(SampleNegatives, DeterministicAndSorted) {
  Rng rng(7);
  const auto g = FollowGraph(testing::random_csr(rng, 40, 60, 0.1));
  const auto a = sample_negatives(g, 2.0, 33);
  const auto b = sample_negatives(g, 2.0, 33);
  EXPECT_EQ(a.pairs, b.pairs);
  for (std::size_t i = 1; i < a.pairs.size(); ++i) {
    const auto& p = a.pairs[i - 1];
    const auto& q = a.pairs[i];
    EXPECT_TRUE(p.user < q.user || (p.user == q.user && p.blog < q.blog));
  }
  EXPECT_NE(sample_negatives(g, 2.0, 34).pairs, a.pairs);
}

TEST(Loss, ValuesAndStability) {
  EXPECT_NEAR(loss_value(Loss::kLogistic, 1.0, 0.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(loss_value(Loss::kLogistic, 0.0, 2.0), std::log1p(std::exp(2.0)), 1e-14);
  EXPECT_NEAR(loss_value(Loss::kLogistic, 1.0, 800.0), 0.0, 1e-12);
  EXPECT_NEAR(loss_value(Loss::kLogistic, 0.0, 800.0), 800.0, 1e-9);
  EXPECT_DOUBLE_EQ(loss_value(Loss::kSquared, 1.0, 3.0), 2.0);
  EXPECT_DOUBLE_EQ(loss_derivative(Loss::kSquared, 1.0, 3.0), 2.0);
  EXPECT_DOUBLE_EQ(loss_derivative(Loss::kLogistic, 1.0, 0.0), -0.5);
  EXPECT_EQ(parse_loss("squared"), Loss::kSquared);
  EXPECT_THROW(parse_loss("hinge"), ConfigError);
}

TEST(Gradient, MatchesFiniteDifferences) {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const std::size_t F = std::uniform_int_distribution<std::size_t>(2, 20)(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const auto m = testing::random_model(rng, F, k);
    SparseInstance x{testing::random_features(rng, F, 8), static_cast<double>(t % 2)};
    for (Loss loss : {Loss::kLogistic, Loss::kSquared}) {
      EXPECT_LT(testing::max_gradient_error(m, x, loss, 0.05), 1e-4);
    }
  }
}

TEST(Sgd, StepIsParameterMinusScaledGradient) {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    auto m = testing::random_model(rng, 15, 4);
    SparseInstance x{testing::random_features(rng, 15, 6), static_cast<double>(t % 2)};
    const auto grad = instance_gradient(m, x, Loss::kLogistic, 0.01);
    const FmModel before = m;
    const double loss = sgd_update(m, x, Loss::kLogistic, 0.01, 0.1);
    EXPECT_DOUBLE_EQ(loss, loss_value(Loss::kLogistic, x.label, predict(before, x)));
    EXPECT_NEAR(m.bias(), before.bias() - 0.1 * grad.bias, 1e-15);
    for (std::size_t j = 0; j < grad.features.size(); ++j) {
      const Index i = grad.features[j];
      EXPECT_NEAR(m.linear()[i], before.linear()[i] - 0.1 * grad.linear[j], 1e-15);
      for (std::size_t f = 0; f < 4; ++f) {
        EXPECT_NEAR(m.factor(i)[f], before.factor(i)[f] - 0.1 * grad.factors[j * 4 + f], 1e-15);
      }
    }
  }
}

std::vector<SparseInstance> tiny_dataset() {
  // feature 0 marks every positive, feature 1 every negative; 2..5 are noise
  std::vector<SparseInstance> data;
  for (int i = 0; i < 20; ++i) {
    const Index noise = static_cast<Index>(2 + i % 4);
    data.push_back({{{0, 1.0}, {noise, 1.0}}, 1.0});
    data.push_back({{{1, 1.0}, {noise, 1.0}}, 0.0});
  }
  return data;
}

TEST(Train, SharedPositiveFeatureWeightRises) {
  const auto data = tiny_dataset();
  TrainConfig cfg;
  cfg.lambda = 0.0;
  cfg.learning_rate = 0.05;
  double prev = 0.0;
  for (std::size_t e = 1; e <= 5; ++e) {
    cfg.epochs = e;
    const double w = train(data, 6, cfg).model.linear()[0];
    EXPECT_GT(w, prev) << "epoch " << e;
    prev = w;
  }
}

double param_norm(const FmModel& m) {
  double s = m.bias() * m.bias();
  for (double w : m.linear()) s += w * w;
  for (double z : m.factor_table()) s += z * z;
  return std::sqrt(s);
}

TEST(Train, NormShrinksAsLambdaGrows) {
  const auto data = tiny_dataset();
  TrainConfig cfg;
  cfg.learning_rate = 0.01;
  cfg.epochs = 30;
  double prev = std::numeric_limits<double>::infinity();
  for (double lambda : {0.001, 0.1, 10.0}) {
    cfg.lambda = lambda;
    const double norm = param_norm(train(data, 6, cfg).model);
    EXPECT_LE(norm, prev) << "lambda " << lambda;
    prev = norm;
  }
}

TEST(Train, DeterministicForSeed) {
  const auto data = tiny_dataset();
  TrainConfig cfg;
  cfg.init_scale = 0.1;
  const auto a = train(data, 6, cfg);
  const auto b = train(data, 6, cfg);
  EXPECT_EQ(a.model, b.model);
  EXPECT_EQ(a.epoch_loss, b.epoch_loss);
  cfg.seed = 43;
  EXPECT_NE(train(data, 6, cfg).model, a.model);
}

TEST(Train, LossDecreasesAndCallbackSeesEveryEpoch) {
  const auto data = tiny_dataset();
  TrainConfig cfg;
  cfg.epochs = 10;
  std::vector<std::size_t> seen;
  const auto r = train(data, 6, cfg, [&](std::size_t e, double) { seen.push_back(e); });
  EXPECT_EQ(seen.size(), 10u);
  EXPECT_EQ(seen.front(), 1u);
  EXPECT_LT(r.epoch_loss.back(), r.epoch_loss.front());
}

TEST(Train, DivergenceIsReported) {
  const auto data = tiny_dataset();
  TrainConfig cfg;
  cfg.loss = Loss::kSquared;
  cfg.learning_rate = 50.0;
  cfg.init_scale = 1.0;
  EXPECT_THROW(train(data, 6, cfg), DivergenceError);
}

TEST(Train, RejectsUnusableData) {
  std::vector<SparseInstance> pos{{{{0, 1.0}}, 1.0}};
  EXPECT_THROW(train(pos, 2, TrainConfig{}), DataError);
  std::vector<SparseInstance> soft{{{{0, 1.0}}, 1.0}, {{{1, 1.0}}, 0.5}};
  EXPECT_THROW(train(soft, 2, TrainConfig{}), ContractError);
  TrainConfig bad;
  bad.learning_rate = 0.0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = {};
  bad.epochs = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(ModelIo, RoundTrip) {
  Rng rng(10);
  const auto space = FeatureSpace::app_fm(7, 5, 3);
  const auto m = testing::random_model(rng, space.total(), 4);
  std::stringstream io;
  write_model(io, space, m);
  const auto back = read_model(io);
  EXPECT_EQ(back.space, space);
  ASSERT_EQ(back.model.num_features(), m.num_features());
  EXPECT_NEAR(back.model.bias(), m.bias(), 1e-9 * std::abs(m.bias()) + 1e-12);
  for (std::size_t i = 0; i < m.num_features(); ++i) {
    EXPECT_NEAR(back.model.linear()[i], m.linear()[i], 1e-9 * std::abs(m.linear()[i]) + 1e-12);
  }
  for (std::size_t i = 0; i < m.factor_table().size(); ++i) {
    EXPECT_NEAR(back.model.factor_table()[i], m.factor_table()[i],
                1e-9 * std::abs(m.factor_table()[i]) + 1e-12);
  }
}

TEST(ModelIo, RejectsDamagedFiles) {
  Rng rng(11);
  const auto space = FeatureSpace::mf(3, 2);
  const auto m = testing::random_model(rng, space.total(), 2);
  std::ostringstream out;
  write_model(out, space, m);
  const std::string good = out.str();
  auto reject = [](const std::string& text) {
    std::istringstream in(text);
    EXPECT_THROW(read_model(in), ParseError) << text.substr(0, 40);
  };
  reject("not-a-model 1\n");
  reject(good.substr(0, good.size() / 2));
  std::string wrong_count = good;
  wrong_count.replace(wrong_count.find("features 5"), 10, "features 6");
  reject(wrong_count);
  std::string wrong_space = good;
  wrong_space.replace(wrong_space.find("space 3 2 0"), 11, "space 3 2 1");
  reject(wrong_space);
  EXPECT_THROW(write_model(out, FeatureSpace::mf(3, 3), m), ContractError);
  EXPECT_THROW(load_model("/nonexistent/model.txt"), DataError);
}

TEST(ScoreCandidates, Examples) {
  const auto space = FeatureSpace::mf(2, 6);
  const FmModel zero(space.total(), 3);
  const std::vector<Index> cand{4, 1, 3};
  EXPECT_EQ(score_candidates(zero, space, 0, {}, cand), (std::vector<Index>{1, 3, 4}));
  const std::vector<Index> one{5};
  EXPECT_EQ(score_candidates(zero, space, 1, {}, one), one);
}

TEST(ScoreCandidates, MatchesOracleRanking) {
  Rng rng(12);
  const auto space = FeatureSpace::app_fm(5, 30, 8);
  const std::vector<Index> apps{1, 4, 6};
  for (int t = 0; t < 20; ++t) {
    const auto m = testing::random_model(rng, space.total(), 5);
    std::vector<Index> cand(30);
    std::iota(cand.begin(), cand.end(), Index{0});
    std::vector<double> oracle;
    for (Index b : cand) {
      oracle.push_back(testing::predict_oracle(m, encode_app_fm(2, b, apps, space).features));
    }
    std::vector<Index> want = cand;
    std::stable_sort(want.begin(), want.end(),
                     [&](Index a, Index b) { return oracle[a] > oracle[b]; });
    EXPECT_EQ(score_candidates(m, space, 2, apps, cand), want);
  }
}

TEST(BuildInstances, PositivesAndSampledNegatives) {
  Rng rng(13);
  const auto g = FollowGraph(testing::random_csr(rng, 20, 40, 0.15));
  const auto space = FeatureSpace::mf(20, 40);
  const auto data = build_instances(g, nullptr, space, 1.0, 5);
  std::size_t pos = 0, neg = 0;
  for (const auto& x : data) {
    const Index u = x.features[0].index;
    const Index b = x.features[1].index - 20;
    if (x.label == 1.0) {
      ++pos;
      EXPECT_TRUE(g.follows(u, b));
    } else {
      ++neg;
      EXPECT_FALSE(g.follows(u, b));
    }
  }
  EXPECT_EQ(pos, g.num_follows());
  EXPECT_EQ(neg, g.num_follows());
  EXPECT_THROW(build_instances(g, nullptr, FeatureSpace::app_fm(20, 40, 3), 1.0, 5), ContractError);
}

TEST(FmScorer, NamesFollowEncoding) {
  const auto mf = FeatureSpace::mf(2, 2);
  EXPECT_EQ(FmScorer(FmModel(mf.total(), 2), mf, nullptr).name(), "mf");
  const auto usage = corpus::AppUsage::from_records(2, 1, {});
  const auto app = FeatureSpace::app_fm(2, 2, 1);
  EXPECT_EQ(FmScorer(FmModel(app.total(), 2), app, &usage).name(), "app-fm");
}

}  // namespace
}  // namespace blogrec::fm
