#include "blogrec/fm/train.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "blogrec/error.hpp"
#include "blogrec/random.hpp"

namespace blogrec::fm {
namespace {

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

void factor_sums(const FmModel& model, std::span<const Feature> x, std::vector<double>& sums) {
  sums.assign(model.factors(), 0.0);
  for (const auto& feat : x) {
    const auto z = model.factor(feat.index);
    for (std::size_t f = 0; f < sums.size(); ++f) sums[f] += z[f] * feat.value;
  }
}

}  // namespace

std::string_view to_string(Loss loss) { return loss == Loss::kLogistic ? "logistic" : "squared"; }

Loss parse_loss(std::string_view name) {
  if (name == "logistic") return Loss::kLogistic;
  if (name == "squared") return Loss::kSquared;
  throw ConfigError("unknown loss '" + std::string(name) + "'");
}

void TrainConfig::validate() const {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning rate must be positive");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be >= 0");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(neg_ratio > 0.0)) throw ConfigError("neg_ratio must be positive");
  if (!(init_scale > 0.0)) throw ConfigError("init_scale must be positive");
}

double loss_value(Loss loss, double label, double score) {
  if (loss == Loss::kSquared) {
    const double r = score - label;
    return 0.5 * r * r;
  }
  // softplus(score) - label * score, stable for large |score|
  return std::max(score, 0.0) + std::log1p(std::exp(-std::abs(score))) - label * score;
}

double loss_derivative(Loss loss, double label, double score) {
  return loss == Loss::kSquared ? score - label : sigmoid(score) - label;
}

double instance_objective(const FmModel& model, const SparseInstance& x, Loss loss, double lambda) {
  double reg = model.bias() * model.bias();
  for (const auto& feat : x.features) {
    const double w = model.linear()[feat.index];
    reg += w * w;
    for (double z : model.factor(feat.index)) reg += z * z;
  }
  return loss_value(loss, x.label, predict(model, x)) + lambda * reg;
}

InstanceGradient instance_gradient(const FmModel& model, const SparseInstance& x, Loss loss,
                                   double lambda) {
  const double g = loss_derivative(loss, x.label, predict(model, x));
  const std::size_t k = model.factors();
  std::vector<double> sums;
  factor_sums(model, x.features, sums);

  InstanceGradient grad;
  grad.bias = g + 2.0 * lambda * model.bias();
  for (const auto& feat : x.features) {
    grad.features.push_back(feat.index);
    grad.linear.push_back(g * feat.value + 2.0 * lambda * model.linear()[feat.index]);
    const auto z = model.factor(feat.index);
    for (std::size_t f = 0; f < k; ++f) {
      grad.factors.push_back(g * feat.value * (sums[f] - z[f] * feat.value) + 2.0 * lambda * z[f]);
    }
  }
  return grad;
}

double sgd_update(FmModel& model, const SparseInstance& x, Loss loss, double lambda,
                  double learning_rate) {
  const double score = predict(model, x);
  const double value = loss_value(loss, x.label, score);
  if (!std::isfinite(value)) return value;
  const double g = loss_derivative(loss, x.label, score);
  const std::size_t k = model.factors();
  thread_local std::vector<double> sums;
  factor_sums(model, x.features, sums);

  const double decay = 2.0 * lambda;
  model.bias() -= learning_rate * (g + decay * model.bias());
  for (const auto& feat : x.features) {
    double& w = model.linear()[feat.index];
    w -= learning_rate * (g * feat.value + decay * w);
    auto z = model.factor(feat.index);
    for (std::size_t f = 0; f < k; ++f) {
      z[f] -= learning_rate * (g * feat.value * (sums[f] - z[f] * feat.value) + decay * z[f]);
    }
  }
  return value;
}

FmModel init_model(std::size_t num_features, const TrainConfig& config) {
  FmModel model(num_features, config.k);
  Rng rng(derive_seed(config.seed, 0));
  std::normal_distribution<double> normal(0.0, config.init_scale);
  for (double& z : model.factor_table()) z = normal(rng);
  return model;
}

TrainResult train(std::span<const SparseInstance> instances, std::size_t num_features,
                  const TrainConfig& config, const EpochCallback& on_epoch) {
  config.validate();
  std::size_t positives = 0;
  std::size_t negatives = 0;
  TrainResult result{init_model(num_features, config), {}};
  for (const auto& x : instances) {
    check_instance(result.model, x.features);
    if (x.label == 1.0) {
      ++positives;
    } else if (x.label == 0.0) {
      ++negatives;
    } else {
      throw ContractError("instance labels must be 0 or 1");
    }
  }
  if (positives == 0 || negatives == 0) {
    throw DataError("training needs at least one positive and one negative instance");
  }

  std::vector<std::size_t> order(instances.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng shuffle_rng(derive_seed(config.seed, 1));
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    double total = 0.0;
    for (std::size_t i : order) {
      const double value =
          sgd_update(result.model, instances[i], config.loss, config.lambda, config.learning_rate);
      if (!std::isfinite(value)) {
        throw DivergenceError(fmt::format(
            "training diverged: non-finite loss at epoch {} on instance {} (learning rate {})",
            epoch + 1, i, config.learning_rate));
      }
      total += value;
    }
    const auto& m = result.model;
    const bool finite =
        std::isfinite(m.bias()) &&
        std::all_of(m.linear().begin(), m.linear().end(), [](double v) { return std::isfinite(v); }) &&
        std::all_of(m.factor_table().begin(), m.factor_table().end(),
                    [](double v) { return std::isfinite(v); });
    if (!finite) {
      throw DivergenceError(fmt::format("training diverged: non-finite parameters after epoch {}",
                                        epoch + 1));
    }
    const double mean = total / static_cast<double>(instances.size());
    result.epoch_loss.push_back(mean);
    if (on_epoch) on_epoch(epoch + 1, mean);
  }
  return result;
}

}  // namespace blogrec::fm
