#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "blogrec/fm/model.hpp"

namespace blogrec::fm {

enum class Loss { kLogistic, kSquared };

std::string_view to_string(Loss loss);
Loss parse_loss(std::string_view name);

struct TrainConfig {
  std::size_t k = 5;
  double learning_rate = 0.05;
  double lambda = 0.001;
  std::size_t epochs = 20;
  Loss loss = Loss::kLogistic;
  double neg_ratio = 1.0;
  std::uint64_t seed = 42;
  double init_scale = 0.01;

  void validate() const;
};

// logistic: -[y log s(f) + (1-y) log(1-s(f))]; squared: (f - y)^2 / 2.
double loss_value(Loss loss, double label, double score);
double loss_derivative(Loss loss, double label, double score);

// Per-instance objective that SGD descends:
//   loss(y, f(x)) + lambda * (w0^2 + sum over active i of (w_i^2 + |z_i|^2)).
double instance_objective(const FmModel& model, const SparseInstance& x, Loss loss, double lambda);

// Gradient of instance_objective. Only active features have nonzero
// entries; `linear[j]` and `factors[j*k .. j*k+k)` belong to features[j].
struct InstanceGradient {
  double bias = 0.0;
  std::vector<Index> features;
  std::vector<double> linear;
  std::vector<double> factors;
};

InstanceGradient instance_gradient(const FmModel& model, const SparseInstance& x, Loss loss,
                                   double lambda);

// One SGD step on `x`: theta -= learning_rate * instance_gradient. Returns
// the data loss before the step (non-finite if the model diverged).
double sgd_update(FmModel& model, const SparseInstance& x, Loss loss, double lambda,
                  double learning_rate);

// w0 = 0, w = 0, Z ~ Normal(0, init_scale^2) drawn from config.seed.
FmModel init_model(std::size_t num_features, const TrainConfig& config);

struct TrainResult {
  FmModel model;
  std::vector<double> epoch_loss;  // mean data loss per epoch
};

using EpochCallback = std::function<void(std::size_t epoch, double mean_loss)>;

// Plain SGD, constant learning rate, instances reshuffled every epoch from
// the seed. Needs at least one positive and one negative instance. Throws
// DivergenceError on a non-finite loss.
TrainResult train(std::span<const SparseInstance> instances, std::size_t num_features,
                  const TrainConfig& config, const EpochCallback& on_epoch = {});

}  // namespace blogrec::fm
