#include "blogrec/fm/model.hpp"

#include <string>

#include "blogrec/error.hpp"

namespace blogrec::fm {

std::string_view to_string(Encoding encoding) {
  return encoding == Encoding::kMf ? "mf" : "app-fm";
}

Encoding parse_encoding(std::string_view name) {
  if (name == "mf") return Encoding::kMf;
  if (name == "app-fm") return Encoding::kAppFm;
  throw ConfigError("unknown FM encoding '" + std::string(name) + "'");
}

FeatureSpace FeatureSpace::mf(std::size_t users, std::size_t blogs) {
  return FeatureSpace(Encoding::kMf, users, blogs, 0);
}

FeatureSpace FeatureSpace::app_fm(std::size_t users, std::size_t blogs, std::size_t apps) {
  return FeatureSpace(Encoding::kAppFm, users, blogs, apps);
}

Index FeatureSpace::user_feature(std::size_t user) const {
  if (user >= users_) throw ContractError("user " + std::to_string(user) + " outside feature space");
  return static_cast<Index>(user);
}

Index FeatureSpace::blog_feature(std::size_t blog) const {
  if (blog >= blogs_) throw ContractError("blog " + std::to_string(blog) + " outside feature space");
  return static_cast<Index>(users_ + blog);
}

Index FeatureSpace::app_feature(std::size_t app) const {
  if (app >= apps_) throw ContractError("app " + std::to_string(app) + " outside feature space");
  return static_cast<Index>(users_ + blogs_ + app);
}

FmModel::FmModel(std::size_t num_features, std::size_t factors)
    : k_(factors), linear_(num_features, 0.0), factors_(num_features * factors, 0.0) {
  if (factors < 1) throw ConfigError("FM needs at least one latent factor");
}

void check_instance(const FmModel& model, std::span<const Feature> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].index >= model.num_features()) {
      throw ContractError("feature " + std::to_string(x[i].index) + " outside model with " +
                          std::to_string(model.num_features()) + " features");
    }
    if (i > 0 && x[i - 1].index >= x[i].index) {
      throw ContractError("instance feature indices must be strictly increasing");
    }
  }
}

double predict(const FmModel& model, std::span<const Feature> x) {
  check_instance(model, x);
  const std::size_t k = model.factors();
  double linear = model.bias();
  for (const auto& f : x) linear += model.linear()[f.index] * f.value;

  double pairs = 0.0;
  if (x.size() == 2) {
    // A single pair, evaluated directly. This is the MF instance shape.
    const auto zi = model.factor(x[0].index);
    const auto zj = model.factor(x[1].index);
    for (std::size_t f = 0; f < k; ++f) pairs += (zi[f] * x[0].value) * (zj[f] * x[1].value);
  } else if (x.size() > 2) {
    for (std::size_t f = 0; f < k; ++f) {
      double sum = 0.0;
      double sum_sq = 0.0;
      for (const auto& feat : x) {
        const double v = model.factor(feat.index)[f] * feat.value;
        sum += v;
        sum_sq += v * v;
      }
      pairs += 0.5 * (sum * sum - sum_sq);
    }
  }
  return linear + pairs;
}

}  // namespace blogrec::fm
