#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "blogrec/corpus/vocab.hpp"

namespace blogrec::fm {

using corpus::Index;

enum class Encoding { kMf, kAppFm };

std::string_view to_string(Encoding encoding);
Encoding parse_encoding(std::string_view name);

// Unified feature index space: users at [0, m), blogs at [m, m+n), apps at
// [m+n, m+n+c). The MF encoding has no app block.
class FeatureSpace {
 public:
  static FeatureSpace mf(std::size_t users, std::size_t blogs);
  static FeatureSpace app_fm(std::size_t users, std::size_t blogs, std::size_t apps);

  Encoding encoding() const noexcept { return encoding_; }
  std::size_t num_users() const noexcept { return users_; }
  std::size_t num_blogs() const noexcept { return blogs_; }
  std::size_t num_apps() const noexcept { return apps_; }

  std::size_t user_offset() const noexcept { return 0; }
  std::size_t blog_offset() const noexcept { return users_; }
  std::size_t app_offset() const noexcept { return users_ + blogs_; }
  std::size_t total() const noexcept { return users_ + blogs_ + apps_; }

  Index user_feature(std::size_t user) const;
  Index blog_feature(std::size_t blog) const;
  Index app_feature(std::size_t app) const;

  friend bool operator==(const FeatureSpace&, const FeatureSpace&) = default;

 private:
  FeatureSpace(Encoding e, std::size_t m, std::size_t n, std::size_t c)
      : encoding_(e), users_(m), blogs_(n), apps_(c) {}

  Encoding encoding_;
  std::size_t users_;
  std::size_t blogs_;
  std::size_t apps_;
};

struct Feature {
  Index index;
  double value;

  friend bool operator==(const Feature&, const Feature&) = default;
};

// Indices strictly increasing; label 1 for a follow, 0 for a sampled negative.
struct SparseInstance {
  std::vector<Feature> features;
  double label = 0.0;
};

// Second-order factorization machine: bias w0, linear weights w and one
// k-dimensional latent vector per feature (Z, row-major).
class FmModel {
 public:
  FmModel(std::size_t num_features, std::size_t factors);

  std::size_t num_features() const noexcept { return linear_.size(); }
  std::size_t factors() const noexcept { return k_; }

  double& bias() noexcept { return bias_; }
  double bias() const noexcept { return bias_; }

  std::span<double> linear() noexcept { return linear_; }
  std::span<const double> linear() const noexcept { return linear_; }

  std::span<double> factor(std::size_t feature) {
    return std::span<double>(factors_).subspan(feature * k_, k_);
  }
  std::span<const double> factor(std::size_t feature) const {
    return std::span<const double>(factors_).subspan(feature * k_, k_);
  }
  std::span<double> factor_table() noexcept { return factors_; }
  std::span<const double> factor_table() const noexcept { return factors_; }

  friend bool operator==(const FmModel&, const FmModel&) = default;

 private:
  std::size_t k_;
  double bias_ = 0.0;
  std::vector<double> linear_;
  std::vector<double> factors_;
};

// Throws ContractError on an index outside the model or unsorted indices.
void check_instance(const FmModel& model, std::span<const Feature> x);

// w0 + sum_i w_i x_i + 1/2 sum_f [(sum_i z_if x_i)^2 - sum_i z_if^2 x_i^2],
// O(k * nnz). Raw score, no link function.
double predict(const FmModel& model, std::span<const Feature> x);
inline double predict(const FmModel& model, const SparseInstance& x) {
  return predict(model, x.features);
}

}  // namespace blogrec::fm
