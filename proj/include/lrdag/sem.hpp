#pragma once

#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

#include "lrdag/graph.hpp"

namespace lrdag {

/// n x d observations; row = sample, column j = variable j.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const { return values_; }
  int n() const { return static_cast<int>(values_.rows()); }
  int d() const { return static_cast<int>(values_.cols()); }

 private:
  Eigen::MatrixXd values_;
};

enum class Noise { kGaussian, kExponential };

Noise parse_noise(std::string_view name);
std::string_view noise_name(Noise noise);

/// Linear SEM X_i = sum_{j in pa(i)} W(j, i) X_j + e_i with standard normal or
/// standard exponential (mean 1, uncentered) noise.
///
/// The noise matrix is drawn in a fixed order (column by column) before the
/// structural pass, so the output does not depend on how ties in the
/// topological order are broken. Throws GraphError on a cyclic graph.
Dataset simulate_linear(const WeightedDag& w, int n, Noise noise, std::uint64_t seed);

/// Columns shifted to mean 0 and scaled to unit sample variance.
Dataset standardize(const Dataset& data);

}  // namespace lrdag
