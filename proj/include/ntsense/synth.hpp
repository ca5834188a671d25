#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ntsense/data.hpp"

namespace ntsense {

// Synthetic stand-in for the confidential plant data: 8 correlated Gaussian
// process parameters, an NT value driven mostly by raw_material (negative,
// saturating) and sulfur (positive) with a mild interaction, plus flagged
// outlier rows displaced along the sulfur axis.
struct GeneratorConfig {
  std::size_t n_rows = 14252;
  std::size_t n_outliers = 23;
  std::uint64_t seed = 42;
  double noise_std = 0.2;          // in units of the latent NT scale
  double outlier_magnitude = 6.0;  // sulfur displacement, sigma units
  bool linear_only = false;        // pure linear NT, for exact-recovery tests

  void validate() const;  // throws InvalidConfig
};

// Ground truth for tests: where the outliers went and what generated NT.
struct GeneratorManifest {
  std::size_t n_rows = 0;
  std::vector<std::size_t> outlier_indices;  // ascending
  bool linear_only = false;
  double noise_std = 0.0;
  double outlier_magnitude = 0.0;

  // NT in latent (z-score) space:
  //   linear_only:  sum_j linear_weights[j] * u_j + noise
  //   otherwise:    saturating + linear raw_material terms, sulfur term,
  //                 raw_material*sulfur interaction, small dew_point and
  //                 molar terms + noise
  std::array<double, kNumFeatures> linear_weights{};

  // Exact raw-unit affine equivalent of the linear part; in linear_only mode
  // an OLS fit on noiseless raw data recovers these.
  std::array<double, kNumFeatures> raw_weights{};
  double raw_intercept = 0.0;

  double raw_material_nt_correlation = 0.0;  // achieved, over all rows
};

std::pair<Dataset, GeneratorManifest> generate(const GeneratorConfig& config);

// Human-readable ground-truth summary.
std::string describe(const GeneratorManifest& manifest);

}  // namespace ntsense
