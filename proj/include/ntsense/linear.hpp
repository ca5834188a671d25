#pragma once

#include <span>
#include <vector>

#include "ntsense/data.hpp"

namespace ntsense {

struct LinearModel {
  std::vector<double> weights;
  double intercept = 0.0;

  double predict(std::span<const double> features) const {
    double acc = intercept;
    for (std::size_t j = 0; j < weights.size(); ++j) acc += weights[j] * features[j];
    return acc;
  }
};

// Ordinary least squares via a column-pivoted Householder QR of [X | 1].
// Requires n > n_features; throws RankDeficient on collinear columns.
LinearModel fit_linear(const Columns& data);
LinearModel fit_linear(const Dataset& train);

}  // namespace ntsense
