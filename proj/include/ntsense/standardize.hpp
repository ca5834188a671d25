#pragma once

#include <array>

#include "ntsense/data.hpp"

namespace ntsense {

// Per-column z-score statistics: the 8 features followed by NT.
struct Standardizer {
  std::array<double, kNumFeatures + 1> means{};
  std::array<double, kNumFeatures + 1> stds{};

  static Standardizer identity();
};

// Sample statistics (n-1 denominator) over a labeled dataset with >= 2
// records. Throws DegenerateColumn when a column has zero variance.
Standardizer fit_standardizer(const Dataset& data);

// x -> (x - mean) / std per column; missing NT labels are passed through.
Dataset apply_standardizer(const Dataset& data, const Standardizer& s);
Dataset invert_standardizer(const Dataset& data, const Standardizer& s);

}  // namespace ntsense
