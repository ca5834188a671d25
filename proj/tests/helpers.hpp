#pragma once

#include <vector>

#include "ntsense/data.hpp"
#include "ntsense/rng.hpp"
#include "ntsense/synth.hpp"

namespace ntsense::testing {

// Dataset with uniform random features in [-1, 1] and random labels.
inline Dataset random_dataset(std::size_t n, std::uint64_t seed = 1,
                              bool labeled = true) {
  Rng rng(seed);
  Dataset data;
  data.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ProcessRecord record;
    record.features.resize(kNumFeatures);
    for (double& v : record.features) v = rng.real(-1.0, 1.0);
    if (labeled) record.nt = rng.real(-1.0, 1.0);
    data.records.push_back(std::move(record));
  }
  return data;
}

inline void set_column(Dataset& data, std::size_t j, const std::vector<double>& values) {
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    data.records[i].features[j] = values[i];
  }
}

inline void set_labels(Dataset& data, const std::vector<double>& values) {
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    data.records[i].nt = values[i];
  }
}

// The reference synthetic dataset (seed 42, 14,252 rows, 23 outliers),
// generated once per test binary.
inline const std::pair<Dataset, GeneratorManifest>& reference_synth() {
  static const auto value = generate(GeneratorConfig{});
  return value;
}

}  // namespace ntsense::testing
