#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ntsense/schema.hpp"

namespace ntsense {

// One observation: the 8 process parameters plus an optional NT label.
// Values are raw engineering units until a Standardizer has been applied.
struct ProcessRecord {
  std::vector<double> features;  // length == schema size
  std::optional<double> nt;      // mg KOH per g acid
  bool outlier = false;
  std::optional<std::int64_t> timestamp;  // seconds
};

struct Dataset {
  FeatureSchema schema = FeatureSchema::canonical();
  std::vector<ProcessRecord> records;
  bool standardized = false;

  std::size_t size() const { return records.size(); }
  bool all_labeled() const;

  std::vector<double> feature_column(std::size_t index) const;
  std::vector<double> labels() const;  // throws Error on a missing label

  // Checks schema, per-record arity and finiteness of all numeric values.
  void validate() const;
};

// The two experimental settings: outliers kept or dropped.
enum class OutlierSetting { with_outliers, without_outliers };

// Seeded shuffle; the first floor(n * train_fraction) shuffled records form
// the train set (floor in exact arithmetic, immune to binary rounding of the
// fraction). Relative record order is preserved within each side.
std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction,
                                  std::uint64_t seed);

// Keeps records with outlier == false, order preserved.
Dataset filter_outliers(const Dataset& data);

// Flags any record with |z| > threshold in some feature column, using
// per-column statistics over the whole dataset. Existing flags are kept.
Dataset flag_outliers_zscore(const Dataset& data, double threshold = 4.0);

// Column-major copy used by the model trainers.
struct Columns {
  std::vector<std::vector<double>> features;  // [n_features][n_rows]
  std::vector<double> targets;

  std::size_t rows() const { return targets.size(); }
  std::size_t cols() const { return features.size(); }
  // Gathers one row; `out` must have cols() slots.
  void row(std::size_t i, double* out) const {
    for (std::size_t j = 0; j < features.size(); ++j) out[j] = features[j][i];
  }
};

Columns to_columns(const Dataset& data);  // requires labels on every record

}  // namespace ntsense
