#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ntsense/serialize.hpp"

namespace ntsense {

// Outlier handling, seeded 70/30 split, standardizer fit on the train side
// only and applied to both.
struct PreparedData {
  Dataset train;
  Dataset test;
  Standardizer scaler;
};

PreparedData prepare_experiment(const Dataset& raw, OutlierSetting setting,
                                double train_fraction, std::uint64_t master_seed);

// Spec with the published experiment defaults, its RNG stream derived from
// the master seed.
RegressorSpec default_spec(ModelKind kind, std::uint64_t master_seed);

struct ReproduceOptions {
  double train_fraction = 0.7;
  std::uint64_t seed = 42;
  ForestParams forest;    // applied to the rf row of both settings
  NetworkParams network;  // applied to the nn row
  std::filesystem::path out_dir;
};

struct ReproduceResult {
  std::vector<EvaluationReport> with_outliers;     // rf, nn, lm, mean
  std::vector<EvaluationReport> without_outliers;  // same order
  ImportanceReport importance;                     // no-outlier forest, OOB
  PartialDependenceCurve raw_material_pdp;         // no-outlier forest
  std::vector<std::filesystem::path> files_written;
};

// The full experiment protocol: both outlier settings x four models on one
// seeded split, plus the forest importance and raw_material partial
// dependence artifacts. Writes tables, prediction pairs and CSVs under
// options.out_dir; `log` receives the two rendered tables.
ReproduceResult run_reproduce(const Dataset& raw, const ReproduceOptions& options,
                              std::ostream& log);

}  // namespace ntsense
