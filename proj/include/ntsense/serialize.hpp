#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "ntsense/interpret.hpp"
#include "ntsense/synth.hpp"

namespace ntsense {

// What the train command persists: the model plus the experiment context
// needed to rebuild the exact train/test partition later.
struct ModelBundle {
  RegressionModel model;
  double split_fraction = 0.7;
  std::uint64_t master_seed = 42;
  OutlierSetting setting = OutlierSetting::with_outliers;
};

// Self-describing JSON document: format version, kind, hyperparameters,
// seed, standardizer and parameters (trees as nested node objects, matrices
// as row-major arrays). Doubles are stored in shortest round-trip form, so
// load(save(m)) predicts bit-identically.
std::string model_to_json(const ModelBundle& bundle);
ModelBundle model_from_json(const std::string& text);

void save_model(const ModelBundle& bundle, const std::filesystem::path& path);
ModelBundle load_model(const std::filesystem::path& path);

void save_manifest(const GeneratorManifest& manifest,
                   const std::filesystem::path& path);
GeneratorManifest load_manifest(const std::filesystem::path& path);

// Machine-readable counterpart of the text results table.
std::string reports_to_json(std::span<const EvaluationReport> reports);

void write_prediction_pairs(const PredictionPairs& pairs,
                            const std::filesystem::path& path);
void write_importance_csv(const ImportanceReport& report,
                          const std::filesystem::path& path);
void write_pdp_csv(const PartialDependenceCurve& curve,
                   const std::filesystem::path& path);

}  // namespace ntsense
