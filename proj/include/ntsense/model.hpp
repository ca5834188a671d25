#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include "ntsense/forest.hpp"
#include "ntsense/linear.hpp"
#include "ntsense/network.hpp"
#include "ntsense/standardize.hpp"

namespace ntsense {

enum class ModelKind { random_forest, linear, neural_net, mean_baseline };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);
// Row label as printed in the results tables.
std::string display_name(ModelKind kind);

// Predicts the mean training NT regardless of the input.
struct MeanBaselineModel {
  double mean_nt = 0.0;
  double predict(std::span<const double>) const { return mean_nt; }
};

struct RegressorSpec {
  ModelKind kind = ModelKind::random_forest;
  ForestParams forest;
  NetworkParams network;
  std::uint64_t seed = 42;

  void validate(std::size_t n_rows, std::size_t n_features) const;
};

// A trained predictor together with the standardizer its training data was
// transformed with, so callers can feed raw engineering units.
struct RegressionModel {
  RegressorSpec spec;
  Standardizer scaler;
  std::variant<MeanBaselineModel, LinearModel, NetworkModel, ForestModel> impl;

  ModelKind kind() const { return spec.kind; }

  // Input features in the model's standardized space.
  double predict(std::span<const double> features) const;
  // Raw-unit features in, raw-unit NT out.
  double predict_raw(std::span<const double> features) const;

  const ForestModel* forest() const {
    return std::get_if<ForestModel>(&impl);
  }
};

// Dispatches to the right trainer. `train_data` must be standardized with
// `scaler` (identity for data that is already dimensionless), fully labeled,
// with at least 2 records.
RegressionModel train(const RegressorSpec& spec, const Dataset& train_data,
                      const Standardizer& scaler = Standardizer::identity());

}  // namespace ntsense
