#include "ntsense/model.hpp"

#include <array>

#include "ntsense/errors.hpp"

namespace ntsense {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::random_forest: return "random_forest";
    case ModelKind::linear: return "linear";
    case ModelKind::neural_net: return "neural_net";
    case ModelKind::mean_baseline: return "mean_baseline";
  }
  throw Error("unreachable model kind");
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "random_forest" || name == "rf") return ModelKind::random_forest;
  if (name == "linear" || name == "lm") return ModelKind::linear;
  if (name == "neural_net" || name == "nn") return ModelKind::neural_net;
  if (name == "mean_baseline" || name == "mean") return ModelKind::mean_baseline;
  throw Error("unknown model kind '" + name + "'");
}

std::string display_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::random_forest: return "Random Forest";
    case ModelKind::linear: return "Linear regression";
    case ModelKind::neural_net: return "Neural Network";
    case ModelKind::mean_baseline: return "Mean value";
  }
  throw Error("unreachable model kind");
}

void RegressorSpec::validate(std::size_t n_rows, std::size_t n_features) const {
  switch (kind) {
    case ModelKind::random_forest:
      forest.validate(n_features);
      break;
    case ModelKind::neural_net:
      network.validate(n_rows);
      break;
    case ModelKind::linear:
    case ModelKind::mean_baseline:
      break;
  }
}

double RegressionModel::predict(std::span<const double> features) const {
  return std::visit([&](const auto& m) { return m.predict(features); }, impl);
}

double RegressionModel::predict_raw(std::span<const double> features) const {
  std::array<double, kNumFeatures> standardized;
  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    standardized[j] = (features[j] - scaler.means[j]) / scaler.stds[j];
  }
  const double nt = predict(standardized);
  return nt * scaler.stds[kNumFeatures] + scaler.means[kNumFeatures];
}

RegressionModel train(const RegressorSpec& spec, const Dataset& train_data,
                      const Standardizer& scaler) {
  if (train_data.size() < 2) throw EmptyInput("training needs at least 2 records");
  spec.validate(train_data.size(), train_data.schema.size());

  RegressionModel model{spec, scaler, MeanBaselineModel{}};
  switch (spec.kind) {
    case ModelKind::mean_baseline: {
      const std::vector<double> nt = train_data.labels();
      double sum = 0.0;
      for (double v : nt) sum += v;
      model.impl = MeanBaselineModel{sum / static_cast<double>(nt.size())};
      break;
    }
    case ModelKind::linear:
      model.impl = fit_linear(train_data);
      break;
    case ModelKind::neural_net:
      model.impl = fit_network(train_data, spec.network, spec.seed);
      break;
    case ModelKind::random_forest:
      model.impl = fit_forest(train_data, spec.forest, spec.seed);
      break;
  }
  return model;
}

}  // namespace ntsense
