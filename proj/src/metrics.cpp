#include "ntsense/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "ntsense/errors.hpp"

namespace ntsense {

namespace {

void check_pair(std::span<const double> truth, std::span<const double> pred) {
  if (truth.size() != pred.size()) {
    throw LengthMismatch("vectors have lengths " + std::to_string(truth.size()) +
                         " and " + std::to_string(pred.size()));
  }
  if (truth.empty()) throw EmptyInput("metric over empty vectors");
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (!std::isfinite(truth[i]) || !std::isfinite(pred[i])) {
      throw Error("non-finite value at position " + std::to_string(i));
    }
  }
}

}  // namespace

double mae(std::span<const double> truth, std::span<const double> pred) {
  check_pair(truth, pred);
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) sum += std::abs(truth[i] - pred[i]);
  return sum / static_cast<double>(truth.size());
}

double rmse(std::span<const double> truth, std::span<const double> pred) {
  check_pair(truth, pred);
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = truth[i] - pred[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(truth.size()));
}

double pearson(std::span<const double> truth, std::span<const double> pred) {
  check_pair(truth, pred);
  if (truth.size() < 2) throw EmptyInput("correlation needs at least 2 points");

  // Zero variance means "all values equal"; testing that directly keeps the
  // constant-predictor case at exactly 0 instead of a rounding-noise epsilon.
  bool truth_constant = true, pred_constant = true;
  for (std::size_t i = 1; i < truth.size(); ++i) {
    truth_constant &= truth[i] == truth[0];
    pred_constant &= pred[i] == pred[0];
  }
  if (truth_constant || pred_constant) return 0.0;

  const double n = static_cast<double>(truth.size());
  double mean_t = 0.0, mean_p = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    mean_t += truth[i];
    mean_p += pred[i];
  }
  mean_t /= n;
  mean_p /= n;

  double cov = 0.0, var_t = 0.0, var_p = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double dt = truth[i] - mean_t;
    const double dp = pred[i] - mean_p;
    cov += dt * dp;
    var_t += dt * dt;
    var_p += dp * dp;
  }
  if (var_t == 0.0 || var_p == 0.0) return 0.0;
  return cov / std::sqrt(var_t * var_p);
}

PredictionPairs collect_predictions(const RegressionModel& model,
                                    const Dataset& test) {
  if (test.size() == 0) throw EmptyInput("empty test set");
  PredictionPairs pairs;
  pairs.truth = test.labels();
  pairs.pred.reserve(test.size());
  for (const ProcessRecord& r : test.records) {
    pairs.pred.push_back(model.predict(r.features));
  }
  return pairs;
}

EvaluationReport evaluate(const RegressionModel& model, const Dataset& test,
                          OutlierSetting setting) {
  const PredictionPairs pairs = collect_predictions(model, test);
  EvaluationReport report;
  report.model_kind = model.kind();
  report.n_test = test.size();
  report.mae_value = mae(pairs.truth, pairs.pred);
  report.rmse_value = rmse(pairs.truth, pairs.pred);
  report.correlation = pearson(pairs.truth, pairs.pred);
  report.setting = setting;
  return report;
}

std::string render_report_table(const std::string& title,
                                std::span<const EvaluationReport> reports) {
  std::ostringstream out;
  out << title << "\n\n";
  out << std::left << std::setw(20) << "Model" << std::right << std::setw(8) << "MAE"
      << std::setw(8) << "RMSE" << std::setw(13) << "Correlation" << "\n";
  out << std::string(49, '-') << "\n";
  out << std::fixed << std::setprecision(3);
  for (const EvaluationReport& r : reports) {
    out << std::left << std::setw(20) << display_name(r.model_kind) << std::right
        << std::setw(8) << r.mae_value << std::setw(8) << r.rmse_value
        << std::setw(13) << r.correlation << "\n";
  }
  return out.str();
}

}  // namespace ntsense
