#pragma once

#include <span>
#include <string>
#include <vector>

#include "ntsense/model.hpp"

namespace ntsense {

double mae(std::span<const double> truth, std::span<const double> pred);
double rmse(std::span<const double> truth, std::span<const double> pred);
// Pearson coefficient; exactly 0 when either vector has zero variance.
double pearson(std::span<const double> truth, std::span<const double> pred);

struct EvaluationReport {
  ModelKind model_kind = ModelKind::mean_baseline;
  std::size_t n_test = 0;
  double mae_value = 0.0;
  double rmse_value = 0.0;
  double correlation = 0.0;
  OutlierSetting setting = OutlierSetting::with_outliers;
};

// (truth, prediction) per test record, in dataset order. Plot-ready.
struct PredictionPairs {
  std::vector<double> truth;
  std::vector<double> pred;
};

PredictionPairs collect_predictions(const RegressionModel& model,
                                    const Dataset& test);

EvaluationReport evaluate(const RegressionModel& model, const Dataset& test,
                          OutlierSetting setting = OutlierSetting::with_outliers);

// Aligned text table, metrics rendered to 3 decimals.
std::string render_report_table(const std::string& title,
                                std::span<const EvaluationReport> reports);

}  // namespace ntsense
