#include "ntsense/standardize.hpp"

#include <cmath>

#include "ntsense/errors.hpp"

namespace ntsense {

Standardizer Standardizer::identity() {
  Standardizer s;
  s.means.fill(0.0);
  s.stds.fill(1.0);
  return s;
}

namespace {

struct MeanStd {
  double mean;
  double std_dev;  // sample standard deviation, n-1 denominator
};

MeanStd column_stats(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double sq = 0.0;
  for (double v : values) {
    const double d = v - mean;
    sq += d * d;
  }
  return {mean, std::sqrt(sq / (n - 1.0))};
}

}  // namespace

Standardizer fit_standardizer(const Dataset& data) {
  if (data.size() < 2) throw EmptyInput("standardizer needs at least 2 records");
  const std::vector<double> nt = data.labels();

  Standardizer s;
  for (std::size_t j = 0; j < data.schema.size(); ++j) {
    const MeanStd stats = column_stats(data.feature_column(j));
    if (stats.std_dev == 0.0) throw DegenerateColumn(data.schema.names[j]);
    s.means[j] = stats.mean;
    s.stds[j] = stats.std_dev;
  }
  const MeanStd nt_stats = column_stats(nt);
  if (nt_stats.std_dev == 0.0) throw DegenerateColumn("nt");
  s.means[kNumFeatures] = nt_stats.mean;
  s.stds[kNumFeatures] = nt_stats.std_dev;
  return s;
}

Dataset apply_standardizer(const Dataset& data, const Standardizer& s) {
  data.schema.validate();
  Dataset out = data;
  for (ProcessRecord& r : out.records) {
    for (std::size_t j = 0; j < r.features.size(); ++j) {
      r.features[j] = (r.features[j] - s.means[j]) / s.stds[j];
    }
    if (r.nt) r.nt = (*r.nt - s.means[kNumFeatures]) / s.stds[kNumFeatures];
  }
  out.standardized = true;
  return out;
}

Dataset invert_standardizer(const Dataset& data, const Standardizer& s) {
  data.schema.validate();
  Dataset out = data;
  for (ProcessRecord& r : out.records) {
    for (std::size_t j = 0; j < r.features.size(); ++j) {
      r.features[j] = r.features[j] * s.stds[j] + s.means[j];
    }
    if (r.nt) r.nt = *r.nt * s.stds[kNumFeatures] + s.means[kNumFeatures];
  }
  out.standardized = false;
  return out;
}

}  // namespace ntsense
