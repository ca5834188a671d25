#include "ntsense/data.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ntsense/errors.hpp"
#include "ntsense/rng.hpp"

namespace ntsense {

bool Dataset::all_labeled() const {
  return std::all_of(records.begin(), records.end(),
                     [](const ProcessRecord& r) { return r.nt.has_value(); });
}

std::vector<double> Dataset::feature_column(std::size_t index) const {
  std::vector<double> column;
  column.reserve(records.size());
  for (const ProcessRecord& r : records) column.push_back(r.features[index]);
  return column;
}

std::vector<double> Dataset::labels() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!records[i].nt) {
      throw Error("record " + std::to_string(i) + " has no NT label");
    }
    out.push_back(*records[i].nt);
  }
  return out;
}

void Dataset::validate() const {
  schema.validate();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const ProcessRecord& r = records[i];
    if (r.features.size() != schema.size()) {
      throw MalformedRow(i, "expected " + std::to_string(schema.size()) +
                                " features, got " + std::to_string(r.features.size()));
    }
    for (double v : r.features) {
      if (!std::isfinite(v)) throw MalformedRow(i, "non-finite feature value");
    }
    if (r.nt && !std::isfinite(*r.nt)) throw MalformedRow(i, "non-finite NT value");
  }
}

namespace {

// floor(n * fraction) in exact arithmetic. The fraction arrives as the
// nearest binary double (0.7 is really 0.699999...), so the product gets a
// one-ulp-scale pardon before flooring.
std::size_t train_count(std::size_t n, double fraction) {
  const double product = fraction * static_cast<double>(n);
  return static_cast<std::size_t>(std::floor(product + 1e-9));
}

}  // namespace

std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction,
                                  std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error("train_fraction must be in (0, 1)");
  }
  const std::size_t n = data.size();
  const std::size_t n_train = train_count(n, train_fraction);
  if (n_train == 0 || n_train == n) {
    throw EmptySplit("split of " + std::to_string(n) + " records at fraction " +
                     std::to_string(train_fraction) + " leaves one side empty");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);

  std::vector<std::size_t> train_idx(order.begin(), order.begin() + n_train);
  std::vector<std::size_t> test_idx(order.begin() + n_train, order.end());
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());

  Dataset train{data.schema, {}, data.standardized};
  Dataset test{data.schema, {}, data.standardized};
  train.records.reserve(train_idx.size());
  test.records.reserve(test_idx.size());
  for (std::size_t i : train_idx) train.records.push_back(data.records[i]);
  for (std::size_t i : test_idx) test.records.push_back(data.records[i]);
  return {std::move(train), std::move(test)};
}

Dataset filter_outliers(const Dataset& data) {
  Dataset out{data.schema, {}, data.standardized};
  out.records.reserve(data.size());
  for (const ProcessRecord& r : data.records) {
    if (!r.outlier) out.records.push_back(r);
  }
  return out;
}

Dataset flag_outliers_zscore(const Dataset& data, double threshold) {
  if (!(threshold > 0.0)) throw Error("threshold must be positive");
  Dataset out = data;
  if (data.size() < 2) return out;

  const std::size_t n = data.size();
  for (std::size_t j = 0; j < data.schema.size(); ++j) {
    double sum = 0.0;
    for (const ProcessRecord& r : data.records) sum += r.features[j];
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (const ProcessRecord& r : data.records) {
      const double d = r.features[j] - mean;
      sq += d * d;
    }
    const double std_dev = std::sqrt(sq / static_cast<double>(n - 1));
    if (std_dev == 0.0) throw DegenerateColumn(data.schema.names[j]);
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(out.records[i].features[j] - mean) > threshold * std_dev) {
        out.records[i].outlier = true;
      }
    }
  }
  return out;
}

Columns to_columns(const Dataset& data) {
  Columns columns;
  columns.features.assign(data.schema.size(), {});
  for (auto& col : columns.features) col.reserve(data.size());
  columns.targets = data.labels();
  for (const ProcessRecord& r : data.records) {
    for (std::size_t j = 0; j < r.features.size(); ++j) {
      columns.features[j].push_back(r.features[j]);
    }
  }
  return columns;
}

}  // namespace ntsense
