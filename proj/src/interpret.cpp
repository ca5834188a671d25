#include "ntsense/interpret.hpp"

#include <algorithm>
#include <cmath>

#include "ntsense/errors.hpp"
#include "ntsense/parallel.hpp"
#include "ntsense/rng.hpp"

namespace ntsense {

ImportanceReport permutation_importance(const ForestModel& model,
                                        const Dataset& train, std::uint64_t seed,
                                        const ImportanceOptions& options) {
  if (options.repeats < 1) throw Error("repeats must be >= 1");
  const Columns data = to_columns(train);
  const std::size_t n_trees = model.trees.size();
  const std::size_t n_features = data.cols();
  const std::size_t repeats = static_cast<std::size_t>(options.repeats);

  for (std::size_t t = 0; t < n_trees; ++t) {
    if (model.oob_indices[t].empty()) throw EmptyOob(t);
  }

  std::vector<double> base_mse(n_trees);
  // diffs[t * n_features + j] = permuted-column MSE minus baseline, tree t.
  std::vector<double> diffs(n_trees * n_features);

  parallel_for(n_trees, [&](std::size_t t) {
    const Tree& tree = model.trees[t];
    const auto& oob = model.oob_indices[t];
    const std::size_t n_oob = oob.size();

    std::vector<double> row(n_features);
    double base_sum = 0.0;
    std::vector<double> base_pred(n_oob);
    for (std::size_t r = 0; r < n_oob; ++r) {
      data.row(oob[r], row.data());
      base_pred[r] = tree.predict(row);
      const double err = base_pred[r] - data.targets[oob[r]];
      base_sum += err * err;
    }
    base_mse[t] = base_sum / static_cast<double>(n_oob);

    std::vector<double> shuffled(n_oob);
    for (std::size_t j = 0; j < n_features; ++j) {
      double total = 0.0;
      for (std::size_t rep = 0; rep < repeats; ++rep) {
        Rng rng(derive_seed(seed, (t * n_features + j) * repeats + rep));
        for (std::size_t r = 0; r < n_oob; ++r) shuffled[r] = data.features[j][oob[r]];
        rng.shuffle(shuffled);

        double sum = 0.0;
        for (std::size_t r = 0; r < n_oob; ++r) {
          data.row(oob[r], row.data());
          row[j] = shuffled[r];
          const double err = tree.predict(row) - data.targets[oob[r]];
          sum += err * err;
        }
        total += sum / static_cast<double>(n_oob);
      }
      diffs[t * n_features + j] = total / static_cast<double>(repeats) - base_mse[t];
    }
  });

  double mean_base = 0.0;
  for (double e : base_mse) mean_base += e;
  mean_base /= static_cast<double>(n_trees);

  ImportanceReport report;
  report.entries.reserve(n_features);
  for (std::size_t j = 0; j < n_features; ++j) {
    FeatureImportance entry;
    entry.name = train.schema.names[j];

    double mean_diff = 0.0;
    for (std::size_t t = 0; t < n_trees; ++t) mean_diff += diffs[t * n_features + j];
    mean_diff /= static_cast<double>(n_trees);

    double sq = 0.0;
    for (std::size_t t = 0; t < n_trees; ++t) {
      const double d = diffs[t * n_features + j] - mean_diff;
      sq += d * d;
    }
    const double std_diff =
        n_trees > 1 ? std::sqrt(sq / static_cast<double>(n_trees - 1)) : 0.0;

    entry.raw_mean_diff = mean_diff;
    entry.std_of_diffs = std_diff;
    entry.pct_inc_mse = mean_base > 0.0 ? 100.0 * mean_diff / mean_base : 0.0;
    entry.degenerate = std_diff == 0.0;
    entry.normalized = entry.degenerate ? mean_diff : mean_diff / std_diff;
    report.entries.push_back(std::move(entry));
  }

  std::sort(report.entries.begin(), report.entries.end(),
            [](const FeatureImportance& a, const FeatureImportance& b) {
              if (a.pct_inc_mse != b.pct_inc_mse) return a.pct_inc_mse > b.pct_inc_mse;
              return a.name < b.name;
            });
  return report;
}

namespace {

std::vector<double> default_grid(const Dataset& data, std::size_t feature_index,
                                 int quantile_count) {
  std::vector<double> values = data.feature_column(feature_index);
  std::sort(values.begin(), values.end());
  std::vector<double> unique_values = values;
  unique_values.erase(std::unique(unique_values.begin(), unique_values.end()),
                      unique_values.end());
  if (quantile_count < 2 ||
      unique_values.size() <= static_cast<std::size_t>(quantile_count)) {
    return unique_values;
  }
  // Quantile-spaced probes over the observed distribution (with duplicates),
  // deduplicated to keep the grid strictly ascending.
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(quantile_count));
  const double last = static_cast<double>(values.size() - 1);
  for (int k = 0; k < quantile_count; ++k) {
    const double q = static_cast<double>(k) / static_cast<double>(quantile_count - 1);
    const auto idx = static_cast<std::size_t>(std::llround(q * last));
    const double v = values[idx];
    if (grid.empty() || v > grid.back()) grid.push_back(v);
  }
  return grid;
}

}  // namespace

PartialDependenceCurve partial_dependence(const RegressionModel& model,
                                          const Dataset& data,
                                          const std::string& feature,
                                          const GridSpec& grid_spec,
                                          int smooth_window) {
  if (data.size() == 0) throw EmptyInput("partial dependence over empty dataset");
  const std::size_t j = data.schema.index_of(feature);

  std::vector<double> grid;
  if (!grid_spec.explicit_grid.empty()) {
    grid = grid_spec.explicit_grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  } else {
    grid = default_grid(data, j, grid_spec.quantile_count);
  }

  PartialDependenceCurve curve;
  curve.feature = feature;
  curve.grid = std::move(grid);
  curve.values.resize(curve.grid.size());
  curve.n_background = data.size();

  parallel_for(curve.grid.size(), [&](std::size_t g) {
    const double v = curve.grid[g];
    std::vector<double> row(data.schema.size());
    double sum = 0.0;
    for (const ProcessRecord& r : data.records) {
      std::copy(r.features.begin(), r.features.end(), row.begin());
      row[j] = v;
      sum += model.predict(row);
    }
    curve.values[g] = sum / static_cast<double>(data.size());
  });

  int window = smooth_window;
  if (window > static_cast<int>(curve.grid.size())) {
    window = static_cast<int>(curve.grid.size());
  }
  if (window % 2 == 0) --window;
  if (window < 1) window = 1;
  curve.smoothed = smooth_curve(curve.values, window);
  return curve;
}

std::vector<double> smooth_curve(std::span<const double> values, int window) {
  if (window < 1 || window % 2 == 0) throw Error("window must be odd and positive");
  if (static_cast<std::size_t>(window) > values.size()) {
    throw WindowTooLarge("window " + std::to_string(window) + " exceeds " +
                         std::to_string(values.size()) + " points");
  }
  const int n = static_cast<int>(values.size());
  const int half = window / 2;
  std::vector<double> out(values.size());
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - half);
    const int hi = std::min(n - 1, i + half);
    double sum = 0.0;
    for (int k = lo; k <= hi; ++k) sum += values[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(i)] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

}  // namespace ntsense
