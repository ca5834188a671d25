#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ntsense/metrics.hpp"

namespace ntsense {

struct FeatureImportance {
  std::string name;
  double pct_inc_mse = 0.0;    // 100 * mean_t(diff) / mean_t(oob mse)
  double raw_mean_diff = 0.0;  // mean over trees of (permuted mse - mse)
  double std_of_diffs = 0.0;   // sample std over trees
  double normalized = 0.0;     // mean / std; raw mean when degenerate
  bool degenerate = false;     // all per-tree diffs identical
};

// One entry per schema feature, descending by pct_inc_mse (name breaks ties).
struct ImportanceReport {
  std::vector<FeatureImportance> entries;
};

struct ImportanceOptions {
  int repeats = 1;  // permutations averaged per (tree, feature)
};

// Out-of-bag permutation importance: for each tree, the MSE on its own OOB
// rows is compared against the MSE after a seeded shuffle of one feature
// column within those rows; differences are aggregated over trees.
// `train` must be the dataset the forest was fit on.
ImportanceReport permutation_importance(const ForestModel& model,
                                        const Dataset& train, std::uint64_t seed,
                                        const ImportanceOptions& options = {});

struct GridSpec {
  std::vector<double> explicit_grid;  // used when non-empty
  int quantile_count = 200;           // cap when deriving from observed values
};

struct PartialDependenceCurve {
  std::string feature;
  std::vector<double> grid;      // strictly ascending probe values
  std::vector<double> values;    // mean prediction over the background rows
  std::vector<double> smoothed;  // centered moving average of `values`
  std::size_t n_background = 0;
};

// Marginal effect of one feature: for each grid value v, the feature column
// is overwritten with v in every record and the model predictions are
// averaged. The default grid is the sorted unique observed values, reduced
// to `quantile_count` quantile-spaced points when there are more. The
// smoothing window is shrunk to the grid length when it would not fit.
PartialDependenceCurve partial_dependence(const RegressionModel& model,
                                          const Dataset& data,
                                          const std::string& feature,
                                          const GridSpec& grid_spec = {},
                                          int smooth_window = 21);

// Centered moving average with the window truncated at the ends (the edge
// points average over whatever part of the window is in range). Window must
// be odd, positive and no longer than the input.
std::vector<double> smooth_curve(std::span<const double> values, int window);

}  // namespace ntsense
