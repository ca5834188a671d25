#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ntsense/data.hpp"
#include "ntsense/rng.hpp"

namespace ntsense {

// Flat node storage; `left`/`right` index into the owning tree's node vector.
// feature < 0 marks a leaf.
struct TreeNode {
  std::int32_t feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;  // mean target of the training rows reaching the node

  bool is_leaf() const { return feature < 0; }
};

struct TreeParams {
  int mtry = 2;
  int min_leaf_size = 5;
  int max_depth = 0;  // 0 = unlimited
};

struct Tree {
  std::vector<TreeNode> nodes;

  double predict(std::span<const double> features) const {
    std::size_t i = 0;
    while (!nodes[i].is_leaf()) {
      const TreeNode& node = nodes[i];
      i = static_cast<std::size_t>(
          features[static_cast<std::size_t>(node.feature)] <= node.threshold
              ? node.left
              : node.right);
    }
    return nodes[i].value;
  }
};

// Candidate scores within this band (relative to the node's total squared
// error) count as tied. Mathematically equal splits can land on different
// last bits depending on the accumulation order, so exact comparison would
// let rounding noise override the documented tie-break.
inline constexpr double kSplitTieRelTolerance = 1e-12;

// CART regression tree over the rows listed in `sample` (a bootstrap
// multiset). At each node, `mtry` candidate features are drawn without
// replacement; the (feature, threshold) pair minimizing the summed child
// squared error over midpoints of consecutive distinct sorted values wins,
// ties (within kSplitTieRelTolerance) broken toward the lowest feature
// index, then the lowest threshold. A node becomes a leaf when its size
// drops below 2 * min_leaf_size, the depth limit is hit, or its targets are
// all equal.
Tree fit_tree(const Columns& data, std::span<const std::size_t> sample,
              const TreeParams& params, Rng& rng);

// Convenience overload treating the whole dataset as the sample.
Tree fit_tree(const Dataset& bootstrap_sample, int mtry, Rng& rng);

// Threshold placed halfway between two consecutive distinct sorted values;
// nudged down to `lo` when rounding would land on `hi`, so `x <= threshold`
// always separates the pair.
inline double split_midpoint(double lo, double hi) {
  double mid = lo + (hi - lo) / 2.0;
  if (!(mid < hi)) mid = lo;
  return mid;
}

}  // namespace ntsense
