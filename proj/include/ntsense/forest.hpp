#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ntsense/tree.hpp"

namespace ntsense {

struct ForestParams {
  int n_trees = 100;
  int mtry = 2;  // floor(n_features / 3) for the 8-parameter schema
  int min_leaf_size = 5;
  int max_depth = 0;  // 0 = unlimited

  void validate(std::size_t n_features) const;  // throws InvalidHyperparameters
};

struct ForestModel {
  std::vector<Tree> trees;
  // Rows absent from each tree's bootstrap multiset, ascending.
  std::vector<std::vector<std::uint32_t>> oob_indices;
  std::vector<std::uint64_t> tree_seeds;

  // Arithmetic mean of the per-tree predictions.
  double predict(std::span<const double> features) const;
};

// Per tree t: seed = derive_seed(seed, t), a size-n bootstrap drawn with
// replacement, OOB rows recorded, then fit_tree on the sample. Trees are
// built concurrently; per-tree seeding makes the result schedule-independent.
ForestModel fit_forest(const Columns& data, const ForestParams& params,
                       std::uint64_t seed);
ForestModel fit_forest(const Dataset& train, const ForestParams& params,
                       std::uint64_t seed);

// MSE of each single tree on its own out-of-bag rows.
std::vector<double> oob_mse(const ForestModel& model, const Columns& data);
std::vector<double> oob_mse(const ForestModel& model, const Dataset& train);

}  // namespace ntsense
