#include "ntsense/forest.hpp"

#include <array>
#include <numeric>

#include "ntsense/errors.hpp"
#include "ntsense/parallel.hpp"

namespace ntsense {

void ForestParams::validate(std::size_t n_features) const {
  if (n_trees < 1) throw InvalidHyperparameters("n_trees must be >= 1");
  if (mtry < 1 || static_cast<std::size_t>(mtry) > n_features) {
    throw InvalidHyperparameters("mtry must be in [1, " + std::to_string(n_features) + "]");
  }
  if (min_leaf_size < 1) throw InvalidHyperparameters("min_leaf_size must be >= 1");
  if (max_depth < 0) throw InvalidHyperparameters("max_depth must be >= 0 (0 = unlimited)");
}

double ForestModel::predict(std::span<const double> features) const {
  double sum = 0.0;
  for (const Tree& tree : trees) sum += tree.predict(features);
  return sum / static_cast<double>(trees.size());
}

ForestModel fit_forest(const Columns& data, const ForestParams& params,
                       std::uint64_t seed) {
  params.validate(data.cols());
  const std::size_t n = data.rows();
  if (n < 2) throw EmptyInput("forest training needs at least 2 records");

  const std::size_t n_trees = static_cast<std::size_t>(params.n_trees);
  ForestModel model;
  model.trees.resize(n_trees);
  model.oob_indices.resize(n_trees);
  model.tree_seeds.resize(n_trees);

  const TreeParams tree_params{params.mtry, params.min_leaf_size, params.max_depth};
  parallel_for(n_trees, [&](std::size_t t) {
    const std::uint64_t tree_seed = derive_seed(seed, t);
    model.tree_seeds[t] = tree_seed;
    Rng rng(tree_seed);

    std::vector<std::size_t> sample(n);
    std::vector<bool> in_bag(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = rng.below(n);
      sample[i] = j;
      in_bag[j] = true;
    }
    std::vector<std::uint32_t> oob;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_bag[i]) oob.push_back(static_cast<std::uint32_t>(i));
    }
    model.oob_indices[t] = std::move(oob);
    model.trees[t] = fit_tree(data, sample, tree_params, rng);
  });
  return model;
}

ForestModel fit_forest(const Dataset& train, const ForestParams& params,
                       std::uint64_t seed) {
  return fit_forest(to_columns(train), params, seed);
}

std::vector<double> oob_mse(const ForestModel& model, const Columns& data) {
  std::vector<double> out(model.trees.size());
  std::array<double, 64> row_buffer;
  std::vector<double> row;
  double* features = nullptr;
  if (data.cols() <= row_buffer.size()) {
    features = row_buffer.data();
  } else {
    row.resize(data.cols());
    features = row.data();
  }

  for (std::size_t t = 0; t < model.trees.size(); ++t) {
    const auto& oob = model.oob_indices[t];
    if (oob.empty()) throw EmptyOob(t);
    double sum = 0.0;
    for (std::uint32_t i : oob) {
      data.row(i, features);
      const double err =
          model.trees[t].predict({features, data.cols()}) - data.targets[i];
      sum += err * err;
    }
    out[t] = sum / static_cast<double>(oob.size());
  }
  return out;
}

std::vector<double> oob_mse(const ForestModel& model, const Dataset& train) {
  return oob_mse(model, to_columns(train));
}

}  // namespace ntsense
