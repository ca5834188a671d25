#include "ntsense/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ntsense/errors.hpp"

namespace ntsense {

namespace {

struct SplitChoice {
  double score = std::numeric_limits<double>::infinity();
  int feature = -1;
  double threshold = 0.0;

  bool found() const { return feature >= 0; }
};

class TreeBuilder {
 public:
  TreeBuilder(const Columns& data, const TreeParams& params, Rng& rng)
      : data_(data), params_(params), rng_(rng) {}

  Tree fit(std::span<const std::size_t> sample) {
    std::vector<std::size_t> rows(sample.begin(), sample.end());
    nodes_.clear();
    build(rows, 0);
    return Tree{std::move(nodes_)};
  }

 private:
  std::int32_t build(std::vector<std::size_t>& rows, int depth) {
    const std::int32_t index = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();

    const std::vector<double>& y = data_.targets;
    double sum = 0.0;
    for (std::size_t i : rows) sum += y[i];
    nodes_[index].value = sum / static_cast<double>(rows.size());

    bool constant_target = true;
    for (std::size_t i : rows) {
      if (y[i] != y[rows.front()]) {
        constant_target = false;
        break;
      }
    }
    const bool too_small = rows.size() < 2 * static_cast<std::size_t>(params_.min_leaf_size);
    const bool too_deep = params_.max_depth > 0 && depth >= params_.max_depth;
    if (too_small || too_deep || constant_target) return index;

    const SplitChoice best = best_split(rows);
    if (!best.found()) return index;  // every candidate feature constant here

    std::vector<std::size_t> left_rows, right_rows;
    left_rows.reserve(rows.size());
    right_rows.reserve(rows.size());
    for (std::size_t i : rows) {
      const double x = data_.features[static_cast<std::size_t>(best.feature)][i];
      (x <= best.threshold ? left_rows : right_rows).push_back(i);
    }
    rows.clear();
    rows.shrink_to_fit();

    nodes_[index].feature = best.feature;
    nodes_[index].threshold = best.threshold;
    const std::int32_t left = build(left_rows, depth + 1);
    nodes_[index].left = left;
    const std::int32_t right = build(right_rows, depth + 1);
    nodes_[index].right = right;
    return index;
  }

  // Exhaustive search over the drawn candidate features and the midpoints of
  // consecutive distinct sorted values, minimizing SSE(left) + SSE(right).
  // Candidates are visited in ascending feature order and thresholds in
  // ascending value order; a later candidate must beat the incumbent by more
  // than the tie band to replace it, which yields the documented
  // (lowest feature, lowest threshold) tie-break.
  SplitChoice best_split(const std::vector<std::size_t>& rows) {
    const int n_features = static_cast<int>(data_.cols());
    const int mtry = std::min(params_.mtry, n_features);
    std::vector<int> candidates = rng_.pick_without_replacement(n_features, mtry);
    std::sort(candidates.begin(), candidates.end());

    const std::size_t n = rows.size();
    double total_sum = 0.0, total_sq = 0.0;
    for (std::size_t i : rows) {
      total_sum += data_.targets[i];
      total_sq += data_.targets[i] * data_.targets[i];
    }
    const double node_sse = total_sq - total_sum * total_sum / static_cast<double>(n);
    const double tie_band = kSplitTieRelTolerance * std::abs(node_sse);

    SplitChoice best;
    for (int f : candidates) {
      const std::vector<double>& column = data_.features[static_cast<std::size_t>(f)];
      scratch_.clear();
      for (std::size_t i : rows) scratch_.push_back({column[i], data_.targets[i]});
      std::sort(scratch_.begin(), scratch_.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      double left_sum = 0.0, left_sq = 0.0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const double t = scratch_[k].second;
        left_sum += t;
        left_sq += t * t;
        if (scratch_[k].first == scratch_[k + 1].first) continue;

        const double n_left = static_cast<double>(k + 1);
        const double n_right = static_cast<double>(n - k - 1);
        const double right_sum = total_sum - left_sum;
        const double right_sq = total_sq - left_sq;
        const double sse = (left_sq - left_sum * left_sum / n_left) +
                           (right_sq - right_sum * right_sum / n_right);
        if (sse < best.score - tie_band) {
          best.score = sse;
          best.feature = f;
          best.threshold = split_midpoint(scratch_[k].first, scratch_[k + 1].first);
        }
      }
    }
    return best;
  }

  const Columns& data_;
  TreeParams params_;
  Rng& rng_;
  std::vector<TreeNode> nodes_;
  std::vector<std::pair<double, double>> scratch_;  // (feature value, target)
};

}  // namespace

Tree fit_tree(const Columns& data, std::span<const std::size_t> sample,
              const TreeParams& params, Rng& rng) {
  if (sample.empty()) throw EmptyInput("tree sample is empty");
  if (params.mtry < 1) throw InvalidHyperparameters("mtry must be >= 1");
  if (params.min_leaf_size < 1) throw InvalidHyperparameters("min_leaf_size must be >= 1");
  return TreeBuilder(data, params, rng).fit(sample);
}

Tree fit_tree(const Dataset& bootstrap_sample, int mtry, Rng& rng) {
  const Columns columns = to_columns(bootstrap_sample);
  std::vector<std::size_t> all(columns.rows());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return fit_tree(columns, all, TreeParams{mtry, 1, 0}, rng);
}

}  // namespace ntsense
