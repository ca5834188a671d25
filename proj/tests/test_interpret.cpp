#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "ntsense/errors.hpp"
#include "ntsense/interpret.hpp"
#include "ntsense/standardize.hpp"

using namespace ntsense;

TEST_CASE("smooth_curve hand oracles") {
  const std::vector<double> values{0.0, 3.0, 0.0};
  const std::vector<double> smoothed = smooth_curve(values, 3);
  REQUIRE(smoothed.size() == 3);
  CHECK(smoothed[0] == doctest::Approx(1.5));  // edge averages 2 points
  CHECK(smoothed[1] == doctest::Approx(1.0));
  CHECK(smoothed[2] == doctest::Approx(1.5));

  CHECK(smooth_curve(values, 1) == values);  // window 1 is the identity

  const std::vector<double> constant(7, 2.5);
  for (double v : smooth_curve(constant, 5)) CHECK(v == doctest::Approx(2.5));
}

TEST_CASE("smooth_curve error paths") {
  const std::vector<double> values{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(smooth_curve(values, 5), WindowTooLarge);
  CHECK_THROWS_AS(smooth_curve(values, 2), Error);
  CHECK_THROWS_AS(smooth_curve(values, -1), Error);
}

namespace {

// Forest whose trees can only ever split on feature 0: y is a clean step in
// x0 and depth is capped at 1, so the root split on x0 reaches SSE ~0 and
// every other feature stays unused by construction.
struct StepForestFixture {
  Dataset data;
  ForestModel forest;

  StepForestFixture() {
    data = testing::random_dataset(160, 301);
    Rng noise(42);
    std::vector<double> x0(160), y(160);
    for (std::size_t i = 0; i < 160; ++i) {
      x0[i] = i % 2 == 0 ? 0.0 : 1.0;
      // jitter keeps the baseline OOB error away from zero; the step keeps
      // every root split on feature 0
      y[i] = (i % 2 == 0 ? -3.0 : 3.0) + 0.01 * noise.gaussian();
    }
    testing::set_column(data, 0, x0);
    testing::set_labels(data, y);
    forest = fit_forest(data, ForestParams{25, 8, 1, 1}, 77);
  }
};

}  // namespace

TEST_CASE("permutation importance: unused features have exactly zero diff") {
  const StepForestFixture fix;
  const ImportanceReport report = permutation_importance(fix.forest, fix.data, 5);
  REQUIRE(report.entries.size() == kNumFeatures);
  CHECK(report.entries.front().name == "raw_material");
  CHECK(report.entries.front().pct_inc_mse > 0.0);
  for (const FeatureImportance& entry : report.entries) {
    if (entry.name != "raw_material") {
      CHECK(entry.raw_mean_diff == 0.0);  // never on any path: exact zero
      CHECK(entry.pct_inc_mse == 0.0);
      CHECK(entry.degenerate);
    }
  }
}

TEST_CASE("permutation importance ranks the driving feature first") {
  Dataset data = testing::random_dataset(500, 303);
  std::vector<double> y(500);
  Rng noise(7);
  for (std::size_t i = 0; i < 500; ++i) {
    y[i] = 3.0 * data.records[i].features[3] + 0.1 * noise.gaussian();
  }
  testing::set_labels(data, y);
  const ForestModel forest = fit_forest(data, ForestParams{30, 2, 5, 0}, 31);
  const ImportanceReport report = permutation_importance(forest, data, 11);
  CHECK(report.entries.front().name == "air_sulfur_oven");  // feature 3
  CHECK(report.entries.front().raw_mean_diff > 0.0);
}

TEST_CASE("permutation importance is deterministic per seed") {
  const StepForestFixture fix;
  const ImportanceReport a = permutation_importance(fix.forest, fix.data, 21);
  const ImportanceReport b = permutation_importance(fix.forest, fix.data, 21);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].name == b.entries[i].name);
    CHECK(a.entries[i].pct_inc_mse == b.entries[i].pct_inc_mse);
    CHECK(a.entries[i].raw_mean_diff == b.entries[i].raw_mean_diff);
  }
}

TEST_CASE("importance report ordering follows pct_inc_mse") {
  GeneratorConfig config;
  config.n_rows = 2500;
  config.n_outliers = 0;
  config.seed = 77;
  auto [raw, manifest] = generate(config);
  const Standardizer scaler = fit_standardizer(raw);
  const Dataset data = apply_standardizer(raw, scaler);
  const ForestModel forest = fit_forest(data, ForestParams{40, 2, 5, 0}, 13);
  const ImportanceReport report = permutation_importance(forest, data, 3);

  REQUIRE(report.entries.size() == kNumFeatures);
  for (std::size_t i = 0; i + 1 < report.entries.size(); ++i) {
    CHECK(report.entries[i].pct_inc_mse >= report.entries[i + 1].pct_inc_mse);
  }
  // The generator's two dominant drivers come out on top.
  const std::string top2[] = {report.entries[0].name, report.entries[1].name};
  CHECK(((top2[0] == "sulfur" && top2[1] == "raw_material") ||
         (top2[0] == "raw_material" && top2[1] == "sulfur")));
}

TEST_CASE("pdp of a feature-blind model is flat at the mean prediction") {
  Dataset data = testing::random_dataset(60, 307);
  RegressorSpec spec;
  spec.kind = ModelKind::mean_baseline;
  const RegressionModel model = train(spec, data);
  const PartialDependenceCurve curve = partial_dependence(model, data, "sulfur");
  const double mean_nt = std::get<MeanBaselineModel>(model.impl).mean_nt;
  CHECK(curve.n_background == 60);
  CHECK(curve.grid.size() == 60);  // unique observed values
  for (double v : curve.values) CHECK(v == doctest::Approx(mean_nt).epsilon(1e-12));
  for (double v : curve.smoothed) CHECK(v == doctest::Approx(mean_nt).epsilon(1e-12));
}

TEST_CASE("pdp of a linear model matches the closed form") {
  Dataset data = testing::random_dataset(80, 311);
  std::vector<double> y(80);
  for (std::size_t i = 0; i < 80; ++i) {
    const auto& x = data.records[i].features;
    y[i] = 0.5 * x[0] - 2.0 * x[1] + 0.75 * x[6] + 0.2;
  }
  testing::set_labels(data, y);
  RegressorSpec spec;
  spec.kind = ModelKind::linear;
  const RegressionModel model = train(spec, data);
  const auto& lm = std::get<LinearModel>(model.impl);

  const std::size_t j = 1;  // sulfur
  const PartialDependenceCurve curve = partial_dependence(model, data, "sulfur");
  // closed form: w_j * v + (intercept + sum_{k != j} w_k * mean(x_k))
  double offset = lm.intercept;
  for (std::size_t k = 0; k < kNumFeatures; ++k) {
    if (k == j) continue;
    const std::vector<double> col = data.feature_column(k);
    double mean = 0.0;
    for (double v : col) mean += v;
    offset += lm.weights[k] * mean / static_cast<double>(col.size());
  }
  for (std::size_t g = 0; g < curve.grid.size(); ++g) {
    const double expected = lm.weights[j] * curve.grid[g] + offset;
    CHECK(curve.values[g] == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("pdp stays within the model's prediction range") {
  GeneratorConfig config;
  config.n_rows = 600;
  config.n_outliers = 0;
  config.seed = 5;
  auto [raw, manifest] = generate(config);
  const Standardizer scaler = fit_standardizer(raw);
  const Dataset data = apply_standardizer(raw, scaler);
  RegressorSpec spec;
  spec.kind = ModelKind::random_forest;
  spec.forest.n_trees = 15;
  const RegressionModel model = train(spec, data, scaler);

  const PartialDependenceCurve curve =
      partial_dependence(model, data, "raw_material", GridSpec{{}, 50});
  CHECK(curve.grid.size() <= 50);
  CHECK(std::is_sorted(curve.grid.begin(), curve.grid.end()));

  // Bounds: a mean of predictions cannot escape the prediction range.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::vector<double> probe(kNumFeatures);
  for (const double v : curve.grid) {
    for (const ProcessRecord& r : data.records) {
      std::copy(r.features.begin(), r.features.end(), probe.begin());
      probe[0] = v;
      const double p = model.predict(probe);
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
  }
  for (double v : curve.values) {
    CHECK(v >= lo - 1e-12);
    CHECK(v <= hi + 1e-12);
  }
}

TEST_CASE("pdp grid options and error paths") {
  Dataset data = testing::random_dataset(30, 313);
  RegressorSpec spec;
  spec.kind = ModelKind::mean_baseline;
  const RegressionModel model = train(spec, data);

  const PartialDependenceCurve explicit_curve =
      partial_dependence(model, data, "molar", GridSpec{{0.5, -0.5, 0.0}, 200});
  CHECK(explicit_curve.grid == std::vector<double>{-0.5, 0.0, 0.5});
  CHECK(explicit_curve.smoothed.size() == 3);

  CHECK_THROWS_AS(partial_dependence(model, data, "bogus"), UnknownFeature);
  Dataset empty;
  CHECK_THROWS_AS(partial_dependence(model, empty, "molar"), EmptyInput);
}

TEST_CASE("importance rejects repeats < 1 and empty OOB") {
  const StepForestFixture fix;
  ImportanceOptions options;
  options.repeats = 0;
  CHECK_THROWS_AS(permutation_importance(fix.forest, fix.data, 1, options), Error);

  ForestModel crippled = fix.forest;
  crippled.oob_indices[0].clear();
  CHECK_THROWS_AS(permutation_importance(crippled, fix.data, 1), EmptyOob);
}
