#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "ntsense/errors.hpp"
#include "ntsense/csv.hpp"
#include "ntsense/linear.hpp"
#include "ntsense/metrics.hpp"

using namespace ntsense;
namespace fs = std::filesystem;

TEST_CASE("reference dataset: row and outlier counts") {
  const auto& [data, manifest] = testing::reference_synth();
  CHECK(data.size() == 14252);
  std::size_t flagged = 0;
  for (const auto& r : data.records) flagged += r.outlier ? 1 : 0;
  CHECK(flagged == 23);
  CHECK(manifest.outlier_indices.size() == 23);
  CHECK(std::is_sorted(manifest.outlier_indices.begin(), manifest.outlier_indices.end()));
  for (std::size_t index : manifest.outlier_indices) {
    CHECK(data.records[index].outlier);
  }
  CHECK(filter_outliers(data).size() == 14229);
}

TEST_CASE("reference dataset: raw_material/NT correlation near -0.4") {
  const auto& [data, manifest] = testing::reference_synth();
  const double corr = pearson(data.feature_column(0), data.labels());
  CHECK(corr > -0.45);
  CHECK(corr < -0.35);
  CHECK(manifest.raw_material_nt_correlation == doctest::Approx(corr).epsilon(1e-12));
}

TEST_CASE("reference dataset: written file parses back to 14252 rows / 23 flags") {
  const auto& [data, manifest] = testing::reference_synth();
  const fs::path path = fs::temp_directory_path() / "ntsense_reference.csv";
  write_csv(data, path);
  const Dataset parsed = parse_csv(path);
  CHECK(parsed.size() == 14252);
  std::size_t flagged = 0;
  for (const auto& r : parsed.records) flagged += r.outlier ? 1 : 0;
  CHECK(flagged == 23);
}

TEST_CASE("generation is byte-identical per seed") {
  GeneratorConfig config;
  config.n_rows = 500;
  config.n_outliers = 5;
  config.seed = 99;
  const auto [a, ma] = generate(config);
  const auto [b, mb] = generate(config);

  const fs::path pa = fs::temp_directory_path() / "ntsense_synth_a.csv";
  const fs::path pb = fs::temp_directory_path() / "ntsense_synth_b.csv";
  write_csv(a, pa);
  write_csv(b, pb);
  std::ifstream fa(pa, std::ios::binary), fb(pb, std::ios::binary);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(ma.outlier_indices == mb.outlier_indices);

  config.seed = 100;
  const auto [c, mc] = generate(config);
  CHECK(c.records[0].features != a.records[0].features);
}

TEST_CASE("non-outlier rows stay within 5 sigma; outliers exceed it in sulfur") {
  const auto& [data, manifest] = testing::reference_synth();
  const Dataset clean = filter_outliers(data);

  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    const std::vector<double> col = clean.feature_column(j);
    double mean = 0.0;
    for (double v : col) mean += v;
    mean /= static_cast<double>(col.size());
    double sq = 0.0;
    for (double v : col) sq += (v - mean) * (v - mean);
    const double std_dev = std::sqrt(sq / static_cast<double>(col.size() - 1));
    for (double v : col) CHECK(std::abs(v - mean) <= 5.0 * std_dev);
  }

  // outliers: |z| in sulfur beyond 5, measured against the clean column
  const std::vector<double> sulfur = clean.feature_column(1);
  double mean = 0.0;
  for (double v : sulfur) mean += v;
  mean /= static_cast<double>(sulfur.size());
  double sq = 0.0;
  for (double v : sulfur) sq += (v - mean) * (v - mean);
  const double std_dev = std::sqrt(sq / static_cast<double>(sulfur.size() - 1));
  for (std::size_t index : manifest.outlier_indices) {
    const double z = (data.records[index].features[1] - mean) / std_dev;
    CHECK(std::abs(z) > 5.0);
  }
}

TEST_CASE("zscore flagger recovers the injected outliers") {
  const auto& [data, manifest] = testing::reference_synth();
  Dataset unflagged = data;
  for (auto& r : unflagged.records) r.outlier = false;
  const Dataset flagged = flag_outliers_zscore(unflagged, 4.0);
  std::size_t recovered = 0;
  for (std::size_t index : manifest.outlier_indices) {
    recovered += flagged.records[index].outlier ? 1 : 0;
  }
  CHECK(recovered >= 20);
}

TEST_CASE("noiseless linear mode is exactly recoverable by OLS") {
  GeneratorConfig config;
  config.n_rows = 400;
  config.n_outliers = 0;
  config.seed = 3;
  config.noise_std = 0.0;
  config.linear_only = true;
  const auto [data, manifest] = generate(config);

  const LinearModel model = fit_linear(data);
  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    CHECK(model.weights[j] ==
          doctest::Approx(manifest.raw_weights[j]).scale(1.0).epsilon(1e-6));
  }
  CHECK(model.intercept == doctest::Approx(manifest.raw_intercept).epsilon(1e-6));
}

TEST_CASE("generator config validation") {
  GeneratorConfig config;
  config.n_rows = 10;
  config.n_outliers = 10;
  CHECK_THROWS_AS(generate(config), InvalidConfig);
  config.n_outliers = 2;
  config.noise_std = -0.1;
  CHECK_THROWS_AS(generate(config), InvalidConfig);
  config.noise_std = 0.2;
  config.outlier_magnitude = 0.0;
  CHECK_THROWS_AS(generate(config), InvalidConfig);
  config.n_rows = 0;
  CHECK_THROWS_AS(generate(config), InvalidConfig);
}

TEST_CASE("describe lists outliers and coefficients") {
  GeneratorConfig config;
  config.n_rows = 50;
  config.n_outliers = 3;
  config.seed = 8;
  const auto [data, manifest] = generate(config);
  const std::string text = describe(manifest);
  CHECK(text.find("3 rows") != std::string::npos);
  for (std::size_t index : manifest.outlier_indices) {
    CHECK(text.find(" " + std::to_string(index)) != std::string::npos);
  }
  CHECK(text.find("sulfur=1.04") != std::string::npos);
  CHECK(text.find("corr(raw_material, nt)") != std::string::npos);

  GeneratorConfig no_outliers;
  no_outliers.n_rows = 50;
  no_outliers.n_outliers = 0;
  const auto [d2, m2] = generate(no_outliers);
  const std::string t2 = describe(m2);
  CHECK(t2.find("0 rows, sulfur displaced") != std::string::npos);
}

TEST_CASE("timestamps and labels: generated data is fully labeled raw data") {
  GeneratorConfig config;
  config.n_rows = 20;
  config.n_outliers = 1;
  const auto [data, manifest] = generate(config);
  CHECK(data.all_labeled());
  CHECK_FALSE(data.standardized);
  data.validate();
}
