#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "helpers.hpp"
#include "ntsense/csv.hpp"
#include "ntsense/errors.hpp"
#include "ntsense/standardize.hpp"

using namespace ntsense;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("ntsense_test_" + name);
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

constexpr const char* kHeader =
    "raw_material,sulfur,dew_point,air_sulfur_oven,air_converter,"
    "air_so3_filter,molar,molar_stp";

}  // namespace

TEST_CASE("canonical schema") {
  const FeatureSchema& schema = FeatureSchema::canonical();
  CHECK(schema.size() == 8);
  CHECK(schema.names.front() == "raw_material");
  CHECK(schema.names.back() == "molar_stp");
  CHECK(schema.index_of("sulfur") == 1);
  CHECK_THROWS_AS(schema.index_of("nope"), UnknownFeature);
}

TEST_CASE("parse_csv reads valid rows") {
  const fs::path path = temp_file("valid.csv");
  write_text_file(path, std::string(kHeader) + ",nt,outlier\n" +
                            "1,2,3,4,5,6,7,8,9.5,0\n"
                            "1.5,2.5,3.5,4.5,5.5,6.5,7.5,8.5,10.5,1\n"
                            "-1,-2,-3,-4,-5,-6,-7,-8,0,0\n");
  const Dataset data = parse_csv(path);
  REQUIRE(data.size() == 3);
  CHECK(data.records[0].features[0] == 1.0);
  CHECK(data.records[1].features[7] == 8.5);
  CHECK(data.records[0].nt == 9.5);
  CHECK(data.records[1].outlier);
  CHECK_FALSE(data.records[2].outlier);
  CHECK_FALSE(data.standardized);
}

TEST_CASE("parse_csv without optional columns") {
  const fs::path path = temp_file("no_nt.csv");
  write_text_file(path, std::string(kHeader) + "\n1,2,3,4,5,6,7,8\n");
  const Dataset data = parse_csv(path);
  REQUIRE(data.size() == 1);
  CHECK_FALSE(data.records[0].nt.has_value());
  CHECK_FALSE(data.records[0].outlier);
}

TEST_CASE("parse_csv rejects NaN tokens") {
  const fs::path path = temp_file("nan.csv");
  write_text_file(path, std::string(kHeader) + "\n1,NaN,3,4,5,6,7,8\n");
  CHECK_THROWS_AS(parse_csv(path), MalformedRow);
}

TEST_CASE("parse_csv rejects malformed rows") {
  const fs::path path = temp_file("arity.csv");
  write_text_file(path, std::string(kHeader) + "\n1,2,3\n");
  CHECK_THROWS_AS(parse_csv(path), MalformedRow);

  write_text_file(path, std::string(kHeader) + "\n1,2,3,4,5,abc,7,8\n");
  CHECK_THROWS_AS(parse_csv(path), MalformedRow);

  write_text_file(path, std::string(kHeader) + ",nt,outlier\n1,2,3,4,5,6,7,8,9,2\n");
  CHECK_THROWS_AS(parse_csv(path), MalformedRow);
}

TEST_CASE("parse_csv rejects bad headers") {
  const fs::path path = temp_file("header.csv");
  write_text_file(path, "sulfur,raw_material,dew_point,air_sulfur_oven,air_converter,"
                        "air_so3_filter,molar,molar_stp\n1,2,3,4,5,6,7,8\n");
  CHECK_THROWS_AS(parse_csv(path), SchemaMismatch);

  write_text_file(path, std::string(kHeader) + ",mystery\n1,2,3,4,5,6,7,8,9\n");
  CHECK_THROWS_AS(parse_csv(path), SchemaMismatch);

  write_text_file(path, "");
  CHECK_THROWS_AS(parse_csv(path), SchemaMismatch);
}

TEST_CASE("csv write/parse round trip is exact") {
  Dataset data = testing::random_dataset(50, 7);
  data.records[3].outlier = true;
  data.records[5].timestamp = 1700000000;
  const fs::path path = temp_file("roundtrip.csv");
  write_csv(data, path);
  const Dataset back = parse_csv(path);
  REQUIRE(back.size() == data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < kNumFeatures; ++j) {
      CHECK(back.records[i].features[j] == data.records[i].features[j]);
    }
    CHECK(*back.records[i].nt == *data.records[i].nt);
    CHECK(back.records[i].outlier == data.records[i].outlier);
  }
  CHECK(*back.records[5].timestamp == 1700000000);
}

TEST_CASE("standardizer hand oracle: [1,2,3]") {
  // sample std with n-1 denominator: sqrt((1 + 0 + 1) / 2) = 1
  Dataset data = testing::random_dataset(3, 11);
  testing::set_column(data, 0, {1.0, 2.0, 3.0});
  const Standardizer s = fit_standardizer(data);
  CHECK(s.means[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.stds[0] == doctest::Approx(1.0).epsilon(1e-12));

  const Dataset out = apply_standardizer(data, s);
  CHECK(out.records[0].features[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(out.records[1].features[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(out.records[2].features[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.standardized);
}

TEST_CASE("standardizer leaves an already-normalized column unchanged") {
  Dataset data = testing::random_dataset(5, 13);
  const double root2 = std::sqrt(2.0);
  testing::set_column(data, 2, {-root2, -root2 / 2, 0.0, root2 / 2, root2});  // mean 0
  Dataset scaled = data;
  // rescale so the sample std is exactly 1
  std::vector<double> col = data.feature_column(2);
  double sq = 0.0;
  for (double v : col) sq += v * v;
  const double std_dev = std::sqrt(sq / 4.0);
  for (double& v : col) v /= std_dev;
  testing::set_column(scaled, 2, col);

  const Standardizer s = fit_standardizer(scaled);
  const Dataset out = apply_standardizer(scaled, s);
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    CHECK(out.records[i].features[2] ==
          doctest::Approx(scaled.records[i].features[2]).epsilon(1e-12));
  }
}

TEST_CASE("standardizer rejects constant columns") {
  Dataset data = testing::random_dataset(3, 17);
  testing::set_column(data, 4, {5.0, 5.0, 5.0});
  CHECK_THROWS_AS(fit_standardizer(data), DegenerateColumn);
}

TEST_CASE("standardizer requires labels and 2+ records") {
  CHECK_THROWS_AS(fit_standardizer(testing::random_dataset(1, 1)), EmptyInput);
  CHECK_THROWS_AS(fit_standardizer(testing::random_dataset(5, 1, false)), Error);
}

TEST_CASE("apply/invert round trip within 1e-10 relative") {
  const Dataset data = testing::random_dataset(200, 19);
  const Standardizer s = fit_standardizer(data);
  const Dataset back = invert_standardizer(apply_standardizer(data, s), s);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < kNumFeatures; ++j) {
      CHECK(back.records[i].features[j] ==
            doctest::Approx(data.records[i].features[j]).epsilon(1e-10));
    }
    CHECK(*back.records[i].nt == doctest::Approx(*data.records[i].nt).epsilon(1e-10));
  }
  CHECK_FALSE(back.standardized);
}

TEST_CASE("standardized columns have mean ~0 and std ~1") {
  const Dataset data = testing::random_dataset(500, 23);
  const Dataset out = apply_standardizer(data, fit_standardizer(data));
  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    const std::vector<double> col = out.feature_column(j);
    double mean = 0.0;
    for (double v : col) mean += v;
    mean /= static_cast<double>(col.size());
    double sq = 0.0;
    for (double v : col) sq += (v - mean) * (v - mean);
    const double std_dev = std::sqrt(sq / static_cast<double>(col.size() - 1));
    CHECK(std::abs(mean) < 1e-9);
    CHECK(std::abs(std_dev - 1.0) < 1e-9);
  }
}

TEST_CASE("split hand counts") {
  const Dataset ten = testing::random_dataset(10, 29);
  const auto [train, test] = split(ten, 0.7, 123);
  CHECK(train.size() == 7);
  CHECK(test.size() == 3);
}

TEST_CASE("split is deterministic per seed") {
  const Dataset data = testing::random_dataset(40, 31);
  const auto [a_train, a_test] = split(data, 0.7, 9);
  const auto [b_train, b_test] = split(data, 0.7, 9);
  REQUIRE(a_train.size() == b_train.size());
  for (std::size_t i = 0; i < a_train.size(); ++i) {
    CHECK(a_train.records[i].features == b_train.records[i].features);
  }
  const auto [c_train, c_test] = split(data, 0.7, 10);
  bool identical = true;
  for (std::size_t i = 0; i < a_train.size() && identical; ++i) {
    identical = a_train.records[i].features == c_train.records[i].features;
  }
  CHECK_FALSE(identical);
}

TEST_CASE("split partitions exactly for all n in [2,1000]") {
  // Records tagged by a unique feature value so the partition can be checked.
  for (std::size_t n = 2; n <= 1000; ++n) {
    Dataset data = testing::random_dataset(n, n);
    std::vector<double> tags(n);
    for (std::size_t i = 0; i < n; ++i) tags[i] = static_cast<double>(i);
    testing::set_column(data, 0, tags);

    for (const double fraction : {0.5, 0.7, 0.9}) {
      // floor(n * fraction) in exact integer arithmetic
      const std::size_t expected_train =
          fraction == 0.5 ? n / 2 : (fraction == 0.7 ? n * 7 / 10 : n * 9 / 10);
      const auto [train, test] = split(data, fraction, 5);

      bool ok = train.size() == expected_train && train.size() + test.size() == n;
      std::vector<bool> seen(n, false);
      for (const auto& r : train.records) {
        seen[static_cast<std::size_t>(r.features[0])] = true;
      }
      for (const auto& r : test.records) {
        const auto tag = static_cast<std::size_t>(r.features[0]);
        ok &= !seen[tag];  // no overlap
        seen[tag] = true;
      }
      ok &= std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
      if (!ok) {
        CAPTURE(n);
        CAPTURE(fraction);
        REQUIRE(ok);
      }
    }
  }
  CHECK(true);
}

TEST_CASE("split rejects bad fractions and empty sides") {
  const Dataset data = testing::random_dataset(10, 37);
  CHECK_THROWS_AS(split(data, 0.0, 1), Error);
  CHECK_THROWS_AS(split(data, 1.0, 1), Error);
  CHECK_THROWS_AS(split(testing::random_dataset(1, 1), 0.7, 1), EmptySplit);
}

TEST_CASE("filter_outliers") {
  Dataset data = testing::random_dataset(10, 41);
  SUBCASE("no flags: identical") {
    const Dataset out = filter_outliers(data);
    CHECK(out.size() == 10);
  }
  SUBCASE("flagged records removed, order preserved") {
    data.records[2].outlier = true;
    data.records[7].outlier = true;
    const Dataset out = filter_outliers(data);
    CHECK(out.size() == 8);
    CHECK(out.records[2].features == data.records[3].features);
  }
  SUBCASE("all flagged: empty result") {
    for (auto& r : data.records) r.outlier = true;
    CHECK(filter_outliers(data).size() == 0);
  }
}

TEST_CASE("zscore flagger catches a 10-sigma point") {
  Dataset data = testing::random_dataset(101, 43);
  std::vector<double> col(101);
  for (std::size_t i = 0; i < col.size(); ++i) col[i] = (i % 2 == 0) ? 0.1 : -0.1;
  col[50] = 1.0;  // 10x the background spread
  testing::set_column(data, 1, col);
  const Dataset out = flag_outliers_zscore(data, 4.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out.records[i].outlier == (i == 50));
  }
}

TEST_CASE("zscore flagger with infinite threshold flags nothing") {
  const Dataset data = testing::random_dataset(50, 47);
  const Dataset out =
      flag_outliers_zscore(data, std::numeric_limits<double>::infinity());
  for (const auto& r : out.records) CHECK_FALSE(r.outlier);
}

TEST_CASE("zscore flagger keeps existing flags") {
  Dataset data = testing::random_dataset(50, 53);
  data.records[0].outlier = true;
  const Dataset out = flag_outliers_zscore(data, 4.0);
  CHECK(out.records[0].outlier);
}

TEST_CASE("zscore flagger rejects constant columns") {
  Dataset data = testing::random_dataset(10, 59);
  testing::set_column(data, 6, std::vector<double>(10, 3.3));
  CHECK_THROWS_AS(flag_outliers_zscore(data, 4.0), DegenerateColumn);
}

TEST_CASE("filter length equals n minus flagged for random flag patterns") {
  Rng rng(61);
  for (int round = 0; round < 20; ++round) {
    Dataset data = testing::random_dataset(rng.below(200) + 1, rng.next());
    std::size_t flagged = 0;
    for (auto& r : data.records) {
      if (rng.below(4) == 0) {
        r.outlier = true;
        ++flagged;
      }
    }
    CHECK(filter_outliers(data).size() == data.size() - flagged);
  }
}
