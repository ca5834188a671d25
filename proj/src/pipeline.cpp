#include "ntsense/pipeline.hpp"

#include <fstream>
#include <ostream>

#include "ntsense/errors.hpp"
#include "ntsense/rng.hpp"

namespace ntsense {

PreparedData prepare_experiment(const Dataset& raw, OutlierSetting setting,
                                double train_fraction, std::uint64_t master_seed) {
  const Dataset working =
      setting == OutlierSetting::without_outliers ? filter_outliers(raw) : raw;
  auto [train_raw, test_raw] =
      split(working, train_fraction, derive_seed(master_seed, SeedStream::kSplit));
  const Standardizer scaler = fit_standardizer(train_raw);
  return {apply_standardizer(train_raw, scaler), apply_standardizer(test_raw, scaler),
          scaler};
}

RegressorSpec default_spec(ModelKind kind, std::uint64_t master_seed) {
  RegressorSpec spec;
  spec.kind = kind;
  spec.seed = derive_seed(master_seed, kind == ModelKind::neural_net
                                           ? SeedStream::kNetwork
                                           : SeedStream::kForest);
  return spec;
}

namespace {

void write_text(const std::string& text, const std::filesystem::path& path,
                std::vector<std::filesystem::path>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
  written.push_back(path);
}

}  // namespace

ReproduceResult run_reproduce(const Dataset& raw, const ReproduceOptions& options,
                              std::ostream& log) {
  std::filesystem::create_directories(options.out_dir);
  ReproduceResult result;

  const ModelKind kinds[] = {ModelKind::random_forest, ModelKind::neural_net,
                             ModelKind::linear, ModelKind::mean_baseline};

  RegressionModel forest_no_outliers;
  Dataset train_no_outliers;

  for (const OutlierSetting setting :
       {OutlierSetting::with_outliers, OutlierSetting::without_outliers}) {
    const bool keep = setting == OutlierSetting::with_outliers;
    const PreparedData prep =
        prepare_experiment(raw, setting, options.train_fraction, options.seed);

    std::vector<EvaluationReport>& reports =
        keep ? result.with_outliers : result.without_outliers;
    const std::string suffix = keep ? "with_outliers" : "without_outliers";

    for (const ModelKind kind : kinds) {
      RegressorSpec spec = default_spec(kind, options.seed);
      spec.forest = options.forest;
      spec.network = options.network;
      RegressionModel model = train(spec, prep.train, prep.scaler);
      reports.push_back(evaluate(model, prep.test, setting));

      if (kind == ModelKind::random_forest) {
        write_prediction_pairs(collect_predictions(model, prep.test),
                               options.out_dir / ("predictions_rf_" + suffix + ".csv"));
        result.files_written.push_back(options.out_dir /
                                       ("predictions_rf_" + suffix + ".csv"));
        if (!keep) {
          forest_no_outliers = std::move(model);
          train_no_outliers = prep.train;
        }
      }
    }

    const std::string title = keep ? "Results on dataset with outliers"
                                   : "Results on dataset without outliers";
    const std::string table = render_report_table(title, reports);
    log << table << "\n";
    write_text(table, options.out_dir / ("table_" + suffix + ".txt"),
               result.files_written);
    write_text(reports_to_json(reports), options.out_dir / ("table_" + suffix + ".json"),
               result.files_written);
  }

  // Interpretation artifacts from the best setting's forest (no outliers).
  result.importance = permutation_importance(
      *forest_no_outliers.forest(), train_no_outliers,
      derive_seed(options.seed, SeedStream::kPermutation));
  write_importance_csv(result.importance, options.out_dir / "importance_rf.csv");
  result.files_written.push_back(options.out_dir / "importance_rf.csv");

  result.raw_material_pdp =
      partial_dependence(forest_no_outliers, train_no_outliers, "raw_material");
  write_pdp_csv(result.raw_material_pdp, options.out_dir / "pdp_raw_material.csv");
  result.files_written.push_back(options.out_dir / "pdp_raw_material.csv");

  return result;
}

}  // namespace ntsense
