#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "ntsense/csv.hpp"
#include "ntsense/errors.hpp"
#include "ntsense/pipeline.hpp"

namespace fs = std::filesystem;
using namespace ntsense;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadFlags = 1;
constexpr int kExitIo = 2;
constexpr int kExitTraining = 3;

struct CommonFlags {
  std::string data_path;
  std::string out_path;
  double split_fraction = 0.7;
  std::uint64_t seed = 42;
  std::string outliers = "keep";

  OutlierSetting setting() const {
    return outliers == "drop" ? OutlierSetting::without_outliers
                              : OutlierSetting::with_outliers;
  }
};

struct ModelFlags {
  std::string model = "rf";
  int trees = 100;
  int mtry = 2;
  int min_leaf = 5;
  int max_depth = 0;
  double lr = 0.3;
  int batch = 100;
  int epochs = 500;
  double momentum = 0.2;

  RegressorSpec spec(std::uint64_t master_seed) const {
    RegressorSpec spec = default_spec(model_kind_from_string(model), master_seed);
    spec.forest = {trees, mtry, min_leaf, max_depth};
    spec.network = {lr, batch, epochs, momentum};
    return spec;
  }
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags, bool with_kind) {
  if (with_kind) {
    cmd->add_option("--model", flags.model, "Model kind: rf|nn|lm|mean")
        ->check(CLI::IsMember({"rf", "nn", "lm", "mean"}));
  }
  cmd->add_option("--trees", flags.trees, "Number of trees (rf)");
  cmd->add_option("--mtry", flags.mtry, "Features drawn per split (rf)");
  cmd->add_option("--min-leaf", flags.min_leaf, "Minimum leaf size (rf)");
  cmd->add_option("--max-depth", flags.max_depth, "Depth limit, 0 = unlimited (rf)");
  cmd->add_option("--lr", flags.lr, "Learning rate (nn)");
  cmd->add_option("--batch", flags.batch, "Mini-batch size (nn)");
  cmd->add_option("--epochs", flags.epochs, "Training epochs (nn)");
  cmd->add_option("--momentum", flags.momentum, "Momentum (nn)");
}

// I/O-class failures (missing/corrupt files) exit 2, training-class failures
// exit 3. Flag validation is CLI11's job and exits 1.
int classify(const Error& e) {
  if (dynamic_cast<const IoError*>(&e) != nullptr) return kExitIo;
  if (dynamic_cast<const MalformedRow*>(&e) != nullptr) return kExitIo;
  if (dynamic_cast<const SchemaMismatch*>(&e) != nullptr) return kExitIo;
  return kExitTraining;
}

Dataset load_data(const std::string& path) {
  if (!fs::exists(path)) throw IoError("no such file: '" + path + "'");
  return parse_csv(path);
}

int cmd_generate(const std::string& out, GeneratorConfig config) {
  const auto [data, manifest] = generate(config);
  write_csv(data, out);
  save_manifest(manifest, out + ".manifest.json");
  std::cout << describe(manifest);
  return kExitOk;
}

int cmd_train(const CommonFlags& common, const ModelFlags& model_flags) {
  const Dataset raw = load_data(common.data_path);
  const PreparedData prep = prepare_experiment(raw, common.setting(),
                                               common.split_fraction, common.seed);
  ModelBundle bundle;
  bundle.model = train(model_flags.spec(common.seed), prep.train, prep.scaler);
  bundle.split_fraction = common.split_fraction;
  bundle.master_seed = common.seed;
  bundle.setting = common.setting();
  save_model(bundle, common.out_path);
  std::cout << "trained " << to_string(bundle.model.kind()) << " on " << prep.train.size()
            << " records; model written to " << common.out_path << "\n";
  return kExitOk;
}

int cmd_evaluate(const std::string& data_path, const std::string& model_path,
                 const std::string& report_path, const std::string& pairs_path) {
  const Dataset raw = load_data(data_path);
  const ModelBundle bundle = load_model(model_path);
  const PreparedData prep = prepare_experiment(raw, bundle.setting,
                                               bundle.split_fraction, bundle.master_seed);
  const EvaluationReport report = evaluate(bundle.model, prep.test, bundle.setting);
  std::cout << render_report_table("Results on the held-out test split", {&report, 1});
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw Error("cannot write '" + report_path + "'");
    out << reports_to_json({&report, 1});
  }
  if (!pairs_path.empty()) {
    write_prediction_pairs(collect_predictions(bundle.model, prep.test), pairs_path);
  }
  return kExitOk;
}

int cmd_importance(const std::string& data_path, const std::string& model_path,
                   const std::string& out_path, int repeats) {
  const Dataset raw = load_data(data_path);
  const ModelBundle bundle = load_model(model_path);
  const ForestModel* forest = bundle.model.forest();
  if (forest == nullptr) {
    throw Error("permutation importance needs a random_forest model");
  }
  const PreparedData prep = prepare_experiment(raw, bundle.setting,
                                               bundle.split_fraction, bundle.master_seed);
  ImportanceOptions options;
  options.repeats = repeats;
  const ImportanceReport report = permutation_importance(
      *forest, prep.train, derive_seed(bundle.master_seed, SeedStream::kPermutation),
      options);
  write_importance_csv(report, out_path);
  for (const FeatureImportance& entry : report.entries) {
    std::cout << entry.name << ": " << entry.pct_inc_mse << "% increase in MSE\n";
  }
  return kExitOk;
}

int cmd_pdp(const std::string& data_path, const std::string& model_path,
            const std::string& feature, const std::string& out_path, int grid,
            int window) {
  const Dataset raw = load_data(data_path);
  const ModelBundle bundle = load_model(model_path);
  const PreparedData prep = prepare_experiment(raw, bundle.setting,
                                               bundle.split_fraction, bundle.master_seed);
  GridSpec grid_spec;
  grid_spec.quantile_count = grid;
  const PartialDependenceCurve curve =
      partial_dependence(bundle.model, prep.train, feature, grid_spec, window);
  write_pdp_csv(curve, out_path);
  std::cout << "partial dependence of " << feature << " over " << curve.grid.size()
            << " grid points written to " << out_path << "\n";
  return kExitOk;
}

int cmd_reproduce(const std::string& data_path, bool synth, GeneratorConfig config,
                  const ReproduceOptions& options) {
  const Dataset raw = synth ? generate(config).first : load_data(data_path);
  run_reproduce(raw, options, std::cout);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soft sensor for sulphonation product quality (NT) prediction"};
  app.require_subcommand(1);

  // generate
  GeneratorConfig gen_config;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "Write a synthetic dataset + manifest");
  gen->add_option("--out", gen_out, "Output CSV path")->required();
  gen->add_option("--rows", gen_config.n_rows, "Number of rows");
  gen->add_option("--n-outliers", gen_config.n_outliers, "Injected outlier count");
  gen->add_option("--seed", gen_config.seed, "Generator seed");
  gen->add_option("--noise", gen_config.noise_std, "NT noise std (latent units)");
  gen->add_option("--magnitude", gen_config.outlier_magnitude,
                  "Outlier displacement in sigma units");
  gen->add_flag("--linear", gen_config.linear_only, "Pure linear NT structure");

  // train
  CommonFlags train_common;
  ModelFlags train_model;
  auto* train_cmd = app.add_subcommand("train", "Train one model on the train split");
  train_cmd->add_option("--data", train_common.data_path, "Input CSV")->required();
  train_cmd->add_option("--out", train_common.out_path, "Model JSON path")->required();
  add_model_flags(train_cmd, train_model, true);
  train_cmd->add_option("--split", train_common.split_fraction, "Train fraction")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9).description("FLOAT in (0, 1)"));
  train_cmd->add_option("--seed", train_common.seed, "Master seed");
  train_cmd->add_option("--outliers", train_common.outliers, "keep|drop")
      ->check(CLI::IsMember({"keep", "drop"}));

  // evaluate
  std::string eval_data, eval_model, eval_report, eval_pairs;
  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate a saved model on its test split");
  eval_cmd->add_option("--data", eval_data, "Input CSV")->required();
  eval_cmd->add_option("--model-file", eval_model, "Trained model JSON")->required();
  eval_cmd->add_option("--out", eval_report, "Report JSON path");
  eval_cmd->add_option("--pairs", eval_pairs, "Prediction-pairs CSV path");

  // importance
  std::string imp_data, imp_model, imp_out;
  int imp_repeats = 1;
  auto* imp_cmd = app.add_subcommand("importance", "OOB permutation importance (rf)");
  imp_cmd->add_option("--data", imp_data, "Input CSV")->required();
  imp_cmd->add_option("--model-file", imp_model, "Trained model JSON")->required();
  imp_cmd->add_option("--out", imp_out, "Importance CSV path")->required();
  imp_cmd->add_option("--repeats", imp_repeats, "Permutations per (tree, feature)");

  // pdp
  std::string pdp_data, pdp_model, pdp_feature, pdp_out;
  int pdp_grid = 200, pdp_window = 21;
  auto* pdp_cmd = app.add_subcommand("pdp", "Partial dependence of one feature");
  pdp_cmd->add_option("--data", pdp_data, "Input CSV")->required();
  pdp_cmd->add_option("--model-file", pdp_model, "Trained model JSON")->required();
  pdp_cmd->add_option("--feature", pdp_feature, "Feature name")->required();
  pdp_cmd->add_option("--out", pdp_out, "PDP CSV path")->required();
  pdp_cmd->add_option("--grid", pdp_grid, "Max quantile grid points");
  pdp_cmd->add_option("--window", pdp_window, "Smoothing window (odd)");

  // reproduce
  CommonFlags rep_common;
  ModelFlags rep_model;
  GeneratorConfig rep_config;
  bool rep_synth = false;
  std::string rep_out_dir;
  auto* rep_cmd = app.add_subcommand(
      "reproduce", "Both outlier settings x four models, plus importance and PDP");
  rep_cmd->add_option("--data", rep_common.data_path, "Input CSV");
  rep_cmd->add_flag("--synth", rep_synth, "Generate the dataset instead of reading one");
  rep_cmd->add_option("--rows", rep_config.n_rows, "Synthetic rows (with --synth)");
  rep_cmd->add_option("--n-outliers", rep_config.n_outliers,
                      "Synthetic outlier count (with --synth)");
  rep_cmd->add_option("--out", rep_out_dir, "Output directory")->required();
  rep_cmd->add_option("--split", rep_common.split_fraction, "Train fraction")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9).description("FLOAT in (0, 1)"));
  rep_cmd->add_option("--seed", rep_common.seed, "Master seed");
  add_model_flags(rep_cmd, rep_model, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadFlags;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_out, gen_config);
    if (train_cmd->parsed()) return cmd_train(train_common, train_model);
    if (eval_cmd->parsed()) return cmd_evaluate(eval_data, eval_model, eval_report, eval_pairs);
    if (imp_cmd->parsed()) return cmd_importance(imp_data, imp_model, imp_out, imp_repeats);
    if (pdp_cmd->parsed()) {
      return cmd_pdp(pdp_data, pdp_model, pdp_feature, pdp_out, pdp_grid, pdp_window);
    }
    if (rep_cmd->parsed()) {
      if (!rep_synth && rep_common.data_path.empty()) {
        std::cerr << "reproduce needs --data or --synth\n";
        return kExitBadFlags;
      }
      rep_config.seed = rep_common.seed;
      ReproduceOptions options;
      options.train_fraction = rep_common.split_fraction;
      options.seed = rep_common.seed;
      options.forest = {rep_model.trees, rep_model.mtry, rep_model.min_leaf,
                        rep_model.max_depth};
      options.network = {rep_model.lr, rep_model.batch, rep_model.epochs,
                         rep_model.momentum};
      options.out_dir = rep_out_dir;
      return cmd_reproduce(rep_common.data_path, rep_synth, rep_config, options);
    }
  } catch (const UnknownFeature& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const InvalidConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitBadFlags;
}
