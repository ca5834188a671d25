#include "ntsense/serialize.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ntsense/csv.hpp"
#include "ntsense/errors.hpp"

namespace ntsense {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json tree_node_to_json(const Tree& tree, std::int32_t index) {
  const TreeNode& node = tree.nodes[static_cast<std::size_t>(index)];
  if (node.is_leaf()) {
    return json{{"value", node.value}};
  }
  return json{{"feature", node.feature},
              {"threshold", node.threshold},
              {"left", tree_node_to_json(tree, node.left)},
              {"right", tree_node_to_json(tree, node.right)}};
}

std::int32_t tree_node_from_json(const json& obj, Tree& tree) {
  const auto index = static_cast<std::int32_t>(tree.nodes.size());
  tree.nodes.emplace_back();
  if (obj.contains("value")) {
    tree.nodes[static_cast<std::size_t>(index)].value = obj.at("value").get<double>();
    return index;
  }
  tree.nodes[static_cast<std::size_t>(index)].feature = obj.at("feature").get<std::int32_t>();
  tree.nodes[static_cast<std::size_t>(index)].threshold = obj.at("threshold").get<double>();
  const std::int32_t left = tree_node_from_json(obj.at("left"), tree);
  tree.nodes[static_cast<std::size_t>(index)].left = left;
  const std::int32_t right = tree_node_from_json(obj.at("right"), tree);
  tree.nodes[static_cast<std::size_t>(index)].right = right;
  return index;
}

json forest_to_json(const ForestModel& model) {
  json trees = json::array();
  for (const Tree& tree : model.trees) trees.push_back(tree_node_to_json(tree, 0));
  return json{{"trees", std::move(trees)},
              {"oob_indices", model.oob_indices},
              {"tree_seeds", model.tree_seeds}};
}

ForestModel forest_from_json(const json& obj) {
  ForestModel model;
  for (const json& t : obj.at("trees")) {
    Tree tree;
    tree_node_from_json(t, tree);
    model.trees.push_back(std::move(tree));
  }
  obj.at("oob_indices").get_to(model.oob_indices);
  obj.at("tree_seeds").get_to(model.tree_seeds);
  if (model.oob_indices.size() != model.trees.size() ||
      model.tree_seeds.size() != model.trees.size()) {
    throw Error("model file: forest sections disagree on the tree count");
  }
  return model;
}

json network_to_json(const NetworkModel& model) {
  return json{{"hidden_weights", model.hidden_weights},
              {"hidden_bias", model.hidden_bias},
              {"output_weights", model.output_weights},
              {"output_bias", model.output_bias}};
}

NetworkModel network_from_json(const json& obj) {
  NetworkModel model;
  obj.at("hidden_weights").get_to(model.hidden_weights);
  obj.at("hidden_bias").get_to(model.hidden_bias);
  obj.at("output_weights").get_to(model.output_weights);
  obj.at("output_bias").get_to(model.output_bias);
  return model;
}

json hyperparameters_to_json(const RegressorSpec& spec) {
  switch (spec.kind) {
    case ModelKind::random_forest:
      return json{{"n_trees", spec.forest.n_trees},
                  {"mtry", spec.forest.mtry},
                  {"min_leaf_size", spec.forest.min_leaf_size},
                  {"max_depth", spec.forest.max_depth}};
    case ModelKind::neural_net:
      return json{{"learning_rate", spec.network.learning_rate},
                  {"batch_size", spec.network.batch_size},
                  {"epochs", spec.network.epochs},
                  {"momentum", spec.network.momentum}};
    case ModelKind::linear:
    case ModelKind::mean_baseline:
      return json::object();
  }
  throw Error("unreachable model kind");
}

void hyperparameters_from_json(const json& obj, RegressorSpec& spec) {
  switch (spec.kind) {
    case ModelKind::random_forest:
      obj.at("n_trees").get_to(spec.forest.n_trees);
      obj.at("mtry").get_to(spec.forest.mtry);
      obj.at("min_leaf_size").get_to(spec.forest.min_leaf_size);
      obj.at("max_depth").get_to(spec.forest.max_depth);
      break;
    case ModelKind::neural_net:
      obj.at("learning_rate").get_to(spec.network.learning_rate);
      obj.at("batch_size").get_to(spec.network.batch_size);
      obj.at("epochs").get_to(spec.network.epochs);
      obj.at("momentum").get_to(spec.network.momentum);
      break;
    case ModelKind::linear:
    case ModelKind::mean_baseline:
      break;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

std::string model_to_json(const ModelBundle& bundle) {
  const RegressionModel& model = bundle.model;
  json doc{
      {"format_version", kFormatVersion},
      {"kind", to_string(model.kind())},
      {"seed", model.spec.seed},
      {"hyperparameters", hyperparameters_to_json(model.spec)},
      {"standardizer", json{{"means", model.scaler.means}, {"stds", model.scaler.stds}}},
      {"experiment",
       json{{"split_fraction", bundle.split_fraction},
            {"master_seed", bundle.master_seed},
            {"outliers", bundle.setting == OutlierSetting::without_outliers ? "drop" : "keep"}}},
  };

  switch (model.kind()) {
    case ModelKind::mean_baseline:
      doc["parameters"] = json{{"mean_nt", std::get<MeanBaselineModel>(model.impl).mean_nt}};
      break;
    case ModelKind::linear: {
      const auto& lm = std::get<LinearModel>(model.impl);
      doc["parameters"] = json{{"weights", lm.weights}, {"intercept", lm.intercept}};
      break;
    }
    case ModelKind::neural_net:
      doc["parameters"] = network_to_json(std::get<NetworkModel>(model.impl));
      break;
    case ModelKind::random_forest:
      doc["parameters"] = forest_to_json(std::get<ForestModel>(model.impl));
      break;
  }
  return doc.dump(2) + "\n";
}

ModelBundle model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("model file is not valid JSON: ") + e.what());
  }

  const int version = doc.at("format_version").get<int>();
  if (version != kFormatVersion) {
    throw IoError("unsupported model format version " + std::to_string(version));
  }

  ModelBundle bundle;
  RegressionModel& model = bundle.model;
  model.spec.kind = model_kind_from_string(doc.at("kind").get<std::string>());
  model.spec.seed = doc.at("seed").get<std::uint64_t>();
  hyperparameters_from_json(doc.at("hyperparameters"), model.spec);
  doc.at("standardizer").at("means").get_to(model.scaler.means);
  doc.at("standardizer").at("stds").get_to(model.scaler.stds);

  if (doc.contains("experiment")) {
    const json& exp = doc.at("experiment");
    exp.at("split_fraction").get_to(bundle.split_fraction);
    exp.at("master_seed").get_to(bundle.master_seed);
    bundle.setting = exp.at("outliers").get<std::string>() == "drop"
                         ? OutlierSetting::without_outliers
                         : OutlierSetting::with_outliers;
  }

  const json& params = doc.at("parameters");
  switch (model.spec.kind) {
    case ModelKind::mean_baseline:
      model.impl = MeanBaselineModel{params.at("mean_nt").get<double>()};
      break;
    case ModelKind::linear: {
      LinearModel lm;
      params.at("weights").get_to(lm.weights);
      lm.intercept = params.at("intercept").get<double>();
      model.impl = std::move(lm);
      break;
    }
    case ModelKind::neural_net:
      model.impl = network_from_json(params);
      break;
    case ModelKind::random_forest:
      model.impl = forest_from_json(params);
      break;
  }
  return bundle;
}

void save_model(const ModelBundle& bundle, const std::filesystem::path& path) {
  write_file(model_to_json(bundle), path);
}

ModelBundle load_model(const std::filesystem::path& path) {
  return model_from_json(read_file(path));
}

void save_manifest(const GeneratorManifest& manifest,
                   const std::filesystem::path& path) {
  json doc{
      {"n_rows", manifest.n_rows},
      {"outlier_indices", manifest.outlier_indices},
      {"linear_only", manifest.linear_only},
      {"noise_std", manifest.noise_std},
      {"outlier_magnitude", manifest.outlier_magnitude},
      {"linear_weights", manifest.linear_weights},
      {"raw_weights", manifest.raw_weights},
      {"raw_intercept", manifest.raw_intercept},
      {"raw_material_nt_correlation", manifest.raw_material_nt_correlation},
  };
  write_file(doc.dump(2) + "\n", path);
}

GeneratorManifest load_manifest(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw IoError(std::string("manifest is not valid JSON: ") + e.what());
  }
  GeneratorManifest manifest;
  doc.at("n_rows").get_to(manifest.n_rows);
  doc.at("outlier_indices").get_to(manifest.outlier_indices);
  doc.at("linear_only").get_to(manifest.linear_only);
  doc.at("noise_std").get_to(manifest.noise_std);
  doc.at("outlier_magnitude").get_to(manifest.outlier_magnitude);
  doc.at("linear_weights").get_to(manifest.linear_weights);
  doc.at("raw_weights").get_to(manifest.raw_weights);
  doc.at("raw_intercept").get_to(manifest.raw_intercept);
  doc.at("raw_material_nt_correlation").get_to(manifest.raw_material_nt_correlation);
  return manifest;
}

std::string reports_to_json(std::span<const EvaluationReport> reports) {
  json rows = json::array();
  for (const EvaluationReport& r : reports) {
    rows.push_back(json{{"model", to_string(r.model_kind)},
                        {"n_test", r.n_test},
                        {"mae", r.mae_value},
                        {"rmse", r.rmse_value},
                        {"correlation", r.correlation},
                        {"setting", r.setting == OutlierSetting::without_outliers
                                        ? "without_outliers"
                                        : "with_outliers"}});
  }
  return json{{"reports", std::move(rows)}}.dump(2) + "\n";
}

void write_prediction_pairs(const PredictionPairs& pairs,
                            const std::filesystem::path& path) {
  std::ostringstream out;
  out << "truth,pred\n";
  for (std::size_t i = 0; i < pairs.truth.size(); ++i) {
    out << format_double(pairs.truth[i]) << ',' << format_double(pairs.pred[i]) << '\n';
  }
  write_file(out.str(), path);
}

void write_importance_csv(const ImportanceReport& report,
                          const std::filesystem::path& path) {
  std::ostringstream out;
  out << "feature,pct_inc_mse\n";
  for (const FeatureImportance& entry : report.entries) {
    out << entry.name << ',' << format_double(entry.pct_inc_mse) << '\n';
  }
  write_file(out.str(), path);
}

void write_pdp_csv(const PartialDependenceCurve& curve,
                   const std::filesystem::path& path) {
  std::ostringstream out;
  out << "grid,value,smoothed\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out << format_double(curve.grid[i]) << ',' << format_double(curve.values[i])
        << ',' << format_double(curve.smoothed[i]) << '\n';
  }
  write_file(out.str(), path);
}

}  // namespace ntsense
