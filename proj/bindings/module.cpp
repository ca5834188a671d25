#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <sstream>

#include "ntsense/csv.hpp"
#include "ntsense/errors.hpp"
#include "ntsense/pipeline.hpp"

namespace py = pybind11;
using namespace ntsense;

namespace {

std::vector<std::vector<double>> feature_matrix(const Dataset& data) {
  std::vector<std::vector<double>> rows;
  rows.reserve(data.size());
  for (const ProcessRecord& r : data.records) rows.push_back(r.features);
  return rows;
}

Dataset dataset_from_rows(const std::vector<std::vector<double>>& features,
                          const std::optional<std::vector<double>>& nt,
                          const std::optional<std::vector<bool>>& outlier,
                          bool standardized) {
  Dataset data;
  data.standardized = standardized;
  data.records.reserve(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    ProcessRecord record;
    record.features = features[i];
    if (nt) record.nt = (*nt)[i];
    if (outlier) record.outlier = (*outlier)[i];
    data.records.push_back(std::move(record));
  }
  data.validate();
  return data;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Soft sensor for sulphonation product quality (NT) prediction";

  py::register_exception<Error>(m, "NtsenseError", PyExc_RuntimeError);

  m.def("feature_names", [] { return FeatureSchema::canonical().names; },
        "Canonical process-parameter column names");

  py::class_<Dataset>(m, "Dataset")
      .def(py::init(&dataset_from_rows), py::arg("features"),
           py::arg("nt") = std::nullopt, py::arg("outlier") = std::nullopt,
           py::arg("standardized") = false)
      .def("__len__", &Dataset::size)
      .def_readonly("standardized", &Dataset::standardized)
      .def("features", &feature_matrix, "Row-major copy of the feature matrix")
      .def("labels", &Dataset::labels)
      .def("all_labeled", &Dataset::all_labeled)
      .def("outlier_flags",
           [](const Dataset& d) {
             std::vector<bool> flags;
             flags.reserve(d.size());
             for (const auto& r : d.records) flags.push_back(r.outlier);
             return flags;
           })
      .def("save_csv", [](const Dataset& d, const std::filesystem::path& p) {
        write_csv(d, p);
      });

  m.def("load_csv", [](const std::filesystem::path& p) { return parse_csv(p); },
        py::arg("path"));
  m.def("split", &split, py::arg("data"), py::arg("train_fraction"), py::arg("seed"));
  m.def("filter_outliers", &filter_outliers, py::arg("data"));
  m.def("flag_outliers_zscore", &flag_outliers_zscore, py::arg("data"),
        py::arg("threshold") = 4.0);

  py::class_<Standardizer>(m, "Standardizer")
      .def_property_readonly("means",
                             [](const Standardizer& s) {
                               return std::vector<double>(s.means.begin(), s.means.end());
                             })
      .def_property_readonly("stds", [](const Standardizer& s) {
        return std::vector<double>(s.stds.begin(), s.stds.end());
      });
  m.def("fit_standardizer", &fit_standardizer, py::arg("data"));
  m.def("apply_standardizer", &apply_standardizer, py::arg("data"), py::arg("scaler"));
  m.def("invert_standardizer", &invert_standardizer, py::arg("data"), py::arg("scaler"));

  py::enum_<ModelKind>(m, "ModelKind")
      .value("random_forest", ModelKind::random_forest)
      .value("linear", ModelKind::linear)
      .value("neural_net", ModelKind::neural_net)
      .value("mean_baseline", ModelKind::mean_baseline);

  py::class_<ForestParams>(m, "ForestParams")
      .def(py::init<>())
      .def_readwrite("n_trees", &ForestParams::n_trees)
      .def_readwrite("mtry", &ForestParams::mtry)
      .def_readwrite("min_leaf_size", &ForestParams::min_leaf_size)
      .def_readwrite("max_depth", &ForestParams::max_depth);

  py::class_<NetworkParams>(m, "NetworkParams")
      .def(py::init<>())
      .def_readwrite("learning_rate", &NetworkParams::learning_rate)
      .def_readwrite("batch_size", &NetworkParams::batch_size)
      .def_readwrite("epochs", &NetworkParams::epochs)
      .def_readwrite("momentum", &NetworkParams::momentum);

  py::class_<RegressorSpec>(m, "RegressorSpec")
      .def(py::init<>())
      .def_readwrite("kind", &RegressorSpec::kind)
      .def_readwrite("forest", &RegressorSpec::forest)
      .def_readwrite("network", &RegressorSpec::network)
      .def_readwrite("seed", &RegressorSpec::seed);

  py::class_<RegressionModel>(m, "RegressionModel")
      .def_property_readonly("kind", &RegressionModel::kind)
      .def("predict",
           [](const RegressionModel& model, const std::vector<double>& features) {
             return model.predict(features);
           },
           py::arg("features"), "Predict from standardized features")
      .def("predict_raw",
           [](const RegressionModel& model, const std::vector<double>& features) {
             return model.predict_raw(features);
           },
           py::arg("features"), "Predict raw-unit NT from raw-unit features")
      .def("predict_batch", [](const RegressionModel& model, const Dataset& data) {
        std::vector<double> out;
        out.reserve(data.size());
        for (const ProcessRecord& r : data.records) out.push_back(model.predict(r.features));
        return out;
      });

  m.def("train",
        [](const RegressorSpec& spec, const Dataset& data, const Standardizer* scaler) {
          return scaler ? train(spec, data, *scaler) : train(spec, data);
        },
        py::arg("spec"), py::arg("data"), py::arg("scaler") = nullptr);

  m.def("mae", [](const std::vector<double>& t, const std::vector<double>& p) {
    return mae(t, p);
  });
  m.def("rmse", [](const std::vector<double>& t, const std::vector<double>& p) {
    return rmse(t, p);
  });
  m.def("pearson", [](const std::vector<double>& t, const std::vector<double>& p) {
    return pearson(t, p);
  });

  py::enum_<OutlierSetting>(m, "OutlierSetting")
      .value("with_outliers", OutlierSetting::with_outliers)
      .value("without_outliers", OutlierSetting::without_outliers);

  py::class_<EvaluationReport>(m, "EvaluationReport")
      .def_readonly("model_kind", &EvaluationReport::model_kind)
      .def_readonly("n_test", &EvaluationReport::n_test)
      .def_readonly("mae", &EvaluationReport::mae_value)
      .def_readonly("rmse", &EvaluationReport::rmse_value)
      .def_readonly("correlation", &EvaluationReport::correlation)
      .def("__repr__", [](const EvaluationReport& r) {
        std::ostringstream out;
        out << "EvaluationReport(" << to_string(r.model_kind) << ", n=" << r.n_test
            << ", mae=" << r.mae_value << ", rmse=" << r.rmse_value
            << ", corr=" << r.correlation << ")";
        return out.str();
      });

  m.def("evaluate",
        [](const RegressionModel& model, const Dataset& test) {
          return evaluate(model, test);
        },
        py::arg("model"), py::arg("test"));
  m.def("collect_predictions",
        [](const RegressionModel& model, const Dataset& test) {
          const PredictionPairs pairs = collect_predictions(model, test);
          return std::make_pair(pairs.truth, pairs.pred);
        },
        py::arg("model"), py::arg("test"));

  py::class_<FeatureImportance>(m, "FeatureImportance")
      .def_readonly("name", &FeatureImportance::name)
      .def_readonly("pct_inc_mse", &FeatureImportance::pct_inc_mse)
      .def_readonly("raw_mean_diff", &FeatureImportance::raw_mean_diff)
      .def_readonly("std_of_diffs", &FeatureImportance::std_of_diffs)
      .def_readonly("normalized", &FeatureImportance::normalized)
      .def_readonly("degenerate", &FeatureImportance::degenerate);

  m.def("permutation_importance",
        [](const RegressionModel& model, const Dataset& train_data, std::uint64_t seed,
           int repeats) {
          const ForestModel* forest = model.forest();
          if (forest == nullptr) {
            throw Error("permutation importance needs a random_forest model");
          }
          ImportanceOptions options;
          options.repeats = repeats;
          return permutation_importance(*forest, train_data, seed, options).entries;
        },
        py::arg("model"), py::arg("train"), py::arg("seed"), py::arg("repeats") = 1);

  py::class_<PartialDependenceCurve>(m, "PartialDependenceCurve")
      .def_readonly("feature", &PartialDependenceCurve::feature)
      .def_readonly("grid", &PartialDependenceCurve::grid)
      .def_readonly("values", &PartialDependenceCurve::values)
      .def_readonly("smoothed", &PartialDependenceCurve::smoothed)
      .def_readonly("n_background", &PartialDependenceCurve::n_background);

  m.def("partial_dependence",
        [](const RegressionModel& model, const Dataset& data, const std::string& feature,
           int quantile_count, int window) {
          GridSpec grid;
          grid.quantile_count = quantile_count;
          return partial_dependence(model, data, feature, grid, window);
        },
        py::arg("model"), py::arg("data"), py::arg("feature"),
        py::arg("quantile_count") = 200, py::arg("window") = 21);
  m.def("smooth_curve",
        [](const std::vector<double>& values, int window) {
          return smooth_curve(values, window);
        },
        py::arg("values"), py::arg("window"));

  py::class_<GeneratorConfig>(m, "GeneratorConfig")
      .def(py::init<>())
      .def_readwrite("n_rows", &GeneratorConfig::n_rows)
      .def_readwrite("n_outliers", &GeneratorConfig::n_outliers)
      .def_readwrite("seed", &GeneratorConfig::seed)
      .def_readwrite("noise_std", &GeneratorConfig::noise_std)
      .def_readwrite("outlier_magnitude", &GeneratorConfig::outlier_magnitude)
      .def_readwrite("linear_only", &GeneratorConfig::linear_only);

  py::class_<GeneratorManifest>(m, "GeneratorManifest")
      .def_readonly("n_rows", &GeneratorManifest::n_rows)
      .def_readonly("outlier_indices", &GeneratorManifest::outlier_indices)
      .def_readonly("linear_only", &GeneratorManifest::linear_only)
      .def_readonly("noise_std", &GeneratorManifest::noise_std)
      .def_property_readonly("raw_weights",
                             [](const GeneratorManifest& m_) {
                               return std::vector<double>(m_.raw_weights.begin(),
                                                          m_.raw_weights.end());
                             })
      .def_readonly("raw_intercept", &GeneratorManifest::raw_intercept)
      .def_readonly("raw_material_nt_correlation",
                    &GeneratorManifest::raw_material_nt_correlation);

  m.def("generate",
        [](const GeneratorConfig& config) { return generate(config); },
        py::arg("config") = GeneratorConfig{});
  m.def("describe", &describe, py::arg("manifest"));

  py::class_<ModelBundle>(m, "ModelBundle")
      .def(py::init<>())
      .def_readwrite("model", &ModelBundle::model)
      .def_readwrite("split_fraction", &ModelBundle::split_fraction)
      .def_readwrite("master_seed", &ModelBundle::master_seed)
      .def_readwrite("setting", &ModelBundle::setting);

  m.def("save_model", &save_model, py::arg("bundle"), py::arg("path"));
  m.def("load_model", &load_model, py::arg("path"));

  m.def("derive_seed",
        [](std::uint64_t master, std::uint64_t stream) {
          return derive_seed(master, stream);
        },
        py::arg("master"), py::arg("stream"));
}
