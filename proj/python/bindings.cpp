#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sdf/classifiers.hpp"
#include "sdf/dataset.hpp"
#include "sdf/experiments.hpp"
#include "sdf/metric.hpp"
#include "sdf/rng.hpp"
#include "sdf/solver.hpp"

namespace py = pybind11;

namespace {

sdf::Dataset make_dataset(const Eigen::MatrixXd& features,
                          const Eigen::VectorXd& labels,
                          const std::vector<std::string>& feature_names) {
  sdf::Dataset d{features, labels, feature_names};
  d.validate();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Signed-distance-function classification toolkit";

  py::class_<sdf::Dataset>(m, "Dataset")
      .def(py::init(&make_dataset), py::arg("features"), py::arg("labels"),
           py::arg("feature_names") = std::vector<std::string>{})
      .def_readonly("features", &sdf::Dataset::features)
      .def_readonly("labels", &sdf::Dataset::labels)
      .def_readonly("feature_names", &sdf::Dataset::feature_names)
      .def_property_readonly("n_samples", &sdf::Dataset::n_samples)
      .def_property_readonly("n_features", &sdf::Dataset::n_features)
      .def("__repr__", [](const sdf::Dataset& d) {
        return "Dataset(" + std::to_string(d.n_samples()) + " samples, " +
               std::to_string(d.n_features()) + " features)";
      });

  m.def("load_csv", &sdf::load_csv, py::arg("path"), py::arg("label_column"),
        py::arg("positive_label"));
  m.def("save_csv", &sdf::save_csv, py::arg("data"), py::arg("path"));
  m.def("to_csv", &sdf::to_csv, py::arg("data"));
  m.def("split_2to1", &sdf::split_2to1, py::arg("data"), py::arg("seed"));
  // fixed-size Eigen types stay out of the binding layer (alignment rules)
  m.def(
      "indicator",
      [](const Eigen::VectorXd& x) {
        if (x.size() != 2) throw std::invalid_argument("indicator: expects a 2-d point");
        return sdf::indicator(Eigen::Vector2d(x(0), x(1)));
      },
      py::arg("x"));
  m.def(
      "exact_sdf_quadrant",
      [](const Eigen::VectorXd& x) {
        if (x.size() != 2)
          throw std::invalid_argument("exact_sdf_quadrant: expects a 2-d point");
        return sdf::exact_sdf_quadrant(Eigen::Vector2d(x(0), x(1)));
      },
      py::arg("x"));
  m.def("gen_uniform_square", &sdf::gen_uniform_square, py::arg("n"), py::arg("seed"));
  m.def("gen_checkerboard", &sdf::gen_checkerboard, py::arg("n"), py::arg("grid"),
        py::arg("seed"));
  m.def("biased_toy", &sdf::biased_toy);

  m.def("pearson_weights", &sdf::pearson_weights, py::arg("data"));
  m.def("weighted_distance_matrix", &sdf::weighted_distance_matrix,
        py::arg("features"), py::arg("weights"));
  m.def("rmsd_sigma", &sdf::rmsd_sigma, py::arg("distances"));
  m.def("gaussian_kernel", &sdf::gaussian_kernel, py::arg("distances"), py::arg("sigma"));
  m.def("linear_gram", &sdf::linear_gram, py::arg("features"));
  m.def("solve_regularized", &sdf::solve_regularized, py::arg("kernel"),
        py::arg("targets"), py::arg("gamma"));
  m.def("estimate_b", &sdf::estimate_b, py::arg("train"), py::arg("distances"));

  py::enum_<sdf::KernelKind>(m, "KernelKind")
      .value("gaussian", sdf::KernelKind::gaussian)
      .value("linear", sdf::KernelKind::linear);
  py::enum_<sdf::TargetKind>(m, "TargetKind")
      .value("sdf", sdf::TargetKind::sdf)
      .value("indicator", sdf::TargetKind::indicator);

  py::class_<sdf::KernelParams>(m, "KernelParams")
      .def_readonly("kind", &sdf::KernelParams::kind)
      .def_readonly("sigma", &sdf::KernelParams::sigma);

  py::class_<sdf::SdfModel>(m, "SdfModel")
      .def_readonly("train_features", &sdf::SdfModel::train_features)
      .def_readonly("weights", &sdf::SdfModel::weights)
      .def_readonly("params", &sdf::SdfModel::params)
      .def_readonly("alpha", &sdf::SdfModel::alpha)
      .def_readonly("gamma", &sdf::SdfModel::gamma)
      .def_readonly("target_kind", &sdf::SdfModel::target_kind);

  m.def("train_sdf", &sdf::train_sdf, py::arg("train"), py::arg("gamma") = 1e-7);
  m.def("train_sdf_linear", &sdf::train_sdf_linear, py::arg("train"),
        py::arg("gamma") = 1e-7);
  m.def("train_if_regression", &sdf::train_if_regression, py::arg("train"),
        py::arg("gamma") = 1e-7);
  m.def("train_ksvm", &sdf::train_ksvm, py::arg("train"), py::arg("gamma") = 1e-7);
  m.def(
      "predict",
      [](const sdf::SdfModel& model, const Eigen::VectorXd& x) {
        const auto p = sdf::predict(model, x);
        return py::make_tuple(p.decision_value, p.label);
      },
      py::arg("model"), py::arg("x"));
  m.def("decision_values", &sdf::decision_values, py::arg("model"), py::arg("queries"));
  m.def("save_model", &sdf::save_model, py::arg("model"), py::arg("path"));
  m.def("load_model", &sdf::load_model, py::arg("path"));

  py::class_<sdf::KnnModel>(m, "KnnModel")
      .def_readonly("k", &sdf::KnnModel::k)
      .def_readonly("metric_weights", &sdf::KnnModel::metric_weights);
  m.def("make_knn",
        py::overload_cast<const sdf::Dataset&, int>(&sdf::make_knn),
        py::arg("train"), py::arg("k"));
  m.def("make_knn",
        py::overload_cast<const sdf::Dataset&, int, const Eigen::VectorXd&>(
            &sdf::make_knn),
        py::arg("train"), py::arg("k"), py::arg("metric_weights"));
  m.def("knn_predict", &sdf::knn_predict, py::arg("model"), py::arg("x"));

  py::class_<sdf::LinearSeparator>(m, "LinearSeparator")
      .def_readonly("w", &sdf::LinearSeparator::w)
      .def_readonly("bias", &sdf::LinearSeparator::bias);
  m.def("train_psvm_linear", &sdf::train_psvm_linear, py::arg("train"), py::arg("nu"));
  m.def("train_lsvm_linear", &sdf::train_lsvm_linear, py::arg("train"), py::arg("nu"));
  m.def("separator_offset", &sdf::separator_offset, py::arg("separator"));
  m.def("decision_zero_on_axis", &sdf::decision_zero_on_axis, py::arg("model"));

  py::class_<sdf::TrialStats>(m, "TrialStats")
      .def_readonly("mean", &sdf::TrialStats::mean)
      .def_readonly("std", &sdf::TrialStats::stddev)
      .def_readonly("min", &sdf::TrialStats::min)
      .def_readonly("q1", &sdf::TrialStats::q1)
      .def_readonly("median", &sdf::TrialStats::median)
      .def_readonly("q3", &sdf::TrialStats::q3)
      .def_readonly("max", &sdf::TrialStats::max)
      .def_readonly("per_trial", &sdf::TrialStats::per_trial);
  m.def("summarize", &sdf::summarize, py::arg("values"));

  py::class_<sdf::CornerReport>(m, "CornerReport")
      .def_readonly("n_points", &sdf::CornerReport::n_points)
      .def_readonly("n_trials", &sdf::CornerReport::n_trials)
      .def_readonly("seed", &sdf::CornerReport::seed)
      .def_readonly("gamma", &sdf::CornerReport::gamma)
      .def_readonly("sdf_error", &sdf::CornerReport::sdf_error)
      .def_readonly("if_error", &sdf::CornerReport::if_error)
      .def("to_json", [](const sdf::CornerReport& r) { return sdf::to_json(r); })
      .def("per_trial_csv",
           [](const sdf::CornerReport& r) { return sdf::per_trial_csv(r); });

  py::class_<sdf::BenchmarkReport>(m, "BenchmarkReport")
      .def_readonly("dataset_name", &sdf::BenchmarkReport::dataset_name)
      .def_readonly("n_trials", &sdf::BenchmarkReport::n_trials)
      .def_readonly("seed", &sdf::BenchmarkReport::seed)
      .def_readonly("gamma", &sdf::BenchmarkReport::gamma)
      .def_readonly("methods", &sdf::BenchmarkReport::methods)
      .def_readonly("knn_best_k", &sdf::BenchmarkReport::knn_best_k)
      .def_readonly("knn_mean_by_k", &sdf::BenchmarkReport::knn_mean_by_k)
      .def_readonly("per_method", &sdf::BenchmarkReport::per_method)
      .def_readonly("resampled_splits", &sdf::BenchmarkReport::resampled_splits)
      .def_readonly("sharing_checks_passed", &sdf::BenchmarkReport::sharing_checks_passed)
      .def("to_json", [](const sdf::BenchmarkReport& r) { return sdf::to_json(r); })
      .def("per_trial_csv",
           [](const sdf::BenchmarkReport& r) { return sdf::per_trial_csv(r); });

  m.def(
      "run_corner_experiment",
      [](std::int64_t n_points, std::int64_t n_trials, std::uint64_t seed,
         double gamma, int threads) {
        sdf::RunOptions opt;
        opt.threads = threads;
        return sdf::run_corner_experiment(n_points, n_trials, seed, gamma, opt);
      },
      py::arg("n_points"), py::arg("n_trials"), py::arg("seed"),
      py::arg("gamma") = 1e-7, py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());
  m.def("run_biased_experiment", &sdf::run_biased_experiment);
  m.def(
      "run_benchmark",
      [](const sdf::Dataset& data, std::int64_t n_trials, std::uint64_t seed,
         double gamma, int threads, const std::string& dataset_name) {
        sdf::RunOptions opt;
        opt.threads = threads;
        return sdf::run_benchmark(data, n_trials, seed, gamma, opt, dataset_name);
      },
      py::arg("data"), py::arg("n_trials"), py::arg("seed"),
      py::arg("gamma") = 1e-7, py::arg("threads") = 0,
      py::arg("dataset_name") = "dataset",
      py::call_guard<py::gil_scoped_release>());
}
