#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "sdf/classifiers.hpp"
#include "sdf/dataset.hpp"
#include "sdf/experiments.hpp"

namespace {

// Reports are written whole through a temp file and a rename, so an
// interrupted run never leaves a truncated file behind.
void write_output(const std::string& out_path, const std::string& body) {
  if (out_path.empty() || out_path == "-") {
    std::cout << body;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(out_path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << body;
  }
  fs::rename(tmp, target);
}

sdf::RunOptions options_for(int threads) {
  sdf::RunOptions opt;
  opt.threads = threads;
  opt.progress = [](std::int64_t done, std::int64_t total) {
    std::fprintf(stderr, "trial %lld/%lld\n", static_cast<long long>(done),
                 static_cast<long long>(total));
  };
  return opt;
}

std::string csv_path_for(const std::string& out_path) {
  const auto dot = out_path.rfind('.');
  if (dot == std::string::npos) return out_path + ".trials.csv";
  return out_path.substr(0, dot) + ".trials.csv";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed-distance-function classification toolkit"};
  app.require_subcommand(1);
  // shared flags may appear after the subcommand name
  app.fallthrough();

  std::uint64_t seed = 42;
  double gamma = 1e-7;
  std::int64_t trials = 100;
  int threads = 0;
  std::string out_path;
  app.add_option("--seed", seed, "RNG seed")->capture_default_str();
  app.add_option("--gamma", gamma, "regularization parameter")->capture_default_str();
  app.add_option("--trials", trials, "number of Monte Carlo trials")->capture_default_str();
  app.add_option("--threads", threads, "worker threads (0 = auto)")->capture_default_str();
  app.add_option("--out", out_path, "output path (default: stdout)");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset as CSV");
  std::string gen_kind = "uniform-square";
  std::int64_t gen_n = 1000;
  std::int64_t gen_grid = 4;
  gen->add_option("--kind", gen_kind, "uniform-square | checkerboard | biased-toy")
      ->check(CLI::IsMember({"uniform-square", "checkerboard", "biased-toy"}))
      ->capture_default_str();
  gen->add_option("--n", gen_n, "number of samples")->capture_default_str();
  gen->add_option("--grid", gen_grid, "checkerboard cells per side")->capture_default_str();

  // train
  auto* train_cmd = app.add_subcommand("train", "train a model from a CSV file");
  std::string data_path, label_column = "label", positive_label = "1";
  std::string method = "sdf";
  train_cmd->add_option("--data", data_path, "training CSV")->required();
  train_cmd->add_option("--label-column", label_column, "label column name")
      ->capture_default_str();
  train_cmd->add_option("--positive", positive_label, "label value mapped to +1")
      ->capture_default_str();
  train_cmd->add_option("--method", method,
                        "sdf | sdf-linear | if-regression | ksvm")
      ->check(CLI::IsMember({"sdf", "sdf-linear", "if-regression", "ksvm"}))
      ->capture_default_str();

  // predict
  auto* predict_cmd = app.add_subcommand("predict", "apply a saved model to a CSV file");
  std::string model_path;
  std::string predict_data, predict_label_column, predict_positive;
  predict_cmd->add_option("--model", model_path, "model file from 'train'")->required();
  predict_cmd->add_option("--data", predict_data, "query CSV")->required();
  predict_cmd->add_option("--label-column", predict_label_column,
                          "label column to strip and score against (optional)");
  predict_cmd->add_option("--positive", predict_positive,
                          "label value mapped to +1 when scoring");

  // corner
  auto* corner = app.add_subcommand("corner", "corner-error experiment");
  std::int64_t corner_points = 100;
  corner->add_option("--points", corner_points, "training points per trial")
      ->capture_default_str();

  // biased
  auto* biased = app.add_subcommand("biased", "biased-distribution experiment");

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "2:1-split Monte Carlo benchmark");
  std::string bench_data, bench_label_column = "label", bench_positive = "1";
  std::string bench_csv;
  bench->add_option("--data", bench_data, "dataset CSV")->required();
  bench->add_option("--label-column", bench_label_column, "label column name")
      ->capture_default_str();
  bench->add_option("--positive", bench_positive, "label value mapped to +1")
      ->capture_default_str();
  bench->add_option("--trial-csv", bench_csv,
                    "also write per-trial errors to this CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the usage error
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      sdf::Dataset data;
      if (gen_kind == "uniform-square") data = sdf::gen_uniform_square(gen_n, seed);
      else if (gen_kind == "checkerboard") data = sdf::gen_checkerboard(gen_n, gen_grid, seed);
      else data = sdf::biased_toy();
      write_output(out_path, sdf::to_csv(data));
    } else if (train_cmd->parsed()) {
      const auto data = sdf::load_csv(data_path, label_column, positive_label);
      sdf::SdfModel model;
      if (method == "sdf") model = sdf::train_sdf(data, gamma);
      else if (method == "sdf-linear") model = sdf::train_sdf_linear(data, gamma);
      else if (method == "if-regression") model = sdf::train_if_regression(data, gamma);
      else model = sdf::train_ksvm(data, gamma);
      if (out_path.empty())
        throw std::runtime_error("train: --out <model file> is required");
      sdf::save_model(model, out_path);
      std::cerr << "trained " << method << " on " << data.n_samples() << " samples, "
                << data.n_features() << " features\n";
    } else if (predict_cmd->parsed()) {
      const auto model = sdf::load_model(model_path);
      Eigen::MatrixXd queries;
      Eigen::VectorXd truth;
      bool scored = !predict_label_column.empty();
      if (scored) {
        const auto data = sdf::load_csv(predict_data, predict_label_column,
                                        predict_positive);
        queries = data.features;
        truth = data.labels;
      } else {
        queries = sdf::load_csv_features(predict_data);
      }
      const Eigen::VectorXd values = sdf::decision_values(model, queries);
      std::string body = "row,decision_value,label\n";
      for (Eigen::Index i = 0; i < values.size(); ++i) {
        body += std::to_string(i) + ",";
        char buf[32];
        auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), values(i));
        body.append(buf, p);
        body += values(i) >= 0 ? ",1\n" : ",-1\n";
      }
      write_output(out_path, body);
      if (scored) {
        Eigen::Index wrong = 0;
        for (Eigen::Index i = 0; i < values.size(); ++i)
          if ((values(i) >= 0 ? 1 : -1) != truth(i)) ++wrong;
        std::cerr << "misclassification rate: "
                  << static_cast<double>(wrong) / static_cast<double>(values.size())
                  << "\n";
      }
    } else if (corner->parsed()) {
      const auto report =
          sdf::run_corner_experiment(corner_points, trials, seed, gamma,
                                     options_for(threads));
      write_output(out_path, sdf::to_json(report));
      if (!out_path.empty() && out_path != "-")
        write_output(csv_path_for(out_path), sdf::per_trial_csv(report));
    } else if (biased->parsed()) {
      const auto offsets = sdf::run_biased_experiment();
      write_output(out_path, sdf::biased_offsets_json(offsets));
    } else if (bench->parsed()) {
      const auto data = sdf::load_csv(bench_data, bench_label_column, bench_positive);
      const auto report = sdf::run_benchmark(
          data, trials, seed, gamma, options_for(threads),
          std::filesystem::path(bench_data).stem().string());
      write_output(out_path, sdf::to_json(report));
      if (!bench_csv.empty())
        write_output(bench_csv, sdf::per_trial_csv(report));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
