#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sdf/classifiers.hpp"
#include "sdf/dataset.hpp"

namespace sdf {

// Mean, sample standard deviation (N-1 denominator, 0 for a single value)
// and five-number summary with linear-interpolation quantiles
// (index h = (n-1)p, interpolating between floor(h) and floor(h)+1).
struct TrialStats {
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  std::vector<double> per_trial;
};

TrialStats summarize(const std::vector<double>& values);

struct RunOptions {
  int threads = 0;  // 0 = hardware concurrency
  std::function<void(std::int64_t done, std::int64_t total)> progress;
};

// Corner-of-the-quadrant local error study. Per trial: n_points uniform on
// [-1,1]^2, unweighted distance matrix, Gaussian kernel with bandwidth
// 2 * RMSD * n^(-1/3) (the width has to shrink with the sample count for the
// corner error to converge), one regularized solve against exact signed
// distance targets and one against indicator targets (the kernel matrix is
// shared bit-for-bit), then record the magnitude of the fitted decision
// value at the corner (0,0).
struct CornerReport {
  std::int64_t n_points = 0;
  std::int64_t n_trials = 0;
  std::uint64_t seed = 0;
  double gamma = 0.0;
  TrialStats sdf_error;
  TrialStats if_error;
};

CornerReport run_corner_experiment(std::int64_t n_points, std::int64_t n_trials,
                                   std::uint64_t seed, double gamma = 1e-7,
                                   const RunOptions& options = {});

// Separator offsets on the four-point biased toy set: the linear SDF
// classifier (gamma = 1e-7, offset by bisection along x1 = 0), the Proximal
// SVM (nu = 1/2) and the Lagrangian SVM (nu = 1).
std::map<std::string, double> run_biased_experiment();

struct BenchmarkReport {
  std::string dataset_name;
  std::int64_t n_trials = 0;
  std::uint64_t seed = 0;
  double gamma = 0.0;
  std::vector<std::string> methods;      // methods evaluated, report order
  int knn_best_k = 1;
  std::vector<double> knn_mean_by_k;     // mean test error for k = 1..k_max
  std::map<std::string, TrialStats> per_method;  // knn entry is the best k
  std::int64_t resampled_splits = 0;     // single-class train splits redrawn
  bool sharing_checks_passed = false;
};

// 2:1-split Monte Carlo benchmark. Per trial every method shares one split;
// SDF and the SVM stand-in share one weighted kernel matrix; the SVM
// stand-in and RBFN share one RMSD sigma (all verified by recomputation).
// KNN is evaluated for k = 1..min(10, train size); the reported KNN column
// keeps the k with the smallest mean test error (ties to the smallest k).
BenchmarkReport run_benchmark(const Dataset& data, std::int64_t n_trials,
                              std::uint64_t seed, double gamma,
                              const RunOptions& options = {},
                              const std::string& dataset_name = "dataset");

// One JSON document per run: config, per-trial arrays, summaries.
std::string to_json(const CornerReport& report);
std::string to_json(const BenchmarkReport& report);
std::string biased_offsets_json(const std::map<std::string, double>& offsets);

// Flat per-trial error table, columns trial,method,error.
std::string per_trial_csv(const CornerReport& report);
std::string per_trial_csv(const BenchmarkReport& report);

}  // namespace sdf
