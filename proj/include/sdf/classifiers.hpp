#pragma once

#include <Eigen/Dense>
#include <string>

#include "sdf/dataset.hpp"
#include "sdf/metric.hpp"

namespace sdf {

enum class TargetKind { sdf, indicator };

// A trained kernel regression classifier. The decision function is
//   f(x) = sum_i alpha_i K(x, x_i)
// with K either the Gaussian kernel on the weighted metric or the plain
// inner product. target_kind records which targets produced alpha. Immutable
// after training; prediction is const and thread-safe.
struct SdfModel {
  Eigen::MatrixXd train_features;  // N x d
  Eigen::VectorXd weights;         // feature weights used by the metric
  KernelParams params;
  Eigen::VectorXd alpha;
  double gamma = 0.0;
  TargetKind target_kind = TargetKind::sdf;
};

struct Prediction {
  double decision_value = 0.0;
  int label = 1;  // sign of the decision value, 0 mapped to +1
};

// Hyperplane w.x + bias = 0. Construction fails if w is identically zero.
struct LinearSeparator {
  Eigen::VectorXd w;
  double bias = 0.0;
};

struct KnnModel {
  Dataset train;
  int k = 1;
  Eigen::VectorXd metric_weights;
};

// Signed distance targets: b_i = y_i * min_{j: y_j != y_i} D_ij, the signed
// projection onto the data of opposite type. D is the pairwise distance
// matrix over the training rows. Throws on a single-class dataset or when a
// cross-class pair sits at distance zero.
Eigen::VectorXd estimate_b(const Dataset& train, const Eigen::MatrixXd& distances);

// Full Gaussian-kernel training pipeline: Pearson weights, weighted distance
// matrix, RMSD bandwidth, Gaussian kernel, signed distance targets,
// regularized solve.
SdfModel train_sdf(const Dataset& train, double gamma);

// Linear variant: inner-product Gram on the raw features, targets from
// unweighted Euclidean distances. The decision function has no bias term,
// so it always vanishes at the origin.
SdfModel train_sdf_linear(const Dataset& train, double gamma);

// Same pipeline as train_sdf with the targets replaced by the +-1 labels.
// Doubles as the RBFN baseline (Gaussian units at every training point,
// shared RMSD width, least-squares output weights).
SdfModel train_if_regression(const Dataset& train, double gamma);

// Least-squares kernel machine on +-1 targets, reported as the "SVM"
// baseline. Shares the weighted kernel matrix with train_sdf on the same
// training set.
SdfModel train_ksvm(const Dataset& train, double gamma);

Prediction predict(const SdfModel& model, const Eigen::VectorXd& x);

// Decision values for a batch of query rows.
Eigen::VectorXd decision_values(const SdfModel& model, const Eigen::MatrixXd& queries);

KnnModel make_knn(const Dataset& train, int k);
KnnModel make_knn(const Dataset& train, int k, const Eigen::VectorXd& metric_weights);

// Majority label among the k nearest training points under the weighted
// metric. Ties fall back to the label of the single nearest neighbor;
// equidistant neighbors order by training index.
int knn_predict(const KnnModel& model, const Eigen::VectorXd& x);

// Proximal SVM: minimizes 1/2 (|w|^2 + bias^2) + nu/2 sum_i (1 - y_i (w.x_i + bias))^2
// by one symmetric positive definite solve of the normal equations.
LinearSeparator train_psvm_linear(const Dataset& train, double nu);

// Lagrangian SVM: minimizes 1/2 (|w|^2 + bias^2) + nu/2 sum_i max(0, 1 - y_i (w.x_i + bias))^2
// by the fixed-point iteration on the dual, stopping when successive dual
// vectors differ by <= 1e-10 in the max norm (cap 10^4 iterations).
LinearSeparator train_lsvm_linear(const Dataset& train, double nu);

// x2 coordinate of the separating line along x1 = 0, i.e. -bias / w[1].
// Only meaningful for 2-d toys; requires w[1] != 0.
double separator_offset(const LinearSeparator& sep);

// Root of t -> decision value at (0, t) on [-1, 1] by bisection to 1e-12.
// Requires a sign change over the interval.
double decision_zero_on_axis(const SdfModel& model);

// Flat self-describing model file (format_version field included).
// save/load round-trips reproduce decision values bit-identically.
void save_model(const SdfModel& model, const std::string& path);
SdfModel load_model(const std::string& path);

}  // namespace sdf
