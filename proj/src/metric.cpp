#include "sdf/metric.hpp"

#include <cmath>
#include <stdexcept>

namespace sdf {

Eigen::VectorXd pearson_weights(const Dataset& data) {
  data.validate();
  const Eigen::Index n = data.n_samples();
  if (n < 2) throw std::invalid_argument("pearson_weights: needs at least 2 samples");

  const Eigen::VectorXd y = data.labels.array() - data.labels.mean();
  const double y_ss = y.squaredNorm();
  if (y_ss == 0.0)
    throw std::invalid_argument("pearson_weights: single-class dataset");

  Eigen::VectorXd w(data.n_features());
  for (Eigen::Index k = 0; k < data.n_features(); ++k) {
    const Eigen::VectorXd x =
        data.features.col(k).array() - data.features.col(k).mean();
    const double x_ss = x.squaredNorm();
    if (x_ss == 0.0) {
      w(k) = 0.0;  // zero-variance feature carries no signal
      continue;
    }
    w(k) = std::clamp(x.dot(y) / std::sqrt(x_ss * y_ss), -1.0, 1.0);
  }
  return w;
}

Eigen::MatrixXd weighted_distance_matrix(const Eigen::MatrixXd& features,
                                         const Eigen::VectorXd& weights) {
  if (weights.size() != features.cols())
    throw std::invalid_argument("weighted_distance_matrix: weight count " +
                                std::to_string(weights.size()) +
                                " does not match feature count " +
                                std::to_string(features.cols()));
  const Eigen::Index n = features.rows();
  const Eigen::MatrixXd scaled = features * weights.asDiagonal();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (scaled.row(i) - scaled.row(j)).norm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

double rmsd_sigma(const Eigen::MatrixXd& distances) {
  const Eigen::Index n = distances.rows();
  if (n < 2 || distances.cols() != n)
    throw std::invalid_argument("rmsd_sigma: needs a square matrix of order >= 2");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) sum += distances(i, j) * distances(i, j);
  if (sum == 0.0)
    throw std::runtime_error("rmsd_sigma: degenerate metric (all pairwise distances are zero)");
  const double nn = static_cast<double>(n);
  return std::sqrt(2.0 / (nn * (nn + 1.0)) * sum);
}

Eigen::MatrixXd gaussian_kernel(const Eigen::MatrixXd& distances, double sigma) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("gaussian_kernel: sigma must be positive");
  const Eigen::Index n = distances.rows();
  if (distances.cols() != n)
    throw std::invalid_argument("gaussian_kernel: distance matrix must be square");
  const double inv = 1.0 / (2.0 * sigma * sigma);
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = std::exp(-distances(i, j) * distances(i, j) * inv);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

Eigen::MatrixXd linear_gram(const Eigen::MatrixXd& features) {
  const Eigen::Index n = features.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = features.row(i).squaredNorm();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = features.row(i).dot(features.row(j));
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

}  // namespace sdf
