#pragma once

#include <Eigen/Dense>

#include "sdf/dataset.hpp"

namespace sdf {

enum class KernelKind { gaussian, linear };

struct KernelParams {
  KernelKind kind = KernelKind::gaussian;
  double sigma = 0.0;  // Gaussian width; unused for the linear kind
};

// Sample Pearson correlation between each feature column and the label
// vector. Zero-variance feature columns get weight 0. Requires N >= 2 and
// both classes present; entries are clamped to [-1,1] against roundoff.
Eigen::VectorXd pearson_weights(const Dataset& data);

// D_ij = sqrt(sum_k [w_k (x_ik - x_jk)]^2). Upper triangle computed and
// mirrored; the diagonal is exactly zero.
Eigen::MatrixXd weighted_distance_matrix(const Eigen::MatrixXd& features,
                                         const Eigen::VectorXd& weights);

// Root mean squared pairwise distance,
//   sigma = sqrt( 2/(N(N+1)) * sum_{i<j} D_ij^2 ).
// Throws on an identically zero matrix (the Gaussian kernel would be
// undefined at sigma = 0).
double rmsd_sigma(const Eigen::MatrixXd& distances);

// K_ij = exp(-D_ij^2 / (2 sigma^2)); unit diagonal and symmetry hold exactly
// by construction.
Eigen::MatrixXd gaussian_kernel(const Eigen::MatrixXd& distances, double sigma);

// Gram matrix of plain inner products between sample rows.
Eigen::MatrixXd linear_gram(const Eigen::MatrixXd& features);

}  // namespace sdf
