#include "sdf/solver.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sdf {

namespace {

// Locates the first leading principal minor that fails to be positive, for
// the error message when the factorization breaks down.
Eigen::Index failing_minor(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double diag = a(j, j) - l.row(j).head(j).squaredNorm();
    if (!(diag > 0.0) || !std::isfinite(diag)) return j + 1;
    diag = std::sqrt(diag);
    l(j, j) = diag;
    for (Eigen::Index i = j + 1; i < n; ++i)
      l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / diag;
  }
  return 0;
}

}  // namespace

Eigen::VectorXd solve_regularized(const Eigen::MatrixXd& kernel,
                                  const Eigen::VectorXd& targets,
                                  double gamma) {
  const Eigen::Index n = kernel.rows();
  if (kernel.cols() != n)
    throw std::invalid_argument("solve_regularized: kernel matrix must be square");
  if (targets.size() != n)
    throw std::invalid_argument("solve_regularized: target length " +
                                std::to_string(targets.size()) +
                                " does not match system order " + std::to_string(n));
  if (!(gamma > 0.0))
    throw std::invalid_argument("solve_regularized: gamma must be positive");

  Eigen::MatrixXd shifted = kernel;
  shifted.diagonal().array() += static_cast<double>(n) * gamma;

  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error(
        "solve_regularized: Cholesky factorization failed; leading minor of order " +
        std::to_string(failing_minor(shifted)) +
        " is not positive definite (kernel violates PSD beyond tolerance)");
  }
  return llt.solve(targets);
}

}  // namespace sdf
