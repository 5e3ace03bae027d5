#pragma once

#include <Eigen/Dense>

namespace sdf {

// Solves (K + N*gamma*I) alpha = b through a Cholesky factorization of the
// shifted matrix. K must be symmetric positive semidefinite and gamma > 0,
// which makes the system strictly positive definite. Deterministic for
// identical inputs. Throws std::invalid_argument on dimension mismatch or
// nonpositive gamma, std::runtime_error (naming the offending leading minor)
// when the factorization fails.
Eigen::VectorXd solve_regularized(const Eigen::MatrixXd& kernel,
                                  const Eigen::VectorXd& targets,
                                  double gamma);

}  // namespace sdf
