#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sdf {

// Labeled samples: one row per sample, labels restricted to {-1,+1}.
// Instances are immutable by convention once constructed and safe to share
// across threads.
struct Dataset {
  Eigen::MatrixXd features;                 // N x d
  Eigen::VectorXd labels;                   // length N, entries in {-1,+1}
  std::vector<std::string> feature_names;   // empty, or one name per column

  Eigen::Index n_samples() const { return features.rows(); }
  Eigen::Index n_features() const { return features.cols(); }

  // Throws std::invalid_argument when a structural invariant is broken
  // (empty data, non-finite feature, label outside {-1,+1}, size mismatch).
  void validate() const;
};

// Reads a comma-separated file with a header row. label_column selects the
// class column; every other column must parse as a finite real (decimal
// point, UTF-8, no quoting). The label column must contain exactly two
// distinct values; rows equal to positive_label map to +1, the rest to -1.
// Column order of the remaining columns is preserved.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& positive_label);

// The inverse layout: feature columns first (header names from
// feature_names, or x1..xd), then a final "label" column with values -1/1.
// Reals are printed with shortest round-trip formatting.
std::string to_csv(const Dataset& data);
void save_csv(const Dataset& data, const std::string& path);

// Reads a header-plus-rows CSV in which every column is a feature.
Eigen::MatrixXd load_csv_features(const std::string& path);

// Seed-driven uniform permutation split: ceil(2N/3) rows to train, the rest
// to test. Identical seed gives an identical split. Requires N >= 3.
std::pair<Dataset, Dataset> split_2to1(const Dataset& data, std::uint64_t seed);

// +1 on the closed quadrant {x1 >= 0 and x2 >= 0}, -1 elsewhere.
int indicator(const Eigen::Vector2d& x);

// Signed distance to the quadrant boundary inside [-1,1]^2:
// min(x1,x2) on the closed quadrant, else -sqrt(min(x1,0)^2 + min(x2,0)^2).
double exact_sdf_quadrant(const Eigen::Vector2d& x);

// n i.i.d. uniform points on [-1,1]^2 labeled by indicator().
Dataset gen_uniform_square(std::int64_t n, std::uint64_t seed);

// n uniform points on [-1,1]^2 labeled by the parity of their grid x grid
// cell index (+1 for even parity).
Dataset gen_checkerboard(std::int64_t n, std::int64_t grid, std::uint64_t seed);

// The fixed four-point set {(0,1), (.1,1), (-.1,1)} labeled +1 and (0,-1)
// labeled -1.
Dataset biased_toy();

}  // namespace sdf
