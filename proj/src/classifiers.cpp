#include "sdf/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "sdf/solver.hpp"

namespace sdf {

namespace {

using nlohmann::json;

void require_two_classes(const Dataset& data, const char* who) {
  const bool has_pos = (data.labels.array() > 0).any();
  const bool has_neg = (data.labels.array() < 0).any();
  if (!has_pos || !has_neg)
    throw std::invalid_argument(std::string(who) + ": single-class dataset");
}

// Squared distance between a query and a stored training row under the
// model's feature weights, evaluated with the same arithmetic as training.
double weighted_sq_distance(const Eigen::MatrixXd& train, Eigen::Index row,
                            const Eigen::VectorXd& weights,
                            const Eigen::VectorXd& x) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < weights.size(); ++k) {
    const double t = weights(k) * (x(k) - train(row, k));
    s += t * t;
  }
  return s;
}

double decision_at(const SdfModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.train_features.cols())
    throw std::invalid_argument("predict: query has " + std::to_string(x.size()) +
                                " features, model expects " +
                                std::to_string(model.train_features.cols()));
  const Eigen::Index n = model.train_features.rows();
  double s = 0.0;
  if (model.params.kind == KernelKind::gaussian) {
    const double inv = 1.0 / (2.0 * model.params.sigma * model.params.sigma);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d2 = weighted_sq_distance(model.train_features, i, model.weights, x);
      s += model.alpha(i) * std::exp(-d2 * inv);
    }
  } else {
    for (Eigen::Index i = 0; i < n; ++i)
      s += model.alpha(i) * model.train_features.row(i).dot(x);
  }
  return s;
}

SdfModel train_gaussian(const Dataset& train, double gamma, TargetKind kind) {
  train.validate();
  if (train.n_samples() < 2)
    throw std::invalid_argument("train: needs at least 2 samples");
  require_two_classes(train, "train");

  SdfModel model;
  model.weights = pearson_weights(train);
  const Eigen::MatrixXd distances =
      weighted_distance_matrix(train.features, model.weights);
  model.params.kind = KernelKind::gaussian;
  model.params.sigma = rmsd_sigma(distances);
  const Eigen::MatrixXd kernel = gaussian_kernel(distances, model.params.sigma);

  Eigen::VectorXd targets;
  if (kind == TargetKind::sdf) {
    targets = estimate_b(train, distances);
    for (Eigen::Index i = 0; i < targets.size(); ++i) {
      if (targets(i) * train.labels(i) <= 0.0)
        throw std::logic_error("train_sdf: target sign disagrees with label");
    }
  } else {
    targets = train.labels;
  }

  model.alpha = solve_regularized(kernel, targets, gamma);
  model.train_features = train.features;
  model.gamma = gamma;
  model.target_kind = kind;
  return model;
}

const char* kind_name(KernelKind k) {
  return k == KernelKind::gaussian ? "gaussian" : "linear";
}

const char* target_name(TargetKind t) {
  return t == TargetKind::sdf ? "sdf" : "indicator";
}

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Eigen::VectorXd vector_from_json(const json& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  Eigen::Index i = 0;
  for (const auto& x : a) v(i++) = x.get<double>();
  return v;
}

}  // namespace

Eigen::VectorXd estimate_b(const Dataset& train, const Eigen::MatrixXd& distances) {
  train.validate();
  require_two_classes(train, "estimate_b");
  const Eigen::Index n = train.n_samples();
  if (distances.rows() != n || distances.cols() != n)
    throw std::invalid_argument("estimate_b: distance matrix order does not match dataset");

  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (train.labels(j) != train.labels(i) && distances(i, j) < nearest)
        nearest = distances(i, j);
    }
    if (nearest == 0.0)
      throw std::runtime_error(
          "estimate_b: contradictory duplicate samples (opposite labels at distance 0, row " +
          std::to_string(i) + ")");
    b(i) = train.labels(i) * nearest;
  }
  return b;
}

SdfModel train_sdf(const Dataset& train, double gamma) {
  return train_gaussian(train, gamma, TargetKind::sdf);
}

SdfModel train_if_regression(const Dataset& train, double gamma) {
  return train_gaussian(train, gamma, TargetKind::indicator);
}

SdfModel train_ksvm(const Dataset& train, double gamma) {
  return train_if_regression(train, gamma);
}

SdfModel train_sdf_linear(const Dataset& train, double gamma) {
  train.validate();
  if (train.n_samples() < 2)
    throw std::invalid_argument("train_sdf_linear: needs at least 2 samples");
  require_two_classes(train, "train_sdf_linear");

  SdfModel model;
  model.weights = Eigen::VectorXd::Ones(train.n_features());
  const Eigen::MatrixXd distances =
      weighted_distance_matrix(train.features, model.weights);
  const Eigen::MatrixXd kernel = linear_gram(train.features);
  const Eigen::VectorXd targets = estimate_b(train, distances);

  model.params.kind = KernelKind::linear;
  model.params.sigma = 0.0;
  model.alpha = solve_regularized(kernel, targets, gamma);
  model.train_features = train.features;
  model.gamma = gamma;
  model.target_kind = TargetKind::sdf;
  return model;
}

Prediction predict(const SdfModel& model, const Eigen::VectorXd& x) {
  const double value = decision_at(model, x);
  return {value, value >= 0.0 ? 1 : -1};
}

Eigen::VectorXd decision_values(const SdfModel& model, const Eigen::MatrixXd& queries) {
  Eigen::VectorXd out(queries.rows());
  for (Eigen::Index i = 0; i < queries.rows(); ++i)
    out(i) = decision_at(model, queries.row(i).transpose());
  return out;
}

KnnModel make_knn(const Dataset& train, int k) {
  return make_knn(train, k, Eigen::VectorXd::Ones(train.n_features()));
}

KnnModel make_knn(const Dataset& train, int k, const Eigen::VectorXd& metric_weights) {
  train.validate();
  if (k < 1 || k > train.n_samples())
    throw std::invalid_argument("make_knn: k must lie in [1, N]");
  if (metric_weights.size() != train.n_features())
    throw std::invalid_argument("make_knn: weight count does not match features");
  return {train, k, metric_weights};
}

int knn_predict(const KnnModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.train.n_features())
    throw std::invalid_argument("knn_predict: query dimension mismatch");
  const Eigen::Index n = model.train.n_samples();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::vector<double> dist(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    dist[static_cast<std::size_t>(i)] =
        weighted_sq_distance(model.train.features, i, model.metric_weights, x);
  // equidistant neighbors order by training index
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return dist[static_cast<std::size_t>(a)] < dist[static_cast<std::size_t>(b)];
  });
  double vote = 0.0;
  for (int i = 0; i < model.k; ++i) vote += model.train.labels(order[static_cast<std::size_t>(i)]);
  if (vote > 0) return 1;
  if (vote < 0) return -1;
  return model.train.labels(order[0]) > 0 ? 1 : -1;
}

namespace {

LinearSeparator separator_from(const Eigen::VectorXd& theta, Eigen::Index d) {
  LinearSeparator sep;
  sep.w = theta.head(d);
  sep.bias = theta(d);
  if (sep.w.lpNorm<Eigen::Infinity>() == 0.0)
    throw std::runtime_error("linear separator is degenerate (w = 0)");
  return sep;
}

Eigen::MatrixXd homogeneous(const Eigen::MatrixXd& features) {
  Eigen::MatrixXd z(features.rows(), features.cols() + 1);
  z.leftCols(features.cols()) = features;
  z.col(features.cols()).setOnes();
  return z;
}

}  // namespace

LinearSeparator train_psvm_linear(const Dataset& train, double nu) {
  train.validate();
  require_two_classes(train, "train_psvm_linear");
  if (!(nu > 0.0)) throw std::invalid_argument("train_psvm_linear: nu must be positive");

  const Eigen::Index d = train.n_features();
  const Eigen::MatrixXd z = homogeneous(train.features);
  // stationarity of 1/2|theta|^2 + nu/2 |y - Z theta|^2:
  //   (Z'Z + I/nu) theta = Z'y
  Eigen::MatrixXd a = z.transpose() * z;
  a.diagonal().array() += 1.0 / nu;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("train_psvm_linear: singular normal equations");
  const Eigen::VectorXd theta = llt.solve(z.transpose() * train.labels);
  return separator_from(theta, d);
}

LinearSeparator train_lsvm_linear(const Dataset& train, double nu) {
  train.validate();
  require_two_classes(train, "train_lsvm_linear");
  if (!(nu > 0.0)) throw std::invalid_argument("train_lsvm_linear: nu must be positive");

  const Eigen::Index n = train.n_samples();
  const Eigen::Index d = train.n_features();
  const Eigen::MatrixXd h = train.labels.asDiagonal() * homogeneous(train.features);
  Eigen::MatrixXd q = h * h.transpose();
  q.diagonal().array() += 1.0 / nu;
  const Eigen::LLT<Eigen::MatrixXd> llt(q);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("train_lsvm_linear: dual matrix factorization failed");

  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const double step = 1.9 / nu;  // convergence requires 0 < step < 2/nu
  Eigen::VectorXd u = llt.solve(ones);
  const int max_iterations = 10000;
  double delta = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iterations; ++it) {
    const Eigen::VectorXd residual = q * u - ones;
    const Eigen::VectorXd next =
        llt.solve(ones + (residual - step * u).cwiseMax(0.0));
    delta = (next - u).lpNorm<Eigen::Infinity>();
    u = next;
    if (delta <= 1e-10) break;
  }
  if (delta > 1e-10) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", delta);
    throw std::runtime_error(
        "train_lsvm_linear: fixed-point iteration did not converge; final"
        " step size " + std::string(buf));
  }

  const Eigen::VectorXd theta = h.transpose() * u;
  return separator_from(theta, d);
}

double separator_offset(const LinearSeparator& sep) {
  if (sep.w.size() != 2)
    throw std::invalid_argument("separator_offset: defined for 2-d separators");
  if (sep.w(1) == 0.0)
    throw std::runtime_error("separator_offset: separator parallel to the x2 axis");
  return -sep.bias / sep.w(1);
}

double decision_zero_on_axis(const SdfModel& model) {
  if (model.train_features.cols() != 2)
    throw std::invalid_argument("decision_zero_on_axis: defined for 2-d models");
  const auto f = [&](double t) {
    return decision_at(model, Eigen::Vector2d{0.0, t});
  };
  double lo = -1.0, hi = 1.0;
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw std::runtime_error("decision_zero_on_axis: no sign change on [-1,1]");
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void save_model(const SdfModel& model, const std::string& path) {
  json doc;
  doc["format_version"] = 1;
  doc["kind"] = kind_name(model.params.kind);
  doc["target_kind"] = target_name(model.target_kind);
  doc["sigma"] = model.params.sigma;
  doc["gamma"] = model.gamma;
  doc["weights"] = vector_to_json(model.weights);
  doc["alpha"] = vector_to_json(model.alpha);
  json rows = json::array();
  for (Eigen::Index i = 0; i < model.train_features.rows(); ++i)
    rows.push_back(vector_to_json(model.train_features.row(i).transpose()));
  doc["train_features"] = rows;

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("save_model: cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

SdfModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_model: cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::runtime_error("load_model: '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.contains("format_version") || doc["format_version"].get<int>() != 1)
    throw std::runtime_error("load_model: unsupported format version in '" + path + "'");

  SdfModel model;
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind == "gaussian") model.params.kind = KernelKind::gaussian;
  else if (kind == "linear") model.params.kind = KernelKind::linear;
  else throw std::runtime_error("load_model: unknown kernel kind '" + kind + "'");
  const std::string target = doc.at("target_kind").get<std::string>();
  if (target == "sdf") model.target_kind = TargetKind::sdf;
  else if (target == "indicator") model.target_kind = TargetKind::indicator;
  else throw std::runtime_error("load_model: unknown target kind '" + target + "'");

  model.params.sigma = doc.at("sigma").get<double>();
  model.gamma = doc.at("gamma").get<double>();
  model.weights = vector_from_json(doc.at("weights"));
  model.alpha = vector_from_json(doc.at("alpha"));
  const auto& rows = doc.at("train_features");
  model.train_features.resize(static_cast<Eigen::Index>(rows.size()), model.weights.size());
  Eigen::Index i = 0;
  for (const auto& row : rows)
    model.train_features.row(i++) = vector_from_json(row).transpose();
  if (model.alpha.size() != model.train_features.rows())
    throw std::runtime_error("load_model: alpha length does not match training rows");
  return model;
}

}  // namespace sdf
