#include "sdf/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "sdf/rng.hpp"

namespace sdf {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(std::string_view(line).substr(start)));
      break;
    }
    fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

double parse_real(const std::string& cell, std::size_t line_no,
                  const std::string& column) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw std::invalid_argument("load_csv: row " + std::to_string(line_no) +
                                ", column '" + column + "': cannot parse '" +
                                cell + "' as a finite real");
  }
  return value;
}

void format_real(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

Dataset take_rows(const Dataset& data, const std::vector<Eigen::Index>& rows) {
  Dataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), data.n_features());
  out.labels.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) = data.features.row(rows[i]);
    out.labels(static_cast<Eigen::Index>(i)) = data.labels(rows[i]);
  }
  out.feature_names = data.feature_names;
  return out;
}

}  // namespace

void Dataset::validate() const {
  if (features.rows() < 1 || features.cols() < 1)
    throw std::invalid_argument("dataset: needs at least one sample and one feature");
  if (labels.size() != features.rows())
    throw std::invalid_argument("dataset: label count does not match sample count");
  if (!features.allFinite())
    throw std::invalid_argument("dataset: non-finite feature value");
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    if (labels(i) != 1.0 && labels(i) != -1.0)
      throw std::invalid_argument("dataset: label not in {-1,+1} at row " +
                                  std::to_string(i));
  }
  if (!feature_names.empty() &&
      static_cast<Eigen::Index>(feature_names.size()) != features.cols())
    throw std::invalid_argument("dataset: feature name count does not match columns");
}

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& positive_label) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_csv: cannot open file '" + path + "'");

  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("load_csv: file '" + path + "' is empty");
  const auto header = split_fields(line);
  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end())
    throw std::invalid_argument("load_csv: missing label column '" + label_column + "'");
  const std::size_t label_idx =
      static_cast<std::size_t>(label_it - header.begin());

  std::vector<std::string> names;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (j != label_idx) names.push_back(header[j]);
  if (names.empty())
    throw std::invalid_argument("load_csv: no feature columns besides '" +
                                label_column + "'");

  std::vector<std::vector<double>> rows;
  std::vector<std::string> label_cells;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size())
      throw std::invalid_argument("load_csv: row " + std::to_string(line_no) +
                                  " has " + std::to_string(fields.size()) +
                                  " fields, header has " +
                                  std::to_string(header.size()));
    std::vector<double> row;
    row.reserve(names.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (j == label_idx) continue;
      row.push_back(parse_real(fields[j], line_no, header[j]));
    }
    rows.push_back(std::move(row));
    label_cells.push_back(fields[label_idx]);
  }
  if (rows.empty()) throw std::invalid_argument("load_csv: no data rows in '" + path + "'");

  const std::set<std::string> distinct(label_cells.begin(), label_cells.end());
  if (distinct.size() != 2)
    throw std::invalid_argument("load_csv: expected exactly 2 distinct label values, found " +
                                std::to_string(distinct.size()));
  if (!distinct.contains(positive_label))
    throw std::invalid_argument("load_csv: positive label '" + positive_label +
                                "' does not occur in column '" + label_column + "'");

  Dataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(names.size()));
  out.labels.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < names.size(); ++j)
      out.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    out.labels(static_cast<Eigen::Index>(i)) = label_cells[i] == positive_label ? 1.0 : -1.0;
  }
  out.feature_names = names;
  out.validate();
  return out;
}

std::string to_csv(const Dataset& data) {
  data.validate();
  std::string body;
  for (Eigen::Index j = 0; j < data.n_features(); ++j) {
    if (j > 0) body += ',';
    body += data.feature_names.empty() ? "x" + std::to_string(j + 1)
                                       : data.feature_names[static_cast<std::size_t>(j)];
  }
  body += ",label\n";
  for (Eigen::Index i = 0; i < data.n_samples(); ++i) {
    for (Eigen::Index j = 0; j < data.n_features(); ++j) {
      format_real(body, data.features(i, j));
      body += ',';
    }
    body += data.labels(i) > 0 ? "1\n" : "-1\n";
  }
  return body;
}

void save_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::invalid_argument("save_csv: cannot write '" + path + "'");
  out << to_csv(data);
}

Eigen::MatrixXd load_csv_features(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("load_csv_features: cannot open file '" + path + "'");
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("load_csv_features: file '" + path + "' is empty");
  const auto header = split_fields(line);

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size())
      throw std::invalid_argument("load_csv_features: row " + std::to_string(line_no) +
                                  " has " + std::to_string(fields.size()) +
                                  " fields, header has " + std::to_string(header.size()));
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j)
      row.push_back(parse_real(fields[j], line_no, header[j]));
    rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw std::invalid_argument("load_csv_features: no data rows in '" + path + "'");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < header.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return out;
}

std::pair<Dataset, Dataset> split_2to1(const Dataset& data, std::uint64_t seed) {
  data.validate();
  const Eigen::Index n = data.n_samples();
  if (n < 3) throw std::invalid_argument("split_2to1: needs at least 3 samples");
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  Rng rng(seed, "split_2to1");
  rng.shuffle(perm);
  const Eigen::Index n_train = (2 * n + 2) / 3;  // ceil(2N/3)
  std::vector<Eigen::Index> train_rows(perm.begin(), perm.begin() + n_train);
  std::vector<Eigen::Index> test_rows(perm.begin() + n_train, perm.end());
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());
  return {take_rows(data, train_rows), take_rows(data, test_rows)};
}

int indicator(const Eigen::Vector2d& x) {
  return (x(0) >= 0.0 && x(1) >= 0.0) ? 1 : -1;
}

double exact_sdf_quadrant(const Eigen::Vector2d& x) {
  if (x(0) >= 0.0 && x(1) >= 0.0) return std::min(x(0), x(1));
  const double dx = std::min(x(0), 0.0);
  const double dy = std::min(x(1), 0.0);
  return -std::sqrt(dx * dx + dy * dy);
}

Dataset gen_uniform_square(std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_uniform_square: n must be positive");
  Rng rng(seed, "uniform_square");
  Dataset out;
  out.features.resize(n, 2);
  out.labels.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.features(i, 0) = rng.uniform(-1.0, 1.0);
    out.features(i, 1) = rng.uniform(-1.0, 1.0);
    out.labels(i) = indicator(out.features.row(i).transpose());
  }
  out.feature_names = {"x1", "x2"};
  return out;
}

Dataset gen_checkerboard(std::int64_t n, std::int64_t grid, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_checkerboard: n must be positive");
  if (grid < 1) throw std::invalid_argument("gen_checkerboard: grid must be positive");
  Rng rng(seed, "checkerboard");
  Dataset out;
  out.features.resize(n, 2);
  out.labels.resize(n);
  const double k = static_cast<double>(grid);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = rng.uniform(-1.0, 1.0);
    const double y = rng.uniform(-1.0, 1.0);
    out.features(i, 0) = x;
    out.features(i, 1) = y;
    const auto cell = [&](double v) {
      const auto c = static_cast<std::int64_t>(std::floor((v + 1.0) / 2.0 * k));
      return std::clamp<std::int64_t>(c, 0, grid - 1);
    };
    out.labels(i) = ((cell(x) + cell(y)) % 2 == 0) ? 1.0 : -1.0;
  }
  out.feature_names = {"x1", "x2"};
  return out;
}

Dataset biased_toy() {
  Dataset out;
  out.features.resize(4, 2);
  out.features << 0.0, 1.0,
                  0.1, 1.0,
                 -0.1, 1.0,
                  0.0, -1.0;
  out.labels.resize(4);
  out.labels << 1, 1, 1, -1;
  out.feature_names = {"x1", "x2"};
  return out;
}

}  // namespace sdf
