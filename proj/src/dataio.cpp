#include "mdlclust/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace mdlclust {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto [ptr, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && ptr == e && std::isfinite(out);
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

std::string file_stem(const std::string& path) {
  size_t slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  size_t dot = base.find_last_of('.');
  return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

}  // namespace

Dataset load_csv(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    rows.push_back(split_row(line));
  }
  if (rows.empty()) throw DataError("'" + path + "' is empty");

  size_t ncols = rows[0].size();
  for (size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != ncols)
      throw DataError("'" + path + "' row " + std::to_string(i + 1) + " has " +
                      std::to_string(rows[i].size()) + " cells, expected " +
                      std::to_string(ncols));

  std::vector<std::string> colnames(ncols);
  size_t first_data = 0;
  if (opts.header) {
    colnames = rows[0];
    first_data = 1;
    if (rows.size() == 1) throw DataError("'" + path + "' has a header but no data rows");
  } else {
    for (size_t j = 0; j < ncols; ++j) colnames[j] = "f" + std::to_string(j + 1);
  }

  int label_idx = -1;
  if (!opts.label_column.empty()) {
    if (all_digits(opts.label_column)) {
      int idx = std::stoi(opts.label_column);
      if (idx < 1 || static_cast<size_t>(idx) > ncols)
        throw ConfigError("label column index " + opts.label_column +
                          " out of range 1.." + std::to_string(ncols));
      label_idx = idx - 1;
    } else {
      if (!opts.header)
        throw ConfigError("label column '" + opts.label_column +
                          "' given by name but the file has no header");
      auto it = std::find(colnames.begin(), colnames.end(), opts.label_column);
      if (it == colnames.end())
        throw ConfigError("label column '" + opts.label_column + "' not found in header");
      label_idx = static_cast<int>(it - colnames.begin());
    }
  }

  Dataset ds;
  ds.name = opts.name.empty() ? file_stem(path) : opts.name;
  size_t n = rows.size() - first_data;
  size_t a = label_idx >= 0 ? ncols - 1 : ncols;
  if (a == 0) throw DataError("'" + path + "' has no feature columns");
  ds.features.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(a));

  std::vector<int> labels(label_idx >= 0 ? n : 0);
  std::vector<std::string> classes;
  for (size_t i = 0; i < n; ++i) {
    const auto& row = rows[i + first_data];
    size_t fj = 0;
    for (size_t j = 0; j < ncols; ++j) {
      const std::string& cell = row[j];
      if (cell.empty())
        throw DataError("'" + path + "' row " + std::to_string(i + first_data + 1) +
                        ": missing value in column " + std::to_string(j + 1));
      if (static_cast<int>(j) == label_idx) {
        auto it = std::find(classes.begin(), classes.end(), cell);
        if (it == classes.end()) {
          classes.push_back(cell);
          labels[i] = static_cast<int>(classes.size());
        } else {
          labels[i] = static_cast<int>(it - classes.begin()) + 1;
        }
        continue;
      }
      double v;
      if (!parse_double(cell, v))
        throw DataError("'" + path + "' row " + std::to_string(i + first_data + 1) +
                        ": cannot parse '" + cell + "' in column " + std::to_string(j + 1));
      ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(fj++)) = v;
    }
  }

  for (size_t j = 0; j < ncols; ++j)
    if (static_cast<int>(j) != label_idx) ds.feature_names.push_back(colnames[j]);

  if (label_idx >= 0) {
    ds.has_truth = true;
    ds.truth.k = static_cast<int>(classes.size());
    ds.truth.assignments.resize(static_cast<Eigen::Index>(n));
    for (size_t i = 0; i < n; ++i)
      ds.truth.assignments[static_cast<Eigen::Index>(i)] = labels[i];
    ds.class_names = std::move(classes);
  }
  return ds;
}

Dataset generate_halfring(int n, double noise, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("generate_halfring: n must be even and >= 4");
  if (noise < 0)
    throw std::invalid_argument("generate_halfring: noise must be >= 0");

  const int m = n / 2;
  Dataset ds;
  ds.name = "halfring";
  ds.feature_names = {"x", "y"};
  ds.features.resize(n, 2);
  constexpr double kPi = 3.14159265358979323846;
  for (int i = 0; i < m; ++i) {
    double t = kPi * i / (m - 1);
    ds.features(i, 0) = std::cos(t);
    ds.features(i, 1) = std::sin(t);
    ds.features(m + i, 0) = 1.0 - std::cos(t);
    ds.features(m + i, 1) = 0.6 - std::sin(t);
  }
  if (noise > 0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, noise);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 2; ++j) ds.features(i, j) += gauss(rng);
  }
  ds.has_truth = true;
  ds.truth.k = 2;
  ds.truth.assignments.resize(n);
  ds.truth.assignments.head(m).setConstant(1);
  ds.truth.assignments.tail(m).setConstant(2);
  ds.class_names = {"arc1", "arc2"};
  return ds;
}

Eigen::MatrixXd normalize(const Eigen::Ref<const Eigen::MatrixXd>& features) {
  Eigen::MatrixXd out(features.rows(), features.cols());
  for (Eigen::Index j = 0; j < features.cols(); ++j) {
    double mn = features.col(j).minCoeff();
    double mx = features.col(j).maxCoeff();
    if (mx > mn)
      out.col(j) = (features.col(j).array() - mn) / (mx - mn);
    else
      out.col(j).setZero();
  }
  return out;
}

Eigen::VectorXd attribute_weights(const Eigen::Ref<const Eigen::MatrixXd>& normalized) {
  if (normalized.rows() < 2)
    throw std::invalid_argument("attribute_weights: need at least 2 samples");
  Eigen::Index a = normalized.cols();
  Eigen::VectorXd disp(a);
  double n = static_cast<double>(normalized.rows());
  for (Eigen::Index j = 0; j < a; ++j) {
    double mean = normalized.col(j).mean();
    disp[j] = (normalized.col(j).array() - mean).square().sum() / (n - 1);
  }
  double top = disp.maxCoeff();
  if (top <= 0) return Eigen::VectorXd::Zero(a);
  return disp / top;
}

DatasetSummary summarize(const Dataset& ds) {
  DatasetSummary s;
  s.name = ds.name;
  s.n = ds.features.rows();
  s.a = ds.features.cols();
  s.c = ds.has_truth ? ds.truth.k : 0;
  return s;
}

}  // namespace mdlclust
