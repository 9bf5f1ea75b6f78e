#include "mdlclust/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace mdlclust {

namespace {

void check_pair(const Labeling& p1, const Labeling& p2, const char* who) {
  if (!p1.valid() || !p2.valid())
    throw std::invalid_argument(std::string(who) + ": invalid labeling");
  if (p1.size() != p2.size())
    throw std::invalid_argument(std::string(who) + ": labelings differ in length");
  if (p1.size() == 0)
    throw std::invalid_argument(std::string(who) + ": empty labelings");
}

long long choose2(long long x) { return x * (x - 1) / 2; }

// Minimum-cost perfect assignment on a square matrix via shortest augmenting
// paths with potentials. Returns row -> column.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

Eigen::MatrixXi contingency(const Labeling& p1, const Labeling& p2) {
  check_pair(p1, p2, "contingency");
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(p1.k, p2.k);
  for (Eigen::Index i = 0; i < p1.size(); ++i)
    ++m(p1.assignments[i] - 1, p2.assignments[i] - 1);
  return m;
}

PairCounts pair_counts(const Labeling& p1, const Labeling& p2) {
  if (p1.size() < 2)
    throw std::invalid_argument("pair_counts: need at least 2 samples");
  Eigen::MatrixXi m = contingency(p1, p2);
  const long long n = p1.size();
  long long both = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) both += choose2(m(i, j));
  long long first = 0, second = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) first += choose2(m.row(i).sum());
  for (Eigen::Index j = 0; j < m.cols(); ++j) second += choose2(m.col(j).sum());

  PairCounts pc;
  pc.a = both;
  pc.b = first - both;
  pc.c = second - both;
  pc.d = choose2(n) - pc.a - pc.b - pc.c;
  return pc;
}

std::vector<int> align_labels(const Labeling& pred, const Labeling& truth) {
  Eigen::MatrixXi m = contingency(pred, truth);
  const int s = std::max(pred.k, truth.k);
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(s, s);
  cost.topLeftCorner(pred.k, truth.k) = -m.cast<double>();

  std::vector<int> row_to_col = min_cost_assignment(cost);
  std::vector<int> mapping(static_cast<size_t>(pred.k), 0);
  for (int p = 0; p < pred.k; ++p) {
    int col = row_to_col[static_cast<size_t>(p)];
    mapping[static_cast<size_t>(p)] = col < truth.k ? col + 1 : 0;
  }
  return mapping;
}

double accuracy(const Labeling& pred, const Labeling& truth) {
  std::vector<int> mapping = align_labels(pred, truth);
  Eigen::Index hits = 0;
  for (Eigen::Index i = 0; i < pred.size(); ++i)
    if (mapping[static_cast<size_t>(pred.assignments[i] - 1)] == truth.assignments[i])
      ++hits;
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

double f_measure(const Labeling& p1, const Labeling& p2) {
  PairCounts pc = pair_counts(p1, p2);
  if (pc.a == 0) return 0;
  return 2.0 * pc.a / static_cast<double>(2 * pc.a + pc.b + pc.c);
}

double nmi(const Labeling& p1, const Labeling& p2) {
  Eigen::MatrixXi m = contingency(p1, p2);
  const double n = static_cast<double>(p1.size());

  auto entropy = [n](const Eigen::VectorXi& counts) {
    double h = 0;
    for (Eigen::Index i = 0; i < counts.size(); ++i) {
      if (counts[i] == 0) continue;
      double p = counts[i] / n;
      h -= p * std::log(p);
    }
    return h;
  };
  Eigen::VectorXi rows = m.rowwise().sum();
  Eigen::VectorXi cols = m.colwise().sum();
  double h1 = entropy(rows), h2 = entropy(cols);
  if (h1 == 0 && h2 == 0) return 1;  // both single-cluster

  // log-difference form: identical partitions cancel term for term, so the
  // ratio below is exactly 1 for them
  double mi = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      double pij = m(i, j) / n;
      mi += pij * (std::log(pij) - std::log(rows[i] / n) - std::log(cols[j] / n));
    }
  double val = mi / ((h1 + h2) / 2);
  return std::clamp(val, 0.0, 1.0);
}

double ari(const Labeling& p1, const Labeling& p2) {
  Eigen::MatrixXi m = contingency(p1, p2);
  const long long n = p1.size();
  double both = 0, first = 0, second = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      both += static_cast<double>(choose2(m(i, j)));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    first += static_cast<double>(choose2(m.row(i).sum()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    second += static_cast<double>(choose2(m.col(j).sum()));
  double total = static_cast<double>(choose2(n));
  if (total == 0) return 0;

  double expected = first * second / total;
  double maximum = (first + second) / 2;
  double denom = maximum - expected;
  if (denom == 0) return 0;
  return (both - expected) / denom;
}

double rand_index(const Labeling& p1, const Labeling& p2) {
  PairCounts pc = pair_counts(p1, p2);
  long long total = pc.a + pc.b + pc.c + pc.d;
  if (total == 0)
    throw std::invalid_argument("rand_index: need at least 2 samples");
  return static_cast<double>(pc.a + pc.d) / static_cast<double>(total);
}

}  // namespace mdlclust
