#include "mdlclust/baseclust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace mdlclust {

namespace {

void check_xk(const Eigen::Ref<const Eigen::MatrixXd>& x, int k, const char* who) {
  if (x.rows() == 0 || x.cols() == 0)
    throw std::invalid_argument(std::string(who) + ": empty data");
  if (k < 1 || k > x.rows())
    throw std::invalid_argument(std::string(who) + ": k must be in 1..n");
}

int nearest_row(const Eigen::Ref<const Eigen::MatrixXd>& centroids,
                const Eigen::RowVectorXd& p) {
  int best = 0;
  double best_d = (centroids.row(0) - p).squaredNorm();
  for (Eigen::Index c = 1; c < centroids.rows(); ++c) {
    double d = (centroids.row(c) - p).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

Eigen::MatrixXd seed_plusplus(const Eigen::Ref<const Eigen::MatrixXd>& x, int k,
                              std::mt19937_64& rng) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd centers(k, x.cols());
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  centers.row(0) = x.row(pick(rng));
  Eigen::VectorXd d2 =
      (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 1; c < k; ++c) {
    double total = d2.sum();
    Eigen::Index chosen;
    if (total > 0) {
      double target = unit(rng) * total;
      double acc = 0;
      chosen = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc >= target) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = pick(rng);
    }
    centers.row(c) = x.row(chosen);
    d2 = d2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

}  // namespace

Labeling assign_nearest_centroid(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                 const Eigen::Ref<const Eigen::MatrixXd>& centroids) {
  if (centroids.rows() == 0 || centroids.cols() != x.cols())
    throw std::invalid_argument("assign_nearest_centroid: bad centroid shape");
  Labeling lab;
  lab.k = static_cast<int>(centroids.rows());
  lab.assignments.resize(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    Eigen::RowVectorXd p = x.row(i);
    lab.assignments[i] = nearest_row(centroids, p) + 1;
  }
  return lab;
}

KMeansResult kmeans(const Eigen::Ref<const Eigen::MatrixXd>& x, int k,
                    std::uint64_t seed, const KMeansParams& params) {
  check_xk(x, k, "kmeans");
  const Eigen::Index n = x.rows();
  std::mt19937_64 rng(seed);

  KMeansResult res;
  res.centroids = seed_plusplus(x, k, rng);
  res.labeling.k = k;
  res.labeling.assignments.resize(n);
  Eigen::VectorXi& lab = res.labeling.assignments;

  for (int iter = 0; iter < params.max_iter; ++iter) {
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::RowVectorXd p = x.row(i);
      lab[i] = nearest_row(res.centroids, p) + 1;
    }

    std::vector<int> sizes(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) ++sizes[lab[i] - 1];
    for (int c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      // farthest point from its own centroid, taken from a donor of size >= 2
      Eigen::Index far = -1;
      double far_d = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (sizes[lab[i] - 1] < 2) continue;
        double d = (x.row(i) - res.centroids.row(lab[i] - 1)).squaredNorm();
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      --sizes[lab[far] - 1];
      lab[far] = c + 1;
      ++sizes[c];
    }

    double wcss = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      wcss += (x.row(i) - res.centroids.row(lab[i] - 1)).squaredNorm();
    res.inertia_trace.push_back(wcss);
    res.iters = iter + 1;

    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, x.cols());
    for (Eigen::Index i = 0; i < n; ++i) next.row(lab[i] - 1) += x.row(i);
    for (int c = 0; c < k; ++c) next.row(c) /= sizes[c];

    double shift = 0;
    for (int c = 0; c < k; ++c)
      shift = std::max(shift, (next.row(c) - res.centroids.row(c)).norm());
    res.centroids = next;
    if (shift < params.tol) break;
  }
  return res;
}

Linkage linkage_from_string(const std::string& name) {
  if (name == "single") return Linkage::single;
  if (name == "complete") return Linkage::complete;
  if (name == "average") return Linkage::average;
  if (name == "ward") return Linkage::ward;
  throw std::invalid_argument("unknown linkage '" + name + "'");
}

std::string to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
    case Linkage::average: return "average";
    case Linkage::ward: return "ward";
  }
  return "?";
}

Labeling agglomerative(const Eigen::Ref<const Eigen::MatrixXd>& x, int k,
                       Linkage linkage) {
  check_xk(x, k, "agglomerative");
  const Eigen::Index n = x.rows();

  Eigen::MatrixXd d(n, n);
  d.setZero();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double sq = (x.row(i) - x.row(j)).squaredNorm();
      d(i, j) = d(j, i) = linkage == Linkage::ward ? sq : std::sqrt(sq);
    }

  std::vector<char> active(n, 1);
  std::vector<double> sizes(n, 1.0);
  std::vector<std::vector<int>> members(n);
  for (Eigen::Index i = 0; i < n; ++i) members[i] = {static_cast<int>(i)};

  for (Eigen::Index live = n; live > k; --live) {
    Eigen::Index bi = -1, bj = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        if (d(i, j) < best) {
          best = d(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    double ni = sizes[bi], nj = sizes[bj], dij = d(bi, bj);
    for (Eigen::Index h = 0; h < n; ++h) {
      if (!active[h] || h == bi || h == bj) continue;
      double dih = d(bi, h), djh = d(bj, h), nh = sizes[h];
      double merged = 0;
      switch (linkage) {
        case Linkage::single: merged = std::min(dih, djh); break;
        case Linkage::complete: merged = std::max(dih, djh); break;
        case Linkage::average: merged = (ni * dih + nj * djh) / (ni + nj); break;
        case Linkage::ward:
          merged = ((ni + nh) * dih + (nj + nh) * djh - nh * dij) / (ni + nj + nh);
          break;
      }
      d(bi, h) = d(h, bi) = merged;
    }
    sizes[bi] += sizes[bj];
    members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
    active[bj] = 0;
  }

  std::vector<Eigen::Index> roots;
  for (Eigen::Index i = 0; i < n; ++i)
    if (active[i]) roots.push_back(i);
  std::sort(roots.begin(), roots.end(), [&](Eigen::Index a, Eigen::Index b) {
    return *std::min_element(members[a].begin(), members[a].end()) <
           *std::min_element(members[b].begin(), members[b].end());
  });

  Labeling lab;
  lab.k = k;
  lab.assignments.resize(n);
  for (size_t c = 0; c < roots.size(); ++c)
    for (int i : members[roots[c]]) lab.assignments[i] = static_cast<int>(c) + 1;
  return lab;
}

FcmResult fcm(const Eigen::Ref<const Eigen::MatrixXd>& x, int k,
              std::uint64_t seed, const FcmParams& params) {
  check_xk(x, k, "fcm");
  if (params.m <= 1) throw std::invalid_argument("fcm: fuzzifier must be > 1");
  const Eigen::Index n = x.rows();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Eigen::MatrixXd u(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = 0;
    for (int c = 0; c < k; ++c) {
      u(i, c) = unit(rng);
      s += u(i, c);
    }
    if (s > 0)
      u.row(i) /= s;
    else
      u.row(i).setConstant(1.0 / k);
  }

  FcmResult res;
  res.centers.resize(k, x.cols());
  res.centers.setZero();
  const double expo = 1.0 / (params.m - 1.0);

  for (int iter = 0; iter < params.max_iter; ++iter) {
    Eigen::MatrixXd um = u.array().pow(params.m);
    for (int c = 0; c < k; ++c) {
      double denom = um.col(c).sum();
      if (denom > 0) res.centers.row(c) = (um.col(c).transpose() * x) / denom;
    }

    Eigen::MatrixXd next(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::VectorXd d2(k);
      int zeros = 0;
      for (int c = 0; c < k; ++c) {
        d2[c] = (x.row(i) - res.centers.row(c)).squaredNorm();
        if (d2[c] == 0) ++zeros;
      }
      if (zeros > 0) {
        for (int c = 0; c < k; ++c) next(i, c) = d2[c] == 0 ? 1.0 / zeros : 0.0;
      } else {
        for (int c = 0; c < k; ++c) {
          double s = 0;
          for (int j = 0; j < k; ++j) s += std::pow(d2[c] / d2[j], expo);
          next(i, c) = 1.0 / s;
        }
      }
    }

    double delta = (next - u).cwiseAbs().maxCoeff();
    u = next;
    res.iters = iter + 1;
    if (delta < params.tol) break;
  }

  res.memberships = u;
  res.labeling.k = k;
  res.labeling.assignments.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    int best = 0;
    for (int c = 1; c < k; ++c)
      if (u(i, c) > u(i, best)) best = c;
    res.labeling.assignments[i] = best + 1;
  }

  std::vector<int> sizes = res.labeling.cluster_sizes();
  for (int c = 0; c < k; ++c) {
    if (sizes[c] > 0) continue;
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (sizes[res.labeling.assignments[i] - 1] < 2) continue;
      if (best < 0 || u(i, c) > u(best, c)) best = i;
    }
    --sizes[res.labeling.assignments[best] - 1];
    res.labeling.assignments[best] = c + 1;
    ++sizes[c];
  }
  return res;
}

}  // namespace mdlclust
