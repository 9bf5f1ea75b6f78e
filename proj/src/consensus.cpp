#include "mdlclust/consensus.hpp"

#include "mdlclust/baseclust.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace mdlclust {

IndicatorMatrix build_indicator(const std::vector<Labeling>& members) {
  if (members.empty())
    throw std::invalid_argument("build_indicator: empty ensemble");
  const Eigen::Index n = members[0].size();
  const int k = members[0].k;
  for (const Labeling& m : members) {
    if (m.size() != n)
      throw std::invalid_argument("build_indicator: members label different n");
    if (m.k != k)
      throw std::invalid_argument("build_indicator: members have different k");
    if (!m.valid())
      throw std::invalid_argument("build_indicator: member ids outside 1..k");
  }

  IndicatorMatrix ind;
  ind.r = static_cast<int>(members.size());
  ind.k = k;
  ind.h = Eigen::MatrixXi::Zero(n, static_cast<Eigen::Index>(ind.r) * k);
  for (int m = 0; m < ind.r; ++m)
    for (Eigen::Index i = 0; i < n; ++i)
      ind.h(i, static_cast<Eigen::Index>(m) * k + members[m].assignments[i] - 1) = 1;
  return ind;
}

AgreementMatrix agreement_from_indicator(const IndicatorMatrix& ind) {
  AgreementMatrix agr;
  agr.r = ind.r;
  agr.a = ind.h * ind.h.transpose();
  agr.a.diagonal().setZero();
  return agr;
}

AgreementMatrix agreement_matrix(const std::vector<Labeling>& members) {
  return agreement_from_indicator(build_indicator(members));
}

std::vector<Labeling> run_ensemble(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                   int k, int r, std::uint64_t seed) {
  if (r < 1 || r % 2 == 0)
    throw std::invalid_argument("run_ensemble: r must be odd and >= 1");
  std::vector<Labeling> members;
  members.reserve(r);
  for (int m = 0; m < r; ++m)
    members.push_back(kmeans(x, k, mix_seed(seed, static_cast<std::uint64_t>(m))).labeling);
  return members;
}

std::vector<Labeling> run_hybrid_ensemble(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                          int k, int kmeans_members,
                                          std::uint64_t seed) {
  if (kmeans_members < 1 || kmeans_members % 2 == 0)
    throw std::invalid_argument(
        "run_hybrid_ensemble: kmeans_members must be odd and >= 1 so r = kmeans_members + 4 stays odd");
  std::vector<Labeling> members;
  members.reserve(kmeans_members + 4);
  for (int m = 0; m < kmeans_members; ++m)
    members.push_back(kmeans(x, k, mix_seed(seed, static_cast<std::uint64_t>(m))).labeling);
  for (Linkage link : {Linkage::single, Linkage::complete, Linkage::average, Linkage::ward})
    members.push_back(agglomerative(x, k, link));
  return members;
}

Labeling initial_solution(const Eigen::Ref<const Eigen::MatrixXd>& x, int k,
                          double fraction, std::uint64_t seed) {
  if (fraction <= 0 || fraction > 1)
    throw std::invalid_argument("initial_solution: fraction must be in (0, 1]");
  const Eigen::Index n = x.rows();
  const Eigen::Index m = static_cast<Eigen::Index>(std::ceil(fraction * static_cast<double>(n)));
  if (m < k)
    throw std::invalid_argument("initial_solution: subsample smaller than k");
  if (m == n) return kmeans(x, k, mix_seed(seed, 2)).labeling;

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::mt19937_64 rng(mix_seed(seed, 1));
  std::shuffle(order.begin(), order.end(), rng);

  Eigen::MatrixXd sub(m, x.cols());
  for (Eigen::Index i = 0; i < m; ++i) sub.row(i) = x.row(order[i]);

  KMeansResult km = kmeans(sub, k, mix_seed(seed, 2));

  Labeling lab;
  lab.k = k;
  lab.assignments.resize(n);
  for (Eigen::Index i = 0; i < m; ++i)
    lab.assignments[order[i]] = km.labeling.assignments[i];
  for (Eigen::Index i = m; i < n; ++i) {
    Eigen::RowVectorXd p = x.row(order[i]);
    Eigen::Index best = 0;
    double best_d = (km.centroids.row(0) - p).squaredNorm();
    for (Eigen::Index c = 1; c < k; ++c) {
      double d = (km.centroids.row(c) - p).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    lab.assignments[order[i]] = static_cast<int>(best) + 1;
  }
  return lab;
}

}  // namespace mdlclust
