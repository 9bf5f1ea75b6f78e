#include "mdlclust/objectives.hpp"

#include <algorithm>
#include <vector>

namespace mdlclust {

namespace {

std::vector<std::vector<Eigen::Index>> cluster_members(const Labeling& c) {
  std::vector<std::vector<Eigen::Index>> members(static_cast<size_t>(c.k));
  for (Eigen::Index i = 0; i < c.size(); ++i)
    members[static_cast<size_t>(c.assignments[i] - 1)].push_back(i);
  return members;
}

// Weighted description cost of one cluster: w'mean + sum_q w'|x_q - mean|.
double cluster_cost(const std::vector<Eigen::Index>& members,
                    const Eigen::Ref<const Eigen::MatrixXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& w) {
  if (members.empty()) return 0;
  Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
  for (Eigen::Index q : members) mean += x.row(q);
  mean /= static_cast<double>(members.size());
  double cost = mean.dot(w);
  for (Eigen::Index q : members)
    cost += (x.row(q) - mean).cwiseAbs().dot(w);
  return cost;
}

void check_cx(const Labeling& c, Eigen::Index n, const char* who) {
  if (!c.valid() || c.size() != n)
    throw std::invalid_argument(std::string(who) + ": labeling does not fit the data");
}

}  // namespace

AwdlValue awdl(const Labeling& c, const Eigen::Ref<const Eigen::MatrixXd>& x,
               const Eigen::Ref<const Eigen::VectorXd>& w) {
  check_cx(c, x.rows(), "awdl");
  if (w.size() != x.cols())
    throw std::invalid_argument("awdl: weight length does not match attributes");
  if (!c.uses_all_ids())
    throw std::invalid_argument("awdl: empty cluster (mean undefined)");

  AwdlValue val;
  for (const auto& members : cluster_members(c)) {
    if (members.empty()) continue;
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
    for (Eigen::Index q : members) mean += x.row(q);
    mean /= static_cast<double>(members.size());
    val.s_m += mean.dot(w);
    for (Eigen::Index q : members)
      val.s_d += (x.row(q) - mean).cwiseAbs().dot(w);
  }
  val.l_prime = val.s_m + val.s_d;
  return val;
}

double awdl_move_delta(const Labeling& c, const Eigen::Ref<const Eigen::MatrixXd>& x,
                       const Eigen::Ref<const Eigen::VectorXd>& w, Eigen::Index sample,
                       int target) {
  check_cx(c, x.rows(), "awdl_move_delta");
  if (sample < 0 || sample >= c.size())
    throw std::invalid_argument("awdl_move_delta: sample out of range");
  if (target < 1 || target > c.k)
    throw std::invalid_argument("awdl_move_delta: target id out of range");

  int src = c.assignments[sample];
  if (target == src) return 0;

  std::vector<Eigen::Index> src_members, tgt_members;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (c.assignments[i] == src) src_members.push_back(i);
    if (c.assignments[i] == target) tgt_members.push_back(i);
  }
  if (src_members.size() == 1)
    throw std::invalid_argument("awdl_move_delta: cannot empty the source cluster");

  double before = cluster_cost(src_members, x, w) + cluster_cost(tgt_members, x, w);
  src_members.erase(std::find(src_members.begin(), src_members.end(), sample));
  tgt_members.push_back(sample);
  double after = cluster_cost(src_members, x, w) + cluster_cost(tgt_members, x, w);
  return after - before;
}

namespace {

void offdiag_range(const AgreementMatrix& agr, int& mn, int& mx) {
  const Eigen::Index n = agr.a.rows();
  if (n < 2)
    throw std::invalid_argument("consensus_threshold: need at least 2 samples");
  mn = agr.a(0, 1);
  mx = agr.a(0, 1);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      mn = std::min(mn, agr.a(i, j));
      mx = std::max(mx, agr.a(i, j));
    }
}

}  // namespace

double consensus_threshold(const AgreementMatrix& agr) {
  int mn = 0, mx = 0;
  offdiag_range(agr, mn, mx);
  return (mx - mn) * 0.6 + mn;
}

AgreementFitness agreement_fitness(const Labeling& c, const AgreementMatrix& agr) {
  check_cx(c, agr.a.rows(), "agreement_fitness");
  int mn = 0, mx = 0;
  offdiag_range(agr, mn, mx);
  // pair terms are computed relative to the off-diagonal minimum, so adding a
  // constant to every off-diagonal entry cancels exactly
  const double spread = (mx - mn) * 0.6;
  AgreementFitness fit;
  fit.b = spread + mn;
  fit.per_cluster = Eigen::VectorXd::Zero(c.k);
  for (const auto& members : cluster_members(c)) {
    if (members.size() < 2) continue;
    double f = 0;
    for (size_t a = 0; a < members.size(); ++a)
      for (size_t b = a + 1; b < members.size(); ++b)
        f += static_cast<double>(agr.a(members[a], members[b]) - mn) - spread;
    fit.per_cluster[c.assignments[members[0]] - 1] = f;
  }
  fit.f_total = fit.per_cluster.sum();
  return fit;
}

DisplacementProbability displacement_probability(Eigen::Index sample, const Labeling& c,
                                                 const AgreementMatrix& agr) {
  const Eigen::Index n = agr.a.rows();
  check_cx(c, n, "displacement_probability");
  if (sample < 0 || sample >= n)
    throw std::invalid_argument("displacement_probability: sample out of range");
  if (n < 2)
    throw std::invalid_argument("displacement_probability: need at least 2 samples");
  if (agr.r < 1)
    throw std::invalid_argument("displacement_probability: ensemble size missing");

  const int src = c.assignments[sample];
  int max_q = 0, max_i = 0;
  Eigen::Index n_q = 0;
  for (Eigen::Index q = 0; q < n; ++q) {
    if (q == sample) continue;
    max_i = std::max(max_i, agr.a(sample, q));
    if (c.assignments[q] == src) {
      ++n_q;
      max_q = std::max(max_q, agr.a(sample, q));
    }
  }

  DisplacementProbability dp;
  if (n_q == 0) return dp;  // alone in its cluster: fully movable

  const double peers = static_cast<double>(n - 1);
  dp.v2 = static_cast<double>(max_q) / agr.r;
  dp.v1 = max_i > 0
              ? (static_cast<double>(n_q) * max_q) / (peers * max_i)
              : static_cast<double>(n_q) / peers;
  dp.v = max_q < max_i ? 0.0 : std::min(dp.v1, dp.v2);
  dp.v_p = 1.0 - dp.v;
  return dp;
}

}  // namespace mdlclust
