#include "mdlclust/gamo.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace mdlclust {

namespace {

constexpr double kImproveEps = 1e-12;

struct MoveLists {
  std::vector<std::vector<Eigen::Index>> members;

  explicit MoveLists(const Labeling& c) : members(static_cast<size_t>(c.k)) {
    for (Eigen::Index i = 0; i < c.size(); ++i)
      members[static_cast<size_t>(c.assignments[i] - 1)].push_back(i);
  }

  void move(Eigen::Index sample, int from, int to) {
    auto& src = members[static_cast<size_t>(from - 1)];
    src.erase(std::find(src.begin(), src.end(), sample));
    members[static_cast<size_t>(to - 1)].push_back(sample);
  }
};

double weighted_cost(const std::vector<Eigen::Index>& members,
                     const Eigen::Ref<const Eigen::MatrixXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& w,
                     Eigen::Index skip = -1, Eigen::Index extra = -1) {
  Eigen::Index count = 0;
  Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
  for (Eigen::Index q : members) {
    if (q == skip) continue;
    mean += x.row(q);
    ++count;
  }
  if (extra >= 0) {
    mean += x.row(extra);
    ++count;
  }
  if (count == 0) return 0;
  mean /= static_cast<double>(count);
  double cost = mean.dot(w);
  for (Eigen::Index q : members) {
    if (q == skip) continue;
    cost += (x.row(q) - mean).cwiseAbs().dot(w);
  }
  if (extra >= 0) cost += (x.row(extra) - mean).cwiseAbs().dot(w);
  return cost;
}

void check_start(const Labeling& c0, Eigen::Index n, const char* who) {
  if (!c0.valid() || c0.size() != n)
    throw std::invalid_argument(std::string(who) + ": starting labeling does not fit the data");
}

// Shared description-length descent; gated by displacement probabilities
// when an agreement matrix is supplied.
StageTrace mdl_stage(const Labeling& c0, const Eigen::Ref<const Eigen::MatrixXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& w,
                     const AgreementMatrix* agr, const GamoParams& params, Stage tag) {
  check_start(c0, x.rows(), "mdl stage");
  if (w.size() != x.cols())
    throw std::invalid_argument("mdl stage: weight length does not match attributes");

  const Eigen::Index n = x.rows();
  const int k = c0.k;
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  StageTrace trace;
  trace.stage = tag;
  trace.final = c0;
  Eigen::VectorXi& lab = trace.final.assignments;

  MoveLists lists(trace.final);
  std::vector<double> costs(static_cast<size_t>(k));
  for (int p = 0; p < k; ++p)
    costs[static_cast<size_t>(p)] = weighted_cost(lists.members[static_cast<size_t>(p)], x, w);

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index(0));

  int quiet = 0;
  for (int sweep = 0; sweep < params.max_outer_iters; ++sweep) {
    std::vector<double> vp;
    if (agr) {
      vp.resize(static_cast<size_t>(n));
      for (Eigen::Index i = 0; i < n; ++i)
        vp[static_cast<size_t>(i)] = displacement_probability(i, trace.final, *agr).v_p;
    }
    std::shuffle(order.begin(), order.end(), rng);

    int accepted = 0;
    for (Eigen::Index i : order) {
      if (agr && unit(rng) >= vp[static_cast<size_t>(i)]) continue;
      const int src = lab[i];
      const auto& src_members = lists.members[static_cast<size_t>(src - 1)];
      if (src_members.size() <= 1) continue;

      double src_after = weighted_cost(src_members, x, w, i);
      double src_delta = src_after - costs[static_cast<size_t>(src - 1)];

      int best_t = -1;
      double best_total = -kImproveEps;
      double best_tgt_after = 0;
      for (int t = 1; t <= k; ++t) {
        if (t == src) continue;
        double tgt_after = weighted_cost(lists.members[static_cast<size_t>(t - 1)], x, w, -1, i);
        double total = src_delta + tgt_after - costs[static_cast<size_t>(t - 1)];
        if (total < best_total) {
          best_total = total;
          best_t = t;
          best_tgt_after = tgt_after;
        }
      }
      if (best_t > 0) {
        lists.move(i, src, best_t);
        costs[static_cast<size_t>(src - 1)] = src_after;
        costs[static_cast<size_t>(best_t - 1)] = best_tgt_after;
        lab[i] = best_t;
        ++accepted;
      }
    }

    trace.objective.push_back(std::accumulate(costs.begin(), costs.end(), 0.0));
    trace.moves_accepted.push_back(accepted);
    quiet = accepted == 0 ? quiet + 1 : 0;
    if (quiet >= params.patience) break;
  }
  return trace;
}

}  // namespace

Stage stage_from_string(const std::string& name) {
  if (name == "abmdlgao") return Stage::ab_mdl;
  if (name == "epmdlgao") return Stage::ep_mdl;
  if (name == "epafgao") return Stage::ep_af;
  throw std::invalid_argument("unknown stage '" + name + "'");
}

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::ab_mdl: return "abmdlgao";
    case Stage::ep_mdl: return "epmdlgao";
    case Stage::ep_af: return "epafgao";
  }
  return "?";
}

StageTrace abmdlgao(const Labeling& c0, const Eigen::Ref<const Eigen::MatrixXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& w,
                    const AgreementMatrix& a, const GamoParams& params) {
  if (a.a.rows() != x.rows())
    throw std::invalid_argument("abmdlgao: agreement matrix does not fit the data");
  return mdl_stage(c0, x, w, &a, params, Stage::ab_mdl);
}

StageTrace epmdlgao(const Labeling& c0, const Eigen::Ref<const Eigen::MatrixXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& w,
                    const GamoParams& params) {
  return mdl_stage(c0, x, w, nullptr, params, Stage::ep_mdl);
}

StageTrace epafgao(const Labeling& c0, const AgreementMatrix& a,
                   const GamoParams& params) {
  check_start(c0, a.a.rows(), "epafgao");
  const Eigen::Index n = a.a.rows();
  const int k = c0.k;
  std::mt19937_64 rng(params.seed);

  // same min-relative form as agreement_fitness, so cached values match the
  // evaluator term for term
  if (a.a.rows() < 2)
    throw std::invalid_argument("epafgao: need at least 2 samples");
  int mn = a.a(0, 1), mx = a.a(0, 1);
  for (Eigen::Index i = 0; i < a.a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.a.cols(); ++j)
      if (i != j) {
        mn = std::min(mn, a.a(i, j));
        mx = std::max(mx, a.a(i, j));
      }
  const double spread = (mx - mn) * 0.6;
  Eigen::MatrixXd ap =
      ((a.a.array() - mn).cast<double>() - spread).matrix();
  ap.diagonal().setZero();

  StageTrace trace;
  trace.stage = Stage::ep_af;
  trace.final = c0;
  Eigen::VectorXi& lab = trace.final.assignments;

  MoveLists lists(trace.final);
  std::vector<double> fitness(static_cast<size_t>(k), 0.0);
  for (int p = 0; p < k; ++p) {
    const auto& mem = lists.members[static_cast<size_t>(p)];
    double f = 0;
    for (size_t u = 0; u < mem.size(); ++u)
      for (size_t v = u + 1; v < mem.size(); ++v) f += ap(mem[u], mem[v]);
    fitness[static_cast<size_t>(p)] = f;
  }

  auto cross = [&](Eigen::Index i, int cluster) {
    double s = 0;
    for (Eigen::Index q : lists.members[static_cast<size_t>(cluster - 1)])
      s += ap(i, q);  // ap(i, i) is zero, so i's own row entry is harmless
    return s;
  };

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index(0));

  int quiet = 0;
  for (int sweep = 0; sweep < params.max_outer_iters; ++sweep) {
    std::shuffle(order.begin(), order.end(), rng);
    int accepted = 0;
    for (Eigen::Index i : order) {
      const int src = lab[i];
      if (lists.members[static_cast<size_t>(src - 1)].size() <= 1) continue;

      double src_loss = cross(i, src);
      int best_t = -1;
      double best_total = kImproveEps;
      double best_gain = 0;
      for (int t = 1; t <= k; ++t) {
        if (t == src) continue;
        double gain = cross(i, t);
        double total = gain - src_loss;
        if (total > best_total) {
          best_total = total;
          best_t = t;
          best_gain = gain;
        }
      }
      if (best_t > 0) {
        fitness[static_cast<size_t>(src - 1)] -= src_loss;
        fitness[static_cast<size_t>(best_t - 1)] += best_gain;
        lists.move(i, src, best_t);
        lab[i] = best_t;
        ++accepted;
      }
    }

    trace.objective.push_back(std::accumulate(fitness.begin(), fitness.end(), 0.0));
    trace.moves_accepted.push_back(accepted);
    quiet = accepted == 0 ? quiet + 1 : 0;
    if (quiet >= params.patience) break;
  }
  return trace;
}

GamoResult gamo_pipeline(const Labeling& c0, const Eigen::Ref<const Eigen::MatrixXd>& x,
                         const Eigen::Ref<const Eigen::VectorXd>& w,
                         const AgreementMatrix& a, const GamoParams& params) {
  GamoResult res;
  res.final = c0;
  for (size_t s = 0; s < params.stage_order.size(); ++s) {
    GamoParams stage_params = params;
    stage_params.seed = mix_seed(params.seed, 100 + s);
    switch (params.stage_order[s]) {
      case Stage::ab_mdl:
        res.stages.push_back(abmdlgao(res.final, x, w, a, stage_params));
        break;
      case Stage::ep_mdl:
        res.stages.push_back(epmdlgao(res.final, x, w, stage_params));
        break;
      case Stage::ep_af:
        res.stages.push_back(epafgao(res.final, a, stage_params));
        break;
    }
    res.final = res.stages.back().final;
  }
  return res;
}

}  // namespace mdlclust
