// End-to-end acceptance gate. Each criterion prints one PASS/FAIL line; the
// exit code is the number of failed criteria.

#include "mdlclust/bench.hpp"
#include "mdlclust/consensus.hpp"
#include "mdlclust/dataio.hpp"
#include "mdlclust/gamo.hpp"
#include "mdlclust/validation.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace mdlclust;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// 1: the five validation metrics against definitional oracles, plus exact
// unit scores on identical partitions.
bool metric_oracles() {
  auto start = Clock::now();
  std::mt19937_64 rng(1001);
  int bad = 0, identity_bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 2 + static_cast<int>(rng() % 11);
    int kp = std::min(n, 1 + static_cast<int>(rng() % 4));
    int kt = std::min(n, 1 + static_cast<int>(rng() % 4));
    Labeling p1 = oracle::random_labeling(n, kp, rng);
    Labeling p2 = oracle::random_labeling(n, kt, rng);
    if (!close(accuracy(p1, p2), oracle::accuracy_factorial(p1, p2), 1e-12)) ++bad;
    if (!close(f_measure(p1, p2), oracle::fmeasure_def(p1, p2), 1e-12)) ++bad;
    if (!close(nmi(p1, p2), oracle::nmi_def(p1, p2), 1e-12)) ++bad;
    if (!close(ari(p1, p2), oracle::ari_def(p1, p2), 1e-12)) ++bad;
    if (!close(rand_index(p1, p2), oracle::rand_def(p1, p2), 1e-12)) ++bad;
    // exact 1.0 on identity, where every metric is well defined (1 < k < n)
    if (kp > 1 && kp < n) {
      if (accuracy(p1, p1) != 1.0) ++identity_bad;
      if (f_measure(p1, p1) != 1.0) ++identity_bad;
      if (nmi(p1, p1) != 1.0) ++identity_bad;
      if (ari(p1, p1) != 1.0) ++identity_bad;
      if (rand_index(p1, p1) != 1.0) ++identity_bad;
    }
  }
  double elapsed = seconds_since(start);
  bool ok = bad == 0 && identity_bad == 0 && elapsed < 10.0;
  std::cout << (ok ? "PASS" : "FAIL")
            << "  1. metric oracle equivalence: 1000 random pairs, 5 metrics, tol 1e-12 ("
            << bad << " mismatches, " << identity_bad << " identity misses, " << elapsed
            << " s)\n";
  return ok;
}

// 2: agreement matrix against brute-force co-membership counting, plus the
// worked ten-sample example.
bool agreement_oracle() {
  auto start = Clock::now();
  std::mt19937_64 rng(1002);
  int bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 49);
    int k = std::min(n, 2 + static_cast<int>(rng() % 3));
    int r = 3 + 2 * static_cast<int>(rng() % 3);
    auto members = oracle::random_ensemble(n, k, r, rng);
    if (agreement_matrix(members).a != oracle::agreement(members)) ++bad;
  }

  auto make = [](std::initializer_list<int> ids) {
    Labeling c;
    c.k = 3;
    c.assignments = Eigen::VectorXi(10);
    Eigen::Index i = 0;
    for (int id : ids) c.assignments[i++] = id;
    return c;
  };
  std::vector<Labeling> worked = {make({1, 2, 1, 1, 1, 3, 3, 2, 3, 1}),
                                  make({3, 2, 3, 1, 2, 1, 1, 3, 2, 3}),
                                  make({2, 1, 1, 3, 3, 2, 1, 1, 2, 2})};
  AgreementMatrix wa = agreement_matrix(worked);
  bool worked_ok = wa.a(0, 2) == 2 && wa.a(0, 1) == 0 &&
                   wa.a == oracle::agreement(worked);

  double elapsed = seconds_since(start);
  bool ok = bad == 0 && worked_ok && elapsed < 5.0;
  std::cout << (ok ? "PASS" : "FAIL")
            << "  2. agreement-matrix oracle: 200 random ensembles exact, worked example ("
            << bad << " mismatches, example " << (worked_ok ? "ok" : "wrong") << ", "
            << elapsed << " s)\n";
  return ok;
}

// 3: description length, fitness, and the incremental move delta against
// term-by-term recomputation.
bool objective_oracles() {
  auto start = Clock::now();
  std::mt19937_64 rng(1003);
  int bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int n = 4 + static_cast<int>(rng() % 7);
    int a = 2 + static_cast<int>(rng() % 2);
    int k = 2 + static_cast<int>(rng() % 2);
    if (k > n - 1) k = 2;
    Eigen::MatrixXd x = oracle::random_data(n, a, rng);
    Eigen::VectorXd w = oracle::random_data(a, 1, rng).col(0);
    Labeling c = oracle::random_labeling(n, k, rng);

    AwdlValue val = awdl(c, x, w);
    if (!close(val.l_prime, oracle::awdl_def(c, x, w), 1e-9)) ++bad;
    if (!close(val.l_prime, val.s_m + val.s_d, 1e-12)) ++bad;

    auto members = oracle::random_ensemble(n, k, 5, rng);
    AgreementMatrix agr = agreement_matrix(members);
    if (!close(agreement_fitness(c, agr).f_total, oracle::fitness_def(c, agr.a), 1e-9)) ++bad;

    auto sizes = c.cluster_sizes();
    for (int i = 0; i < n; ++i) {
      if (sizes[static_cast<size_t>(c.assignments[i] - 1)] < 2) continue;
      int target = 1 + static_cast<int>(rng() % k);
      if (target == c.assignments[i]) target = target % k + 1;
      Labeling moved = c;
      moved.assignments[i] = target;
      double want = oracle::awdl_def(moved, x, w) - oracle::awdl_def(c, x, w);
      if (!close(awdl_move_delta(c, x, w, i, target), want, 1e-9)) ++bad;
      break;  // one move per instance
    }
  }
  double elapsed = seconds_since(start);
  bool ok = bad == 0;
  std::cout << (ok ? "PASS" : "FAIL")
            << "  3. objective correctness: 500 random instances, tol 1e-9 (" << bad
            << " mismatches, " << elapsed << " s)\n";
  return ok;
}

// 4: each optimizer stage reaches the exhaustive 2-partition optimum on at
// least 90% of small instances, with strictly monotone accepted-move traces.
bool optimizer_soundness() {
  auto start = Clock::now();
  std::mt19937_64 rng(1004);
  const int trials = 100;
  int hit_ab = 0, hit_ep = 0, hit_af = 0, monotone_bad = 0;

  auto check_monotone = [&](const StageTrace& t, bool minimizing) {
    for (size_t s = 1; s < t.objective.size(); ++s) {
      if (t.moves_accepted[s] == 0) {
        if (t.objective[s] != t.objective[s - 1]) ++monotone_bad;
      } else if (minimizing ? (t.objective[s] >= t.objective[s - 1])
                            : (t.objective[s] <= t.objective[s - 1])) {
        ++monotone_bad;
      }
    }
  };

  for (int trial = 0; trial < trials; ++trial) {
    int n = 5 + static_cast<int>(rng() % 4);
    // two noisy blobs clustered by a k-means ensemble: the optimizers'
    // operating regime, with a uniformly random starting labeling
    std::normal_distribution<double> noise(0.0, 0.7);
    Eigen::MatrixXd x(n, 2);
    for (int i = 0; i < n; ++i) {
      double c = i < n / 2 ? 0.0 : 3.0;
      x(i, 0) = c + noise(rng);
      x(i, 1) = c + noise(rng);
    }
    Eigen::VectorXd w = oracle::random_data(2, 1, rng).col(0).array() + 0.1;
    AgreementMatrix agr = agreement_matrix(run_ensemble(x, 2, 5, rng()));
    Labeling c0 = oracle::random_labeling(n, 2, rng);
    GamoParams params;
    params.seed = rng();

    double best_l = oracle::best_lprime_2part(x, w);
    double best_f = oracle::best_fitness_2part(agr.a);

    StageTrace ab = abmdlgao(c0, x, w, agr, params);
    check_monotone(ab, true);
    if (awdl(ab.final, x, w).l_prime <= best_l + 1e-9) ++hit_ab;

    StageTrace ep = epmdlgao(c0, x, w, params);
    check_monotone(ep, true);
    if (awdl(ep.final, x, w).l_prime <= best_l + 1e-9) ++hit_ep;

    StageTrace af = epafgao(c0, agr, params);
    check_monotone(af, false);
    if (oracle::fitness_def(af.final, agr.a) >= best_f - 1e-9) ++hit_af;
  }
  double elapsed = seconds_since(start);
  bool ok = hit_ab >= 90 && hit_ep >= 90 && hit_af >= 90 && monotone_bad == 0 &&
            elapsed < 120.0;
  std::cout << (ok ? "PASS" : "FAIL")
            << "  4. optimizer soundness: exhaustive optimum hits ab_mdl " << hit_ab
            << "/100, ep_mdl " << hit_ep << "/100, ep_af " << hit_af
            << "/100 (>=90 each), monotonicity violations " << monotone_bad << " ("
            << elapsed << " s)\n";
  return ok;
}

// 5: plain k-means on the bundled iris data lands in the published band.
bool kmeans_baseline() {
  auto start = Clock::now();
  LoadOptions opts;
  opts.label_column = "species";
  Dataset ds = load_csv("data/iris.csv", opts);
  Eigen::MatrixXd xn = normalize(ds.features);
  double sum_nmi = 0, sum_acc = 0;
  const int runs = 100;
  for (int run = 0; run < runs; ++run) {
    Labeling c = kmeans(xn, 3, static_cast<std::uint64_t>(run)).labeling;
    sum_nmi += 100.0 * nmi(c, ds.truth);
    sum_acc += 100.0 * accuracy(c, ds.truth);
  }
  double mean_nmi = sum_nmi / runs, mean_acc = sum_acc / runs;
  double elapsed = seconds_since(start);
  bool ok = mean_nmi >= 64.0 && mean_nmi <= 85.0 && mean_acc >= 77.0 && mean_acc <= 96.0 &&
            elapsed < 60.0;
  std::cout << (ok ? "PASS" : "FAIL")
            << "  5. k-means iris baseline: mean NMI " << mean_nmi
            << " in [64,85], mean accuracy " << mean_acc << " in [77,96] (" << elapsed
            << " s)\n";
  return ok;
}

// 6: the full refinement pipeline beats plain k-means by at least 5 NMI
// points on all three benchmark datasets.
bool pipeline_improvement() {
  auto start = Clock::now();
  ExperimentConfig cfg;
  cfg.runs = 100;
  cfg.seed = 20260819;
  cfg.metrics = {"nmi"};
  fs::path out = fs::temp_directory_path() / "mdlclust_accept6";
  fs::remove_all(out);
  cfg.output_dir = out.string();

  DatasetSpec iris;
  iris.name = "iris";
  iris.path = "data/iris.csv";
  iris.label_column = "species";
  DatasetSpec halfring;
  halfring.name = "halfring";
  halfring.generator = "halfring";
  halfring.n = 400;
  halfring.noise = 0.1;
  halfring.seed = 1;
  DatasetSpec wine;
  wine.name = "wine";
  wine.path = "data/wine.csv";
  wine.label_column = "class";
  cfg.datasets = {iris, halfring, wine};

  MethodSpec km;
  km.name = "kmeans";
  MethodSpec gamo;
  gamo.name = "gamo";
  cfg.methods = {km, gamo};

  ExperimentResult res = run_experiment(cfg);
  bool ok = true;
  std::ostringstream detail;
  for (const ScoreTable& table : res.tables) {
    double mean_km = table.scores.col(0).mean();
    double mean_gamo = table.scores.col(1).mean();
    double gap = mean_gamo - mean_km;
    detail << table.dataset << " +" << gap << " ";
    if (gap < 5.0) ok = false;
  }
  fs::remove_all(out);
  double elapsed = seconds_since(start);
  ok = ok && elapsed < 900.0;
  std::cout << (ok ? "PASS" : "FAIL")
            << "  6. pipeline vs k-means mean NMI gaps (>= +5 required): " << detail.str()
            << "(" << elapsed << " s)\n";
  return ok;
}

// 7: the paired test on hand-computed series and the ranking extremes.
bool statistics_checks() {
  auto vec = [](std::initializer_list<double> vals) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (double x : vals) v[i++] = x;
    return v;
  };
  bool ok = true;

  TTestResult constant = paired_t(vec({3, 4, 5}), vec({1, 2, 3}));
  ok = ok && constant.significant && std::isinf(constant.t) && constant.t > 0 &&
       constant.dof == 2 && constant.mean_diff == 2.0;

  TTestResult identical = paired_t(vec({1, 2, 3}), vec({1, 2, 3}));
  ok = ok && !identical.significant && identical.t == 0.0;

  TTestResult balanced = paired_t(vec({1, 0, 1, 0}), vec({0, 1, 0, 1}));
  ok = ok && !balanced.significant && close(balanced.t, 0.0, 1e-15);

  TTestResult graded = paired_t(vec({1, 2, 3, 4}), vec({0, 0, 0, 0}));
  ok = ok && graded.significant && graded.dof == 3 &&
       close(graded.t, 3.872983346207417, 1e-9);

  Eigen::MatrixXd scores(5, 9);
  for (int run = 0; run < 5; ++run)
    for (int m = 0; m < 9; ++m) scores(run, m) = m + 1;
  std::vector<int> ranks = rank_methods(scores);
  int sum = 0;
  for (size_t m = 0; m < ranks.size(); ++m) sum += ranks[m];
  ok = ok && ranks.size() == 9 && ranks.front() == -8 && ranks.back() == 8 && sum == 0;

  std::cout << (ok ? "PASS" : "FAIL")
            << "  7. statistics: paired t on fixed vectors and 9-method ranking extremes\n";
  return ok;
}

// 8: the CLI run command is byte-deterministic across executions.
bool cli_determinism(const std::string& cli) {
  if (cli.empty()) {
    std::cout << "FAIL  8. determinism: no CLI binary path supplied\n";
    return false;
  }
  fs::path base = fs::temp_directory_path() / "mdlclust_accept8";
  fs::remove_all(base);
  fs::create_directories(base);
  fs::path cfg_path = base / "config.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({
      "runs": 5,
      "seed": 3,
      "metrics": ["nmi", "ari"],
      "datasets": [{"name": "hr", "generator": "halfring", "n": 40, "noise": 0.05, "k": 2}],
      "methods": [{"name": "kmeans"}, {"name": "gamo"}]
    })";
  }
  auto run_once = [&](const std::string& outdir) {
    std::string cmd = "\"" + cli + "\" run --config \"" + cfg_path.string() +
                      "\" --output-dir \"" + outdir + "\" > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  fs::path a = base / "a", b = base / "b";
  int rc1 = run_once(a.string());
  int rc2 = run_once(b.string());
  bool ok = rc1 == 0 && rc2 == 0;
  for (const char* f : {"raw_hr_nmi.csv", "raw_hr_ari.csv"}) {
    std::string fa = slurp(a / f), fb = slurp(b / f);
    if (fa.empty() || fa != fb) ok = false;
  }
  fs::remove_all(base);
  std::cout << (ok ? "PASS" : "FAIL")
            << "  8. determinism: two `run --config` executions, byte-identical raw CSVs (exit "
            << rc1 << "/" << rc2 << ")\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  std::cout.setf(std::ios::fixed);
  std::cout.precision(3);

  int failures = 0;
  auto run = [&failures](const std::function<bool()>& criterion) {
    bool ok = false;
    try {
      ok = criterion();
    } catch (const std::exception& e) {
      std::cout << "FAIL  (exception: " << e.what() << ")\n";
    }
    if (!ok) ++failures;
  };

  run([] { return metric_oracles(); });
  run([] { return agreement_oracle(); });
  run([] { return objective_oracles(); });
  run([] { return optimizer_soundness(); });
  run([] { return kmeans_baseline(); });
  run([] { return pipeline_improvement(); });
  run([] { return statistics_checks(); });
  run([&cli] { return cli_determinism(cli); });

  std::cout << (8 - failures) << " of 8 criteria passed\n";
  return failures;
}
