#pragma once

#include "mdlclust/gamo.hpp"
#include "mdlclust/types.hpp"

namespace mdlclust {

struct TTestResult {
  double t = 0;
  int dof = 0;
  double mean_diff = 0;
  bool significant = false;
};

// Two-sided p-value of Student's t with the given degrees of freedom,
// via the regularized incomplete beta function.
double student_t_two_sided_p(double t, int dof);

double incomplete_beta(double a, double b, double x);

// Paired two-sided t-test on per-run scores. Zero-variance differences are
// decided directly: significant iff the mean difference is nonzero, with t
// reported as signed infinity (0 when the series are identical).
TTestResult paired_t(const Eigen::Ref<const Eigen::VectorXd>& xs,
                     const Eigen::Ref<const Eigen::VectorXd>& ys,
                     double alpha = 0.05);

// Wins minus losses per column over all pairwise paired t-tests. A method
// beats another when the test is significant and its mean score is higher.
// The scores matrix is runs x methods.
std::vector<int> rank_methods(const Eigen::Ref<const Eigen::MatrixXd>& scores,
                              double alpha = 0.05);

struct DatasetSpec {
  std::string name;
  // CSV-backed dataset
  std::string path;
  std::string label_column;
  bool header = true;
  // generated dataset ("halfring")
  std::string generator;
  int n = 400;
  double noise = 0.1;
  std::uint64_t seed = 0;
  int k = 0;  // clusters to fit; 0 means the truth class count
};

struct MethodSpec {
  std::string name = "kmeans";
  // ensemble settings for the agreement-based methods
  std::string ensemble = "hybrid";  // "hybrid" or "kmeans"
  int ensemble_kmeans = 1;          // k-means members in a hybrid ensemble
  int ensemble_r = 5;               // members in a pure k-means ensemble
  double fraction = 0.8;            // subsample share for the initial solution
  GamoParams gamo;                  // stage caps; seed is set per run
};

struct ExperimentConfig {
  int runs = 100;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  std::vector<std::string> metrics = {"accuracy", "fmeasure", "nmi", "ari"};
  std::vector<DatasetSpec> datasets;
  std::vector<MethodSpec> methods;
};

// Strict parse: unknown keys, malformed values, unknown method, metric,
// linkage, or stage names all throw ConfigError.
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

struct ScoreTable {
  std::string dataset;
  std::string metric;
  std::vector<std::string> methods;
  Eigen::MatrixXd scores;  // runs x methods, scaled by 100
};

struct ExperimentResult {
  std::vector<DatasetSummary> summaries;
  std::vector<ScoreTable> tables;  // dataset-major, metric-minor
};

// Runs every method on every dataset cfg.runs times. Run r of every method
// on a dataset draws from seed mix(cfg.seed, dataset, r), so methods are
// paired run by run. Writes raw per-run scores, mean/std summaries, ranking
// reports, and a JSON bundle into cfg.output_dir; reruns of the same config
// produce byte-identical raw score files.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// One labeling for a method on normalized data, everything seeded from
// `seed`. Shared by the experiment harness and the CLI.
Labeling run_method(const MethodSpec& spec, const Eigen::Ref<const Eigen::MatrixXd>& xn,
                    const Eigen::Ref<const Eigen::VectorXd>& w, int k,
                    std::uint64_t seed);

// Builds the ensemble a method spec asks for and returns its agreement
// matrix (for the agreement-based methods).
AgreementMatrix method_agreement(const MethodSpec& spec,
                                 const Eigen::Ref<const Eigen::MatrixXd>& xn, int k,
                                 std::uint64_t seed);

double metric_value(const std::string& metric, const Labeling& pred, const Labeling& truth);

bool method_uses_ensemble(const std::string& name);

// Labels from a CSV holding either a single label column or index,label
// rows; an optional non-numeric header row is skipped.
Labeling read_labels_csv(const std::string& path);

// Score matrix from a CSV with a header of method names; a leading "run"
// column is dropped.
Eigen::MatrixXd read_score_matrix(const std::string& path, std::vector<std::string>& methods);

}  // namespace mdlclust
