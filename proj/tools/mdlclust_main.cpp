#include "mdlclust/bench.hpp"
#include "mdlclust/dataio.hpp"
#include "mdlclust/validation.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace mdlclust;

constexpr const char* kOutputDirEnv = "MDLCLUST_OUTPUT_DIR";

struct ClusterArgs {
  std::string data;
  int k = 0;
  std::string method;
  std::uint64_t seed = 0;
  std::string label_column;
  bool no_header = false;
  std::string ensemble = "hybrid";
  int ensemble_kmeans = 1;
  int ensemble_r = 5;
  double fraction = 0.8;
  std::string dump_agreement;
};

int cmd_run(const std::string& config_path, const std::string& output_dir_flag) {
  ExperimentConfig cfg = load_config(config_path);
  if (!output_dir_flag.empty()) {
    cfg.output_dir = output_dir_flag;
  } else if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
    cfg.output_dir = env;
  }
  ExperimentResult result = run_experiment(cfg);
  for (const auto& s : result.summaries)
    std::printf("{\"name\":\"%s\",\"n\":%lld,\"a\":%lld,\"c\":%d}\n", s.name.c_str(),
                static_cast<long long>(s.n), static_cast<long long>(s.a), s.c);
  std::fprintf(stderr, "results written to %s\n", cfg.output_dir.c_str());
  return 0;
}

int cmd_cluster(const ClusterArgs& args) {
  LoadOptions opts;
  opts.header = !args.no_header;
  opts.label_column = args.label_column;
  Dataset data = load_csv(args.data, opts);
  Eigen::MatrixXd xn = normalize(data.features);
  Eigen::VectorXd w = attribute_weights(xn);

  MethodSpec spec;
  spec.name = args.method;
  spec.ensemble = args.ensemble;
  spec.ensemble_kmeans = args.ensemble_kmeans;
  spec.ensemble_r = args.ensemble_r;
  spec.fraction = args.fraction;

  if (!args.dump_agreement.empty()) {
    if (!method_uses_ensemble(spec.name))
      throw ConfigError("--dump-agreement needs an ensemble-based method");
    AgreementMatrix a = method_agreement(spec, xn, args.k, args.seed);
    std::ofstream out(args.dump_agreement);
    if (!out) throw DataError("cannot write '" + args.dump_agreement + "'");
    for (Eigen::Index i = 0; i < a.a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.a.cols(); ++j)
        out << (j ? "," : "") << a.a(i, j);
      out << "\n";
    }
  }

  Labeling lab = run_method(spec, xn, w, args.k, args.seed);
  std::printf("index,label\n");
  for (Eigen::Index i = 0; i < lab.size(); ++i)
    std::printf("%lld,%d\n", static_cast<long long>(i + 1), lab.assignments[i]);
  return 0;
}

int cmd_metrics(const std::string& pred_path, const std::string& truth_path) {
  Labeling pred = read_labels_csv(pred_path);
  Labeling truth = read_labels_csv(truth_path);
  if (pred.size() != truth.size())
    throw DataError("pred and truth label different sample counts");
  std::printf("{\"accuracy\":%.4f,\"fmeasure\":%.4f,\"nmi\":%.4f,\"ari\":%.4f,\"rand\":%.4f}\n",
              100 * accuracy(pred, truth), 100 * f_measure(pred, truth),
              100 * nmi(pred, truth), 100 * ari(pred, truth),
              100 * rand_index(pred, truth));
  return 0;
}

int cmd_rank(const std::string& scores_path) {
  std::vector<std::string> methods;
  Eigen::MatrixXd scores = read_score_matrix(scores_path, methods);
  if (scores.rows() < 2) throw DataError("ranking needs at least 2 score rows");
  std::vector<int> wl = rank_methods(scores);
  std::printf("# reconstructed scoring: wins minus losses over pairwise paired "
              "t-tests (alpha=0.05), reconstructed from the described protocol\n");
  std::printf("method,wins_minus_losses,rank\n");
  for (size_t i = 0; i < methods.size(); ++i) {
    int rank = 1;
    for (int other : wl)
      if (other > wl[i]) ++rank;
    std::printf("%s,%d,%d\n", methods[i].c_str(), wl[i], rank);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"consensus clustering experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run the experiment grid from a config file");
  std::string config_path, output_dir_flag;
  run->add_option("--config", config_path, "JSON experiment config")->required();
  run->add_option("--output-dir", output_dir_flag,
                  std::string("output directory (overrides config and ") + kOutputDirEnv + ")");

  auto* cluster = app.add_subcommand("cluster", "cluster one CSV and print the labeling");
  ClusterArgs cargs;
  cluster->add_option("--data", cargs.data, "feature CSV")->required();
  cluster->add_option("--k", cargs.k, "number of clusters")->required();
  cluster->add_option("--method", cargs.method, "clustering method")->required();
  cluster->add_option("--seed", cargs.seed, "RNG seed");
  cluster->add_option("--label-column", cargs.label_column,
                      "label column to drop (name or 1-based index)");
  cluster->add_flag("--no-header", cargs.no_header, "CSV has no header row");
  cluster->add_option("--ensemble", cargs.ensemble, "ensemble kind: hybrid or kmeans");
  cluster->add_option("--ensemble-kmeans", cargs.ensemble_kmeans,
                      "k-means members in a hybrid ensemble");
  cluster->add_option("--ensemble-r", cargs.ensemble_r, "members in a k-means ensemble");
  cluster->add_option("--fraction", cargs.fraction, "subsample share for the initial solution");
  cluster->add_option("--dump-agreement", cargs.dump_agreement,
                      "write the ensemble agreement matrix to this CSV");

  auto* metrics = app.add_subcommand("metrics", "score a predicted labeling against truth");
  std::string pred_path, truth_path;
  metrics->add_option("--pred", pred_path, "predicted labels CSV")->required();
  metrics->add_option("--truth", truth_path, "ground-truth labels CSV")->required();

  auto* rank = app.add_subcommand("rank", "rank methods from a raw score CSV");
  std::string scores_path;
  rank->add_option("--scores", scores_path, "score CSV (header of method names)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, output_dir_flag);
    if (cluster->parsed()) return cmd_cluster(cargs);
    if (metrics->parsed()) return cmd_metrics(pred_path, truth_path);
    return cmd_rank(scores_path);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
