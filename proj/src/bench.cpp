#include "mdlclust/bench.hpp"

#include "mdlclust/baseclust.hpp"
#include "mdlclust/consensus.hpp"
#include "mdlclust/dataio.hpp"
#include "mdlclust/validation.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace mdlclust {

namespace {

using ordered_json = nlohmann::ordered_json;

// Continued-fraction core of the regularized incomplete beta (Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-15;
  constexpr double kTiny = 1e-300;

  double qab = a + b, qap = a + 1, qam = a - 1;
  double c = 1, d = 1 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1) < kEps) break;
  }
  return h;
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt_mean_std(double mean, double std) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.2f\xC2\xB1%.2f", mean, std);
  return buf;
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    size_t b = cell.find_first_not_of(' ');
    cells.push_back(b == std::string::npos ? "" : cell.substr(b));
  }
  return cells;
}

const std::set<std::string>& known_methods() {
  static const std::set<std::string> names = {
      "kmeans", "single",   "complete", "average",  "ward",
      "fcm",    "abmdlgao", "epmdlgao", "epafgao",  "gamo"};
  return names;
}

const std::set<std::string>& known_metrics() {
  static const std::set<std::string> names = {"accuracy", "fmeasure", "nmi", "ari", "rand"};
  return names;
}

void reject_unknown_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <typename T>
T get_field(const ordered_json& obj, const std::string& key, T fallback,
            const std::string& where) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("bad value for '" + key + "' in " + where);
  }
}

DatasetSpec parse_dataset(const ordered_json& j, size_t idx) {
  const std::string where = "datasets[" + std::to_string(idx) + "]";
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  reject_unknown_keys(j, {"name", "path", "label_column", "header", "generator", "n",
                          "noise", "seed", "k"},
                      where);
  DatasetSpec ds;
  ds.name = get_field<std::string>(j, "name", "", where);
  ds.path = get_field<std::string>(j, "path", "", where);
  ds.label_column = get_field<std::string>(j, "label_column", "", where);
  ds.header = get_field<bool>(j, "header", true, where);
  ds.generator = get_field<std::string>(j, "generator", "", where);
  ds.n = get_field<int>(j, "n", 400, where);
  ds.noise = get_field<double>(j, "noise", 0.1, where);
  ds.seed = get_field<std::uint64_t>(j, "seed", 0, where);
  ds.k = get_field<int>(j, "k", 0, where);

  if (ds.name.empty()) throw ConfigError(where + " needs a name");
  if (ds.path.empty() == ds.generator.empty())
    throw ConfigError(where + " needs exactly one of 'path' or 'generator'");
  if (!ds.generator.empty()) {
    if (ds.generator != "halfring")
      throw ConfigError(where + ": unknown generator '" + ds.generator + "'");
    if (ds.n < 4 || ds.n % 2 != 0)
      throw ConfigError(where + ": halfring n must be even and >= 4");
    if (ds.noise < 0) throw ConfigError(where + ": noise must be >= 0");
  }
  if (ds.k < 0) throw ConfigError(where + ": k must be >= 0");
  return ds;
}

MethodSpec parse_method(const ordered_json& j, size_t idx) {
  const std::string where = "methods[" + std::to_string(idx) + "]";
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  reject_unknown_keys(j, {"name", "ensemble", "ensemble_kmeans", "ensemble_r", "fraction",
                          "max_outer_iters", "patience", "stages"},
                      where);
  MethodSpec m;
  m.name = get_field<std::string>(j, "name", "", where);
  if (!known_methods().count(m.name))
    throw ConfigError(where + ": unknown method '" + m.name + "'");
  m.ensemble = get_field<std::string>(j, "ensemble", "hybrid", where);
  if (m.ensemble != "hybrid" && m.ensemble != "kmeans")
    throw ConfigError(where + ": ensemble must be 'hybrid' or 'kmeans'");
  m.ensemble_kmeans = get_field<int>(j, "ensemble_kmeans", 1, where);
  if (m.ensemble_kmeans < 1 || m.ensemble_kmeans % 2 == 0)
    throw ConfigError(where + ": ensemble_kmeans must be odd and >= 1");
  m.ensemble_r = get_field<int>(j, "ensemble_r", 5, where);
  if (m.ensemble_r < 1 || m.ensemble_r % 2 == 0)
    throw ConfigError(where + ": ensemble_r must be odd and >= 1");
  m.fraction = get_field<double>(j, "fraction", 0.8, where);
  if (!(m.fraction > 0) || m.fraction > 1)
    throw ConfigError(where + ": fraction must be in (0, 1]");
  m.gamo.max_outer_iters = get_field<int>(j, "max_outer_iters", 100, where);
  m.gamo.patience = get_field<int>(j, "patience", 10, where);
  if (m.gamo.max_outer_iters < 1 || m.gamo.patience < 1)
    throw ConfigError(where + ": max_outer_iters and patience must be >= 1");
  if (j.contains("stages")) {
    if (m.name != "gamo")
      throw ConfigError(where + ": 'stages' only applies to the gamo method");
    if (!j.at("stages").is_array() || j.at("stages").empty())
      throw ConfigError(where + ": stages must be a non-empty array");
    m.gamo.stage_order.clear();
    for (const auto& s : j.at("stages")) {
      if (!s.is_string()) throw ConfigError(where + ": stages must be strings");
      try {
        m.gamo.stage_order.push_back(stage_from_string(s.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
  }
  return m;
}

Dataset realize_dataset(const DatasetSpec& spec) {
  if (!spec.generator.empty()) {
    Dataset ds = generate_halfring(spec.n, spec.noise, spec.seed);
    ds.name = spec.name;
    return ds;
  }
  LoadOptions opts;
  opts.header = spec.header;
  opts.label_column = spec.label_column;
  opts.name = spec.name;
  return load_csv(spec.path, opts);
}

struct LinkageCache {
  // labelings for (linkage, k) on one dataset, built on first use
  std::vector<std::pair<std::pair<Linkage, int>, Labeling>> entries;

  const Labeling& get(const Eigen::Ref<const Eigen::MatrixXd>& xn, int k, Linkage link) {
    for (const auto& e : entries)
      if (e.first.first == link && e.first.second == k) return e.second;
    entries.push_back({{link, k}, agglomerative(xn, k, link)});
    return entries.back().second;
  }
};

AgreementMatrix cached_agreement(const MethodSpec& spec,
                                 const Eigen::Ref<const Eigen::MatrixXd>& xn, int k,
                                 std::uint64_t seed, LinkageCache& cache) {
  std::uint64_t ensemble_seed = mix_seed(seed, 12);
  std::vector<Labeling> members;
  if (spec.ensemble == "kmeans") {
    members = run_ensemble(xn, k, spec.ensemble_r, ensemble_seed);
  } else {
    for (int m = 0; m < spec.ensemble_kmeans; ++m)
      members.push_back(
          kmeans(xn, k, mix_seed(ensemble_seed, static_cast<std::uint64_t>(m))).labeling);
    for (Linkage link : {Linkage::single, Linkage::complete, Linkage::average, Linkage::ward})
      members.push_back(cache.get(xn, k, link));
  }
  return agreement_matrix(members);
}

Labeling run_method_cached(const MethodSpec& spec,
                           const Eigen::Ref<const Eigen::MatrixXd>& xn,
                           const Eigen::Ref<const Eigen::VectorXd>& w, int k,
                           std::uint64_t seed, LinkageCache& cache) {
  const std::string& name = spec.name;
  if (!known_methods().count(name))
    throw ConfigError("unknown method '" + name + "'");
  if (name == "kmeans") return kmeans(xn, k, seed).labeling;
  if (name == "single" || name == "complete" || name == "average" || name == "ward")
    return cache.get(xn, k, linkage_from_string(name));
  if (name == "fcm") return fcm(xn, k, seed).labeling;

  Labeling c0 = initial_solution(xn, k, spec.fraction, mix_seed(seed, 11));
  GamoParams params = spec.gamo;
  params.seed = mix_seed(seed, 13);
  if (name == "epmdlgao") return epmdlgao(c0, xn, w, params).final;

  AgreementMatrix a = cached_agreement(spec, xn, k, seed, cache);
  if (name == "abmdlgao") return abmdlgao(c0, xn, w, a, params).final;
  if (name == "epafgao") return epafgao(c0, a, params).final;
  return gamo_pipeline(c0, xn, w, a, params).final;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (a <= 0 || b <= 0)
    throw std::invalid_argument("incomplete_beta: a and b must be positive");
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  double lbeta = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  double front = std::exp(lbeta + a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1) / (a + b + 2)) return front * betacf(a, b, x) / a;
  return 1 - front * betacf(b, a, 1 - x) / b;
}

double student_t_two_sided_p(double t, int dof) {
  if (dof < 1) throw std::invalid_argument("student_t_two_sided_p: dof must be >= 1");
  if (std::isinf(t)) return 0;
  double nu = dof;
  return incomplete_beta(nu / 2, 0.5, nu / (nu + t * t));
}

TTestResult paired_t(const Eigen::Ref<const Eigen::VectorXd>& xs,
                     const Eigen::Ref<const Eigen::VectorXd>& ys, double alpha) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("paired_t: series differ in length");
  const Eigen::Index k = xs.size();
  if (k < 2) throw std::invalid_argument("paired_t: need at least 2 paired scores");

  Eigen::VectorXd d = xs - ys;
  TTestResult res;
  res.dof = static_cast<int>(k - 1);
  res.mean_diff = d.mean();
  double var = (d.array() - res.mean_diff).square().sum() / static_cast<double>(k - 1);
  if (var == 0) {
    if (res.mean_diff == 0) {
      res.t = 0;
      res.significant = false;
    } else {
      res.t = res.mean_diff > 0 ? std::numeric_limits<double>::infinity()
                                : -std::numeric_limits<double>::infinity();
      res.significant = true;
    }
    return res;
  }
  res.t = res.mean_diff * std::sqrt(static_cast<double>(k)) / std::sqrt(var);
  res.significant = student_t_two_sided_p(res.t, res.dof) < alpha;
  return res;
}

std::vector<int> rank_methods(const Eigen::Ref<const Eigen::MatrixXd>& scores,
                              double alpha) {
  const Eigen::Index m = scores.cols();
  if (m < 2) throw std::invalid_argument("rank_methods: ranking is pairwise, need 2 methods");
  std::vector<int> score(static_cast<size_t>(m), 0);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      TTestResult tt = paired_t(scores.col(i), scores.col(j), alpha);
      if (!tt.significant) continue;
      if (tt.mean_diff > 0) {
        ++score[static_cast<size_t>(i)];
        --score[static_cast<size_t>(j)];
      } else {
        ++score[static_cast<size_t>(j)];
        --score[static_cast<size_t>(i)];
      }
    }
  return score;
}

ExperimentConfig parse_config_text(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  reject_unknown_keys(j, {"runs", "seed", "output_dir", "metrics", "datasets", "methods"},
                      "config");

  ExperimentConfig cfg;
  cfg.runs = get_field<int>(j, "runs", 100, "config");
  if (cfg.runs < 2) throw ConfigError("runs must be >= 2 (paired t-tests need 2)");
  cfg.seed = get_field<std::uint64_t>(j, "seed", 0, "config");
  cfg.output_dir = get_field<std::string>(j, "output_dir", "out", "config");
  if (cfg.output_dir.empty()) throw ConfigError("output_dir must not be empty");

  if (j.contains("metrics")) {
    if (!j.at("metrics").is_array() || j.at("metrics").empty())
      throw ConfigError("metrics must be a non-empty array");
    cfg.metrics.clear();
    for (const auto& s : j.at("metrics")) {
      if (!s.is_string() || !known_metrics().count(s.get<std::string>()))
        throw ConfigError("unknown metric in config");
      cfg.metrics.push_back(s.get<std::string>());
    }
  }

  if (!j.contains("datasets") || !j.at("datasets").is_array() || j.at("datasets").empty())
    throw ConfigError("config needs a non-empty 'datasets' array");
  for (size_t i = 0; i < j.at("datasets").size(); ++i)
    cfg.datasets.push_back(parse_dataset(j.at("datasets")[i], i));

  if (!j.contains("methods") || !j.at("methods").is_array() || j.at("methods").size() < 2)
    throw ConfigError("config needs a 'methods' array with at least 2 entries (ranking is pairwise)");
  for (size_t i = 0; i < j.at("methods").size(); ++i)
    cfg.methods.push_back(parse_method(j.at("methods")[i], i));

  std::set<std::string> seen;
  for (const auto& m : cfg.methods)
    if (!seen.insert(m.name).second)
      throw ConfigError("duplicate method '" + m.name + "' in config");
  std::set<std::string> ds_seen;
  for (const auto& d : cfg.datasets)
    if (!ds_seen.insert(d.name).second)
      throw ConfigError("duplicate dataset '" + d.name + "' in config");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

bool method_uses_ensemble(const std::string& name) {
  return name == "abmdlgao" || name == "epafgao" || name == "gamo";
}

AgreementMatrix method_agreement(const MethodSpec& spec,
                                 const Eigen::Ref<const Eigen::MatrixXd>& xn, int k,
                                 std::uint64_t seed) {
  LinkageCache cache;
  return cached_agreement(spec, xn, k, seed, cache);
}

Labeling run_method(const MethodSpec& spec, const Eigen::Ref<const Eigen::MatrixXd>& xn,
                    const Eigen::Ref<const Eigen::VectorXd>& w, int k,
                    std::uint64_t seed) {
  LinkageCache cache;
  return run_method_cached(spec, xn, w, k, seed, cache);
}

double metric_value(const std::string& metric, const Labeling& pred, const Labeling& truth) {
  if (metric == "accuracy") return accuracy(pred, truth);
  if (metric == "fmeasure") return f_measure(pred, truth);
  if (metric == "nmi") return nmi(pred, truth);
  if (metric == "ari") return ari(pred, truth);
  if (metric == "rand") return rand_index(pred, truth);
  throw ConfigError("unknown metric '" + metric + "'");
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);

  ExperimentResult result;
  std::vector<std::string> method_names;
  for (const auto& m : cfg.methods) method_names.push_back(m.name);

  for (const auto& spec : cfg.datasets) {
    Dataset data = realize_dataset(spec);
    if (!data.has_truth)
      throw ConfigError("dataset '" + spec.name + "' needs a label column for scoring");
    const int k = spec.k > 0 ? spec.k : data.truth.k;
    Eigen::MatrixXd xn = normalize(data.features);
    Eigen::VectorXd w = attribute_weights(xn);
    result.summaries.push_back(summarize(data));

    LinkageCache cache;
    std::vector<Eigen::MatrixXd> scores(cfg.metrics.size());
    for (auto& s : scores)
      s.resize(cfg.runs, static_cast<Eigen::Index>(cfg.methods.size()));

    std::uint64_t ds_seed = mix_seed(cfg.seed, hash_string(spec.name));
    for (int run = 0; run < cfg.runs; ++run) {
      std::uint64_t run_seed = mix_seed(ds_seed, static_cast<std::uint64_t>(run));
      for (size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        Labeling pred = run_method_cached(cfg.methods[mi], xn, w, k, run_seed, cache);
        for (size_t gi = 0; gi < cfg.metrics.size(); ++gi)
          scores[gi](run, static_cast<Eigen::Index>(mi)) =
              100.0 * metric_value(cfg.metrics[gi], pred, data.truth);
      }
    }

    for (size_t gi = 0; gi < cfg.metrics.size(); ++gi) {
      ScoreTable table;
      table.dataset = spec.name;
      table.metric = cfg.metrics[gi];
      table.methods = method_names;
      table.scores = scores[gi];
      result.tables.push_back(std::move(table));
    }
  }

  // raw per-run scores, one file per dataset and metric
  for (const auto& table : result.tables) {
    fs::path path = fs::path(cfg.output_dir) /
                    ("raw_" + table.dataset + "_" + table.metric + ".csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "run";
    for (const auto& m : table.methods) out << "," << m;
    out << "\n";
    for (Eigen::Index r = 0; r < table.scores.rows(); ++r) {
      out << (r + 1);
      for (Eigen::Index c = 0; c < table.scores.cols(); ++c)
        out << "," << fmt_g(table.scores(r, c));
      out << "\n";
    }
  }

  // mean/std summary and ranking report per metric
  for (const auto& metric : cfg.metrics) {
    fs::path spath = fs::path(cfg.output_dir) / ("summary_" + metric + ".csv");
    std::ofstream sum(spath);
    if (!sum) throw std::runtime_error("cannot write " + spath.string());
    sum << "dataset";
    for (const auto& m : method_names) sum << "," << m;
    sum << "\n";

    std::ofstream rankout;
    if (cfg.runs >= 2) {
      fs::path rpath = fs::path(cfg.output_dir) / ("ranking_" + metric + ".csv");
      rankout.open(rpath);
      if (!rankout) throw std::runtime_error("cannot write " + rpath.string());
      rankout << "# reconstructed scoring: wins minus losses over pairwise paired "
                 "t-tests (alpha=0.05), reconstructed from the described protocol\n";
      rankout << "dataset,method,wins_minus_losses,rank\n";
    }

    for (const auto& table : result.tables) {
      if (table.metric != metric) continue;
      sum << table.dataset;
      for (Eigen::Index c = 0; c < table.scores.cols(); ++c) {
        double mean = table.scores.col(c).mean();
        double sd = table.scores.rows() > 1
                        ? std::sqrt((table.scores.col(c).array() - mean).square().sum() /
                                    static_cast<double>(table.scores.rows() - 1))
                        : 0.0;
        sum << "," << fmt_mean_std(mean, sd);
      }
      sum << "\n";

      if (cfg.runs >= 2) {
        std::vector<int> wl = rank_methods(table.scores);
        for (size_t mi = 0; mi < method_names.size(); ++mi) {
          int rank = 1;
          for (int other : wl)
            if (other > wl[mi]) ++rank;
          rankout << table.dataset << "," << method_names[mi] << "," << wl[mi] << ","
                  << rank << "\n";
        }
      }
    }
  }

  // bundle: config echo plus aggregate results
  ordered_json bundle;
  ordered_json cfg_echo;
  cfg_echo["runs"] = cfg.runs;
  cfg_echo["seed"] = cfg.seed;
  cfg_echo["output_dir"] = cfg.output_dir;
  cfg_echo["metrics"] = cfg.metrics;
  cfg_echo["datasets"] = ordered_json::array();
  for (const auto& d : cfg.datasets) {
    ordered_json jd;
    jd["name"] = d.name;
    if (!d.generator.empty()) {
      jd["generator"] = d.generator;
      jd["n"] = d.n;
      jd["noise"] = d.noise;
      jd["seed"] = d.seed;
    } else {
      jd["path"] = d.path;
      jd["label_column"] = d.label_column;
      jd["header"] = d.header;
    }
    jd["k"] = d.k;
    cfg_echo["datasets"].push_back(jd);
  }
  cfg_echo["methods"] = ordered_json::array();
  for (const auto& m : cfg.methods) {
    ordered_json jm;
    jm["name"] = m.name;
    if (method_uses_ensemble(m.name)) {
      jm["ensemble"] = m.ensemble;
      if (m.ensemble == "hybrid")
        jm["ensemble_kmeans"] = m.ensemble_kmeans;
      else
        jm["ensemble_r"] = m.ensemble_r;
    }
    if (method_uses_ensemble(m.name) || m.name == "epmdlgao") {
      jm["fraction"] = m.fraction;
      jm["max_outer_iters"] = m.gamo.max_outer_iters;
      jm["patience"] = m.gamo.patience;
      if (m.name == "gamo") {
        jm["stages"] = ordered_json::array();
        for (Stage s : m.gamo.stage_order) jm["stages"].push_back(to_string(s));
      }
    }
    cfg_echo["methods"].push_back(jm);
  }
  bundle["config"] = cfg_echo;
  bundle["scoring"] = "reconstructed";
  bundle["datasets"] = ordered_json::array();
  for (const auto& s : result.summaries) {
    ordered_json js;
    js["name"] = s.name;
    js["n"] = s.n;
    js["a"] = s.a;
    js["c"] = s.c;
    bundle["datasets"].push_back(js);
  }
  bundle["results"] = ordered_json::array();
  for (const auto& table : result.tables) {
    ordered_json jt;
    jt["dataset"] = table.dataset;
    jt["metric"] = table.metric;
    jt["methods"] = table.methods;
    ordered_json means = ordered_json::array(), stds = ordered_json::array();
    for (Eigen::Index c = 0; c < table.scores.cols(); ++c) {
      double mean = table.scores.col(c).mean();
      double sd = table.scores.rows() > 1
                      ? std::sqrt((table.scores.col(c).array() - mean).square().sum() /
                                  static_cast<double>(table.scores.rows() - 1))
                      : 0.0;
      means.push_back(mean);
      stds.push_back(sd);
    }
    jt["mean"] = means;
    jt["std"] = stds;
    bundle["results"].push_back(jt);
  }
  fs::path bpath = fs::path(cfg.output_dir) / "bundle.json";
  std::ofstream bout(bpath);
  if (!bout) throw std::runtime_error("cannot write " + bpath.string());
  bout << bundle.dump(2) << "\n";

  return result;
}

Labeling read_labels_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::vector<int> raw;
  std::string line;
  size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_cells(line);
    if (cells.empty() || cells.size() > 2)
      throw DataError("'" + path + "' row " + std::to_string(lineno) +
                      ": expected 1 or 2 cells");
    const std::string& cell = cells.back();
    try {
      size_t used = 0;
      int v = std::stoi(cell, &used);
      if (used != cell.size()) throw std::invalid_argument("trailing");
      raw.push_back(v);
      first = false;
    } catch (const std::exception&) {
      if (first) {  // header row
        first = false;
        continue;
      }
      throw DataError("'" + path + "' row " + std::to_string(lineno) +
                      ": cannot parse label '" + cell + "'");
    }
  }
  if (raw.empty()) throw DataError("'" + path + "' holds no labels");

  std::vector<int> distinct(raw);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  Labeling lab;
  lab.k = static_cast<int>(distinct.size());
  lab.assignments.resize(static_cast<Eigen::Index>(raw.size()));
  for (size_t i = 0; i < raw.size(); ++i) {
    auto it = std::lower_bound(distinct.begin(), distinct.end(), raw[i]);
    lab.assignments[static_cast<Eigen::Index>(i)] =
        static_cast<int>(it - distinct.begin()) + 1;
  }
  return lab;
}

Eigen::MatrixXd read_score_matrix(const std::string& path,
                                  std::vector<std::string>& methods) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::string line;
  std::vector<std::vector<double>> rows;
  methods.clear();
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells = split_cells(line);
    if (methods.empty()) {
      methods = cells;
      if (!methods.empty() && methods.front() == "run") methods.erase(methods.begin());
      if (methods.empty()) throw DataError("'" + path + "' header holds no method names");
      continue;
    }
    size_t offset = cells.size() == methods.size() + 1 ? 1 : 0;
    if (cells.size() - offset != methods.size())
      throw DataError("'" + path + "' row " + std::to_string(lineno) +
                      " does not match the header");
    std::vector<double> row;
    for (size_t c = offset; c < cells.size(); ++c) {
      try {
        row.push_back(std::stod(cells[c]));
      } catch (const std::exception&) {
        throw DataError("'" + path + "' row " + std::to_string(lineno) +
                        ": cannot parse score '" + cells[c] + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("'" + path + "' holds no score rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(methods.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < methods.size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

}  // namespace mdlclust
