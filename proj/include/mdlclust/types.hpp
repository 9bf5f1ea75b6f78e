#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdlclust {

// Sample indices are 0-based (Eigen rows); cluster ids are 1-based, so a
// labeling over n samples maps each sample to an id in 1..k.
struct Labeling {
  Eigen::VectorXi assignments;
  int k = 0;

  Eigen::Index size() const { return assignments.size(); }

  bool valid() const {
    if (k < 1) return false;
    for (Eigen::Index i = 0; i < assignments.size(); ++i)
      if (assignments[i] < 1 || assignments[i] > k) return false;
    return true;
  }

  // True when every id in 1..k labels at least one sample.
  bool uses_all_ids() const {
    std::vector<char> seen(static_cast<size_t>(k), 0);
    for (Eigen::Index i = 0; i < assignments.size(); ++i) {
      int c = assignments[i];
      if (c < 1 || c > k) return false;
      seen[static_cast<size_t>(c - 1)] = 1;
    }
    for (char s : seen)
      if (!s) return false;
    return true;
  }

  std::vector<int> cluster_sizes() const {
    std::vector<int> sizes(static_cast<size_t>(k), 0);
    for (Eigen::Index i = 0; i < assignments.size(); ++i)
      ++sizes[static_cast<size_t>(assignments[i] - 1)];
    return sizes;
  }
};

struct Dataset {
  std::string name;
  Eigen::MatrixXd features;            // n x a, one row per sample
  std::vector<std::string> feature_names;
  bool has_truth = false;
  Labeling truth;                      // valid only when has_truth
  std::vector<std::string> class_names;  // index id-1, when has_truth
};

struct DatasetSummary {
  std::string name;
  Eigen::Index n = 0;  // samples
  Eigen::Index a = 0;  // attributes
  int c = 0;           // classes (0 when no truth column)
};

// Bad configuration (CLI flags, config file contents). CLI exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable or malformed input data. CLI exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// splitmix64 step, used to derive independent RNG streams from one base seed.
inline std::uint64_t mix_seed(std::uint64_t state, std::uint64_t salt) {
  std::uint64_t z = state + 0x9e3779b97f4a7c15ULL + salt;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_string(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace mdlclust
