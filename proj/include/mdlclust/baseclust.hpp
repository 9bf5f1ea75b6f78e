#pragma once

#include "mdlclust/types.hpp"

namespace mdlclust {

struct KMeansParams {
  int max_iter = 100;
  double tol = 1e-4;  // stop when the largest centroid shift drops below this
};

struct KMeansResult {
  Labeling labeling;
  Eigen::MatrixXd centroids;          // k x a
  std::vector<double> inertia_trace;  // WCSS after each assignment step
  int iters = 0;
};

// Lloyd iterations from k-means++ seeding. Assignment ties go to the lowest
// cluster id; a cluster left empty is repaired by moving in the point
// farthest from its centroid (taken from a cluster of size >= 2).
KMeansResult kmeans(const Eigen::Ref<const Eigen::MatrixXd>& x, int k,
                    std::uint64_t seed, const KMeansParams& params = {});

// Nearest centroid in Euclidean distance, ties to the lowest centroid row.
Labeling assign_nearest_centroid(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                 const Eigen::Ref<const Eigen::MatrixXd>& centroids);

enum class Linkage { single, complete, average, ward };

Linkage linkage_from_string(const std::string& name);
std::string to_string(Linkage linkage);

// Bottom-up merging by Lance-Williams updates: single/complete/average run on
// Euclidean distances, ward on squared Euclidean. Merge ties resolve to the
// lexicographically lowest active pair, so the result is deterministic.
// Cluster ids follow the order of each cluster's lowest sample index.
Labeling agglomerative(const Eigen::Ref<const Eigen::MatrixXd>& x, int k,
                       Linkage linkage);

struct FcmParams {
  double m = 2.0;  // fuzzifier
  int max_iter = 150;
  double tol = 1e-5;  // stop when the largest membership change drops below this
};

struct FcmResult {
  Labeling labeling;             // hard labels by maximum membership
  Eigen::MatrixXd memberships;   // n x k, rows sum to 1
  Eigen::MatrixXd centers;       // k x a
  int iters = 0;
};

// Fuzzy c-means from random memberships. Hard labels take the maximum
// membership (ties to the lowest id); ids left unused are repaired by
// relabeling the sample with the highest membership for them.
FcmResult fcm(const Eigen::Ref<const Eigen::MatrixXd>& x, int k,
              std::uint64_t seed, const FcmParams& params = {});

}  // namespace mdlclust
