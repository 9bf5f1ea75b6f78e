#pragma once

#include "mdlclust/types.hpp"

namespace mdlclust {

struct LoadOptions {
  bool header = true;
  // Column holding class labels: a name (requires header) or a 1-based index
  // given as digits. Empty means the file has no label column.
  std::string label_column;
  std::string name;  // dataset name; defaults to the file stem
};

// Reads a comma-separated file of numeric features plus an optional
// categorical label column. Throws DataError on unreadable files, ragged
// rows, missing values, or non-numeric feature cells; messages carry the
// 1-based row number.
Dataset load_csv(const std::string& path, const LoadOptions& opts = {});

// Two interleaving half-circle arcs in 2-D, n/2 points each: the first arc is
// the upper unit half-circle, the second is shifted to interleave with it
// (valley at (1, -0.4)). Angles are evenly spaced over [0, pi]; iid Gaussian
// noise of the given std is added to both coordinates. Truth is arc
// membership. n must be even and >= 4.
Dataset generate_halfring(int n, double noise = 0.1, std::uint64_t seed = 0);

// Min-max normalization per column onto [0, 1]; constant columns map to all
// zeros. Idempotent.
Eigen::MatrixXd normalize(const Eigen::Ref<const Eigen::MatrixXd>& features);

// Dispersion-based attribute weights over normalized features: D_j is the
// sample variance (n-1 denominator) of column j and w_j = D_j / max_j D_j,
// so the most dispersed attribute gets weight 1 and constant columns get 0.
Eigen::VectorXd attribute_weights(const Eigen::Ref<const Eigen::MatrixXd>& normalized);

DatasetSummary summarize(const Dataset& ds);

}  // namespace mdlclust
