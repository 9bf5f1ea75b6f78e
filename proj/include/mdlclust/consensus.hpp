#pragma once

#include "mdlclust/types.hpp"

namespace mdlclust {

// One-hot indicator over an ensemble: one k-column block per member, so h is
// n x (r*k) with exactly one 1 per block and row sums equal to r. Columns
// within a block follow cluster id order.
struct IndicatorMatrix {
  Eigen::MatrixXi h;
  int r = 0;  // ensemble members
  int k = 0;  // clusters per member
};

// Pairwise co-assignment counts a(i,q) = number of members putting i and q in
// the same cluster. Symmetric, zero diagonal, entries in 0..r.
struct AgreementMatrix {
  Eigen::MatrixXi a;
  int r = 0;
};

// All members must label the same n samples with the same k.
IndicatorMatrix build_indicator(const std::vector<Labeling>& members);

AgreementMatrix agreement_from_indicator(const IndicatorMatrix& h);

AgreementMatrix agreement_matrix(const std::vector<Labeling>& members);

// r independent k-means labelings with seeds derived from the given seed.
// r must be odd (majority votes on co-assignment cannot tie).
std::vector<Labeling> run_ensemble(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                   int k, int r, std::uint64_t seed);

// kmeans_members k-means labelings plus the four agglomerative variants
// (single, complete, average, ward). The total r = kmeans_members + 4 must be
// odd. This mixed composition is the experiment default: homogeneous k-means
// ensembles concentrate agreement mass on the k-means partition itself, which
// leaves the agreement-driven stages nothing to improve on.
std::vector<Labeling> run_hybrid_ensemble(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                          int k, int kmeans_members,
                                          std::uint64_t seed);

// Clusters a random ceil(fraction*n) subsample with k-means and assigns every
// held-out sample to the nearest resulting centroid.
Labeling initial_solution(const Eigen::Ref<const Eigen::MatrixXd>& x, int k,
                          double fraction, std::uint64_t seed);

}  // namespace mdlclust
