#pragma once

#include "mdlclust/consensus.hpp"
#include "mdlclust/types.hpp"

namespace mdlclust {

// Attribute-weighted description length of a labeling. s_m sums the weighted
// cluster means, s_d the weighted absolute deviations of every sample from
// its cluster mean, and the total is their sum (lower is better).
struct AwdlValue {
  double s_m = 0;
  double s_d = 0;
  double l_prime = 0;
};

AwdlValue awdl(const Labeling& c, const Eigen::Ref<const Eigen::MatrixXd>& x,
               const Eigen::Ref<const Eigen::VectorXd>& w);

// Change in l_prime from moving one sample (0-based) to the target cluster id
// (1-based). Recomputes only the two affected clusters; target == current
// cluster gives 0. Moving the last sample out of its cluster is rejected.
double awdl_move_delta(const Labeling& c, const Eigen::Ref<const Eigen::MatrixXd>& x,
                       const Eigen::Ref<const Eigen::VectorXd>& w, Eigen::Index sample,
                       int target);

// Threshold between agreement and disagreement: B = (max - min) * 0.6 + min
// over the off-diagonal entries of the agreement matrix.
double consensus_threshold(const AgreementMatrix& a);

// Fitness of a labeling against the shifted agreement matrix a' = a - B
// (diagonal kept at zero): per-cluster values sum a' over unordered
// within-cluster pairs (singletons contribute 0), and f_total is their sum
// (higher is better).
struct AgreementFitness {
  double b = 0;
  double f_total = 0;
  Eigen::VectorXd per_cluster;  // index id-1
};

AgreementFitness agreement_fitness(const Labeling& c, const AgreementMatrix& a);

// How movable a sample is given the ensemble's verdict. With max_q the
// highest agreement between the sample and a co-member and max_i the highest
// agreement with any sample, v1 scales the cluster-local peak by peer-count
// ratio (n_q co-members, n_i = n-1 others), v2 = max_q / r, and the
// settledness v is min(v1, v2) when max_q reaches max_i and 0 otherwise.
// v_p = 1 - v is the probability the optimizer selects the sample. A sample
// alone in its cluster has v_p = 1.
struct DisplacementProbability {
  double v1 = 0;
  double v2 = 0;
  double v = 0;
  double v_p = 1;
};

DisplacementProbability displacement_probability(Eigen::Index sample, const Labeling& c,
                                                 const AgreementMatrix& a);

}  // namespace mdlclust
