#pragma once

#include "mdlclust/types.hpp"

namespace mdlclust {

// Cross-tabulation of two labelings over the same samples: entry (i, j)
// counts samples with id i+1 in p1 and id j+1 in p2.
Eigen::MatrixXi contingency(const Labeling& p1, const Labeling& p2);

// Unordered sample pairs split by co-assignment: `a` together in both
// labelings, `b` together only in p1, `c` together only in p2, `d` in
// neither. a + b + c + d = n(n-1)/2.
struct PairCounts {
  long long a = 0, b = 0, c = 0, d = 0;
};

PairCounts pair_counts(const Labeling& p1, const Labeling& p2);

// Injective map from pred ids to truth ids maximizing matched samples
// (optimal assignment on the contingency table). Entry id-1 holds the truth
// id, or 0 for pred ids left unmatched when pred has more ids than truth.
std::vector<int> align_labels(const Labeling& pred, const Labeling& truth);

// Fraction of samples whose aligned pred id equals the truth id. The only
// metric here that is not symmetric in its arguments.
double accuracy(const Labeling& pred, const Labeling& truth);

// Pairwise F-measure 2a / (2a + b + c); 0 when a == 0.
double f_measure(const Labeling& p1, const Labeling& p2);

// Mutual information normalized by the mean of the two entropies (natural
// log, 0*log 0 = 0). Both labelings single-cluster gives 1, exactly one
// single-cluster gives 0. Result clamped to [0, 1].
double nmi(const Labeling& p1, const Labeling& p2);

// Chance-adjusted pair agreement; 0 when the adjustment denominator is 0.
double ari(const Labeling& p1, const Labeling& p2);

// Plain pair agreement (a + d) / (a + b + c + d).
double rand_index(const Labeling& p1, const Labeling& p2);

}  // namespace mdlclust
