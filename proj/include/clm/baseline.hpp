#ifndef CLM_BASELINE_HPP
#define CLM_BASELINE_HPP

#include "clm/core.hpp"

// The six classical internal validation measures, unadjusted. CH, DI, II and
// SC grow with better cluster-label matching; XB and DB shrink.
//
// All functions throw clm::Error instead of returning a non-finite score.

namespace clm {

/// Calinski-Harabasz: (n - K)/(K - 1) * between / within scatter.
double ch(const Dataset& data, const Labeling& labeling);

/// Dunn: smallest inter-class point distance over largest intra-class one.
double di(const Dataset& data, const Labeling& labeling);

/// I-index (Maulik-Bandyopadhyay) raised to `p`.
double ii(const Dataset& data, const Labeling& labeling, double p = 1.0);

/// Xie-Beni: within scatter over n times the closest squared centroid gap.
double xb(const Dataset& data, const Labeling& labeling);

/// Davies-Bouldin with mean point-to-centroid spreads.
double db(const Dataset& data, const Labeling& labeling);

/// Class-averaged silhouette; requires every class to hold >= 2 points.
double sc(const Dataset& data, const Labeling& labeling);

}  // namespace clm

#endif  // CLM_BASELINE_HPP
