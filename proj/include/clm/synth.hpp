#ifndef CLM_SYNTH_HPP
#define CLM_SYNTH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "clm/core.hpp"

namespace clm {

/// Symmetric 2x2 covariance [[xx, xy], [xy, yy]].
struct Cov2 {
    double xx = 1.0;
    double xy = 0.0;
    double yy = 1.0;

    bool positive_definite() const { return xx > 0.0 && xx * yy - xy * xy > 0.0; }
    double min_eigenvalue() const;
    /// R(angle) diag(l1, l2) R(angle)^T
    static Cov2 from_eigen(double l1, double l2, double angle);
};

struct GaussianPairSpec {
    Cov2 cov_a;
    Cov2 cov_b;
    double proportion = 0.5;  // share of class "0"
    double mean_distance = 2.0;
    std::size_t n = 1000;
    std::size_t target_dim = 2;
    std::uint64_t seed = 0;
};

/// Two Gaussian classes in the first two dimensions with means (-d/2, 0) and
/// (d/2, 0); each further dimension carries per-class N(0, v) noise where v is
/// the smallest eigenvalue of that class's covariance. Class "0" gets
/// round(proportion * n) rows and comes first.
std::pair<Dataset, Labeling> generate_gaussian_pair(const GaussianPairSpec& spec);

/// Eigenvalues U[0.05, 1], rotation U[0, pi), proportion U[0.2, 0.8],
/// mean distance U[0, 4].
GaussianPairSpec random_gaussian_pair_spec(Rng& rng, std::size_t n, std::size_t target_dim);

struct NoisyLabelVariant {
    double fraction = 0.0;
    Labeling labeling;
};

/// For each fraction, permutes the labels among round(fraction * n) uniformly
/// chosen positions. Per-fraction streams come from derive_seed(seed, index).
std::vector<NoisyLabelVariant> noisy_label_variants(const Labeling& labeling, std::span<const double> fractions,
                                                    std::uint64_t seed);

}  // namespace clm

#endif  // CLM_SYNTH_HPP
