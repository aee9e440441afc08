#ifndef CLM_EVALHARNESS_HPP
#define CLM_EVALHARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clm/core.hpp"
#include "clm/measure.hpp"

namespace clm {

// ------------------------------------------------------------- ablation

enum class SweepAxis { Cardinality, Dimensionality };

/// N_t = 50t + 500 for t = 0..10, or dimensions {2, 10, 20, ..., 100}.
std::vector<std::size_t> default_levels(SweepAxis axis);

struct SweepConfig {
    SweepAxis axis = SweepAxis::Cardinality;
    std::vector<std::size_t> levels = default_levels(SweepAxis::Cardinality);
    std::size_t base_count = 200;
    std::size_t base_n = 1000;
    std::size_t base_dim = 100;
    std::uint64_t seed = 0;
    std::vector<double> weights;  // one per base dataset; empty means uniform
};

struct MeasureVariant {
    std::string name;
    MeasureId id = MeasureId::CH;
    MeasureConfig config;
};

struct VariantAblation {
    std::string name;
    std::vector<double> error;  // levels x levels, row-major, symmetric
    double average = 0.0;       // mean over level pairs a < b
};

struct AblationReport {
    SweepAxis axis = SweepAxis::Cardinality;
    std::vector<std::size_t> levels;
    std::size_t base_count = 0;
    std::uint64_t seed = 0;
    std::vector<VariantAblation> variants;
};

/// Draws base_count random two-Gaussian bases, derives one dataset per level
/// from each (class-proportional subsample plus leading-column selection) and
/// compares every variant's scores between levels with the M-offset,
/// weight-scaled SMAPE.
AblationReport ablation_sweep(const std::vector<MeasureVariant>& variants, const SweepConfig& config);

/// The M-offset weighted SMAPE between two score lists over the same bases.
double offset_smape(std::span<const double> scores_a, std::span<const double> scores_b,
                    std::span<const double> weights);

// -------------------------------------------------- noisy-label ranking

std::vector<double> default_noise_fractions();

/// Spearman correlation between the measure's (orientation-corrected) scores
/// on noisy-label variants and the ground-truth order, fewer shuffled labels
/// ranking higher.
double noisy_label_ranking(const Dataset& data, const Labeling& labeling, MeasureId measure,
                           const MeasureConfig& config, std::span<const double> fractions, std::uint64_t seed);

// ------------------------------------------------------ rank stability

struct ScoreTable {
    std::vector<std::string> datasets;
    std::vector<std::string> techniques;
    std::vector<double> values;  // datasets x techniques, row-major

    double at(std::size_t row, std::size_t col) const { return values[row * techniques.size() + col]; }
};

/// P(A, B) = max(1 - p, p), p the share of simulated subsets on which A's
/// subset mean strictly exceeds B's. Symmetric, diagonal 1, row-major.
std::vector<double> rank_stability(const ScoreTable& table, std::size_t subset_size, std::size_t n_sims,
                                   std::uint64_t seed);

// ---------------------------------------------------- feature selection

struct FeatureMask {
    std::vector<char> bits;  // one per dimension

    std::vector<std::size_t> columns() const;
    std::string to_string() const;
};

struct ImproveResult {
    FeatureMask mask;
    double best_score = 0.0;
    double original_score = 0.0;
    std::size_t candidates = 0;  // random masks drawn, full mask excluded
    std::size_t failed = 0;      // candidates whose evaluation threw
};

/// Random search over Bernoulli(1/2) feature masks; the full mask is always a
/// candidate, so the result never scores worse than the original.
ImproveResult improve_clm(const Dataset& data, const Labeling& labeling, MeasureId measure,
                          const MeasureConfig& config, std::size_t n_candidates, std::uint64_t seed);

}  // namespace clm

#endif  // CLM_EVALHARNESS_HPP
