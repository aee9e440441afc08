#ifndef CLM_ADJUSTED_HPP
#define CLM_ADJUSTED_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "clm/core.hpp"

// Adjusted measures. Each one is a scale- and shift-invariant core pushed
// through a logistic with growth rate k, rescaled so the random-label score
// maps to 0, and averaged (or min/max-reduced) over class pairs. Every pair is
// evaluated on the rows of its two classes only.

namespace clm {

enum class MinMode {
    Default,                   // closed form for CH/II/XB/DB, median partition for DI
    ClosedFormHalf,            // worst score fixed at 1/2
    MonteCarlo,                // mean logistic score over label shuffles
    GeometricMedianPartition,  // DI only: {median point} vs. the rest
};

enum class Aggregation { Avg, Min, Max };

struct MeasureConfig {
    double k = 1.0;
    MinMode min_mode = MinMode::Default;
    std::size_t mc_runs = 100;
    std::uint64_t seed = 0;
    double p = 1.0;  // I-index power, baseline only
    Aggregation agg = Aggregation::Avg;
};

enum class AdjustedKind { CH, DI, IIXB, DB, SC };

struct PairScore {
    std::size_t class_a = 0;
    std::size_t class_b = 0;
    std::string name_a;
    std::string name_b;
    double core = 0.0;      // pre-logistic value
    double logistic = 0.0;  // equals core for SC
    double min = 0.0;       // worst-score estimate used for rescaling
    double score = 0.0;
    bool clamped = false;  // raw rescaled value was below 0
};

struct AdjustedResult {
    double score = 0.0;
    MinMode min_mode = MinMode::Default;  // resolved mode
    std::vector<PairScore> pairs;         // sorted by (class_a, class_b)
};

double logistic(double x, double k);

// Cores, evaluated on the whole labeling.
double ch_core(const Dataset& data, const Labeling& labeling);
double di_core(const Dataset& data, const Labeling& labeling);
double ii_core(const Dataset& data, const Labeling& labeling);
double db_core(const Dataset& data, const Labeling& labeling);
double sc_core(const Dataset& data, const Labeling& labeling);

/// DI core of the two-class partition {m} vs. X \ {m}, m the data point
/// nearest to the geometric median (lowest index on ties).
double di_core_median_partition(const Dataset& data);

using CoreFunction = std::function<double(const Dataset&, const Labeling&)>;

/// Mean of logistic(core(shuffled labels), k) over `runs` shuffles.
double estimate_min_monte_carlo(const CoreFunction& core, const Dataset& data, const Labeling& labeling,
                                std::size_t runs, std::uint64_t seed, double k);

/// Resolves MinMode::Default and rejects modes the measure does not support.
MinMode resolve_min_mode(AdjustedKind kind, MinMode requested);

/// The k-independent part of an adjusted evaluation: per-pair cores plus
/// whatever the worst-score estimate needs (median-partition core or the
/// cores of every shuffle). Calibration reuses it across many k values.
struct PairCores {
    std::size_t class_a = 0;
    std::size_t class_b = 0;
    std::string name_a;
    std::string name_b;
    double core = 0.0;
    double median_core = 0.0;
    std::vector<double> shuffled_cores;
};

struct AdjustedCores {
    AdjustedKind kind = AdjustedKind::CH;
    MinMode min_mode = MinMode::Default;
    std::vector<PairCores> pairs;
};

AdjustedCores adjusted_cores(AdjustedKind kind, const Dataset& data, const Labeling& labeling,
                             const MeasureConfig& config = {});
AdjustedResult adjusted_from_cores(const AdjustedCores& cores, double k, Aggregation agg = Aggregation::Avg);

AdjustedResult evaluate_adjusted(AdjustedKind kind, const Dataset& data, const Labeling& labeling,
                                 const MeasureConfig& config = {});

double ch_adjusted(const Dataset& data, const Labeling& labeling, const MeasureConfig& config = {});
double dunn_adjusted(const Dataset& data, const Labeling& labeling, const MeasureConfig& config = {});
double ii_xb_adjusted(const Dataset& data, const Labeling& labeling, const MeasureConfig& config = {});
double ii_adjusted(const Dataset& data, const Labeling& labeling, const MeasureConfig& config = {});
double xb_adjusted(const Dataset& data, const Labeling& labeling, const MeasureConfig& config = {});
double db_adjusted(const Dataset& data, const Labeling& labeling, const MeasureConfig& config = {});
double sc_adjusted(const Dataset& data, const Labeling& labeling, const MeasureConfig& config = {});

using PairMeasure = std::function<double(const Dataset&, const Labeling&)>;

/// Applies `pair_measure` to every two-class restriction, in (a, b) order
/// with a < b, and reduces with `agg`. Errors are rethrown naming the pair.
double pairwise_aggregate(const PairMeasure& pair_measure, const Dataset& data, const Labeling& labeling,
                          Aggregation agg);

double aggregate(const std::vector<double>& values, Aggregation agg);

enum class ShiftTarget { CH, DI, II, XB, DB, SC, CHCore, DICore, IICore, DBCore, SCCore };

/// Evaluates a measure with every point-point distance term moved by beta,
/// every point-centroid term by beta / 2 and centroid-centroid terms fixed.
/// beta = 0 is the plain evaluation.
double shifted_evaluation(ShiftTarget target, const Dataset& data, const Labeling& labeling, double beta);

}  // namespace clm

#endif  // CLM_ADJUSTED_HPP
