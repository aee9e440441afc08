#ifndef CLM_CALIBRATION_HPP
#define CLM_CALIBRATION_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "clm/core.hpp"
#include "clm/measure.hpp"

namespace clm {

struct CalibrationEntry {
    std::string name;
    Dataset data;
    Labeling labeling;
    double human_score = 0.0;  // in [0, 1]
};

struct CalibrationSet {
    std::vector<CalibrationEntry> entries;
    std::size_t bins = 10;
};

struct KSearch {
    double k_min = 1e-3;
    double k_max = 1e3;
    std::size_t grid_points = 61;
    std::size_t refine_iters = 40;
};

struct TracePoint {
    double k = 0.0;
    double objective = 0.0;  // -inf where the evaluation failed
};

struct CalibrationResult {
    double k_star = 1.0;
    double objective = 0.0;
    std::vector<TracePoint> search_trace;
    std::vector<double> weights;          // per used entry
    std::vector<std::string> dropped;     // entries whose cores failed
};

/// Inverse bin frequencies; bin i covers ((i-1)/b, i/b], score 0 joins bin 1.
std::vector<double> bin_weights(std::span<const double> scores, std::size_t bins);

/// 1 - sum w (t - p)^2 / sum w (t - mean_w t)^2.
double weighted_r2(std::span<const double> predicted, std::span<const double> target,
                   std::span<const double> weights);

/// Maximizes weighted R^2 between adjusted scores and human scores over k:
/// log-spaced grid, then golden-section refinement in log k around the best
/// grid point. Ties go to the smaller k. `base` supplies min mode, Monte-Carlo
/// runs, seed and aggregation.
CalibrationResult calibrate_k(MeasureId measure, const CalibrationSet& set, const KSearch& search = {},
                              const MeasureConfig& base = {});

}  // namespace clm

#endif  // CLM_CALIBRATION_HPP
