#include "clm/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clm/error.hpp"

namespace clm {

std::vector<double> bin_weights(std::span<const double> scores, std::size_t bins) {
    if (bins == 0) fail(ErrorKind::InvalidArgument, "bin count must be at least 1");
    if (scores.empty()) fail(ErrorKind::EmptyInput, "no scores to weight");
    const double bin_size = 1.0 / static_cast<double>(bins);
    std::vector<std::size_t> index(scores.size());
    std::vector<std::size_t> counts(bins + 1, 0);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!(scores[i] >= 0.0 && scores[i] <= 1.0))
            fail(ErrorKind::InvalidArgument, "human scores must lie in [0, 1]");
        const double raw = std::ceil(scores[i] / bin_size);
        index[i] = std::clamp<std::size_t>(static_cast<std::size_t>(raw), 1, bins);
        ++counts[index[i]];
    }
    std::vector<double> w(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) w[i] = 1.0 / static_cast<double>(counts[index[i]]);
    return w;
}

double weighted_r2(std::span<const double> predicted, std::span<const double> target,
                   std::span<const double> weights) {
    if (predicted.size() != target.size() || target.size() != weights.size())
        fail(ErrorKind::InvalidArgument, "weighted R^2 needs equal-length lists");
    if (target.size() < 2) fail(ErrorKind::DegenerateTargets, "weighted R^2 needs at least two targets");
    double wsum = 0.0, wt = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
        if (!(weights[i] > 0.0)) fail(ErrorKind::InvalidArgument, "weights must be positive");
        wsum += weights[i];
        wt += weights[i] * target[i];
    }
    const double mean = wt / wsum;
    double res = 0.0, tot = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
        res += weights[i] * (target[i] - predicted[i]) * (target[i] - predicted[i]);
        tot += weights[i] * (target[i] - mean) * (target[i] - mean);
    }
    if (tot == 0.0) fail(ErrorKind::DegenerateTargets, "targets have zero weighted variance");
    return 1.0 - res / tot;
}

namespace {

struct Prepared {
    std::vector<AdjustedCores> cores;
    std::vector<double> targets;
    std::vector<double> weights;
};

double objective_at(const Prepared& p, double k, Aggregation agg) {
    std::vector<double> predicted;
    predicted.reserve(p.cores.size());
    try {
        for (const auto& c : p.cores) predicted.push_back(adjusted_from_cores(c, k, agg).score);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateRange) throw;
        return -std::numeric_limits<double>::infinity();
    }
    return weighted_r2(predicted, p.targets, p.weights);
}

bool better(const TracePoint& a, const TracePoint& b) {
    return a.objective > b.objective || (a.objective == b.objective && a.k < b.k);
}

}  // namespace

CalibrationResult calibrate_k(MeasureId measure, const CalibrationSet& set, const KSearch& search,
                              const MeasureConfig& base) {
    if (!is_adjusted(measure) || adjusted_kind(measure) == AdjustedKind::SC)
        fail(ErrorKind::InvalidArgument, std::string(measure_name(measure)) + " has no growth rate to calibrate");
    if (set.entries.empty()) fail(ErrorKind::EmptyInput, "calibration set is empty");
    if (!(search.k_min > 0.0 && search.k_min < search.k_max))
        fail(ErrorKind::InvalidArgument, "need 0 < k_min < k_max");
    if (search.grid_points < 2) fail(ErrorKind::InvalidArgument, "grid needs at least 2 points");

    CalibrationResult result;
    Prepared prep;
    std::vector<double> human;
    for (const auto& e : set.entries) {
        try {
            prep.cores.push_back(adjusted_cores(adjusted_kind(measure), e.data, e.labeling, base));
            human.push_back(e.human_score);
        } catch (const Error&) {
            result.dropped.push_back(e.name);
        }
    }
    if (prep.cores.empty()) fail(ErrorKind::CalibrationFailed, "every calibration entry failed to evaluate");
    prep.targets = human;
    prep.weights = bin_weights(human, set.bins);
    result.weights = prep.weights;

    auto eval = [&](double k) {
        TracePoint t{k, objective_at(prep, k, base.agg)};
        result.search_trace.push_back(t);
        return t;
    };

    const double lo = std::log10(search.k_min), hi = std::log10(search.k_max);
    const double step = (hi - lo) / static_cast<double>(search.grid_points - 1);
    std::vector<TracePoint> grid;
    for (std::size_t i = 0; i < search.grid_points; ++i)
        grid.push_back(eval(std::pow(10.0, lo + static_cast<double>(i) * step)));

    std::size_t best_i = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (better(grid[i], grid[best_i])) best_i = i;
    if (grid[best_i].objective == -std::numeric_limits<double>::infinity())
        fail(ErrorKind::CalibrationFailed, "no k in the search range gives a usable score range");

    // golden section on log10 k inside the neighbouring grid cells
    double a = std::log10(grid[best_i == 0 ? 0 : best_i - 1].k);
    double b = std::log10(grid[std::min(best_i + 1, grid.size() - 1)].k);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = eval(std::pow(10.0, x1)).objective, f2 = eval(std::pow(10.0, x2)).objective;
    for (std::size_t it = 0; it < search.refine_iters; ++it) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = eval(std::pow(10.0, x1)).objective;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = eval(std::pow(10.0, x2)).objective;
        }
    }

    TracePoint best = result.search_trace.front();
    for (const auto& t : result.search_trace)
        if (better(t, best)) best = t;
    result.k_star = best.k;
    result.objective = best.objective;
    return result;
}

}  // namespace clm
