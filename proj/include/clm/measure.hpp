#ifndef CLM_MEASURE_HPP
#define CLM_MEASURE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clm/adjusted.hpp"
#include "clm/core.hpp"

// Name-addressable registry over the baseline and adjusted measures, used by
// the CLI, calibration and the evaluation harness.

namespace clm {

enum class MeasureId { CH, DI, II, XB, DB, SC, CH_A, DI_A, II_A, XB_A, DB_A, SC_A };

std::string_view measure_name(MeasureId id);
std::optional<MeasureId> parse_measure(std::string_view name);
std::vector<MeasureId> all_measures();

bool is_adjusted(MeasureId id);
/// XB and DB baselines are lower-is-better; every other measure grows with CLM.
bool higher_is_better(MeasureId id);
/// Baseline counterpart of an adjusted measure, identity for baselines.
MeasureId baseline_of(MeasureId id);
AdjustedKind adjusted_kind(MeasureId id);

struct MeasureResult {
    double score = 0.0;
    MinMode min_mode = MinMode::Default;  // adjusted measures only
    std::vector<PairScore> pairs;         // adjusted measures only
};

MeasureResult evaluate_measure(MeasureId id, const Dataset& data, const Labeling& labeling,
                               const MeasureConfig& config = {});
double score(MeasureId id, const Dataset& data, const Labeling& labeling, const MeasureConfig& config = {});

}  // namespace clm

#endif  // CLM_MEASURE_HPP
