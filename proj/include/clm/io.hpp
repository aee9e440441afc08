#ifndef CLM_IO_HPP
#define CLM_IO_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "clm/adjusted.hpp"
#include "clm/calibration.hpp"
#include "clm/core.hpp"
#include "clm/evalharness.hpp"
#include "clm/measure.hpp"

namespace clm {

inline constexpr std::string_view kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

enum class NormalizationMode { None, MinMax };

struct LabeledTable {
    Dataset data;
    Labeling labeling;
    std::vector<std::string> column_names;  // feature columns only
    std::string source_path;
    std::size_t dropped_rows = 0;
};

/// Reads a headed CSV. Rows with an empty, NA, NaN or ? cell are dropped;
/// any other non-numeric feature cell is a ParseError naming line and column.
LabeledTable load_csv(const std::string& path, const std::string& label_column = "label",
                      NormalizationMode normalization = NormalizationMode::MinMax);

/// Maps every column to [0, 1]; constant columns become 0.
Dataset normalize_min_max(const Dataset& data);

/// Feature columns f0..f{d-1} followed by `label`.
void write_dataset_csv(const std::string& path, const Dataset& data, const Labeling& labeling);

/// CSV with header `dataset,<technique>...`.
ScoreTable load_score_table(const std::string& path);

struct CalibrationScore {
    std::string dataset;  // resolved against the score file's directory
    double score = 0.0;
};

/// CSV with header `dataset,score`.
std::vector<CalibrationScore> load_calibration_scores(const std::string& path);

std::string_view min_mode_name(MinMode mode);
std::optional<MinMode> parse_min_mode(std::string_view name);
std::string_view aggregation_name(Aggregation agg);
std::optional<Aggregation> parse_aggregation(std::string_view name);

struct ScoreReport {
    std::string tool_version{kToolVersion};
    std::string input;
    std::string measure;
    double score = 0.0;
    std::optional<std::uint64_t> seed;
    MeasureConfig config;
    std::string k_source = "default";  // default | flag | calibration file path
    std::size_t dropped_rows = 0;
    MinMode min_mode = MinMode::Default;
    std::vector<PairScore> pairs;

    bool operator==(const ScoreReport&) const;
};

enum class ReportFormat { Json, Csv };

/// 12 significant digits; non-finite values become null.
double round12(double x);
Json number(double x);

Json to_json(const ScoreReport& report);
ScoreReport score_report_from_json(const Json& j);

std::string render_report(const ScoreReport& report, ReportFormat format);
void write_report(const ScoreReport& report, const std::string& path, ReportFormat format);
ScoreReport read_report(const std::string& path);

void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const Json& j);
std::string read_text(const std::string& path);

}  // namespace clm

#endif  // CLM_IO_HPP
