#include "clm/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "clm/error.hpp"

namespace clm {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cell.push_back('"');
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cell.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell.push_back(ch);
        }
    }
    cells.push_back(std::move(cell));
    return cells;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_missing(const std::string& cell) {
    return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == "?";
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && errno != ERANGE && std::isfinite(out);
}

struct CsvRows {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
};

CsvRows read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::IoError, "cannot open '" + path + "'");
    CsvRows csv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        for (auto& c : cells) c = trim(c);
        if (csv.header.empty()) {
            csv.header = std::move(cells);
            continue;
        }
        if (cells.size() != csv.header.size())
            fail(ErrorKind::ParseError, path + ":" + std::to_string(line_no) + ": expected " +
                                            std::to_string(csv.header.size()) + " cells, found " +
                                            std::to_string(cells.size()));
        csv.rows.push_back(std::move(cells));
        csv.line_numbers.push_back(line_no);
    }
    if (csv.header.empty()) fail(ErrorKind::SchemaError, "'" + path + "' has no header row");
    return csv;
}

std::size_t column_index(const CsvRows& csv, const std::string& name, const std::string& path) {
    const auto it = std::find(csv.header.begin(), csv.header.end(), name);
    if (it == csv.header.end()) fail(ErrorKind::SchemaError, "'" + path + "' has no column '" + name + "'");
    return static_cast<std::size_t>(it - csv.header.begin());
}

std::string format12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

bool same(double a, double b) { return round12(a) == round12(b) || (std::isnan(a) && std::isnan(b)); }

double number_from(const Json& j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace

LabeledTable load_csv(const std::string& path, const std::string& label_column, NormalizationMode normalization) {
    const CsvRows csv = read_csv(path);
    const std::size_t label_col = column_index(csv, label_column, path);

    LabeledTable table;
    table.source_path = path;
    for (std::size_t c = 0; c < csv.header.size(); ++c)
        if (c != label_col) table.column_names.push_back(csv.header[c]);
    const std::size_t dims = table.column_names.size();
    if (dims == 0) fail(ErrorKind::SchemaError, "'" + path + "' has no feature columns");

    std::vector<double> values;
    std::vector<std::string> labels;
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        if (std::any_of(row.begin(), row.end(), is_missing)) {
            ++table.dropped_rows;
            continue;
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c == label_col) continue;
            double v = 0.0;
            if (!parse_double(row[c], v))
                fail(ErrorKind::ParseError, path + ": line " + std::to_string(csv.line_numbers[r]) + ", column '" +
                                                csv.header[c] + "': '" + row[c] + "' is not a finite number");
            values.push_back(v);
        }
        labels.push_back(row[label_col]);
    }
    if (labels.size() < 2)
        fail(ErrorKind::TooFewRows, "'" + path + "' has " + std::to_string(labels.size()) +
                                        " complete row(s); at least 2 required");

    table.data = Dataset(labels.size(), dims, std::move(values));
    if (normalization == NormalizationMode::MinMax) table.data = normalize_min_max(table.data);
    table.labeling = Labeling::from_names(labels);
    return table;
}

Dataset normalize_min_max(const Dataset& data) {
    const std::size_t n = data.rows(), d = data.dims();
    std::vector<double> lo(d, std::numeric_limits<double>::infinity()), hi(d, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], data.row(i)[j]);
            hi[j] = std::max(hi[j], data.row(i)[j]);
        }
    std::vector<double> out(n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            out[i * d + j] = hi[j] > lo[j] ? (data.row(i)[j] - lo[j]) / (hi[j] - lo[j]) : 0.0;
    return Dataset(n, d, std::move(out));
}

void write_dataset_csv(const std::string& path, const Dataset& data, const Labeling& labeling) {
    std::ostringstream out;
    for (std::size_t j = 0; j < data.dims(); ++j) out << 'f' << j << ',';
    out << "label\n";
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (double v : data.row(i)) out << format12(v) << ',';
        out << labeling.name(labeling.class_of(i)) << '\n';
    }
    write_text(path, out.str());
}

ScoreTable load_score_table(const std::string& path) {
    const CsvRows csv = read_csv(path);
    if (csv.header.empty() || csv.header[0] != "dataset")
        fail(ErrorKind::SchemaError, "'" + path + "' must start with a 'dataset' column");
    if (csv.header.size() < 2) fail(ErrorKind::SchemaError, "'" + path + "' has no technique columns");
    ScoreTable t;
    t.techniques.assign(csv.header.begin() + 1, csv.header.end());
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        t.datasets.push_back(csv.rows[r][0]);
        for (std::size_t c = 1; c < csv.header.size(); ++c) {
            double v = 0.0;
            if (!parse_double(csv.rows[r][c], v))
                fail(ErrorKind::ParseError, path + ": line " + std::to_string(csv.line_numbers[r]) + ", column '" +
                                                csv.header[c] + "': '" + csv.rows[r][c] + "' is not a finite number");
            t.values.push_back(v);
        }
    }
    if (t.datasets.empty()) fail(ErrorKind::TooFewRows, "'" + path + "' has no rows");
    return t;
}

std::vector<CalibrationScore> load_calibration_scores(const std::string& path) {
    const CsvRows csv = read_csv(path);
    const std::size_t dc = column_index(csv, "dataset", path);
    const std::size_t sc = column_index(csv, "score", path);
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    std::vector<CalibrationScore> out;
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        CalibrationScore s;
        std::filesystem::path p(csv.rows[r][dc]);
        s.dataset = (p.is_absolute() ? p : base / p).string();
        if (!parse_double(csv.rows[r][sc], s.score) || s.score < 0.0 || s.score > 1.0)
            fail(ErrorKind::ParseError, path + ": line " + std::to_string(csv.line_numbers[r]) +
                                            ": score must be a number in [0, 1]");
        out.push_back(std::move(s));
    }
    if (out.empty()) fail(ErrorKind::TooFewRows, "'" + path + "' lists no datasets");
    return out;
}

std::string_view min_mode_name(MinMode mode) {
    switch (mode) {
        case MinMode::Default: return "default";
        case MinMode::ClosedFormHalf: return "closed_form";
        case MinMode::MonteCarlo: return "monte_carlo";
        case MinMode::GeometricMedianPartition: return "median_partition";
    }
    return "?";
}

std::optional<MinMode> parse_min_mode(std::string_view name) {
    for (MinMode m : {MinMode::Default, MinMode::ClosedFormHalf, MinMode::MonteCarlo,
                      MinMode::GeometricMedianPartition})
        if (min_mode_name(m) == name) return m;
    return std::nullopt;
}

std::string_view aggregation_name(Aggregation agg) {
    switch (agg) {
        case Aggregation::Avg: return "avg";
        case Aggregation::Min: return "min";
        case Aggregation::Max: return "max";
    }
    return "?";
}

std::optional<Aggregation> parse_aggregation(std::string_view name) {
    for (Aggregation a : {Aggregation::Avg, Aggregation::Min, Aggregation::Max})
        if (aggregation_name(a) == name) return a;
    return std::nullopt;
}

double round12(double x) { return std::isfinite(x) ? std::stod(format12(x)) : x; }

Json number(double x) { return std::isfinite(x) ? Json(round12(x)) : Json(nullptr); }

bool ScoreReport::operator==(const ScoreReport& o) const {
    if (tool_version != o.tool_version || input != o.input || measure != o.measure || !same(score, o.score) ||
        seed != o.seed || k_source != o.k_source || dropped_rows != o.dropped_rows || min_mode != o.min_mode)
        return false;
    if (!same(config.k, o.config.k) || config.min_mode != o.config.min_mode || config.mc_runs != o.config.mc_runs ||
        config.seed != o.config.seed || !same(config.p, o.config.p) || config.agg != o.config.agg)
        return false;
    if (pairs.size() != o.pairs.size()) return false;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const PairScore &a = pairs[i], &b = o.pairs[i];
        if (a.class_a != b.class_a || a.class_b != b.class_b || a.name_a != b.name_a || a.name_b != b.name_b ||
            !same(a.core, b.core) || !same(a.logistic, b.logistic) || !same(a.min, b.min) ||
            !same(a.score, b.score) || a.clamped != b.clamped)
            return false;
    }
    return true;
}

Json to_json(const ScoreReport& r) {
    Json j;
    j["tool_version"] = r.tool_version;
    j["input"] = r.input;
    j["measure"] = r.measure;
    j["score"] = number(r.score);
    j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
    j["dropped_rows"] = r.dropped_rows;
    Json c;
    c["k"] = number(r.config.k);
    c["k_source"] = r.k_source;
    c["min_mode"] = std::string(min_mode_name(r.config.min_mode));
    c["resolved_min_mode"] = std::string(min_mode_name(r.min_mode));
    c["mc_runs"] = r.config.mc_runs;
    c["mc_seed"] = r.config.seed;
    c["p"] = number(r.config.p);
    c["agg"] = std::string(aggregation_name(r.config.agg));
    j["config"] = c;
    Json pairs = Json::array();
    for (const auto& p : r.pairs) {
        Json e;
        e["class_a"] = p.name_a;
        e["class_b"] = p.name_b;
        e["id_a"] = p.class_a;
        e["id_b"] = p.class_b;
        e["core"] = number(p.core);
        e["logistic"] = number(p.logistic);
        e["min"] = number(p.min);
        e["score"] = number(p.score);
        e["clamped"] = p.clamped;
        pairs.push_back(e);
    }
    j["pairs"] = pairs;
    return j;
}

ScoreReport score_report_from_json(const Json& j) {
    try {
        ScoreReport r;
        r.tool_version = j.at("tool_version").get<std::string>();
        r.input = j.at("input").get<std::string>();
        r.measure = j.at("measure").get<std::string>();
        r.score = number_from(j.at("score"));
        if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
        r.dropped_rows = j.at("dropped_rows").get<std::size_t>();
        const Json& c = j.at("config");
        r.config.k = number_from(c.at("k"));
        r.k_source = c.at("k_source").get<std::string>();
        const auto mode = parse_min_mode(c.at("min_mode").get<std::string>());
        const auto resolved = parse_min_mode(c.at("resolved_min_mode").get<std::string>());
        const auto agg = parse_aggregation(c.at("agg").get<std::string>());
        if (!mode || !resolved || !agg) fail(ErrorKind::SchemaError, "unknown enum value in report config");
        r.config.min_mode = *mode;
        r.min_mode = *resolved;
        r.config.agg = *agg;
        r.config.mc_runs = c.at("mc_runs").get<std::size_t>();
        r.config.seed = c.at("mc_seed").get<std::uint64_t>();
        r.config.p = number_from(c.at("p"));
        for (const Json& e : j.at("pairs")) {
            PairScore p;
            p.name_a = e.at("class_a").get<std::string>();
            p.name_b = e.at("class_b").get<std::string>();
            p.class_a = e.at("id_a").get<std::size_t>();
            p.class_b = e.at("id_b").get<std::size_t>();
            p.core = number_from(e.at("core"));
            p.logistic = number_from(e.at("logistic"));
            p.min = number_from(e.at("min"));
            p.score = number_from(e.at("score"));
            p.clamped = e.at("clamped").get<bool>();
            r.pairs.push_back(std::move(p));
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::SchemaError, std::string("malformed score report: ") + e.what());
    }
}

std::string render_report(const ScoreReport& report, ReportFormat format) {
    if (format == ReportFormat::Json) return to_json(report).dump(2) + "\n";
    auto cell = [](double x) { return std::isfinite(x) ? format12(x) : std::string(x > 0 ? "inf" : "-inf"); };
    std::ostringstream out;
    out << "tool_version,input,measure,score,seed,k,k_source,min_mode,agg,class_a,class_b,core,logistic,min,"
           "pair_score,clamped\n";
    const std::string prefix = report.tool_version + ',' + report.input + ',' + report.measure + ',' +
                               cell(report.score) + ',' + (report.seed ? std::to_string(*report.seed) : "") + ',' +
                               cell(report.config.k) + ',' + report.k_source + ',' +
                               std::string(min_mode_name(report.min_mode)) + ',' +
                               std::string(aggregation_name(report.config.agg));
    if (report.pairs.empty()) out << prefix << ",,,,,,,\n";
    for (const auto& p : report.pairs)
        out << prefix << ',' << p.name_a << ',' << p.name_b << ',' << cell(p.core) << ',' << cell(p.logistic) << ','
            << cell(p.min) << ',' << cell(p.score) << ',' << (p.clamped ? "true" : "false") << '\n';
    return out.str();
}

void write_report(const ScoreReport& report, const std::string& path, ReportFormat format) {
    write_text(path, render_report(report, format));
}

ScoreReport read_report(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::ParseError, "'" + path + "': " + e.what());
    }
    return score_report_from_json(j);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::IoError, "cannot write '" + path + "'");
    out << text;
    out.flush();
    if (!out) fail(ErrorKind::IoError, "failed while writing '" + path + "'");
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace clm
