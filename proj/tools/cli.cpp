#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "clm/calibration.hpp"
#include "clm/error.hpp"
#include "clm/evalharness.hpp"
#include "clm/io.hpp"
#include "clm/measure.hpp"
#include "clm/parallel.hpp"
#include "clm/synth.hpp"

namespace clm::cli {

namespace fs = std::filesystem;

namespace {

// Thrown for flag combinations CLI11 cannot express; maps to exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> measure_names(bool adjusted_only = false) {
    std::vector<std::string> names;
    for (MeasureId id : all_measures())
        if (!adjusted_only || is_adjusted(id)) names.emplace_back(measure_name(id));
    return names;
}

struct MeasureFlags {
    std::string measure;
    std::optional<double> k;
    std::string calibration;
    std::string min_mode = "default";
    std::size_t mc_runs = 100;
    std::string agg = "avg";
    double p = 1.0;
    std::optional<std::uint64_t> seed;

    void add(CLI::App& app, bool with_measure = true) {
        if (with_measure)
            app.add_option("--measure,-m", measure, "Measure name")
                ->required()
                ->check(CLI::IsMember(measure_names()));
        auto* k_opt = app.add_option("--k", k, "Logistic growth rate (default 1, uncalibrated)")
                          ->check(CLI::PositiveNumber);
        app.add_option("--calibration", calibration, "JSON written by `calibrate`; supplies k")
            ->check(CLI::ExistingFile)
            ->excludes(k_opt);
        app.add_option("--min-mode", min_mode, "Worst-score estimate")
            ->check(CLI::IsMember({"default", "closed_form", "monte_carlo", "median_partition"}));
        app.add_option("--mc-runs", mc_runs, "Label shuffles for monte_carlo mode")->check(CLI::PositiveNumber);
        app.add_option("--agg", agg, "Class-pair aggregation")->check(CLI::IsMember({"avg", "min", "max"}));
        app.add_option("--p", p, "I-index power (baseline ii)")->check(CLI::PositiveNumber);
    }

    void add_seed(CLI::App& app, bool required) {
        auto* o = app.add_option("--seed", seed, "Master random seed");
        if (required) o->required();
    }

    // Returns the config and a description of where k came from.
    std::pair<MeasureConfig, std::string> config() const {
        MeasureConfig c;
        c.min_mode = *parse_min_mode(min_mode);
        c.agg = *parse_aggregation(agg);
        c.mc_runs = mc_runs;
        c.p = p;
        std::string source = "default";
        if (k) {
            c.k = *k;
            source = "flag";
        } else if (!calibration.empty()) {
            Json j;
            try {
                j = Json::parse(read_text(calibration));
                c.k = j.at("k").get<double>();
            } catch (const nlohmann::json::exception& e) {
                fail(ErrorKind::SchemaError, "'" + calibration + "' is not a calibration result: " + e.what());
            }
            if (!measure.empty() && j.contains("measure") && j["measure"].get<std::string>() != measure)
                throw UsageError("calibration file is for " + j["measure"].get<std::string>() + ", not " + measure);
            source = calibration;
        }
        if (c.min_mode == MinMode::MonteCarlo && !seed) throw UsageError("--min-mode monte_carlo requires --seed");
        if (seed) c.seed = *seed;
        return {c, source};
    }
};

struct DataFlags {
    std::string label = "label";
    std::string normalize = "minmax";

    void add(CLI::App& app) {
        app.add_option("--label", label, "Label column name");
        app.add_option("--normalize", normalize, "Feature normalization")
            ->check(CLI::IsMember({"minmax", "none"}));
    }
    LabeledTable load(const std::string& path) const {
        return load_csv(path, label, normalize == "none" ? NormalizationMode::None : NormalizationMode::MinMax);
    }
};

void warn_uncalibrated(MeasureId id, const std::string& k_source, std::ostream& err) {
    if (is_adjusted(id) && id != MeasureId::SC_A && k_source == "default")
        err << "warning: " << measure_name(id)
            << " uses the uncalibrated default k = 1; run `calibrate` and pass --calibration\n";
}

void prepare_outdir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(ErrorKind::IoError, "cannot create '" + dir + "': " + ec.message());
}

void write_manifest(const std::string& dir, const std::string& command, const std::vector<std::string>& args,
                    std::optional<std::uint64_t> seed, const Json& artifacts) {
    Json m;
    m["tool_version"] = std::string(kToolVersion);
    m["command"] = command;
    m["args"] = args;
    m["seed"] = seed ? Json(*seed) : Json(nullptr);
    m["artifacts"] = artifacts;
    write_json((fs::path(dir) / "manifest.json").string(), m);
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q.push_back('"');
        q.push_back(c);
    }
    return q + "\"";
}

std::string fmt(double x) {
    if (!std::isfinite(x)) return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void emit(const std::string& text, const std::string& output, std::ostream& out) {
    if (output.empty() || output == "-")
        out << text;
    else
        write_text(output, text);
}

// ------------------------------------------------------------------ score

struct ScoreCmd {
    std::string input, output, format = "json";
    MeasureFlags mf;
    DataFlags df;

    void add(CLI::App& app) {
        app.add_option("--input,-i", input, "Dataset CSV")->required()->check(CLI::ExistingFile);
        df.add(app);
        mf.add(app);
        mf.add_seed(app, false);
        app.add_option("--output,-o", output, "Report path (default stdout)");
        app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    }

    int run(std::ostream& out, std::ostream& err) {
        const MeasureId id = *parse_measure(mf.measure);
        const auto [config, k_source] = mf.config();
        const LabeledTable t = df.load(input);
        if (t.dropped_rows) err << "note: dropped " << t.dropped_rows << " row(s) with missing values\n";
        warn_uncalibrated(id, k_source, err);
        const MeasureResult r = evaluate_measure(id, t.data, t.labeling, config);

        ScoreReport rep;
        rep.input = input;
        rep.measure = mf.measure;
        rep.score = r.score;
        rep.seed = mf.seed;
        rep.config = config;
        rep.k_source = k_source;
        rep.dropped_rows = t.dropped_rows;
        rep.min_mode = r.min_mode;
        rep.pairs = r.pairs;
        emit(render_report(rep, format == "json" ? ReportFormat::Json : ReportFormat::Csv), output, out);
        return kOk;
    }
};

// ------------------------------------------------------------------- rank

struct RankCmd {
    std::vector<std::string> inputs;
    std::string output, format = "csv";
    MeasureFlags mf;
    DataFlags df;

    void add(CLI::App& app) {
        app.add_option("--inputs,-i", inputs, "Dataset CSV files or directories of them")->required();
        df.add(app);
        mf.add(app);
        mf.add_seed(app, false);
        app.add_option("--output,-o", output, "Table path (default stdout)");
        app.add_option("--format", format, "Table format")->check(CLI::IsMember({"json", "csv"}));
    }

    int run(std::ostream& out, std::ostream& err) {
        const MeasureId id = *parse_measure(mf.measure);
        const auto [config, k_source] = mf.config();
        std::vector<std::string> files;
        for (const auto& in : inputs) {
            if (fs::is_directory(in)) {
                std::vector<std::string> found;
                for (const auto& e : fs::directory_iterator(in))
                    if (e.is_regular_file() && e.path().extension() == ".csv") found.push_back(e.path().string());
                std::sort(found.begin(), found.end());
                files.insert(files.end(), found.begin(), found.end());
            } else {
                files.push_back(in);
            }
        }
        if (files.empty()) throw UsageError("no dataset files found");
        warn_uncalibrated(id, k_source, err);

        struct Row {
            std::string name;
            std::optional<double> score;
            std::string error;
        };
        std::vector<Row> rows(files.size());
        parallel_for(files.size(), [&](std::size_t i) {
            rows[i].name = files[i];
            try {
                const LabeledTable t = df.load(files[i]);
                rows[i].score = score(id, t.data, t.labeling, config);
            } catch (const std::exception& e) {
                rows[i].error = e.what();
            }
        });
        const bool any = std::any_of(rows.begin(), rows.end(), [](const Row& r) { return r.score.has_value(); });
        for (const auto& r : rows)
            if (!r.score) err << "error: " << r.name << ": " << r.error << '\n';
        if (!any) {
            err << "error: no dataset could be scored\n";
            return kUsageOrData;
        }
        const bool higher = higher_is_better(id);
        std::stable_sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
            if (a.score.has_value() != b.score.has_value()) return a.score.has_value();
            if (!a.score) return a.name < b.name;
            if (*a.score != *b.score) return higher ? *a.score > *b.score : *a.score < *b.score;
            return a.name < b.name;
        });

        std::ostringstream text;
        if (format == "json") {
            Json j;
            j["tool_version"] = std::string(kToolVersion);
            j["measure"] = mf.measure;
            j["k"] = number(config.k);
            j["k_source"] = k_source;
            Json list = Json::array();
            std::size_t rank = 0;
            for (const auto& r : rows) {
                Json e;
                e["rank"] = r.score ? Json(++rank) : Json(nullptr);
                e["dataset"] = r.name;
                e["score"] = r.score ? number(*r.score) : Json(nullptr);
                if (!r.score) e["error"] = r.error;
                list.push_back(e);
            }
            j["datasets"] = list;
            text << j.dump(2) << '\n';
        } else {
            text << "rank,dataset,score,error\n";
            std::size_t rank = 0;
            for (const auto& r : rows) {
                if (r.score)
                    text << ++rank << ',' << csv_cell(r.name) << ',' << fmt(*r.score) << ",\n";
                else
                    text << ',' << csv_cell(r.name) << ",," << csv_cell(r.error) << '\n';
            }
        }
        emit(text.str(), output, out);
        return kOk;
    }
};

// -------------------------------------------------------------- generate

struct GenerateCmd {
    std::size_t count = 1, n = 1000, dim = 100;
    std::optional<double> mean_distance;
    std::uint64_t seed = 0;
    std::string outdir;

    void add(CLI::App& app) {
        app.add_option("--count", count, "Number of datasets")->check(CLI::PositiveNumber);
        app.add_option("--n", n, "Points per dataset")->check(CLI::Range(4, 100000000));
        app.add_option("--dim", dim, "Dimensions (first two carry the clusters)")->check(CLI::Range(2, 1000000));
        app.add_option("--mean-distance", mean_distance, "Fix the distance between class means")
            ->check(CLI::NonNegativeNumber);
        app.add_option("--seed", seed, "Master random seed")->required();
        app.add_option("--outdir", outdir, "Output directory")->required();
    }

    int run(const std::vector<std::string>& args, std::ostream& out) {
        prepare_outdir(outdir);
        Json artifacts = Json::array();
        for (std::size_t i = 0; i < count; ++i) {
            Rng rng(derive_seed(seed, i));
            GaussianPairSpec spec = random_gaussian_pair_spec(rng, n, dim);
            if (mean_distance) spec.mean_distance = *mean_distance;
            const auto [data, labels] = generate_gaussian_pair(spec);
            char name[32];
            std::snprintf(name, sizeof name, "dataset_%03zu.csv", i);
            write_dataset_csv((fs::path(outdir) / name).string(), data, labels);
            artifacts.push_back({{"file", name},
                                 {"n", spec.n},
                                 {"dim", spec.target_dim},
                                 {"proportion", number(spec.proportion)},
                                 {"mean_distance", number(spec.mean_distance)},
                                 {"cov_a", {number(spec.cov_a.xx), number(spec.cov_a.xy), number(spec.cov_a.yy)}},
                                 {"cov_b", {number(spec.cov_b.xx), number(spec.cov_b.xy), number(spec.cov_b.yy)}},
                                 {"seed", spec.seed}});
        }
        write_manifest(outdir, "generate", args, seed, artifacts);
        out << "wrote " << count << " dataset(s) to " << outdir << '\n';
        return kOk;
    }
};

// ------------------------------------------------------------- calibrate

struct CalibrateCmd {
    std::string scores, outdir;
    std::size_t bins = 10;
    KSearch search;
    MeasureFlags mf;
    DataFlags df;

    void add(CLI::App& app) {
        app.add_option("--scores", scores, "CSV with header dataset,score")->required()->check(CLI::ExistingFile);
        app.add_option("--measure,-m", mf.measure, "Adjusted measure to calibrate")
            ->required()
            ->check(CLI::IsMember({"ch_adj", "di_adj", "ii_adj", "xb_adj", "db_adj"}));
        app.add_option("--bins", bins, "Score bins for weighting")->check(CLI::PositiveNumber);
        app.add_option("--k-min", search.k_min, "Lower end of the k search")->check(CLI::PositiveNumber);
        app.add_option("--k-max", search.k_max, "Upper end of the k search")->check(CLI::PositiveNumber);
        app.add_option("--grid-points", search.grid_points, "Log-spaced grid size")->check(CLI::Range(2, 100000));
        app.add_option("--refine-iters", search.refine_iters, "Golden-section iterations");
        app.add_option("--min-mode", mf.min_mode, "Worst-score estimate")
            ->check(CLI::IsMember({"default", "closed_form", "monte_carlo", "median_partition"}));
        app.add_option("--mc-runs", mf.mc_runs, "Label shuffles for monte_carlo mode")->check(CLI::PositiveNumber);
        app.add_option("--agg", mf.agg, "Class-pair aggregation")->check(CLI::IsMember({"avg", "min", "max"}));
        mf.add_seed(app, false);
        df.add(app);
        app.add_option("--outdir", outdir, "Output directory")->required();
    }

    int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
        const MeasureId id = *parse_measure(mf.measure);
        const MeasureConfig config = mf.config().first;
        if (!(search.k_min < search.k_max)) throw UsageError("--k-min must be below --k-max");

        CalibrationSet set;
        set.bins = bins;
        for (const auto& s : load_calibration_scores(scores)) {
            try {
                LabeledTable t = df.load(s.dataset);
                set.entries.push_back({s.dataset, std::move(t.data), std::move(t.labeling), s.score});
            } catch (const Error& e) {
                err << "warning: skipping " << s.dataset << ": " << e.what() << '\n';
            }
        }
        if (set.entries.empty()) fail(ErrorKind::CalibrationFailed, "no calibration dataset could be loaded");
        const CalibrationResult r = calibrate_k(id, set, search, config);
        for (const auto& d : r.dropped) err << "warning: " << d << " failed to evaluate and was dropped\n";

        prepare_outdir(outdir);
        Json j;
        j["measure"] = mf.measure;
        j["k"] = number(r.k_star);
        j["objective"] = number(r.objective);
        j["bins"] = bins;
        j["min_mode"] = mf.min_mode;
        j["used_entries"] = set.entries.size() - r.dropped.size();
        j["dropped"] = r.dropped;
        Json trace = Json::array();
        for (const auto& t : r.search_trace) trace.push_back({number(t.k), number(t.objective)});
        j["search_trace"] = trace;
        write_json((fs::path(outdir) / "calibration.json").string(), j);
        write_manifest(outdir, "calibrate", args, mf.seed, Json::array({"calibration.json"}));
        out << mf.measure << ": k = " << fmt(r.k_star) << ", weighted R^2 = " << fmt(r.objective) << '\n';
        return kOk;
    }
};

// --------------------------------------------------------------- improve

struct ImproveCmd {
    std::string input, outdir;
    std::size_t candidates = 1000;
    MeasureFlags mf;
    DataFlags df;

    void add(CLI::App& app) {
        app.add_option("--input,-i", input, "Dataset CSV")->required()->check(CLI::ExistingFile);
        df.add(app);
        mf.add(app);
        mf.add_seed(app, true);
        app.add_option("--candidates", candidates, "Random feature masks to try")->check(CLI::PositiveNumber);
        app.add_option("--outdir", outdir, "Output directory")->required();
    }

    int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
        const MeasureId id = *parse_measure(mf.measure);
        const auto [config, k_source] = mf.config();
        const LabeledTable t = df.load(input);
        warn_uncalibrated(id, k_source, err);
        const ImproveResult r = improve_clm(t.data, t.labeling, id, config, candidates, *mf.seed);

        prepare_outdir(outdir);
        Json j;
        j["tool_version"] = std::string(kToolVersion);
        j["input"] = input;
        j["measure"] = mf.measure;
        j["k"] = number(config.k);
        j["k_source"] = k_source;
        j["original_score"] = number(r.original_score);
        j["best_score"] = number(r.best_score);
        j["mask"] = r.mask.to_string();
        Json cols = Json::array();
        for (std::size_t c : r.mask.columns()) cols.push_back(t.column_names[c]);
        j["selected_columns"] = cols;
        j["candidates"] = r.candidates;
        j["failed_candidates"] = r.failed;
        write_json((fs::path(outdir) / "improve.json").string(), j);
        write_manifest(outdir, "improve", args, mf.seed, Json::array({"improve.json"}));
        out << mf.measure << ": " << fmt(r.original_score) << " -> " << fmt(r.best_score) << " using "
            << r.mask.columns().size() << " of " << t.data.dims() << " dimensions\n";
        return kOk;
    }
};

// -------------------------------------------------------------- ablation

struct AblationCmd {
    std::string axis = "both", outdir, base_scores;
    std::size_t bases = 200, base_n = 1000, base_dim = 100, bins = 10;
    std::vector<std::string> measures;
    MeasureFlags mf;

    void add(CLI::App& app) {
        app.add_option("--axis", axis, "Controlled factor")
            ->check(CLI::IsMember({"cardinality", "dimensionality", "both"}));
        app.add_option("--bases", bases, "Base datasets")->check(CLI::Range(2, 1000000));
        app.add_option("--base-n", base_n, "Points per base dataset")->check(CLI::Range(4, 100000000));
        app.add_option("--base-dim", base_dim, "Dimensions per base dataset")->check(CLI::Range(2, 1000000));
        app.add_option("--measures", measures, "Measures to compare (default: all)")
            ->delimiter(',')
            ->check(CLI::IsMember(measure_names()));
        app.add_option("--base-scores", base_scores, "CSV with a score column, one row per base, for bin weights")
            ->check(CLI::ExistingFile);
        app.add_option("--bins", bins, "Bins for --base-scores weighting")->check(CLI::PositiveNumber);
        mf.add(app, false);
        mf.add_seed(app, true);
        app.add_option("--outdir", outdir, "Output directory")->required();
    }

    int run(const std::vector<std::string>& args, std::ostream& out) {
        const MeasureConfig config = mf.config().first;
        if (measures.empty()) measures = measure_names();
        std::vector<MeasureVariant> variants;
        for (const auto& m : measures) variants.push_back({m, *parse_measure(m), config});

        std::vector<double> weights;
        if (!base_scores.empty()) {
            std::vector<double> s;
            const std::string text = read_text(base_scores);
            std::istringstream in(text);
            std::string line;
            std::getline(in, line);
            if (line.find("score") == std::string::npos)
                fail(ErrorKind::SchemaError, "'" + base_scores + "' needs a score column");
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                const auto pos = line.rfind(',');
                s.push_back(std::stod(pos == std::string::npos ? line : line.substr(pos + 1)));
            }
            if (s.size() != bases)
                throw UsageError("--base-scores lists " + std::to_string(s.size()) + " scores for " +
                                 std::to_string(bases) + " bases");
            weights = bin_weights(s, bins);
        }

        std::vector<SweepAxis> axes;
        if (axis != "dimensionality") axes.push_back(SweepAxis::Cardinality);
        if (axis != "cardinality") axes.push_back(SweepAxis::Dimensionality);

        prepare_outdir(outdir);
        Json j;
        j["tool_version"] = std::string(kToolVersion);
        j["seed"] = *mf.seed;
        j["bases"] = bases;
        j["k"] = number(config.k);
        std::ostringstream summary;
        summary << "axis,variant,average_smape\n";
        Json sweeps = Json::array();
        for (SweepAxis ax : axes) {
            SweepConfig sc;
            sc.axis = ax;
            sc.base_n = base_n;
            sc.base_dim = base_dim;
            sc.levels = default_levels(ax);
            if (ax == SweepAxis::Cardinality)
                for (auto& l : sc.levels) l = std::max<std::size_t>(4, l * base_n / 1000);
            else
                for (auto& l : sc.levels) l = std::max<std::size_t>(2, l * base_dim / 100);
            sc.levels.erase(std::unique(sc.levels.begin(), sc.levels.end()), sc.levels.end());
            sc.base_count = bases;
            sc.seed = *mf.seed;
            sc.weights = weights;
            const AblationReport r = ablation_sweep(variants, sc);
            const std::string name = ax == SweepAxis::Cardinality ? "cardinality" : "dimensionality";
            Json s;
            s["axis"] = name;
            s["levels"] = r.levels;
            Json vs = Json::array();
            for (const auto& v : r.variants) {
                Json matrix = Json::array();
                for (std::size_t a = 0; a < r.levels.size(); ++a) {
                    Json row = Json::array();
                    for (std::size_t b = 0; b < r.levels.size(); ++b) row.push_back(number(v.error[a * r.levels.size() + b]));
                    matrix.push_back(row);
                }
                vs.push_back({{"variant", v.name}, {"average_smape", number(v.average)}, {"error", matrix}});
                summary << name << ',' << v.name << ',' << fmt(v.average) << '\n';
            }
            s["variants"] = vs;
            sweeps.push_back(s);
        }
        j["sweeps"] = sweeps;
        write_json((fs::path(outdir) / "ablation.json").string(), j);
        write_text((fs::path(outdir) / "ablation_summary.csv").string(), summary.str());
        write_manifest(outdir, "ablation", args, mf.seed, Json::array({"ablation.json", "ablation_summary.csv"}));
        out << summary.str();
        return kOk;
    }
};

// ------------------------------------------------------------- stability

struct StabilityCmd {
    std::string scores, outdir;
    std::size_t subset = 10, sims = 1000;
    std::uint64_t seed = 0;

    void add(CLI::App& app) {
        app.add_option("--scores", scores, "Score table CSV (dataset,<technique>...)")
            ->required()
            ->check(CLI::ExistingFile);
        app.add_option("--subset", subset, "Datasets per simulated benchmark")->check(CLI::PositiveNumber);
        app.add_option("--sims", sims, "Simulated benchmarks")->check(CLI::PositiveNumber);
        app.add_option("--seed", seed, "Master random seed")->required();
        app.add_option("--outdir", outdir, "Output directory")->required();
    }

    int run(const std::vector<std::string>& args, std::ostream& out) {
        const ScoreTable table = load_score_table(scores);
        const std::vector<double> p = rank_stability(table, subset, sims, seed);
        const std::size_t T = table.techniques.size();

        prepare_outdir(outdir);
        Json j;
        j["tool_version"] = std::string(kToolVersion);
        j["scores"] = scores;
        j["subset"] = subset;
        j["sims"] = sims;
        j["seed"] = seed;
        j["techniques"] = table.techniques;
        Json matrix = Json::array();
        std::ostringstream csv;
        csv << "technique";
        for (const auto& t : table.techniques) csv << ',' << csv_cell(t);
        csv << '\n';
        for (std::size_t a = 0; a < T; ++a) {
            Json row = Json::array();
            csv << csv_cell(table.techniques[a]);
            for (std::size_t b = 0; b < T; ++b) {
                row.push_back(number(p[a * T + b]));
                csv << ',' << fmt(p[a * T + b]);
            }
            csv << '\n';
            matrix.push_back(row);
        }
        j["stability"] = matrix;
        write_json((fs::path(outdir) / "stability.json").string(), j);
        write_text((fs::path(outdir) / "stability.csv").string(), csv.str());
        write_manifest(outdir, "stability", args, seed, Json::array({"stability.json", "stability.csv"}));
        out << csv.str();
        return kOk;
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Adjusted internal clustering validation measures", "clm"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));
    app.footer("Exit codes: 0 ok, 2 usage or data error, 3 degenerate measure.\n"
               "CLM_THREADS caps the worker count.");

    ScoreCmd score_cmd;
    RankCmd rank_cmd;
    GenerateCmd generate_cmd;
    CalibrateCmd calibrate_cmd;
    ImproveCmd improve_cmd;
    AblationCmd ablation_cmd;
    StabilityCmd stability_cmd;

    auto* score_app = app.add_subcommand("score", "Score one labeled dataset");
    score_cmd.add(*score_app);
    auto* rank_app = app.add_subcommand("rank", "Rank datasets by a measure");
    rank_cmd.add(*rank_app);
    auto* generate_app = app.add_subcommand("generate", "Write synthetic two-Gaussian datasets");
    generate_cmd.add(*generate_app);
    auto* calibrate_app = app.add_subcommand("calibrate", "Fit k against human separability scores");
    calibrate_cmd.add(*calibrate_app);
    auto* improve_app = app.add_subcommand("improve", "Search feature subsets that raise the score");
    improve_cmd.add(*improve_app);
    auto* ablation_app = app.add_subcommand("ablation", "Cardinality and dimensionality sensitivity sweeps");
    ablation_cmd.add(*ablation_app);
    auto* stability_app = app.add_subcommand("stability", "Pairwise rank stability of a score table");
    stability_cmd.add(*stability_app);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion& e) {
        out << kToolVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kUsageOrData;
    }

    try {
        if (score_app->parsed()) return score_cmd.run(out, err);
        if (rank_app->parsed()) return rank_cmd.run(out, err);
        if (generate_app->parsed()) return generate_cmd.run(args, out);
        if (calibrate_app->parsed()) return calibrate_cmd.run(args, out, err);
        if (improve_app->parsed()) return improve_cmd.run(args, out, err);
        if (ablation_app->parsed()) return ablation_cmd.run(args, out);
        if (stability_app->parsed()) return stability_cmd.run(args, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageOrData;
    } catch (const Error& e) {
        err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
        return is_degenerate(e.kind()) ? kDegenerate : kUsageOrData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageOrData;
    }
    return kUsageOrData;
}

}  // namespace clm::cli
