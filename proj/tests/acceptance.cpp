// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "clm/adjusted.hpp"
#include "clm/baseline.hpp"
#include "clm/calibration.hpp"
#include "clm/core.hpp"
#include "clm/error.hpp"
#include "clm/evalharness.hpp"
#include "clm/measure.hpp"
#include "clm/stats.hpp"
#include "clm/synth.hpp"
#include "support.hpp"

using namespace clm;
using support::rel_close;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int id, bool ok, const std::string& detail) {
    if (!ok) ++failures;
    std::printf("%s %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::pair<Dataset, Labeling> gaussian_pair(std::uint64_t seed, std::size_t n, std::size_t dim) {
    Rng rng(seed);
    GaussianPairSpec spec = random_gaussian_pair_spec(rng, n, dim);
    return generate_gaussian_pair(spec);
}

// ----------------------------------------------------------------------------

void criterion_1() {
    Timer t;
    const auto [x, c] = support::hand_dataset();
    const bool ok = rel_close(ch(x, c), 200.0, 1e-9) && rel_close(di(x, c), 9.0, 1e-9) &&
                    rel_close(xb(x, c), 0.0025, 1e-9) && rel_close(db(x, c), 0.1, 1e-9) &&
                    rel_close(ii(x, c, 1.0), 50.0, 1e-9) && rel_close(sc(x, c), 0.899749373433584, 1e-9);
    const double s = t.seconds();
    report(1, ok && s < 1.0,
           "hand oracle CH=" + fmt("%.12g", ch(x, c)) + " DI=" + fmt("%.12g", di(x, c)) + " XB=" +
               fmt("%.12g", xb(x, c)) + " DB=" + fmt("%.12g", db(x, c)) + " II=" + fmt("%.12g", ii(x, c)) +
               " SC=" + fmt("%.12g", sc(x, c)) + fmt(" (%.3f s)", s));
}

void criterion_2() {
    Timer t;
    const ShiftTarget cores[] = {ShiftTarget::CHCore, ShiftTarget::DICore, ShiftTarget::IICore, ShiftTarget::DBCore,
                                 ShiftTarget::SCCore};
    const ShiftTarget bases[] = {ShiftTarget::CH, ShiftTarget::DI, ShiftTarget::II,
                                 ShiftTarget::XB, ShiftTarget::DB, ShiftTarget::SC};
    double worst_core = 0.0;
    double weakest_base = INFINITY;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(derive_seed(2, seed));
        const std::size_t classes = 2 + rng() % 4;
        const std::size_t dims = 2 + rng() % 9;
        const auto [x, c] = support::random_blobs(derive_seed(20, seed), classes, dims, 1.0 + double(rng() % 4));
        for (ShiftTarget target : cores) {
            const double plain = shifted_evaluation(target, x, c, 0.0);
            for (double beta : {0.1, 1.0, 100.0}) {
                const double shifted = shifted_evaluation(target, x, c, beta);
                worst_core = std::max(worst_core, std::abs(shifted - plain) / std::max(std::abs(plain), 1e-300));
            }
        }
        for (ShiftTarget target : bases) {
            const double plain = shifted_evaluation(target, x, c, 0.0);
            const double shifted = shifted_evaluation(target, x, c, 1.0);
            weakest_base = std::min(weakest_base, std::abs(shifted - plain) / std::abs(plain));
        }
    }
    const double s = t.seconds();
    report(2, worst_core <= 1e-9 && weakest_base > 1e-3 && s < 30.0,
           "max core rel change " + fmt("%.3g", worst_core) + ", min baseline rel change at beta=1 " +
               fmt("%.3g", weakest_base) + fmt(" (%.1f s)", s));
}

void criterion_3() {
    Timer t;
    const std::pair<const char*, CoreFunction> chains[] = {{"CH", ch_core}, {"IIXB", ii_core}, {"DB", db_core}};
    double worst = 0.0;
    std::string where;
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto [x, c] = gaussian_pair(derive_seed(3, i), 300, 2 + i % 9);
        for (const auto& [name, core] : chains) {
            const double est = estimate_min_monte_carlo(core, x, c, 200, derive_seed(33, i), 1.0);
            if (std::abs(est - 0.5) > worst) {
                worst = std::abs(est - 0.5);
                where = name;
            }
        }
    }
    const double s = t.seconds();
    report(3, worst <= 0.05 && s < 120.0,
           "max |E[logistic(shuffled core)] - 1/2| = " + fmt("%.4f", worst) + " (" + where + ")" +
               fmt(" (%.1f s)", s));
}

void criterion_4() {
    Timer t;
    std::size_t equal = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        Rng rng(derive_seed(4, i));
        const auto [x, c] = support::random_blobs(derive_seed(40, i), 2 + rng() % 5, 1 + rng() % 8, 0.5 + double(rng() % 5));
        MeasureConfig cfg;
        cfg.k = std::pow(10.0, -2.0 + 4.0 * double(rng() % 1000) / 1000.0);
        cfg.agg = static_cast<Aggregation>(rng() % 3);
        if (xb_adjusted(x, c, cfg) == ii_adjusted(x, c, cfg) &&
            score(MeasureId::XB_A, x, c, cfg) == score(MeasureId::II_A, x, c, cfg))
            ++equal;
    }
    report(4, equal == 100, std::to_string(equal) + "/100 bit-identical" + fmt(" (%.1f s)", t.seconds()));
}

void criterion_5() {
    Timer t;
    std::vector<MeasureVariant> variants;
    for (MeasureId id : all_measures()) variants.push_back({std::string(measure_name(id)), id, {}});
    std::map<std::string, double> card, dim;
    for (SweepAxis axis : {SweepAxis::Cardinality, SweepAxis::Dimensionality}) {
        SweepConfig cfg;
        cfg.axis = axis;
        cfg.levels = default_levels(axis);
        cfg.base_count = 200;
        cfg.seed = 5;
        const AblationReport r = ablation_sweep(variants, cfg);
        for (const auto& v : r.variants) (axis == SweepAxis::Cardinality ? card : dim)[v.name] = v.average;
    }
    const std::pair<const char*, const char*> claims[] = {
        {"ch_adj", "ch"}, {"di_adj", "di"}, {"ii_adj", "ii"}, {"xb_adj", "xb"}, {"db_adj", "db"}};
    bool ok = true;
    std::string detail;
    for (const auto& [adj, base] : claims) {
        ok = ok && card[adj] < card[base] && dim[adj] < dim[base];
        detail += std::string(base) + fmt(" %.4f", card[base]) + fmt("/%.4f", dim[base]) + " -> " + fmt("%.4f", card[adj]) +
                  fmt("/%.4f", dim[adj]) + "; ";
    }
    ok = ok && dim["sc_adj"] < dim["sc"];
    detail += "sc" + fmt(" %.4f", card["sc"]) + fmt("/%.4f", dim["sc"]) + " -> " + fmt("%.4f", card["sc_adj"]) +
              fmt("/%.4f", dim["sc_adj"]) + "; ";
    const double reduction = 1.0 - card["ch_adj"] / card["ch"];
    ok = ok && reduction >= 0.30;
    const double s = t.seconds();
    report(5, ok && s < 600.0,
           "avg SMAPE card/dim " + detail + "CH_A cardinality reduction " + fmt("%.1f%%", 100 * reduction) +
               fmt(" (%.1f s)", s));
}

void criterion_6() {
    Timer t;
    const MeasureId bounded[] = {MeasureId::CH_A, MeasureId::DI_A, MeasureId::II_A, MeasureId::DB_A};
    std::size_t inputs = 0, out_of_range = 0, failed = 0;
    auto check_range = [&](const Dataset& x, const Labeling& c) {
        ++inputs;
        for (MeasureId id : bounded) {
            try {
                const double v = score(id, x, c);
                if (!(v >= 0.0 && v <= 1.0)) ++out_of_range;
            } catch (const Error&) {
                ++failed;
            }
        }
        try {
            const double v = score(MeasureId::SC_A, x, c);
            if (!(v >= -1.0 && v <= 1.0)) ++out_of_range;
        } catch (const Error&) {
            ++failed;
        }
    };
    for (std::uint64_t i = 0; i < 900; ++i) {
        Rng rng(derive_seed(6, i));
        const std::size_t classes = 2 + rng() % 5;
        const std::size_t dims = 1 + rng() % 10;
        const double spread = std::pow(10.0, -2.0 + 4.0 * double(rng() % 1000) / 1000.0);
        const auto [x, c] = support::random_blobs(derive_seed(60, i), classes, dims, spread, 2, 25);
        check_range(x, c);
    }
    // adversarial: extreme scales, duplicated points, tiny classes, heavy imbalance, outliers
    for (std::uint64_t i = 0; i < 100; ++i) {
        Rng rng(derive_seed(61, i));
        std::normal_distribution<double> normal;
        const std::size_t kind = i % 5;
        std::vector<double> values;
        std::vector<int> ids;
        const std::size_t dims = 1 + rng() % 4;
        const std::size_t n = 6 + rng() % 40;
        for (std::size_t r = 0; r < n; ++r) {
            const int cls = kind == 3 ? (r < 2 ? 0 : 1) : int(r % (2 + i % 3));
            for (std::size_t d = 0; d < dims; ++d) {
                double v = normal(rng);
                if (kind == 0) v *= 1e8;
                if (kind == 1) v *= 1e-8;
                if (kind == 2) v = std::round(v);  // many duplicates
                if (kind == 4 && r == 0) v = 1e6;  // one far outlier
                values.push_back(v + (kind == 3 ? 10.0 * cls : 0.0));
            }
            ids.push_back(cls);
        }
        check_range(Dataset(n, dims, std::move(values)), Labeling::from_ids(ids));
    }

    // random-label expectation over 100 shuffles
    double worst = 0.0;
    std::string worst_name;
    double di_gm_mean = 0.0;
    const std::size_t datasets = 20;
    for (std::uint64_t i = 0; i < datasets; ++i) {
        const auto [x, c] = gaussian_pair(derive_seed(62, i), 200, 2 + i % 5);
        std::map<std::string, double> sums;
        double di_gm = 0.0;
        for (std::uint64_t s = 0; s < 100; ++s) {
            Rng rng(derive_seed(derive_seed(63, i), s));
            const Labeling shuffled = shuffle_labels(c, rng);
            for (MeasureId id : {MeasureId::CH_A, MeasureId::II_A, MeasureId::DB_A, MeasureId::SC_A})
                sums[std::string(measure_name(id))] += score(id, x, shuffled);
            MeasureConfig mc;
            mc.min_mode = MinMode::MonteCarlo;
            mc.seed = derive_seed(64, s);
            sums["di_adj"] += score(MeasureId::DI_A, x, shuffled, mc);
            di_gm += score(MeasureId::DI_A, x, shuffled);
        }
        for (const auto& [name, sum] : sums) {
            if (std::abs(sum / 100.0) > worst) {
                worst = std::abs(sum / 100.0);
                worst_name = name;
            }
        }
        di_gm_mean += di_gm / 100.0 / double(datasets);
    }
    const double s = t.seconds();
    report(6, out_of_range == 0 && worst <= 0.1,
           std::to_string(inputs) + " inputs, " + std::to_string(out_of_range) + " out of range, " +
               std::to_string(failed) + " typed errors; max |shuffled mean| " + fmt("%.4f", worst) + " (" +
               worst_name + "; di_adj with monte_carlo min, median-partition min gives " + fmt("%.4f", di_gm_mean) +
               ")" + fmt(" (%.1f s)", s));
}

void criterion_7() {
    Timer t;
    std::vector<double> rhos;
    for (std::uint64_t i = 0; i < 50; ++i) {
        Rng rng(derive_seed(7, i));
        GaussianPairSpec spec = random_gaussian_pair_spec(rng, 500, 2 + i % 9);
        spec.mean_distance = 4.0;
        const auto [x, c] = generate_gaussian_pair(spec);
        rhos.push_back(noisy_label_ranking(x, c, MeasureId::CH_A, {}, default_noise_fractions(), derive_seed(70, i)));
    }
    std::sort(rhos.begin(), rhos.end());
    const double median = (rhos[24] + rhos[25]) / 2.0;
    const double s = t.seconds();
    report(7, median >= 0.9 && s < 300.0,
           "median Spearman " + fmt("%.4f", median) + ", min " + fmt("%.4f", rhos.front()) + fmt(" (%.1f s)", s));
}

void criterion_8() {
    Timer t;
    std::size_t violations = 0, total = 0;
    double tightest = INFINITY;
    for (std::uint64_t i = 0; i < 20; ++i) {
        const auto [x, c] = gaussian_pair(derive_seed(8, i), 200, 2 + i % 5);
        const double psi = di_core_median_partition(x);
        for (std::uint64_t s = 0; s < 100; ++s) {
            Rng rng(derive_seed(derive_seed(80, i), s));
            const double pi = di_core(x, shuffle_labels(c, rng));
            ++total;
            if (psi > pi) ++violations;
            tightest = std::min(tightest, pi - psi);
        }
    }
    report(8, violations == 0,
           std::to_string(violations) + "/" + std::to_string(total) + " shuffles below the median-partition core" +
               ", smallest gap " + fmt("%.4g", tightest) + fmt(" (%.1f s)", t.seconds()));
}

void criterion_9() {
    Timer t;
    std::size_t raised = 0, lowered = 0;
    double min_original = INFINITY, max_original = 0.0;
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto [x, c] = support::planted_dataset(derive_seed(9, i), 200, 2, 18, 1.0, 1.0);
        const ImproveResult r = improve_clm(x, c, MeasureId::CH_A, {}, 1000, derive_seed(90, i));
        if (r.best_score > r.original_score) ++raised;
        if (r.best_score < r.original_score) ++lowered;
        min_original = std::min(min_original, r.original_score);
        max_original = std::max(max_original, r.original_score);
    }
    const double s = t.seconds();
    report(9, raised >= 48 && lowered == 0 && s < 300.0,
           "raised in " + std::to_string(raised) + "/50, lowered in " + std::to_string(lowered) +
               ", full-feature CH_A in [" + fmt("%.3f", min_original) + fmt(", %.3f]", max_original) +
               fmt(" (%.1f s)", s));
}

void criterion_10() {
    Timer t;
    ScoreTable table;
    table.techniques = {"A", "B", "C", "D"};
    Rng rng(10);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        table.datasets.push_back("d" + std::to_string(i));
        const double b = u(rng);
        table.values.insert(table.values.end(), {b + 0.01 + u(rng), b, u(rng), u(rng)});
    }
    const auto p = rank_stability(table, 10, 500, 3);
    const auto again = rank_stability(table, 10, 500, 3);
    bool in_range = true;
    for (double v : p) in_range = in_range && v >= 0.5 && v <= 1.0;
    const bool ok = p[0 * 4 + 1] == 1.0 && p[1 * 4 + 0] == 1.0 && in_range && p == again;
    report(10, ok,
           "P(A,B)=" + fmt("%.3f", p[1]) + ", entries in [0.5,1]: " + (in_range ? "yes" : "no") +
               ", deterministic: " + (p == again ? "yes" : "no") + fmt(" (%.2f s)", t.seconds()));
}

void criterion_11() {
    Timer t;
    CalibrationSet set;
    MeasureConfig truth;
    truth.k = 10.0;
    for (std::uint64_t i = 0; i < 40; ++i) {
        const double separation = 0.05 + 0.02 * double(i);
        auto [x, c] = support::planted_dataset(derive_seed(11, i), 100, 2, 0, separation, 1.0);
        const double target = ch_adjusted(x, c, truth);
        set.entries.push_back({"d" + std::to_string(i), std::move(x), std::move(c), target});
    }
    const CalibrationResult r = calibrate_k(MeasureId::CH_A, set);
    const bool recovered = r.k_star >= 10.0 / 1.25 && r.k_star <= 10.0 * 1.25 && r.objective >= 0.99;

    const std::vector<double> scores{0.1, 0.15, 0.9};
    const auto w = bin_weights(scores, 2);
    const bool weights_ok = w.size() == 3 && std::abs(w[0] - 0.5) < 1e-12 && std::abs(w[1] - 0.5) < 1e-12 &&
                            std::abs(w[2] - 1.0) < 1e-12;
    double lo = 1.0, hi = 0.0;
    for (const auto& e : set.entries) {
        lo = std::min(lo, e.human_score);
        hi = std::max(hi, e.human_score);
    }
    report(11, recovered && weights_ok,
           "k* = " + fmt("%.4f", r.k_star) + " (true 10), weighted R^2 = " + fmt("%.6f", r.objective) +
               ", targets in [" + fmt("%.3f", lo) + fmt(", %.3f]", hi) + ", bin weights " +
               fmt("[%.2f, ", w[0]) + fmt("%.2f, ", w[1]) + fmt("%.2f]", w[2]) + fmt(" (%.1f s)", t.seconds()));
}

void criterion_12() {
    const auto [big, big_lab] = support::random_blobs(12, 10, 100, 1.0, 2000, 2000);
    Timer t1;
    const double ch_a = score(MeasureId::CH_A, big, big_lab);
    const double s1 = t1.seconds();

    const auto [mid, mid_lab] = support::random_blobs(13, 10, 100, 1.0, 500, 500);
    Timer t2;
    const double sc_a = score(MeasureId::SC_A, mid, mid_lab);
    const double s2 = t2.seconds();
    report(12, s1 < 10.0 && s2 < 60.0,
           "CH_A n=20000 d=100 K=10: " + fmt("%.2f s", s1) + fmt(" (score %.4f)", ch_a) +
               "; SC_A n=5000 d=100 K=10: " + fmt("%.2f s", s2) + fmt(" (score %.4f)", sc_a));
}

}  // namespace

int main(int argc, char** argv) {
    setenv("CLM_THREADS", "1", 1);
    const std::vector<std::function<void()>> criteria = {criterion_1, criterion_2, criterion_3, criterion_4,
                                                         criterion_5, criterion_6, criterion_7, criterion_8,
                                                         criterion_9, criterion_10, criterion_11, criterion_12};
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = int(i) + 1;
        if (!selected.empty() && std::find(selected.begin(), selected.end(), id) == selected.end()) continue;
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            report(id, false, std::string("threw: ") + e.what());
        }
    }
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
