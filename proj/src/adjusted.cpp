#include "clm/adjusted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "clm/baseline.hpp"
#include "clm/error.hpp"
#include "terms.hpp"

namespace clm {

namespace {

// Type-2 squared distances with the beta / 2 shift applied.
struct ShiftedSquared {
    std::vector<double> to_global;
    std::vector<double> to_own;
    double sigma = 0.0;
};

ShiftedSquared shifted_squared(const detail::CentroidTerms& t, double beta) {
    ShiftedSquared s;
    s.to_global.reserve(t.to_global_sq.size());
    s.to_own.reserve(t.to_own_sq.size());
    for (double v : t.to_global_sq) s.to_global.push_back(v + beta / 2.0);
    for (double v : t.to_own_sq) s.to_own.push_back(v + beta / 2.0);
    s.sigma = population_std(s.to_global);
    if (!(s.sigma > 0.0)) fail(ErrorKind::DegenerateDispersion, "standard deviation of squared distances is zero");
    return s;
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Shared exponent of CH and II: (mean d^2(x, c) - mean d^2(x, c_i)) / sigma.
double separation_exponent(const ShiftedSquared& s) { return (mean(s.to_global) - mean(s.to_own)) / s.sigma; }

double sigma_d_shifted(const detail::CentroidTerms& t, double beta) {
    std::vector<double> d;
    d.reserve(t.to_global_sq.size());
    for (double v : t.to_global_sq) d.push_back(std::sqrt(v) + beta / 2.0);
    const double sigma = population_std(d);
    if (!(sigma > 0.0)) fail(ErrorKind::DegenerateDispersion, "standard deviation of distances is zero");
    return sigma;
}

double di_core_from_sums(const detail::TypeOneSums& sums, const Labeling& labeling, double sigma) {
    const std::size_t K = labeling.class_count();
    double inter = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = i + 1; j < K; ++j) {
            const double size = static_cast<double>(labeling.members(i).size() * labeling.members(j).size());
            inter = std::min(inter, detail::class_pair_sum(sums, labeling, i, j) / size);
        }
    double intra = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < K; ++k) {
        const std::size_t m = labeling.members(k).size();
        if (m < 2) continue;
        intra = std::max(intra, detail::class_pair_sum(sums, labeling, k, k) / static_cast<double>(m * (m - 1)));
    }
    if (intra == -std::numeric_limits<double>::infinity())
        fail(ErrorKind::ClassTooSmall, "every class is a singleton");
    return std::exp((inter - intra) / sigma);
}

std::size_t nearest_row(const Dataset& data, const Point& target) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const double d = squared_distance(data.row(i), target);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

// DI core of {m} vs. the rest, reusing the all-pairs sums of any labeling.
double di_core_median_partition(const Dataset& data, const detail::TypeOneSums& sums, double sigma) {
    const std::size_t n = data.rows();
    if (n < 3) fail(ErrorKind::ClassTooSmall, "median partition needs at least 3 points");
    const std::size_t m = nearest_row(data, geometric_median(data).point);
    double total = 0.0, row_m = 0.0;
    for (std::size_t k = 0; k < sums.classes; ++k) row_m += sums.point_to_class(m, k);
    for (double v : sums.point_class) total += v;
    total /= 2.0;
    const double nd = static_cast<double>(n);
    const double inter = row_m / (nd - 1.0);
    const double intra = (total - row_m) / ((nd - 1.0) * (nd - 2.0) / 2.0);
    return std::exp((inter - intra) / sigma);
}

double ch_core_impl(const Dataset& data, const Labeling& labeling, double beta) {
    detail::require_partition(data, labeling);
    const detail::CentroidTerms t = detail::centroid_terms(data, labeling);
    const ShiftedSquared s = shifted_squared(t, beta);
    double between = 0.0;
    for (std::size_t k = 0; k < labeling.class_count(); ++k)
        between += static_cast<double>(labeling.members(k).size()) * squared_distance(t.centroids[k], t.global);
    if (between == 0.0) return 0.0;
    const double n = static_cast<double>(data.rows());
    const double K = static_cast<double>(labeling.class_count());
    return std::exp(separation_exponent(s)) * between / (s.sigma * n * (K - 1.0));
}

double ii_core_impl(const Dataset& data, const Labeling& labeling, double beta) {
    detail::require_partition(data, labeling);
    const detail::CentroidTerms t = detail::centroid_terms(data, labeling);
    const ShiftedSquared s = shifted_squared(t, beta);
    double sep = 0.0;
    for (std::size_t i = 0; i < t.centroids.size(); ++i)
        for (std::size_t j = i + 1; j < t.centroids.size(); ++j)
            sep = std::max(sep, squared_distance(t.centroids[i], t.centroids[j]));
    if (sep == 0.0) return 0.0;
    const double K = static_cast<double>(labeling.class_count());
    return std::exp(separation_exponent(s)) / K * sep / s.sigma;
}

double db_core_impl(const Dataset& data, const Labeling& labeling, double beta) {
    detail::require_partition(data, labeling);
    const detail::CentroidTerms t = detail::centroid_terms(data, labeling);
    const ShiftedSquared s = shifted_squared(t, beta);
    const std::size_t K = labeling.class_count();
    const double m = mean(s.to_global);

    std::vector<double> spread(K, 0.0);
    for (std::size_t i = 0; i < data.rows(); ++i) spread[labeling.class_of(i)] += s.to_own[i];
    std::vector<double> term(K);
    for (std::size_t k = 0; k < K; ++k)
        term[k] = std::exp((spread[k] / static_cast<double>(labeling.members(k).size()) - m) / s.sigma);

    double total = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
        double worst = 0.0;
        for (std::size_t j = 0; j < K; ++j) {
            if (i == j) continue;
            const double gap = squared_distance(t.centroids[i], t.centroids[j]) / s.sigma;
            if (gap <= 0.0)
                fail(ErrorKind::DegenerateCentroids, "centroids of classes '" + labeling.name(i) + "' and '" +
                                                         labeling.name(j) + "' coincide");
            worst = std::max(worst, (term[i] + term[j]) / gap);
        }
        total += worst;
    }
    return static_cast<double>(K) / total;
}

double di_core_impl(const Dataset& data, const Labeling& labeling, double beta) {
    detail::require_partition(data, labeling);
    const double sigma = sigma_d_shifted(detail::centroid_terms(data, labeling), beta);
    return di_core_from_sums(detail::type_one_sums(data, labeling, beta, false), labeling, sigma);
}

double sc_core_impl(const Dataset& data, const Labeling& labeling, double beta) {
    detail::require_partition(data, labeling);
    detail::require_min_class_size(labeling, 2);
    const double sigma = sigma_d_shifted(detail::centroid_terms(data, labeling), beta);
    const detail::TypeOneSums sums = detail::type_one_sums(data, labeling, beta, false);
    const std::size_t K = labeling.class_count();
    double total = 0.0;
    for (std::size_t own = 0; own < K; ++own) {
        const auto& members = labeling.members(own);
        double class_sum = 0.0;
        for (std::size_t i : members) {
            const double a = sums.point_to_class(i, own) / static_cast<double>(members.size() - 1);
            double b = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < K; ++k) {
                if (k == own) continue;
                b = std::min(b, sums.point_to_class(i, k) / static_cast<double>(labeling.members(k).size()));
            }
            // (b' - a') / max(a', b') with a' = e^{a/sigma}, b' = e^{b/sigma}
            class_sum += b >= a ? -std::expm1((a - b) / sigma) : std::expm1((b - a) / sigma);
        }
        total += class_sum / static_cast<double>(members.size());
    }
    return total / static_cast<double>(K);
}

Error annotate(const Error& e, const Labeling& labeling, std::size_t a, std::size_t b) {
    return Error(e.kind(), "class pair ('" + labeling.name(a) + "', '" + labeling.name(b) + "'): " + e.what());
}

const char* kind_name(AdjustedKind kind) {
    switch (kind) {
        case AdjustedKind::CH: return "CH_A";
        case AdjustedKind::DI: return "DI_A";
        case AdjustedKind::IIXB: return "IIXB_A";
        case AdjustedKind::DB: return "DB_A";
        case AdjustedKind::SC: return "SC_A";
    }
    return "?";
}

CoreFunction core_of(AdjustedKind kind) {
    switch (kind) {
        case AdjustedKind::CH: return ch_core;
        case AdjustedKind::DI: return di_core;
        case AdjustedKind::IIXB: return ii_core;
        case AdjustedKind::DB: return db_core;
        case AdjustedKind::SC: return sc_core;
    }
    return ch_core;
}

PairCores pair_cores(AdjustedKind kind, const Dataset& data, const Labeling& labeling, MinMode mode,
                     const MeasureConfig& config, std::uint64_t pair_seed) {
    PairCores pc;
    if (kind == AdjustedKind::SC) {
        pc.core = sc_core(data, labeling);
        return pc;
    }
    if (kind == AdjustedKind::CH || kind == AdjustedKind::DI) detail::require_min_class_size(labeling, 2);

    if (kind == AdjustedKind::DI) {
        const double sigma = sigma_d_shifted(detail::centroid_terms(data, labeling), 0.0);
        const detail::TypeOneSums sums = detail::type_one_sums(data, labeling, 0.0, false);
        pc.core = di_core_from_sums(sums, labeling, sigma);
        if (mode == MinMode::GeometricMedianPartition) pc.median_core = di_core_median_partition(data, sums, sigma);
    } else {
        pc.core = core_of(kind)(data, labeling);
    }
    if (mode == MinMode::MonteCarlo) {
        if (config.mc_runs == 0) fail(ErrorKind::InvalidArgument, "Monte-Carlo run count must be at least 1");
        const CoreFunction core = core_of(kind);
        Rng rng(pair_seed);
        pc.shuffled_cores.reserve(config.mc_runs);
        for (std::size_t t = 0; t < config.mc_runs; ++t)
            pc.shuffled_cores.push_back(core(data, shuffle_labels(labeling, rng)));
    }
    return pc;
}

double mean_logistic(const std::vector<double>& cores, double k) {
    double total = 0.0;
    for (double c : cores) total += logistic(c, k);
    return total / static_cast<double>(cores.size());
}

PairScore score_from_cores(AdjustedKind kind, MinMode mode, const PairCores& pc, double k) {
    PairScore ps;
    ps.class_a = pc.class_a;
    ps.class_b = pc.class_b;
    ps.name_a = pc.name_a;
    ps.name_b = pc.name_b;
    ps.core = pc.core;
    if (kind == AdjustedKind::SC) {
        ps.logistic = pc.core;
        ps.score = pc.core;
        return ps;
    }
    ps.logistic = logistic(pc.core, k);
    switch (mode) {
        case MinMode::ClosedFormHalf: ps.min = 0.5; break;
        case MinMode::MonteCarlo: ps.min = mean_logistic(pc.shuffled_cores, k); break;
        case MinMode::GeometricMedianPartition: ps.min = logistic(pc.median_core, k); break;
        case MinMode::Default: fail(ErrorKind::InvalidArgument, "unresolved min mode");
    }
    if (!(1.0 - ps.min > 0.0))
        fail(ErrorKind::DegenerateRange, "class pair ('" + pc.name_a + "', '" + pc.name_b +
                                             "'): worst-score estimate reaches 1; lower k");
    const double raw = (ps.logistic - ps.min) / (1.0 - ps.min);
    ps.clamped = raw < 0.0;
    ps.score = ps.clamped ? 0.0 : raw;
    return ps;
}

}  // namespace

namespace detail {

double ch_core_shifted(const Dataset& data, const Labeling& labeling, double beta) {
    return ch_core_impl(data, labeling, beta);
}
double di_core_shifted(const Dataset& data, const Labeling& labeling, double beta) {
    return di_core_impl(data, labeling, beta);
}
double ii_core_shifted(const Dataset& data, const Labeling& labeling, double beta) {
    return ii_core_impl(data, labeling, beta);
}
double db_core_shifted(const Dataset& data, const Labeling& labeling, double beta) {
    return db_core_impl(data, labeling, beta);
}
double sc_core_shifted(const Dataset& data, const Labeling& labeling, double beta) {
    return sc_core_impl(data, labeling, beta);
}

}  // namespace detail

double logistic(double x, double k) {
    if (!(k > 0.0) || !std::isfinite(k)) fail(ErrorKind::InvalidArgument, "growth rate k must be finite and positive");
    return 1.0 / (1.0 + std::exp(-k * x));
}

double ch_core(const Dataset& data, const Labeling& labeling) { return ch_core_impl(data, labeling, 0.0); }
double di_core(const Dataset& data, const Labeling& labeling) { return di_core_impl(data, labeling, 0.0); }
double ii_core(const Dataset& data, const Labeling& labeling) { return ii_core_impl(data, labeling, 0.0); }
double db_core(const Dataset& data, const Labeling& labeling) { return db_core_impl(data, labeling, 0.0); }
double sc_core(const Dataset& data, const Labeling& labeling) { return sc_core_impl(data, labeling, 0.0); }

double di_core_median_partition(const Dataset& data) {
    // A single all-rows class yields the plain all-pairs sums.
    const Labeling whole(std::vector<std::size_t>(data.rows(), 0), {"all"});
    const double sigma = sigma_d_shifted(detail::centroid_terms(data, whole), 0.0);
    return di_core_median_partition(data, detail::type_one_sums(data, whole, 0.0, false), sigma);
}

double estimate_min_monte_carlo(const CoreFunction& core, const Dataset& data, const Labeling& labeling,
                                std::size_t runs, std::uint64_t seed, double k) {
    if (runs == 0) fail(ErrorKind::InvalidArgument, "Monte-Carlo run count must be at least 1");
    Rng rng(seed);
    std::vector<double> cores;
    cores.reserve(runs);
    for (std::size_t t = 0; t < runs; ++t) cores.push_back(core(data, shuffle_labels(labeling, rng)));
    return mean_logistic(cores, k);
}

MinMode resolve_min_mode(AdjustedKind kind, MinMode requested) {
    if (kind == AdjustedKind::SC) return MinMode::Default;
    if (requested == MinMode::Default)
        return kind == AdjustedKind::DI ? MinMode::GeometricMedianPartition : MinMode::ClosedFormHalf;
    if (kind == AdjustedKind::DI && requested == MinMode::ClosedFormHalf)
        fail(ErrorKind::InvalidArgument, "closed-form worst score is not available for DI_A");
    if (kind != AdjustedKind::DI && requested == MinMode::GeometricMedianPartition)
        fail(ErrorKind::InvalidArgument,
             std::string("median-partition worst score is only defined for DI_A, not ") + kind_name(kind));
    return requested;
}

double aggregate(const std::vector<double>& values, Aggregation agg) {
    if (values.empty()) fail(ErrorKind::EmptyInput, "nothing to aggregate");
    switch (agg) {
        case Aggregation::Min: return *std::min_element(values.begin(), values.end());
        case Aggregation::Max: return *std::max_element(values.begin(), values.end());
        case Aggregation::Avg: break;
    }
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

AdjustedCores adjusted_cores(AdjustedKind kind, const Dataset& data, const Labeling& labeling,
                             const MeasureConfig& config) {
    detail::require_partition(data, labeling);
    AdjustedCores out;
    out.kind = kind;
    out.min_mode = resolve_min_mode(kind, config.min_mode);

    const std::size_t K = labeling.class_count();
    std::uint64_t pair_index = 0;
    for (std::size_t a = 0; a < K; ++a)
        for (std::size_t b = a + 1; b < K; ++b, ++pair_index) {
            const auto [sub, sub_labels] = restrict_to_classes(data, labeling, a, b);
            PairCores pc;
            try {
                pc = pair_cores(kind, sub, sub_labels, out.min_mode, config, derive_seed(config.seed, pair_index));
            } catch (const Error& e) {
                throw annotate(e, labeling, a, b);
            }
            pc.class_a = a;
            pc.class_b = b;
            pc.name_a = labeling.name(a);
            pc.name_b = labeling.name(b);
            out.pairs.push_back(std::move(pc));
        }
    return out;
}

AdjustedResult adjusted_from_cores(const AdjustedCores& cores, double k, Aggregation agg) {
    if (!(k > 0.0) || !std::isfinite(k)) fail(ErrorKind::InvalidArgument, "growth rate k must be finite and positive");
    AdjustedResult result;
    result.min_mode = cores.min_mode;
    std::vector<double> scores;
    for (const PairCores& pc : cores.pairs) {
        result.pairs.push_back(score_from_cores(cores.kind, cores.min_mode, pc, k));
        scores.push_back(result.pairs.back().score);
    }
    result.score = aggregate(scores, agg);
    return result;
}

AdjustedResult evaluate_adjusted(AdjustedKind kind, const Dataset& data, const Labeling& labeling,
                                 const MeasureConfig& config) {
    if (!(config.k > 0.0) || !std::isfinite(config.k))
        fail(ErrorKind::InvalidArgument, "growth rate k must be finite and positive");
    return adjusted_from_cores(adjusted_cores(kind, data, labeling, config), config.k, config.agg);
}

double ch_adjusted(const Dataset& data, const Labeling& labeling, const MeasureConfig& config) {
    return evaluate_adjusted(AdjustedKind::CH, data, labeling, config).score;
}
double dunn_adjusted(const Dataset& data, const Labeling& labeling, const MeasureConfig& config) {
    return evaluate_adjusted(AdjustedKind::DI, data, labeling, config).score;
}
double ii_xb_adjusted(const Dataset& data, const Labeling& labeling, const MeasureConfig& config) {
    return evaluate_adjusted(AdjustedKind::IIXB, data, labeling, config).score;
}
double ii_adjusted(const Dataset& data, const Labeling& labeling, const MeasureConfig& config) {
    return ii_xb_adjusted(data, labeling, config);
}
double xb_adjusted(const Dataset& data, const Labeling& labeling, const MeasureConfig& config) {
    return ii_xb_adjusted(data, labeling, config);
}
double db_adjusted(const Dataset& data, const Labeling& labeling, const MeasureConfig& config) {
    return evaluate_adjusted(AdjustedKind::DB, data, labeling, config).score;
}
double sc_adjusted(const Dataset& data, const Labeling& labeling, const MeasureConfig& config) {
    return evaluate_adjusted(AdjustedKind::SC, data, labeling, config).score;
}

double pairwise_aggregate(const PairMeasure& pair_measure, const Dataset& data, const Labeling& labeling,
                          Aggregation agg) {
    detail::require_partition(data, labeling);
    std::vector<double> scores;
    for (std::size_t a = 0; a < labeling.class_count(); ++a)
        for (std::size_t b = a + 1; b < labeling.class_count(); ++b) {
            const auto [sub, sub_labels] = restrict_to_classes(data, labeling, a, b);
            try {
                scores.push_back(pair_measure(sub, sub_labels));
            } catch (const Error& e) {
                throw annotate(e, labeling, a, b);
            }
        }
    return aggregate(scores, agg);
}

double shifted_evaluation(ShiftTarget target, const Dataset& data, const Labeling& labeling, double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) fail(ErrorKind::InvalidArgument, "shift must be finite and >= 0");
    switch (target) {
        case ShiftTarget::CH: return detail::ch_shifted(data, labeling, beta);
        case ShiftTarget::DI: return detail::di_shifted(data, labeling, beta);
        case ShiftTarget::II: return detail::ii_shifted(data, labeling, 1.0, beta);
        case ShiftTarget::XB: return detail::xb_shifted(data, labeling, beta);
        case ShiftTarget::DB: return detail::db_shifted(data, labeling, beta);
        case ShiftTarget::SC: return detail::sc_shifted(data, labeling, beta);
        case ShiftTarget::CHCore: return ch_core_impl(data, labeling, beta);
        case ShiftTarget::DICore: return di_core_impl(data, labeling, beta);
        case ShiftTarget::IICore: return ii_core_impl(data, labeling, beta);
        case ShiftTarget::DBCore: return db_core_impl(data, labeling, beta);
        case ShiftTarget::SCCore: return sc_core_impl(data, labeling, beta);
    }
    fail(ErrorKind::InvalidArgument, "unknown shift target");
}

}  // namespace clm
