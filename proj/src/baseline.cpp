#include "clm/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clm/error.hpp"
#include "terms.hpp"

namespace clm {

namespace detail {

double ch_shifted(const Dataset& data, const Labeling& labeling, double beta) {
    require_partition(data, labeling);
    const CentroidTerms t = centroid_terms(data, labeling);
    const double n = static_cast<double>(data.rows());
    const double K = static_cast<double>(labeling.class_count());

    double within = 0.0;
    for (double v : t.to_own_sq) within += v + beta / 2.0;
    double between = 0.0;
    for (std::size_t k = 0; k < labeling.class_count(); ++k)
        between += static_cast<double>(labeling.members(k).size()) * squared_distance(t.centroids[k], t.global);

    if (within <= 0.0) fail(ErrorKind::DegenerateDispersion, "within-class scatter is zero");
    return (n - K) / (K - 1.0) * between / within;
}

double di_shifted(const Dataset& data, const Labeling& labeling, double beta) {
    require_partition(data, labeling);
    const TypeOneSums s = type_one_sums(data, labeling, beta, true);
    const std::size_t K = labeling.class_count();
    double inter = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = i + 1; j < K; ++j) inter = std::min(inter, s.min_between[i * K + j]);
    const double intra = *std::max_element(s.max_within.begin(), s.max_within.end());
    if (!(intra > 0.0)) fail(ErrorKind::DegenerateDispersion, "all intra-class distances are zero");
    return inter / intra;
}

double ii_shifted(const Dataset& data, const Labeling& labeling, double p, double beta) {
    require_partition(data, labeling);
    if (!(p > 0.0)) fail(ErrorKind::InvalidArgument, "I-index power must be positive");
    const CentroidTerms t = centroid_terms(data, labeling);
    double total = 0.0, within = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        total += std::sqrt(t.to_global_sq[i]) + beta / 2.0;
        within += std::sqrt(t.to_own_sq[i]) + beta / 2.0;
    }
    double sep = 0.0;
    for (std::size_t i = 0; i < t.centroids.size(); ++i)
        for (std::size_t j = i + 1; j < t.centroids.size(); ++j)
            sep = std::max(sep, distance(t.centroids[i], t.centroids[j]));
    if (within <= 0.0) fail(ErrorKind::DegenerateDispersion, "within-class distance sum is zero");
    const double K = static_cast<double>(labeling.class_count());
    return std::pow(total / within * sep / K, p);
}

double xb_shifted(const Dataset& data, const Labeling& labeling, double beta) {
    require_partition(data, labeling);
    const CentroidTerms t = centroid_terms(data, labeling);
    double within = 0.0;
    for (double v : t.to_own_sq) within += v + beta / 2.0;
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.centroids.size(); ++i)
        for (std::size_t j = i + 1; j < t.centroids.size(); ++j)
            sep = std::min(sep, squared_distance(t.centroids[i], t.centroids[j]));
    if (sep <= 0.0) fail(ErrorKind::DegenerateCentroids, "two class centroids coincide");
    return within / (static_cast<double>(data.rows()) * sep);
}

double db_shifted(const Dataset& data, const Labeling& labeling, double beta) {
    require_partition(data, labeling);
    const CentroidTerms t = centroid_terms(data, labeling);
    const std::size_t K = labeling.class_count();
    std::vector<double> spread(K, 0.0);
    for (std::size_t i = 0; i < data.rows(); ++i)
        spread[labeling.class_of(i)] += std::sqrt(t.to_own_sq[i]) + beta / 2.0;
    for (std::size_t k = 0; k < K; ++k) spread[k] /= static_cast<double>(labeling.members(k).size());

    double total = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < K; ++j) {
            if (i == j) continue;
            const double gap = distance(t.centroids[i], t.centroids[j]);
            if (gap <= 0.0)
                fail(ErrorKind::DegenerateCentroids, "centroids of classes '" + labeling.name(i) + "' and '" +
                                                         labeling.name(j) + "' coincide");
            worst = std::max(worst, (spread[i] + spread[j]) / gap);
        }
        total += worst;
    }
    return total / static_cast<double>(K);
}

double sc_shifted(const Dataset& data, const Labeling& labeling, double beta) {
    require_partition(data, labeling);
    require_min_class_size(labeling, 2);
    const TypeOneSums s = type_one_sums(data, labeling, beta, false);
    const std::size_t K = labeling.class_count();
    double total = 0.0;
    for (std::size_t own = 0; own < K; ++own) {
        const auto& members = labeling.members(own);
        double class_sum = 0.0;
        for (std::size_t i : members) {
            const double a = s.point_to_class(i, own) / static_cast<double>(members.size() - 1);
            double b = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < K; ++k) {
                if (k == own) continue;
                b = std::min(b, s.point_to_class(i, k) / static_cast<double>(labeling.members(k).size()));
            }
            const double m = std::max(a, b);
            class_sum += m > 0.0 ? (b - a) / m : 0.0;
        }
        total += class_sum / static_cast<double>(members.size());
    }
    return total / static_cast<double>(K);
}

}  // namespace detail

double ch(const Dataset& data, const Labeling& labeling) { return detail::ch_shifted(data, labeling, 0.0); }
double di(const Dataset& data, const Labeling& labeling) { return detail::di_shifted(data, labeling, 0.0); }
double ii(const Dataset& data, const Labeling& labeling, double p) {
    return detail::ii_shifted(data, labeling, p, 0.0);
}
double xb(const Dataset& data, const Labeling& labeling) { return detail::xb_shifted(data, labeling, 0.0); }
double db(const Dataset& data, const Labeling& labeling) { return detail::db_shifted(data, labeling, 0.0); }
double sc(const Dataset& data, const Labeling& labeling) { return detail::sc_shifted(data, labeling, 0.0); }

}  // namespace clm
