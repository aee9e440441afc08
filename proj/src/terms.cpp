#include "terms.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "clm/error.hpp"

namespace clm::detail {

TypeOneSums type_one_sums(const Dataset& data, const Labeling& labeling, double shift,
                          bool with_extrema) {
    const std::size_t n = data.rows();
    const std::size_t dims = data.dims();
    const std::size_t K = labeling.class_count();
    const auto assignment = labeling.assignment();
    const double* values = data.values().data();

    TypeOneSums s;
    s.classes = K;
    s.point_class.assign(n * K, 0.0);
    if (with_extrema) {
        s.min_between.assign(K * K, std::numeric_limits<double>::infinity());
        s.max_within.assign(K, -std::numeric_limits<double>::infinity());
    }

    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = values + i * dims;
        const std::size_t ci = assignment[i];
        double* row_i = s.point_class.data() + i * K;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* xj = values + j * dims;
            double acc = 0.0;
#pragma omp simd reduction(+ : acc)
            for (std::size_t t = 0; t < dims; ++t) {
                const double diff = xi[t] - xj[t];
                acc += diff * diff;
            }
            const double d = std::sqrt(acc) + shift;
            const std::size_t cj = assignment[j];
            row_i[cj] += d;
            s.point_class[j * K + ci] += d;
            if (with_extrema) {
                if (ci == cj) {
                    if (d > s.max_within[ci]) s.max_within[ci] = d;
                } else {
                    double& lo = s.min_between[ci * K + cj];
                    if (d < lo) {
                        lo = d;
                        s.min_between[cj * K + ci] = d;
                    }
                }
            }
        }
    }
    return s;
}

double class_pair_sum(const TypeOneSums& sums, const Labeling& labeling, std::size_t a, std::size_t b) {
    double total = 0.0;
    for (std::size_t i : labeling.members(a)) total += sums.point_to_class(i, b);
    return total;
}

CentroidTerms centroid_terms(const Dataset& data, const Labeling& labeling) {
    CentroidTerms t;
    t.global = centroid(data);
    t.centroids.reserve(labeling.class_count());
    for (const auto& members : labeling.classes()) t.centroids.push_back(centroid(data, members));
    t.to_global_sq.resize(data.rows());
    t.to_own_sq.resize(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        t.to_global_sq[i] = squared_distance(data.row(i), t.global);
        t.to_own_sq[i] = squared_distance(data.row(i), t.centroids[labeling.class_of(i)]);
    }
    return t;
}

void require_partition(const Dataset& data, const Labeling& labeling) {
    if (labeling.size() != data.rows())
        fail(ErrorKind::InvalidArgument, "labeling has " + std::to_string(labeling.size()) +
                                             " entries but the dataset has " + std::to_string(data.rows()) +
                                             " rows");
    if (labeling.class_count() < 2)
        fail(ErrorKind::TooFewClasses, "at least two classes are required, got " +
                                           std::to_string(labeling.class_count()));
}

void require_min_class_size(const Labeling& labeling, std::size_t minimum) {
    for (std::size_t k = 0; k < labeling.class_count(); ++k)
        if (labeling.members(k).size() < minimum)
            fail(ErrorKind::ClassTooSmall, "class '" + labeling.name(k) + "' has " +
                                               std::to_string(labeling.members(k).size()) +
                                               " point(s); at least " + std::to_string(minimum) +
                                               " required");
}

}  // namespace clm::detail
