#ifndef CLM_TERMS_HPP
#define CLM_TERMS_HPP

// Distance building blocks shared by the baseline and adjusted measures.
//
// Every measure is evaluated from typed distance terms so that a formal
// shift of the squared point distances (d_H^2 = d_L^2 + beta) can be applied
// term by term: type-1 (point-point) terms move by beta, type-2
// (point-centroid) terms by beta / 2, type-3 (centroid-centroid) terms stay.

#include <cstddef>
#include <vector>

#include "clm/core.hpp"

namespace clm::detail {

/// Point-to-point (type-1) Euclidean distance aggregates from one pass over
/// the unordered pairs. Every distance enters as d + shift.
struct TypeOneSums {
    std::size_t classes = 0;
    /// point_class[i * classes + k] = sum over y in C_k, y != i, of d(i, y)
    std::vector<double> point_class;
    /// K x K minimum over x in C_i, y in C_j (i != j); filled on request
    std::vector<double> min_between;
    /// per-class maximum over x != y in C_k; -inf for singleton classes
    std::vector<double> max_within;

    double point_to_class(std::size_t i, std::size_t k) const { return point_class[i * classes + k]; }
};

TypeOneSums type_one_sums(const Dataset& data, const Labeling& labeling, double shift,
                          bool with_extrema);

/// Sum of d(x, y) over x in C_a, y in C_b (ordered pairs, self pairs excluded).
double class_pair_sum(const TypeOneSums& sums, const Labeling& labeling, std::size_t a, std::size_t b);

/// Centroids and unshifted squared point-to-centroid (type-2) distances.
struct CentroidTerms {
    Point global;
    std::vector<Point> centroids;
    std::vector<double> to_global_sq;  // d^2(x, c)
    std::vector<double> to_own_sq;     // d^2(x, c_{class(x)})
};

CentroidTerms centroid_terms(const Dataset& data, const Labeling& labeling);

/// Rejects mismatched inputs and partitions with fewer than two classes.
void require_partition(const Dataset& data, const Labeling& labeling);
void require_min_class_size(const Labeling& labeling, std::size_t minimum);

// Measures with an explicit shift; beta = 0 is the plain evaluation.
double ch_shifted(const Dataset& data, const Labeling& labeling, double beta);
double di_shifted(const Dataset& data, const Labeling& labeling, double beta);
double ii_shifted(const Dataset& data, const Labeling& labeling, double p, double beta);
double xb_shifted(const Dataset& data, const Labeling& labeling, double beta);
double db_shifted(const Dataset& data, const Labeling& labeling, double beta);
double sc_shifted(const Dataset& data, const Labeling& labeling, double beta);

double ch_core_shifted(const Dataset& data, const Labeling& labeling, double beta);
double di_core_shifted(const Dataset& data, const Labeling& labeling, double beta);
double ii_core_shifted(const Dataset& data, const Labeling& labeling, double beta);
double db_core_shifted(const Dataset& data, const Labeling& labeling, double beta);
double sc_core_shifted(const Dataset& data, const Labeling& labeling, double beta);

}  // namespace clm::detail

#endif  // CLM_TERMS_HPP
