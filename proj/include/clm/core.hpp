#ifndef CLM_CORE_HPP
#define CLM_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace clm {

using Rng = std::mt19937_64;

/// Mixes a master seed with a task index (splitmix64) so that parallel and
/// serial runs draw identical per-task streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

using Point = std::vector<double>;
using IndexSet = std::vector<std::size_t>;

/// Row-major n x dim matrix of finite reals.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::size_t rows, std::size_t dims, std::vector<double> values);

    static Dataset from_rows(const std::vector<Point>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t dims() const noexcept { return dims_; }
    bool empty() const noexcept { return rows_ == 0; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * dims_, dims_};
    }
    std::span<const double> values() const noexcept { return values_; }

    Dataset select_rows(std::span<const std::size_t> indices) const;
    Dataset select_columns(std::span<const std::size_t> columns) const;
    Dataset scaled(double factor) const;

private:
    std::size_t rows_ = 0;
    std::size_t dims_ = 0;
    std::vector<double> values_;
};

/// Partition of the rows of a dataset into nonempty classes.
///
/// Classes get dense ids 0..K-1 ordered by their names (numerically when all
/// names are integers, lexicographically otherwise), so class-pair iteration
/// order never depends on row order.
class Labeling {
public:
    Labeling() = default;
    /// `assignment[i]` is the dense class id of row i; every id in
    /// [0, names.size()) must occur at least once.
    Labeling(std::vector<std::size_t> assignment, std::vector<std::string> names);

    static Labeling from_names(const std::vector<std::string>& per_point);
    static Labeling from_ids(std::span<const int> per_point);

    std::size_t size() const noexcept { return assignment_.size(); }
    std::size_t class_count() const noexcept { return names_.size(); }

    std::span<const std::size_t> assignment() const noexcept { return assignment_; }
    std::size_t class_of(std::size_t row) const { return assignment_[row]; }
    const IndexSet& members(std::size_t cls) const { return classes_[cls]; }
    const std::vector<IndexSet>& classes() const noexcept { return classes_; }
    const std::string& name(std::size_t cls) const { return names_[cls]; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::vector<std::size_t> class_sizes() const;

    /// Same class names, new per-row assignment (used by shuffles).
    Labeling with_assignment(std::vector<std::size_t> assignment) const;

private:
    std::vector<std::size_t> assignment_;
    std::vector<std::string> names_;
    std::vector<IndexSet> classes_;
};

struct DispersionStats {
    double sigma_d = 0.0;   // population std of d(x, c)
    double sigma_d2 = 0.0;  // population std of d^2(x, c)
};

struct GeometricMedian {
    Point point;
    std::size_t iterations = 0;
    bool converged = false;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

Point centroid(const Dataset& data);
Point centroid(const Dataset& data, std::span<const std::size_t> indices);

double population_std(std::span<const double> values);

DispersionStats dispersion(const Dataset& data);

/// Vardi-Zhang modified Weiszfeld iteration, started at the centroid.
GeometricMedian geometric_median(const Dataset& data, double tolerance = 1e-8,
                                 std::size_t max_iter = 1000);

/// Uniform permutation of the assignment; class sizes are preserved exactly.
Labeling shuffle_labels(const Labeling& labeling, Rng& rng);

/// Per-class uniform sampling without replacement of round(alpha * |C_i|)
/// rows (half-up), row order preserved. Throws ClassTooSmall when a class
/// would keep fewer than two rows.
std::pair<Dataset, Labeling> subsample(const Dataset& data, const Labeling& labeling,
                                       double alpha, Rng& rng);

/// Rows of classes `a` and `b` only, in original order, relabeled as a
/// two-class partition that keeps the original class names.
std::pair<Dataset, Labeling> restrict_to_classes(const Dataset& data, const Labeling& labeling,
                                                 std::size_t a, std::size_t b);

/// Sum of d^2(x, y) over all ordered pairs (x in A, y in B), diagonal included.
double pairwise_squared_sum(const Dataset& data, std::span<const std::size_t> a,
                            std::span<const std::size_t> b);

struct IdentityResiduals {
    double pair_sum_identity = 0.0;   // |2n sum d^2(x,c) - sum sum d^2(x,y)| on A
    double centroid_identity = 0.0;   // |d^2(c_A,c_B) - three double-sum expression|
};

IdentityResiduals pairwise_distance_identities_check(const Dataset& data,
                                                     std::span<const std::size_t> a,
                                                     std::span<const std::size_t> b);

}  // namespace clm

#endif  // CLM_CORE_HPP
