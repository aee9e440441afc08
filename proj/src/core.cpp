#include "clm/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "clm/error.hpp"

namespace clm {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::TooFewClasses: return "TooFewClasses";
        case ErrorKind::ClassTooSmall: return "ClassTooSmall";
        case ErrorKind::DegenerateDispersion: return "DegenerateDispersion";
        case ErrorKind::DegenerateCentroids: return "DegenerateCentroids";
        case ErrorKind::DegenerateRange: return "DegenerateRange";
        case ErrorKind::DegenerateTargets: return "DegenerateTargets";
        case ErrorKind::DegenerateRanks: return "DegenerateRanks";
        case ErrorKind::CalibrationFailed: return "CalibrationFailed";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::TooFewRows: return "TooFewRows";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

bool is_degenerate(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::TooFewClasses:
        case ErrorKind::ClassTooSmall:
        case ErrorKind::DegenerateDispersion:
        case ErrorKind::DegenerateCentroids:
        case ErrorKind::DegenerateRange:
        case ErrorKind::DegenerateTargets:
        case ErrorKind::DegenerateRanks:
        case ErrorKind::CalibrationFailed:
            return true;
        default:
            return false;
    }
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// ---------------------------------------------------------------- Dataset

Dataset::Dataset(std::size_t rows, std::size_t dims, std::vector<double> values)
    : rows_(rows), dims_(dims), values_(std::move(values)) {
    if (rows_ == 0) fail(ErrorKind::EmptyInput, "dataset has no rows");
    if (dims_ == 0) fail(ErrorKind::EmptyInput, "dataset has no dimensions");
    if (values_.size() != rows_ * dims_)
        fail(ErrorKind::InvalidArgument, "dataset value count does not match rows x dims");
    for (double v : values_)
        if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "dataset contains a non-finite value");
}

Dataset Dataset::from_rows(const std::vector<Point>& rows) {
    if (rows.empty()) fail(ErrorKind::EmptyInput, "dataset has no rows");
    const std::size_t dims = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * dims);
    for (const auto& r : rows) {
        if (r.size() != dims) fail(ErrorKind::InvalidArgument, "ragged rows");
        values.insert(values.end(), r.begin(), r.end());
    }
    return Dataset(rows.size(), dims, std::move(values));
}

Dataset Dataset::select_rows(std::span<const std::size_t> indices) const {
    std::vector<double> values;
    values.reserve(indices.size() * dims_);
    for (std::size_t i : indices) {
        auto r = row(i);
        values.insert(values.end(), r.begin(), r.end());
    }
    return Dataset(indices.size(), dims_, std::move(values));
}

Dataset Dataset::select_columns(std::span<const std::size_t> columns) const {
    std::vector<double> values;
    values.reserve(rows_ * columns.size());
    for (std::size_t i = 0; i < rows_; ++i) {
        auto r = row(i);
        for (std::size_t c : columns) values.push_back(r[c]);
    }
    return Dataset(rows_, columns.size(), std::move(values));
}

Dataset Dataset::scaled(double factor) const {
    std::vector<double> values(values_);
    for (double& v : values) v *= factor;
    return Dataset(rows_, dims_, std::move(values));
}

// --------------------------------------------------------------- Labeling

Labeling::Labeling(std::vector<std::size_t> assignment, std::vector<std::string> names)
    : assignment_(std::move(assignment)), names_(std::move(names)), classes_(names_.size()) {
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
        if (assignment_[i] >= names_.size())
            fail(ErrorKind::InvalidArgument, "class id out of range");
        classes_[assignment_[i]].push_back(i);
    }
    for (std::size_t k = 0; k < classes_.size(); ++k)
        if (classes_[k].empty())
            fail(ErrorKind::InvalidArgument, "class '" + names_[k] + "' has no members");
}

namespace {

bool parse_integer(const std::string& s, long long& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace

Labeling Labeling::from_names(const std::vector<std::string>& per_point) {
    std::vector<std::string> distinct(per_point.begin(), per_point.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    bool all_integers = true;
    for (const auto& s : distinct) {
        long long v;
        if (!parse_integer(s, v)) {
            all_integers = false;
            break;
        }
    }
    if (all_integers) {
        std::stable_sort(distinct.begin(), distinct.end(), [](const std::string& a, const std::string& b) {
            long long x = 0, y = 0;
            parse_integer(a, x);
            parse_integer(b, y);
            return x < y;
        });
    }

    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < distinct.size(); ++k) index.emplace(distinct[k], k);
    std::vector<std::size_t> assignment;
    assignment.reserve(per_point.size());
    for (const auto& s : per_point) assignment.push_back(index.at(s));
    return Labeling(std::move(assignment), std::move(distinct));
}

Labeling Labeling::from_ids(std::span<const int> per_point) {
    std::vector<std::string> names;
    names.reserve(per_point.size());
    for (int v : per_point) names.push_back(std::to_string(v));
    return from_names(names);
}

std::vector<std::size_t> Labeling::class_sizes() const {
    std::vector<std::size_t> sizes;
    sizes.reserve(classes_.size());
    for (const auto& c : classes_) sizes.push_back(c.size());
    return sizes;
}

Labeling Labeling::with_assignment(std::vector<std::size_t> assignment) const {
    return Labeling(std::move(assignment), names_);
}

// --------------------------------------------------------------- geometry

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    const std::size_t n = a.size();
#pragma omp simd reduction(+ : s)
    for (std::size_t j = 0; j < n; ++j) {
        const double t = a[j] - b[j];
        s += t * t;
    }
    return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

Point centroid(const Dataset& data) {
    if (data.empty()) fail(ErrorKind::EmptyInput, "centroid of an empty set");
    Point c(data.dims(), 0.0);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        auto r = data.row(i);
        for (std::size_t j = 0; j < c.size(); ++j) c[j] += r[j];
    }
    for (double& v : c) v /= static_cast<double>(data.rows());
    return c;
}

Point centroid(const Dataset& data, std::span<const std::size_t> indices) {
    if (indices.empty()) fail(ErrorKind::EmptyInput, "centroid of an empty set");
    Point c(data.dims(), 0.0);
    for (std::size_t i : indices) {
        auto r = data.row(i);
        for (std::size_t j = 0; j < c.size(); ++j) c[j] += r[j];
    }
    for (double& v : c) v /= static_cast<double>(indices.size());
    return c;
}

double population_std(std::span<const double> values) {
    if (values.empty()) return 0.0;
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double acc = 0.0;
    for (double v : values) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / n);
}

DispersionStats dispersion(const Dataset& data) {
    const Point c = centroid(data);
    std::vector<double> d(data.rows()), d2(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        d2[i] = squared_distance(data.row(i), c);
        d[i] = std::sqrt(d2[i]);
    }
    return {population_std(d), population_std(d2)};
}

GeometricMedian geometric_median(const Dataset& data, double tolerance, std::size_t max_iter) {
    if (data.empty()) fail(ErrorKind::EmptyInput, "geometric median of an empty set");
    if (!(tolerance > 0.0)) fail(ErrorKind::InvalidArgument, "tolerance must be positive");

    const std::size_t n = data.rows();
    const std::size_t dims = data.dims();
    auto objective = [&](const Point& y) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += distance(data.row(i), y);
        return s;
    };

    GeometricMedian result;
    Point y = centroid(data);
    Point best = y;
    double best_obj = objective(y);
    Point weighted(dims), residual(dims), next(dims);

    for (std::size_t it = 1; it <= max_iter; ++it) {
        result.iterations = it;
        std::fill(weighted.begin(), weighted.end(), 0.0);
        std::fill(residual.begin(), residual.end(), 0.0);
        double inv_sum = 0.0;
        std::size_t coincident = 0;  // multiplicity of y among the data (eta)
        for (std::size_t i = 0; i < n; ++i) {
            auto x = data.row(i);
            const double d = distance(x, y);
            if (d == 0.0) {
                ++coincident;
                continue;
            }
            const double w = 1.0 / d;
            inv_sum += w;
            for (std::size_t j = 0; j < dims; ++j) {
                weighted[j] += w * x[j];
                residual[j] += w * (x[j] - y[j]);
            }
        }
        if (inv_sum == 0.0) {  // every point coincides with y
            result.converged = true;
            best = y;
            break;
        }
        double r = 0.0;
        for (double v : residual) r += v * v;
        r = std::sqrt(r);
        const double eta = static_cast<double>(coincident);
        if (coincident > 0 && r <= eta) {  // y is a data point satisfying the optimality condition
            result.converged = true;
            best = y;
            break;
        }
        const double gamma = coincident > 0 ? eta / r : 0.0;
        const double keep = std::min(1.0, gamma);
        const double move = std::max(0.0, 1.0 - gamma);
        double step = 0.0;
        for (std::size_t j = 0; j < dims; ++j) {
            next[j] = move * (weighted[j] / inv_sum) + keep * y[j];
            step += (next[j] - y[j]) * (next[j] - y[j]);
        }
        y.swap(next);
        const double obj = objective(y);
        if (obj <= best_obj) {
            best_obj = obj;
            best = y;
        }
        if (std::sqrt(step) < tolerance) {
            result.converged = true;
            break;
        }
    }
    result.point = std::move(best);
    return result;
}

// ---------------------------------------------------------------- sampling

Labeling shuffle_labels(const Labeling& labeling, Rng& rng) {
    std::vector<std::size_t> assignment(labeling.assignment().begin(), labeling.assignment().end());
    std::shuffle(assignment.begin(), assignment.end(), rng);
    return labeling.with_assignment(std::move(assignment));
}

std::pair<Dataset, Labeling> subsample(const Dataset& data, const Labeling& labeling, double alpha,
                                       Rng& rng) {
    if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::InvalidArgument, "alpha must lie in (0, 1]");
    if (labeling.size() != data.rows())
        fail(ErrorKind::InvalidArgument, "labeling length does not match dataset rows");

    std::vector<char> keep(data.rows(), 0);
    for (std::size_t k = 0; k < labeling.class_count(); ++k) {
        IndexSet members = labeling.members(k);
        const auto target = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(members.size()) + 0.5));
        if (target < 2)
            fail(ErrorKind::ClassTooSmall,
                 "class '" + labeling.name(k) + "' would keep fewer than 2 points after subsampling");
        // partial Fisher-Yates: first `target` entries form a uniform sample
        for (std::size_t i = 0; i < target; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, members.size() - 1);
            std::swap(members[i], members[pick(rng)]);
            keep[members[i]] = 1;
        }
    }
    IndexSet rows;
    std::vector<std::size_t> assignment;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        if (!keep[i]) continue;
        rows.push_back(i);
        assignment.push_back(labeling.class_of(i));
    }
    return {data.select_rows(rows), labeling.with_assignment(std::move(assignment))};
}

std::pair<Dataset, Labeling> restrict_to_classes(const Dataset& data, const Labeling& labeling,
                                                 std::size_t a, std::size_t b) {
    if (a == b || a >= labeling.class_count() || b >= labeling.class_count())
        fail(ErrorKind::InvalidArgument, "invalid class pair");
    IndexSet rows;
    std::vector<std::size_t> assignment;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const std::size_t c = labeling.class_of(i);
        if (c != a && c != b) continue;
        rows.push_back(i);
        assignment.push_back((c == a) == (a < b) ? 0 : 1);
    }
    std::vector<std::string> names{labeling.name(std::min(a, b)), labeling.name(std::max(a, b))};
    return {data.select_rows(rows), Labeling(std::move(assignment), std::move(names))};
}

// -------------------------------------------------------------- identities

double pairwise_squared_sum(const Dataset& data, std::span<const std::size_t> a,
                            std::span<const std::size_t> b) {
    double s = 0.0;
    for (std::size_t i : a)
        for (std::size_t j : b) s += squared_distance(data.row(i), data.row(j));
    return s;
}

IdentityResiduals pairwise_distance_identities_check(const Dataset& data,
                                                     std::span<const std::size_t> a,
                                                     std::span<const std::size_t> b) {
    if (a.empty() || b.empty()) fail(ErrorKind::EmptyInput, "identity check needs nonempty subsets");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const Point ca = centroid(data, a);
    const Point cb = centroid(data, b);

    double to_centroid = 0.0;
    for (std::size_t i : a) to_centroid += squared_distance(data.row(i), ca);
    const double within_a = pairwise_squared_sum(data, a, a);
    const double within_b = pairwise_squared_sum(data, b, b);
    const double across = pairwise_squared_sum(data, a, b);

    IdentityResiduals r;
    r.pair_sum_identity = std::abs(2.0 * na * to_centroid - within_a);
    const double rhs = across / (na * nb) - within_a / (2.0 * na * na) - within_b / (2.0 * nb * nb);
    r.centroid_identity = std::abs(squared_distance(ca, cb) - rhs);
    return r;
}

}  // namespace clm
