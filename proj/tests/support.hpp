#ifndef CLM_TESTS_SUPPORT_HPP
#define CLM_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "clm/core.hpp"

namespace support {

using clm::Dataset;
using clm::Labeling;

inline bool rel_close(double a, double b, double tol) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= tol * scale;
}

inline std::pair<Dataset, Labeling> hand_dataset() {
    const int ids[] = {0, 0, 1, 1};
    return {Dataset(4, 1, {0.0, 1.0, 10.0, 11.0}), Labeling::from_ids(ids)};
}

inline std::pair<Dataset, Labeling> tri_dataset() {
    const int ids[] = {0, 0, 0, 0, 1, 1, 1, 2, 2, 2, 2};
    return {Dataset::from_rows({{0, 0}, {1, 0.5}, {0.5, 1.5}, {-0.5, 0.7}, {6, 1}, {7, 0}, {6.5, 2}, {2, 8},
                                {3, 9.5}, {1.5, 9}, {2.5, 7}}),
            Labeling::from_ids(ids)};
}

inline std::pair<Dataset, Labeling> overlap_dataset() {
    const int ids[] = {0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
    return {Dataset::from_rows({{0.0, 0.0}, {1.0, 0.2}, {0.4, 1.1}, {1.5, 1.4}, {2.2, 0.3}, {1.8, 1.0},
                                {2.9, 1.6}, {3.1, 0.4}, {2.4, 2.2}, {3.6, 1.2}}),
            Labeling::from_ids(ids)};
}

/// K isotropic unit-variance blobs whose centres are drawn from
/// N(0, spread^2) per coordinate; class sizes vary in [min_size, max_size].
inline std::pair<Dataset, Labeling> random_blobs(std::uint64_t seed, std::size_t classes, std::size_t dims,
                                                 double spread, std::size_t min_size = 5,
                                                 std::size_t max_size = 30) {
    clm::Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> size(min_size, max_size);
    std::vector<double> values;
    std::vector<int> ids;
    for (std::size_t k = 0; k < classes; ++k) {
        std::vector<double> centre(dims);
        for (auto& c : centre) c = spread * normal(rng);
        const std::size_t m = size(rng);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t d = 0; d < dims; ++d) values.push_back(centre[d] + normal(rng));
            ids.push_back(static_cast<int>(k));
        }
    }
    return {Dataset(ids.size(), dims, std::move(values)), Labeling::from_ids(ids)};
}

/// Two classes separated along the first `informative` dimensions only; the
/// remaining dimensions are pure noise with standard deviation `noise_sd`.
inline std::pair<Dataset, Labeling> planted_dataset(std::uint64_t seed, std::size_t n, std::size_t informative,
                                                    std::size_t noise, double separation, double noise_sd) {
    clm::Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t dims = informative + noise;
    std::vector<double> values;
    std::vector<int> ids;
    for (std::size_t i = 0; i < n; ++i) {
        const int cls = i < n / 2 ? 0 : 1;
        for (std::size_t d = 0; d < informative; ++d)
            values.push_back((cls == 0 ? -separation / 2 : separation / 2) + normal(rng));
        for (std::size_t d = 0; d < noise; ++d) values.push_back(noise_sd * normal(rng));
        ids.push_back(cls);
    }
    return {Dataset(n, dims, std::move(values)), Labeling::from_ids(ids)};
}

}  // namespace support

#endif  // CLM_TESTS_SUPPORT_HPP
