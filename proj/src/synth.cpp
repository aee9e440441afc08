#include "clm/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "clm/error.hpp"

namespace clm {

double Cov2::min_eigenvalue() const {
    const double half_trace = (xx + yy) / 2.0;
    const double radius = std::sqrt((xx - yy) * (xx - yy) / 4.0 + xy * xy);
    return half_trace - radius;
}

Cov2 Cov2::from_eigen(double l1, double l2, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {l1 * c * c + l2 * s * s, (l1 - l2) * c * s, l1 * s * s + l2 * c * c};
}

namespace {

std::size_t round_half_up(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

void sample_class(const Cov2& cov, double mean_x, std::size_t count, std::size_t dims, Rng& rng,
                  std::vector<double>& out) {
    // Cholesky factor of the 2x2 covariance
    const double l11 = std::sqrt(cov.xx);
    const double l21 = cov.xy / l11;
    const double l22 = std::sqrt(cov.yy - l21 * l21);
    const double noise_sd = std::sqrt(cov.min_eigenvalue());
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < count; ++i) {
        const double z1 = normal(rng), z2 = normal(rng);
        out.push_back(mean_x + l11 * z1);
        out.push_back(l21 * z1 + l22 * z2);
        for (std::size_t d = 2; d < dims; ++d) out.push_back(noise_sd * normal(rng));
    }
}

}  // namespace

std::pair<Dataset, Labeling> generate_gaussian_pair(const GaussianPairSpec& spec) {
    if (!spec.cov_a.positive_definite() || !spec.cov_b.positive_definite())
        fail(ErrorKind::InvalidArgument, "covariances must be positive definite");
    if (!(spec.proportion > 0.0 && spec.proportion < 1.0))
        fail(ErrorKind::InvalidArgument, "proportion must lie in (0, 1)");
    if (!(spec.mean_distance >= 0.0)) fail(ErrorKind::InvalidArgument, "mean distance must be >= 0");
    if (spec.n < 4) fail(ErrorKind::InvalidArgument, "n must be at least 4");
    if (spec.target_dim < 2) fail(ErrorKind::InvalidArgument, "target dimension must be at least 2");

    const std::size_t size_a = round_half_up(spec.proportion * static_cast<double>(spec.n));
    const std::size_t size_b = spec.n - std::min(size_a, spec.n);
    if (size_a < 2 || size_b < 2)
        fail(ErrorKind::ClassTooSmall, "class sizes " + std::to_string(size_a) + " and " + std::to_string(size_b) +
                                           " leave a class with fewer than 2 points");

    Rng rng(spec.seed);
    std::vector<double> values;
    values.reserve(spec.n * spec.target_dim);
    sample_class(spec.cov_a, -spec.mean_distance / 2.0, size_a, spec.target_dim, rng, values);
    sample_class(spec.cov_b, spec.mean_distance / 2.0, size_b, spec.target_dim, rng, values);

    std::vector<std::size_t> assignment(spec.n, 1);
    std::fill(assignment.begin(), assignment.begin() + static_cast<std::ptrdiff_t>(size_a), 0);
    return {Dataset(spec.n, spec.target_dim, std::move(values)), Labeling(std::move(assignment), {"0", "1"})};
}

GaussianPairSpec random_gaussian_pair_spec(Rng& rng, std::size_t n, std::size_t target_dim) {
    std::uniform_real_distribution<double> eig(0.05, 1.0), angle(0.0, std::numbers::pi), prop(0.2, 0.8),
        dist(0.0, 4.0);
    GaussianPairSpec s;
    const double a1 = eig(rng), a2 = eig(rng), ta = angle(rng);
    const double b1 = eig(rng), b2 = eig(rng), tb = angle(rng);
    s.cov_a = Cov2::from_eigen(a1, a2, ta);
    s.cov_b = Cov2::from_eigen(b1, b2, tb);
    s.proportion = prop(rng);
    s.mean_distance = dist(rng);
    s.n = n;
    s.target_dim = target_dim;
    s.seed = rng();
    return s;
}

std::vector<NoisyLabelVariant> noisy_label_variants(const Labeling& labeling, std::span<const double> fractions,
                                                    std::uint64_t seed) {
    const std::size_t n = labeling.size();
    std::vector<NoisyLabelVariant> out;
    for (std::size_t f = 0; f < fractions.size(); ++f) {
        const double fraction = fractions[f];
        if (!(fraction >= 0.0 && fraction <= 1.0)) fail(ErrorKind::InvalidArgument, "fractions must lie in [0, 1]");
        const std::size_t count = std::min(n, round_half_up(fraction * static_cast<double>(n)));
        if (count == 0) {
            out.push_back({fraction, labeling});
            continue;
        }
        Rng rng(derive_seed(seed, f));
        std::vector<std::size_t> positions(n);
        for (std::size_t i = 0; i < n; ++i) positions[i] = i;
        for (std::size_t i = 0; i < count; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, n - 1);
            std::swap(positions[i], positions[pick(rng)]);
        }
        positions.resize(count);
        std::sort(positions.begin(), positions.end());

        std::vector<std::size_t> picked;
        for (std::size_t p : positions) picked.push_back(labeling.class_of(p));
        std::shuffle(picked.begin(), picked.end(), rng);
        std::vector<std::size_t> assignment(labeling.assignment().begin(), labeling.assignment().end());
        for (std::size_t i = 0; i < count; ++i) assignment[positions[i]] = picked[i];
        out.push_back({fraction, labeling.with_assignment(std::move(assignment))});
    }
    return out;
}

}  // namespace clm
