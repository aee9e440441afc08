#include "clm/evalharness.hpp"

#include <algorithm>
#include <numeric>

#include "clm/error.hpp"
#include "clm/parallel.hpp"
#include "clm/stats.hpp"
#include "clm/synth.hpp"

namespace clm {

namespace {

bool improves(MeasureId id, double candidate, double incumbent) {
    return higher_is_better(id) ? candidate > incumbent : candidate < incumbent;
}

}  // namespace

std::vector<std::size_t> default_levels(SweepAxis axis) {
    std::vector<std::size_t> levels;
    for (std::size_t t = 0; t <= 10; ++t)
        levels.push_back(axis == SweepAxis::Cardinality ? 50 * t + 500 : (t == 0 ? 2 : 10 * t));
    return levels;
}

double offset_smape(std::span<const double> scores_a, std::span<const double> scores_b,
                    std::span<const double> weights) {
    if (scores_a.size() != scores_b.size() || scores_a.size() != weights.size() || scores_a.empty())
        fail(ErrorKind::InvalidArgument, "offset SMAPE needs equal nonempty lists");
    const double m = std::min(*std::min_element(scores_a.begin(), scores_a.end()),
                              *std::min_element(scores_b.begin(), scores_b.end()));
    std::vector<double> f(scores_a.size()), g(scores_b.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = weights[i] * (scores_a[i] - m);
        g[i] = weights[i] * (scores_b[i] - m);
    }
    return smape(f, g);
}

AblationReport ablation_sweep(const std::vector<MeasureVariant>& variants, const SweepConfig& config) {
    if (variants.empty()) fail(ErrorKind::InvalidArgument, "no measure variants given");
    if (config.base_count < 2) fail(ErrorKind::InvalidArgument, "at least 2 base datasets are required");
    if (config.levels.empty()) fail(ErrorKind::InvalidArgument, "sweep levels are empty");
    if (!std::is_sorted(config.levels.begin(), config.levels.end()) ||
        std::adjacent_find(config.levels.begin(), config.levels.end()) != config.levels.end())
        fail(ErrorKind::InvalidArgument, "sweep levels must be strictly increasing");
    if (config.base_dim < 2) fail(ErrorKind::InvalidArgument, "base dimension must be at least 2");
    for (std::size_t level : config.levels) {
        const std::size_t cap = config.axis == SweepAxis::Cardinality ? config.base_n : config.base_dim;
        const std::size_t floor = config.axis == SweepAxis::Cardinality ? 4 : 2;
        if (level < floor || level > cap)
            fail(ErrorKind::InvalidArgument, "sweep level " + std::to_string(level) + " outside [" +
                                                 std::to_string(floor) + ", " + std::to_string(cap) + "]");
    }
    std::vector<double> weights = config.weights;
    if (weights.empty()) weights.assign(config.base_count, 1.0);
    if (weights.size() != config.base_count)
        fail(ErrorKind::InvalidArgument, "one weight per base dataset is required");

    const std::size_t V = variants.size(), L = config.levels.size(), B = config.base_count;
    // scores[(v * L + t) * B + k]
    std::vector<double> scores(V * L * B, 0.0);

    parallel_for(B, [&](std::size_t k) {
        const std::uint64_t base_seed = derive_seed(config.seed, k);
        Rng base_rng(base_seed);
        const GaussianPairSpec spec = random_gaussian_pair_spec(base_rng, config.base_n, config.base_dim);
        const auto [base, base_labels] = generate_gaussian_pair(spec);
        for (std::size_t t = 0; t < L; ++t) {
            Rng rng(derive_seed(base_seed, t + 1));
            std::size_t n = config.base_n, dims = config.base_dim;
            if (config.axis == SweepAxis::Cardinality) {
                n = config.levels[t];
                dims = std::uniform_int_distribution<std::size_t>(2, config.base_dim)(rng);
            } else {
                dims = config.levels[t];
                n = std::uniform_int_distribution<std::size_t>(config.base_n / 2, config.base_n)(rng);
            }
            const double alpha = static_cast<double>(n) / static_cast<double>(config.base_n);
            auto [sub, sub_labels] = subsample(base, base_labels, alpha, rng);
            std::vector<std::size_t> cols(dims);
            std::iota(cols.begin(), cols.end(), 0);
            const Dataset level_data = sub.select_columns(cols);
            for (std::size_t v = 0; v < V; ++v) {
                try {
                    scores[(v * L + t) * B + k] = score(variants[v].id, level_data, sub_labels, variants[v].config);
                } catch (const Error& e) {
                    throw Error(e.kind(), "variant " + variants[v].name + ", level " +
                                              std::to_string(config.levels[t]) + ", base " + std::to_string(k) +
                                              ": " + e.what());
                }
            }
        }
    });

    AblationReport report;
    report.axis = config.axis;
    report.levels = config.levels;
    report.base_count = B;
    report.seed = config.seed;
    for (std::size_t v = 0; v < V; ++v) {
        VariantAblation va;
        va.name = variants[v].name;
        va.error.assign(L * L, 0.0);
        double total = 0.0;
        std::size_t pairs = 0;
        for (std::size_t a = 0; a < L; ++a)
            for (std::size_t b = a + 1; b < L; ++b) {
                const std::span<const double> sa(scores.data() + (v * L + a) * B, B);
                const std::span<const double> sb(scores.data() + (v * L + b) * B, B);
                const double e = offset_smape(sa, sb, weights);
                va.error[a * L + b] = e;
                va.error[b * L + a] = e;
                total += e;
                ++pairs;
            }
        va.average = pairs ? total / static_cast<double>(pairs) : 0.0;
        report.variants.push_back(std::move(va));
    }
    return report;
}

std::vector<double> default_noise_fractions() {
    std::vector<double> f;
    for (int l = 0; l <= 10; ++l) f.push_back(l / 10.0);
    return f;
}

double noisy_label_ranking(const Dataset& data, const Labeling& labeling, MeasureId measure,
                           const MeasureConfig& config, std::span<const double> fractions, std::uint64_t seed) {
    const auto variants = noisy_label_variants(labeling, fractions, seed);
    std::vector<double> scores, truth;
    for (const auto& v : variants) {
        const double s = score(measure, data, v.labeling, config);
        scores.push_back(higher_is_better(measure) ? s : -s);
        truth.push_back(-v.fraction);
    }
    return spearman(scores, truth);
}

std::vector<double> rank_stability(const ScoreTable& table, std::size_t subset_size, std::size_t n_sims,
                                   std::uint64_t seed) {
    const std::size_t R = table.datasets.size(), T = table.techniques.size();
    if (table.values.size() != R * T) fail(ErrorKind::InvalidArgument, "score table is not rectangular");
    if (subset_size == 0 || subset_size > R)
        fail(ErrorKind::InvalidArgument, "subset size must lie in [1, " + std::to_string(R) + "]");
    if (n_sims == 0) fail(ErrorKind::InvalidArgument, "at least one simulation is required");

    std::vector<std::size_t> wins(T * T, 0);
    std::vector<std::size_t> rows(R);
    std::vector<double> means(T);
    Rng rng(seed);
    for (std::size_t s = 0; s < n_sims; ++s) {
        std::iota(rows.begin(), rows.end(), 0);
        for (std::size_t i = 0; i < subset_size; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, R - 1);
            std::swap(rows[i], rows[pick(rng)]);
        }
        std::fill(means.begin(), means.end(), 0.0);
        for (std::size_t i = 0; i < subset_size; ++i)
            for (std::size_t t = 0; t < T; ++t) means[t] += table.at(rows[i], t);
        for (std::size_t a = 0; a < T; ++a)
            for (std::size_t b = a + 1; b < T; ++b) {
                if (means[a] > means[b]) ++wins[a * T + b];
            }
    }
    std::vector<double> p(T * T, 1.0);
    for (std::size_t a = 0; a < T; ++a)
        for (std::size_t b = a + 1; b < T; ++b) {
            const double share = static_cast<double>(wins[a * T + b]) / static_cast<double>(n_sims);
            const double stability = std::max(1.0 - share, share);
            p[a * T + b] = stability;
            p[b * T + a] = stability;
        }
    return p;
}

std::vector<std::size_t> FeatureMask::columns() const {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) cols.push_back(i);
    return cols;
}

std::string FeatureMask::to_string() const {
    std::string s;
    for (char b : bits) s.push_back(b ? '1' : '0');
    return s;
}

ImproveResult improve_clm(const Dataset& data, const Labeling& labeling, MeasureId measure,
                          const MeasureConfig& config, std::size_t n_candidates, std::uint64_t seed) {
    const std::size_t dims = data.dims();
    if (dims < 2) fail(ErrorKind::InvalidArgument, "feature selection needs at least 2 dimensions");
    if (n_candidates == 0) fail(ErrorKind::InvalidArgument, "at least one candidate mask is required");

    std::vector<FeatureMask> masks(n_candidates + 1);
    masks[0].bits.assign(dims, 1);
    Rng rng(seed);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t c = 1; c <= n_candidates; ++c) {
        auto& bits = masks[c].bits;
        do {
            bits.assign(dims, 0);
            for (auto& b : bits) b = coin(rng) ? 1 : 0;
        } while (std::find(bits.begin(), bits.end(), 1) == bits.end());
    }

    const double original = score(measure, data, labeling, config);
    std::vector<double> scores(masks.size(), 0.0);
    std::vector<char> ok(masks.size(), 0);
    scores[0] = original;
    ok[0] = 1;
    parallel_for(n_candidates, [&](std::size_t i) {
        const std::size_t c = i + 1;
        try {
            scores[c] = score(measure, data.select_columns(masks[c].columns()), labeling, config);
            ok[c] = 1;
        } catch (const Error&) {
        }
    });

    ImproveResult r;
    r.original_score = original;
    r.candidates = n_candidates;
    std::size_t best = 0;
    for (std::size_t c = 1; c < masks.size(); ++c) {
        if (!ok[c]) {
            ++r.failed;
            continue;
        }
        if (improves(measure, scores[c], scores[best])) best = c;
    }
    r.mask = masks[best];
    r.best_score = scores[best];
    return r;
}

}  // namespace clm
