#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "clm/core.hpp"
#include "clm/error.hpp"
#include "frozen_values.hpp"
#include "support.hpp"

using namespace clm;

TEST_CASE("centroid examples") {
    CHECK(centroid(Dataset(4, 1, {0, 1, 10, 11}))[0] == doctest::Approx(5.5));
    const Point single = centroid(Dataset::from_rows({{2, 2}}));
    CHECK(single == Point{2, 2});
    const Point square = centroid(Dataset::from_rows({{0, 0}, {0, 2}, {2, 0}, {2, 2}}));
    CHECK(square == Point{1, 1});
    const Dataset d = Dataset::from_rows({{1, 2}});
    const std::vector<std::size_t> none;
    CHECK_THROWS_AS(centroid(d, none), Error);
}

TEST_CASE("dataset invariants") {
    CHECK_THROWS_AS(Dataset(2, 1, {0.0, std::nan("")}), Error);
    CHECK_THROWS_AS(Dataset(2, 1, {0.0, INFINITY}), Error);
    CHECK_THROWS_AS(Dataset(2, 2, {0.0, 1.0, 2.0}), Error);
    CHECK_THROWS_AS(Dataset(0, 1, {}), Error);
}

TEST_CASE("labeling partition property") {
    const auto [data, lab] = support::random_blobs(3, 5, 2, 4.0);
    std::size_t total = 0;
    std::set<std::size_t> seen;
    for (const auto& members : lab.classes()) {
        total += members.size();
        for (std::size_t i : members) CHECK(seen.insert(i).second);
    }
    CHECK(total == data.rows());
    CHECK(seen.size() == data.rows());
}

TEST_CASE("labeling orders names numerically when all are integers") {
    const Labeling lab = Labeling::from_names({"10", "2", "2", "10", "1"});
    REQUIRE(lab.class_count() == 3);
    CHECK(lab.name(0) == "1");
    CHECK(lab.name(1) == "2");
    CHECK(lab.name(2) == "10");
    const Labeling text = Labeling::from_names({"b", "a", "c"});
    CHECK(text.name(0) == "a");
}

TEST_CASE("dispersion") {
    const auto [data, lab] = support::hand_dataset();
    const DispersionStats s = dispersion(data);
    CHECK(s.sigma_d == doctest::Approx(frozen::hand_sigma_d).epsilon(1e-12));
    CHECK(s.sigma_d2 == doctest::Approx(frozen::hand_sigma_d2).epsilon(1e-12));

    const DispersionStats zero = dispersion(Dataset::from_rows({{3, 3}, {3, 3}, {3, 3}}));
    CHECK(zero.sigma_d == 0.0);
    CHECK(zero.sigma_d2 == 0.0);

    const auto [blob, blab] = support::random_blobs(8, 3, 4, 3.0);
    const DispersionStats base = dispersion(blob);
    for (double lambda : {0.5, 3.0, 100.0}) {
        const DispersionStats scaled = dispersion(blob.scaled(lambda));
        CHECK(support::rel_close(scaled.sigma_d, lambda * base.sigma_d, 1e-12));
        CHECK(support::rel_close(scaled.sigma_d2, lambda * lambda * base.sigma_d2, 1e-12));
    }
}

TEST_CASE("geometric median examples") {
    const GeometricMedian one_d = geometric_median(Dataset(3, 1, {0, 1, 10}));
    CHECK(one_d.point[0] == doctest::Approx(frozen::median_1d).epsilon(1e-6));
    CHECK(one_d.converged);

    const GeometricMedian square = geometric_median(Dataset::from_rows({{0, 0}, {0, 2}, {2, 0}, {2, 2}}));
    CHECK(square.point[0] == doctest::Approx(1.0));
    CHECK(square.point[1] == doctest::Approx(1.0));

    const GeometricMedian single = geometric_median(Dataset::from_rows({{4, -1}}));
    CHECK(single.point == Point{4, -1});

    const auto [ovl, lab] = support::overlap_dataset();
    const GeometricMedian m = geometric_median(ovl);
    CHECK(m.point[0] == doctest::Approx(frozen::ovl_median[0]).epsilon(1e-6));
    CHECK(m.point[1] == doctest::Approx(frozen::ovl_median[1]).epsilon(1e-6));

    CHECK_THROWS_AS(geometric_median(ovl, 0.0), Error);
}

TEST_CASE("geometric median is no worse than any sample point") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto [data, lab] = support::random_blobs(seed, 3, 3, 2.0);
        const GeometricMedian gm = geometric_median(data);
        auto objective = [&](std::span<const double> y) {
            double s = 0.0;
            for (std::size_t i = 0; i < data.rows(); ++i) s += distance(data.row(i), y);
            return s;
        };
        double best_sample = INFINITY;
        for (std::size_t i = 0; i < data.rows(); ++i) best_sample = std::min(best_sample, objective(data.row(i)));
        CHECK(objective(gm.point) <= best_sample + 1e-6);
    }
}

TEST_CASE("shuffle_labels preserves class sizes and is seeded") {
    const auto [data, lab] = support::random_blobs(1, 4, 2, 3.0);
    Rng a(42), b(42);
    const Labeling s1 = shuffle_labels(lab, a);
    const Labeling s2 = shuffle_labels(lab, b);
    CHECK(s1.class_sizes() == lab.class_sizes());
    CHECK(std::equal(s1.assignment().begin(), s1.assignment().end(), s2.assignment().begin()));
}

TEST_CASE("shuffle_labels on two points reaches both permutations evenly") {
    const int ids[] = {0, 1};
    const Labeling lab = Labeling::from_ids(ids);
    int swapped = 0;
    const int trials = 4000;
    for (int s = 0; s < trials; ++s) {
        Rng rng(derive_seed(7, s));
        if (shuffle_labels(lab, rng).class_of(0) == 1) ++swapped;
    }
    CHECK(std::abs(swapped / double(trials) - 0.5) < 0.05);
}

TEST_CASE("subsample") {
    std::vector<int> ids(150, 0);
    std::fill(ids.begin() + 100, ids.end(), 1);
    std::vector<double> values(150);
    std::iota(values.begin(), values.end(), 0.0);
    const Dataset data(150, 1, values);
    const Labeling lab = Labeling::from_ids(ids);

    Rng r1(5);
    const auto [same, same_lab] = subsample(data, lab, 1.0, r1);
    CHECK(std::equal(same.values().begin(), same.values().end(), data.values().begin()));
    CHECK(same_lab.class_sizes() == lab.class_sizes());

    Rng r2(5), r3(5);
    const auto [half, half_lab] = subsample(data, lab, 0.5, r2);
    const auto [again, again_lab] = subsample(data, lab, 0.5, r3);
    CHECK(half_lab.class_sizes() == std::vector<std::size_t>{50, 25});
    CHECK(std::equal(half.values().begin(), half.values().end(), again.values().begin()));
    CHECK(std::is_sorted(half.values().begin(), half.values().end()));  // row order kept

    Rng r4(1);
    const int tiny_ids[] = {0, 0, 0, 1, 1, 1};
    CHECK_THROWS_AS(subsample(Dataset(6, 1, {0, 1, 2, 3, 4, 5}), Labeling::from_ids(tiny_ids), 0.3, r4), Error);
}

TEST_CASE("restrict_to_classes keeps names and order") {
    const auto [data, lab] = support::tri_dataset();
    const auto [sub, sub_lab] = restrict_to_classes(data, lab, 2, 0);
    CHECK(sub.rows() == 8);
    CHECK(sub_lab.name(0) == "0");
    CHECK(sub_lab.name(1) == "2");
    CHECK(sub_lab.class_of(0) == 0);
    CHECK(sub_lab.class_of(7) == 1);
}

TEST_CASE("pairwise distance identities") {
    const auto [data, lab] = support::random_blobs(11, 2, 5, 2.0, 10, 20);
    const auto& a = lab.members(0);
    const auto& b = lab.members(1);
    const IdentityResiduals r = pairwise_distance_identities_check(data, a, b);
    CHECK(r.pair_sum_identity <= 1e-9 * pairwise_squared_sum(data, a, a));
    CHECK(r.centroid_identity <= 1e-9 * std::max(1.0, squared_distance(centroid(data, a), centroid(data, b))));

    const std::vector<std::size_t> single{3};
    const IdentityResiduals s = pairwise_distance_identities_check(data, single, single);
    CHECK(s.pair_sum_identity == 0.0);
    CHECK(s.centroid_identity <= 1e-12);
    const IdentityResiduals same = pairwise_distance_identities_check(data, a, a);
    CHECK(same.centroid_identity <= 1e-9 * pairwise_squared_sum(data, a, a) / double(a.size() * a.size()));
}

TEST_CASE("derive_seed separates streams") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(9, 4) == derive_seed(9, 4));
}
