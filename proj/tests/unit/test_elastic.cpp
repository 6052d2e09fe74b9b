#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "mptsc/elastic.hpp"

using namespace mptsc;
using doctest::Approx;

TEST_CASE("euclidean examples") {
    const TimeSeries q{1, 2, 3};
    CHECK(euclidean_distance(q, q, 3) == 0.0);
    CHECK(euclidean_distance(q, TimeSeries{1, 2, 4}, 3) == 1.0);
    CHECK(euclidean_distance(TimeSeries{0, 2}, TimeSeries{0, 1, 2}, 3) == 0.0);
}

TEST_CASE("mean distance examples") {
    CHECK(mean_distance(TimeSeries{1, 2, 3}, TimeSeries{2, 2, 2}) == 0.0);
    CHECK(mean_distance(TimeSeries{0, 0}, TimeSeries{3, 5}) == 4.0);
}

TEST_CASE("dtw examples") {
    const DtwSpec full{1.0};
    const TimeSeries q{0.5, 1.5, -2.0, 4.0};
    CHECK(dtw_distance(q, q, full) == 0.0);
    CHECK(dtw_distance(q, q, DtwSpec{0.01}) == 0.0);
    CHECK(dtw_distance(TimeSeries{0, 0, 1, 0, 0}, TimeSeries{0, 0, 0, 1, 0}, full) == 0.0);
    CHECK(dtw_distance(TimeSeries{1, 2, 3}, TimeSeries{1, 2, 3, 3}, full) == 0.0);
}

TEST_CASE("dtw equals exhaustive path enumeration") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 300; ++rep) {
        const auto q = oracle::random_vector(rng, 1 + rng() % 7);
        const auto x = oracle::random_vector(rng, 1 + rng() % 7);
        for (double band : {1.0, 0.5, 0.2, 0.05}) {
            CHECK(dtw_distance(q, x, DtwSpec{band}) == oracle::dtw_exhaustive(q, x, band));
        }
    }
}

TEST_CASE("unconstrained dtw matches the full-matrix recursion") {
    std::mt19937_64 rng(18);
    for (int rep = 0; rep < 100; ++rep) {
        const auto q = oracle::random_vector(rng, 1 + rng() % 80);
        const auto x = oracle::random_vector(rng, 1 + rng() % 80);
        CHECK(dtw_distance(q, x, DtwSpec{1.0}) == Approx(oracle::dtw_full_matrix(q, x)).epsilon(1e-12));
    }
}

TEST_CASE("minimal feasible radius matches enumeration") {
    for (std::size_t m = 1; m <= 7; ++m) {
        for (std::size_t n = 1; n <= 7; ++n) {
            CHECK(dtw_min_feasible_radius(m, n) == oracle::dtw_min_radius_exhaustive(m, n));
        }
    }
    CHECK(dtw_min_feasible_radius(5, 5) == 0);
}

TEST_CASE("band geometry") {
    const auto b = dtw_band(10, 10, DtwSpec{0.1});
    CHECK(b.radius == 10);  // one cell either side of the diagonal
    CHECK(b.admits(5, 6));
    CHECK_FALSE(b.admits(5, 7));
    CHECK_FALSE(b.widened());
    const auto narrow = dtw_band(2, 9, DtwSpec{0.01});
    CHECK(narrow.widened());
    const auto [lo, hi] = b.row_range(1);
    CHECK(lo == 1);
    CHECK(hi == 2);
}

TEST_CASE("narrower bands never decrease dtw") {
    std::mt19937_64 rng(19);
    for (int rep = 0; rep < 100; ++rep) {
        const auto q = oracle::random_vector(rng, 2 + rng() % 60);
        const auto x = oracle::random_vector(rng, 2 + rng() % 60);
        double prev = 0.0;
        for (double band : {1.0, 0.5, 0.2, 0.1, 0.05, 0.01}) {
            const double d = dtw_distance(q, x, DtwSpec{band});
            CHECK(d >= prev);
            prev = d;
        }
    }
}

TEST_CASE("dtw is symmetric and bounded by euclidean") {
    std::mt19937_64 rng(20);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 1 + rng() % 50;
        const auto q = oracle::random_vector(rng, n);
        const auto x = oracle::random_vector(rng, n);
        const double d = dtw_distance(q, x, DtwSpec{1.0});
        CHECK(d <= euclidean_equal_length(q, x));
        CHECK(d >= 0.0);
        CHECK(d == dtw_distance(x, q, DtwSpec{1.0}));
        CHECK(dtw_distance(q, x, DtwSpec{0.1}) == dtw_distance(x, q, DtwSpec{0.1}));
        const auto y = oracle::random_vector(rng, 1 + rng() % 50);
        CHECK(dtw_distance(q, y, DtwSpec{1.0}) == dtw_distance(y, q, DtwSpec{1.0}));
    }
}

TEST_CASE("invalid band fractions") {
    CHECK_THROWS_AS(DtwSpec{0.0}.validate(), ValidationError);
    CHECK_THROWS_AS(DtwSpec{1.5}.validate(), ValidationError);
    CHECK_THROWS_AS(dtw_distance(TimeSeries{1}, TimeSeries{1}, DtwSpec{-1.0}), ValidationError);
}
