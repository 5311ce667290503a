#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "risob/profile.hpp"

using namespace risob;

namespace {

WeightedSamples random_samples(std::mt19937_64& rng, std::size_t max_cells = 12) {
    std::uniform_int_distribution<std::size_t> nd(1, max_cells);
    std::uniform_real_distribution<double> vd(0.0, 10.0);
    std::uniform_real_distribution<double> wd(0.05, 3.0);
    const std::size_t n = nd(rng);
    std::vector<double> v(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = vd(rng);
        w[i] = wd(rng);
    }
    return {v, w};
}

}  // namespace

TEST_CASE("rearrange: constant function maps to a single step") {
    WeightedSamples s({2.5, 2.5, 2.5}, {1.0, 0.5, 2.0});
    const auto f = rearrange(s);
    CHECK(f.steps() == 1);
    CHECK(f.total_length() == doctest::Approx(3.5));
    CHECK(f.value(1.0) == doctest::Approx(2.5));
}

TEST_CASE("rearrange: three-cell example") {
    WeightedSamples s({3.0, 1.0, 5.0}, {1.0, 2.0, 0.5});
    const auto f = rearrange(s);
    REQUIRE(f.steps() == 3);
    CHECK(f.breakpoints()[0] == doctest::Approx(0.5));
    CHECK(f.breakpoints()[1] == doctest::Approx(1.5));
    CHECK(f.breakpoints()[2] == doctest::Approx(3.5));
    CHECK(f.step_values()[0] == doctest::Approx(5.0));
    CHECK(f.step_values()[1] == doctest::Approx(3.0));
    CHECK(f.step_values()[2] == doctest::Approx(1.0));
}

TEST_CASE("rearrange: indicator plus zeros") {
    WeightedSamples s({0.0, 4.0, 0.0, 4.0}, {1.0, 0.25, 2.0, 0.5});
    const auto f = rearrange(s);
    CHECK(f.value(0.5) == doctest::Approx(4.0));
    CHECK(f.value(0.76) == doctest::Approx(0.0));
    CHECK(f.measure_above(0.0) == doctest::Approx(0.75));
}

TEST_CASE("rearrange: invalid input") {
    CHECK_THROWS_AS(WeightedSamples({-1.0}, {1.0}), invalid_input);
    CHECK_THROWS_AS(WeightedSamples({1.0}, {0.0}), invalid_input);
}

TEST_CASE("equimeasurability on random samples") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> td(0.0, 11.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_samples(rng);
        const auto f = rearrange(s);
        CHECK(f.total_length() == doctest::Approx(s.total_measure()));
        for (int k = 0; k < 100; ++k) {
            const double t = td(rng);
            CHECK(f.measure_above(t) == doctest::Approx(s.measure_above(t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("double_star basics") {
    SUBCASE("indicator") {
        const auto f = DecreasingProfile::indicator(1.0, 1.0);
        CHECK(double_star(f, 2.0) == doctest::Approx(0.5));
    }
    SUBCASE("constant below the support end") {
        const auto f = DecreasingProfile::constant(3.25, 2.0);
        CHECK(double_star(f, 1.7) == doctest::Approx(3.25));
    }
    SUBCASE("three-step cumulative") {
        const auto f = rearrange(WeightedSamples({3.0, 1.0, 5.0}, {1.0, 2.0, 0.5}));
        CHECK(double_star(f, 1.0) == doctest::Approx(4.0));
    }
    CHECK_THROWS_AS(double_star(DecreasingProfile::constant(1.0, 1.0), 0.0), domain_error);
}

TEST_CASE("subadditivity of the double-star on random pairs") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> vd(0.0, 5.0), wd(0.1, 2.0), sd(0.01, 8.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 9;
        std::vector<double> u(n), v(n), w(n);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = vd(rng);
            v[i] = vd(rng);
            w[i] = wd(rng);
        }
        std::vector<double> sum(n);
        for (std::size_t i = 0; i < n; ++i) sum[i] = u[i] + v[i];
        const auto fu = rearrange({u, w});
        const auto fv = rearrange({v, w});
        const auto fs = rearrange({sum, w});
        for (int k = 0; k < 50; ++k) {
            const double s = sd(rng);
            CHECK(double_star(fs, s) <= double_star(fu, s) + double_star(fv, s) + 1e-12);
        }
    }
}

TEST_CASE("Hardy-Littlewood pairing") {
    SUBCASE("equality for equal functions") {
        WeightedSamples u({2.0, 1.0, 3.0}, {1.0, 1.0, 1.0});
        const auto [lhs, rhs] = hardy_littlewood_pairing(u, u);
        CHECK(lhs == doctest::Approx(rhs));
    }
    SUBCASE("disjoint indicators") {
        WeightedSamples u({1.0, 0.0}, {1.0, 1.0});
        WeightedSamples v({0.0, 1.0}, {1.0, 1.0});
        const auto [lhs, rhs] = hardy_littlewood_pairing(u, v);
        CHECK(lhs == doctest::Approx(0.0));
        CHECK(rhs == doctest::Approx(1.0));
    }
    SUBCASE("zero function") {
        WeightedSamples u({0.0, 0.0}, {1.0, 2.0});
        WeightedSamples v({3.0, 1.0}, {1.0, 2.0});
        const auto [lhs, rhs] = hardy_littlewood_pairing(u, v);
        CHECK(lhs == 0.0);
        CHECK(rhs == 0.0);
    }
    SUBCASE("mismatched partitions rejected") {
        WeightedSamples u({1.0}, {1.0});
        WeightedSamples v({1.0, 1.0}, {0.5, 0.5});
        CHECK_THROWS_AS(hardy_littlewood_pairing(u, v), invalid_input);
    }
}

TEST_CASE("Hardy-Littlewood inequality on 1000 random pairs") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> vd(0.0, 7.0), wd(0.1, 2.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + trial % 10;
        std::vector<double> u(n), v(n), w(n);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = vd(rng);
            v[i] = vd(rng);
            w[i] = wd(rng);
        }
        const auto [lhs, rhs] = hardy_littlewood_pairing({u, w}, {v, w});
        CHECK(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("profile_sum is the pointwise sum") {
    const auto f = rearrange(WeightedSamples({3.0, 1.0}, {1.0, 1.0}));
    const auto g = rearrange(WeightedSamples({2.0, 2.0, 1.0}, {0.5, 0.5, 0.5}));
    const auto s = profile_sum(f, g);
    for (double x : {0.25, 0.75, 1.25, 1.75, 2.5}) {
        CHECK(s.value(x) == doctest::Approx(f.value(x) + g.value(x)));
    }
}
