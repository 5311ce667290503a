#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "risob/grid.hpp"

using namespace risob;

namespace {

VectorField2D analytic_field(const GridDomain& d, double (*f1)(double, double),
                             double (*f2)(double, double)) {
    auto u = VectorField2D::zeros(d);
    for (int j = 0; j < d.ny; ++j)
        for (int i = 0; i < d.nx; ++i)
            if (d.active(i, j)) {
                u.u1[d.idx(i, j)] = f1(d.cx(i), d.cy(j));
                u.u2[d.idx(i, j)] = f2(d.cx(i), d.cy(j));
            }
    return u;
}

}  // namespace

TEST_CASE("symmetric gradient annihilates rigid motions") {
    const auto d = GridDomain::square(32, 1.0 / 32);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ud(-2.0, 2.0);
    for (int t = 0; t < 10; ++t) {
        RigidMotion2D r{ud(rng), ud(rng), ud(rng)};
        auto u = VectorField2D::zeros(d);
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i) {
                u.u1[d.idx(i, j)] = r.eval1(d.cx(i), d.cy(j));
                u.u2[d.idx(i, j)] = r.eval2(d.cx(i), d.cy(j));
            }
        const auto e = symmetric_gradient(d, u);
        for (std::size_t k = 0; k < e.e11.size(); ++k) CHECK(e.frobenius(k) <= 1e-12);
    }
}

TEST_CASE("symmetric gradient of analytic fields") {
    const auto d = GridDomain::square(64, 1.0 / 64);
    SUBCASE("diagonal strain") {
        const auto u = analytic_field(
            d, [](double x, double) { return x; }, [](double, double y) { return -y; });
        const auto e = symmetric_gradient(d, u);
        const std::size_t k = d.idx(30, 30);
        CHECK(e.e11[k] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(e.e22[k] == doctest::Approx(-1.0).epsilon(1e-10));
        CHECK(e.e12[k] == doctest::Approx(0.0).epsilon(1e-10));
    }
    SUBCASE("pure shear") {
        const auto u = analytic_field(
            d, [](double, double y) { return y; }, [](double, double) { return 0.0; });
        const auto e = symmetric_gradient(d, u);
        const std::size_t k = d.idx(20, 40);
        CHECK(e.e11[k] == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(e.e22[k] == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(e.e12[k] == doctest::Approx(0.5).epsilon(1e-10));
    }
    SUBCASE("empty interior rejected") {
        auto thin = GridDomain::square(8, 0.125);
        for (int j = 0; j < 8; ++j)
            for (int i = 0; i < 8; ++i)
                if (j != 3) thin.mask[thin.idx(i, j)] = 0;
        const auto u = VectorField2D::zeros(thin);
        CHECK_THROWS_AS(symmetric_gradient(thin, u), domain_error);
    }
}

TEST_CASE("rigid projection") {
    const auto d = GridDomain::square(24, 1.0 / 24);
    SUBCASE("recovers an exact rigid motion") {
        RigidMotion2D r{0.7, -0.3, 1.9};
        auto u = VectorField2D::zeros(d);
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i) {
                u.u1[d.idx(i, j)] = r.eval1(d.cx(i), d.cy(j));
                u.u2[d.idx(i, j)] = r.eval2(d.cx(i), d.cy(j));
            }
        const auto rec = rigid_project(d, u, d.mask);
        CHECK(rec.b1 == doctest::Approx(r.b1).epsilon(1e-12));
        CHECK(rec.b2 == doctest::Approx(r.b2).epsilon(1e-12));
        CHECK(rec.omega == doctest::Approx(r.omega).epsilon(1e-12));
    }
    SUBCASE("zero field maps to zero") {
        const auto rec = rigid_project(d, VectorField2D::zeros(d), d.mask);
        CHECK(rec.b1 == 0.0);
        CHECK(rec.b2 == 0.0);
        CHECK(rec.omega == 0.0);
    }
    SUBCASE("perturbation bound") {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> ud(-1.0, 1.0);
        RigidMotion2D r{0.2, 0.1, -0.8};
        auto u = VectorField2D::zeros(d);
        double eta_norm = 0.0;
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i) {
                const double e1 = 1e-3 * ud(rng), e2 = 1e-3 * ud(rng);
                u.u1[d.idx(i, j)] = r.eval1(d.cx(i), d.cy(j)) + e1;
                u.u2[d.idx(i, j)] = r.eval2(d.cx(i), d.cy(j)) + e2;
                eta_norm = std::max({eta_norm, std::fabs(e1), std::fabs(e2)});
            }
        const auto rec = rigid_project(d, u, d.mask);
        const double dev = std::max({std::fabs(rec.b1 - r.b1), std::fabs(rec.b2 - r.b2),
                                     std::fabs(rec.omega - r.omega)});
        CHECK(dev <= 20.0 * eta_norm);
    }
    SUBCASE("degenerate subdomains raise") {
        std::vector<std::uint8_t> sub(d.mask.size(), 0);
        sub[d.idx(3, 3)] = 1;
        sub[d.idx(4, 3)] = 1;
        const auto u = VectorField2D::zeros(d);
        CHECK_THROWS_AS(rigid_project(d, u, sub), rank_error);
        for (int i = 0; i < 10; ++i) sub[d.idx(i, 3)] = 1;  // collinear row
        CHECK_THROWS_AS(rigid_project(d, u, sub), rank_error);
    }
}

TEST_CASE("poincare ratio") {
    SUBCASE("rigid fields give zero numerator") {
        const auto d = GridDomain::square(24, 1.0 / 24);
        auto u = VectorField2D::zeros(d);
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i) {
                u.u1[d.idx(i, j)] = 1.0 - 2.0 * d.cy(j);
                u.u2[d.idx(i, j)] = 2.0 * d.cx(i);
            }
        const auto rep = poincare_check(d, u, d.mask);
        CHECK(rep.rigid_field);
    }
    SUBCASE("quadratic field is h-stable") {
        double prev = 0.0;
        for (int nside : {32, 64}) {
            const auto d = GridDomain::square(nside, 1.0 / nside);
            const auto u = analytic_field(
                d, [](double x, double) { return x * x; }, [](double, double) { return 0.0; });
            const auto rep = poincare_check(d, u, d.mask);
            CHECK(rep.ratio > 0.0);
            CHECK(rep.ratio < 1.0);
            if (prev > 0.0) CHECK(rep.ratio == doctest::Approx(prev).epsilon(0.05));
            prev = rep.ratio;
        }
    }
    SUBCASE("bump family bounded and refinement-stable") {
        double worst = 0.0;
        for (int seed = 0; seed < 20; ++seed) {
            const auto spec = BumpFieldSpec::seeded(1000 + seed);
            const auto d1 = GridDomain::square(48, 1.0 / 48);
            const auto d2 = GridDomain::square(96, 1.0 / 96);
            const auto r1 = poincare_check(d1, spec.sample(d1), d1.mask);
            const auto r2 = poincare_check(d2, spec.sample(d2), d2.mask);
            if (r1.rigid_field || r2.rigid_field) continue;
            worst = std::max(worst, r2.ratio);
            CHECK(r2.ratio == doctest::Approx(r1.ratio).epsilon(0.05));
        }
        CHECK(worst < 1.0);
    }
}

TEST_CASE("maximal function") {
    const auto d = GridDomain::square(64, 1.0 / 64);
    SUBCASE("constants are fixed points") {
        std::vector<double> f(d.mask.size(), 3.25);
        const auto m = maximal_function(d, f);
        for (double v : m) CHECK(v == doctest::Approx(3.25).epsilon(1e-12));
    }
    SUBCASE("dominates the function") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> ud(0.0, 5.0);
        std::vector<double> f(d.mask.size());
        for (auto& v : f) v = ud(rng);
        const auto m = maximal_function(d, f);
        for (std::size_t k = 0; k < f.size(); ++k) CHECK(m[k] >= f[k] - 1e-13);
    }
    SUBCASE("point-mass decay with log-log slope -2") {
        std::vector<double> f(d.mask.size(), 0.0);
        const int c = 32;
        f[d.idx(c, c)] = 1.0 / d.cell_measure();
        const auto m = maximal_function(d, f);
        std::vector<std::pair<double, double>> pts;
        for (int off = 2; off <= 16; off *= 2) {
            const double dist = off * d.h;
            pts.emplace_back(dist, m[d.idx(c + off, c)]);
        }
        double slope_acc = 0.0;
        int cnt = 0;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            slope_acc += std::log(pts[i].second / pts[i - 1].second) /
                         std::log(pts[i].first / pts[i - 1].first);
            ++cnt;
        }
        const double slope = slope_acc / cnt;
        CHECK(slope == doctest::Approx(-2.0).epsilon(0.10));
    }
    SUBCASE("weak-type L1 bound across thresholds") {
        const auto spec = BumpFieldSpec::seeded(42);
        const auto u = spec.sample(d);
        const auto f = modulus(u);
        double l1 = 0.0;
        for (double v : f) l1 += v * d.cell_measure();
        const auto m = maximal_function(d, f);
        double sup_t = 0.0;
        for (double v : m) sup_t = std::max(sup_t, v);
        for (int k = 1; k <= 20; ++k) {
            const double t = sup_t * k / 21.0;
            double measure = 0.0;
            for (double v : m)
                if (v > t) measure += d.cell_measure();
            CHECK(t * measure <= 9.0 * l1);
        }
    }
}

TEST_CASE("rearranged fields are equimeasurable with the cell values") {
    const auto d = GridDomain::square(32, 1.0 / 32);
    const auto u = BumpFieldSpec::seeded(7).sample(d);
    const auto f = modulus(u);
    const auto prof = rearrange_field(d, f);
    CHECK(prof.total_length() == doctest::Approx(d.measure()));
    for (double t : {0.01, 0.05, 0.2}) {
        double measure = 0.0;
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i)
                if (d.active(i, j) && f[d.idx(i, j)] > t) measure += d.cell_measure();
        CHECK(prof.measure_above(t) == doctest::Approx(measure).epsilon(1e-12));
    }
}
