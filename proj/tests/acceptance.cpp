// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "golden_fixture.hpp"
#include "risob/embedding.hpp"
#include "risob/golden.hpp"
#include "risob/hardy.hpp"
#include "risob/kfunctional.hpp"
#include "risob/truncation.hpp"
#include "risob/young_sobolev.hpp"

using namespace risob;

namespace {

int failures = 0;

void run(int id, const std::string& name, const std::function<bool(std::string&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %2d: %-28s (%6.1fs)%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                secs, detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

DecreasingProfile random_profile(std::mt19937_64& rng, int max_steps = 10) {
    std::uniform_int_distribution<int> kd(1, max_steps);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    const int k = kd(rng);
    std::vector<double> bp(static_cast<std::size_t>(k)), val(static_cast<std::size_t>(k));
    double b = 0.0;
    for (auto& x : bp) x = (b += 0.05 + 2.0 * ud(rng));
    for (auto& v : val) v = 8.0 * ud(rng);
    std::sort(val.rbegin(), val.rend());
    return {bp, val};
}

YoungFunction random_table_density(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nd(2, 8);
    std::uniform_real_distribution<double> dt(0.1, 2.0), da(0.05, 2.0);
    const int n = nd(rng);
    std::vector<double> t(static_cast<std::size_t>(n)), a(static_cast<std::size_t>(n));
    double tt = 0.0, aa = 0.0;
    for (int i = 0; i < n; ++i) {
        tt += dt(rng);
        aa += da(rng);
        t[static_cast<std::size_t>(i)] = tt;
        a[static_cast<std::size_t>(i)] = aa;
    }
    return YoungFunction::from_density_table(t, a);
}

bool bracket_spread_ok(double lo, double hi, double max_spread, std::string& detail) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "spread %.3g", lo > 0.0 ? hi / lo : inf);
    detail += buf;
    return lo > 0.0 && std::isfinite(hi) && hi / lo <= max_spread;
}

}  // namespace

int main() {
    // 1. golden tables, string-equal against the transcribed fixture
    run(1, "golden tables", [](std::string& detail) {
        const std::string got = golden_table();
        if (got != kGoldenFixture) {
            detail = "table text differs from the fixture";
            return false;
        }
        return true;
    });

    // 2. Young calculus
    run(2, "young calculus", [](std::string& detail) {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 10; ++trial) {
            const auto A = random_table_density(rng);
            const auto Acc = A.conjugate().conjugate();
            std::uniform_real_distribution<double> td(0.01, 12.0);
            for (int k = 0; k < 50; ++k) {
                const double t = td(rng);
                if (std::fabs(Acc.value(t) - A.value(t)) >
                    1e-8 * std::max(1.0, A.value(t))) {
                    detail = "conjugate involution violated";
                    return false;
                }
            }
        }
        for (double p : {1.5, 3.0, 5.0}) {
            const auto At = YoungFunction::power(p, 1.0 / p).conjugate();
            const double pc = p / (p - 1.0);
            for (double t : {0.3, 1.0, 4.0, 20.0}) {
                const double expect = std::pow(t, pc) / pc;
                if (std::fabs(At.value(t) - expect) > 1e-8 * std::max(1.0, expect)) {
                    detail = "power conjugate oracle violated";
                    return false;
                }
            }
        }
        for (auto [p, n] : std::vector<std::pair<double, int>>{{1.5, 2}, {2.0, 3}, {3.0, 4}}) {
            const auto res = sobolev_conjugate(YoungFunction::power(p), n);
            if (res.collapse) {
                detail = "unexpected collapse";
                return false;
            }
            const double target = n * p / (n - p);
            double lo = inf, hi = 0.0;
            for (double t = 1.0; t <= 1e3; t *= 2.0) {
                const double r = res.A_n.value(t) / std::pow(t, target);
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
            if (!(lo > 0.0) || !(hi < inf)) {
                detail = "A_n ratio unbounded";
                return false;
            }
        }
        if (!sobolev_conjugate(YoungFunction::power(4.0), 2).collapse ||
            !sobolev_conjugate(YoungFunction::power(5.0), 3).collapse) {
            detail = "missing collapse for p > n";
            return false;
        }
        return true;
    });

    // 3. moduli brackets
    run(3, "continuity moduli", [](std::string& detail) {
        const auto spread = [&](const YoungFunction& A, int n,
                                const std::function<double(double)>& model, std::string& why) {
            continuity_kernels k(A, n);
            double lo = inf, hi = 0.0;
            for (double r = 1e-6; r <= 1.01e-2; r *= 10.0) {
                const double ratio = k.sigma(r) / model(r);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
            if (!(lo > 0.0) || hi / lo > 10.0) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "spread %.3g for %s", hi / lo,
                              A.describe().c_str());
                why += buf;
                return false;
            }
            return true;
        };
        if (!spread(YoungFunction::linf_indicator(), 2,
                    [](double r) { return r * std::log(1.0 / r); }, detail))
            return false;
        for (double beta : {0.5, 1.0, 2.0})
            if (!spread(YoungFunction::exp_power(beta), 2,
                        [beta](double r) {
                            return r * std::pow(std::log(1.0 / r), 1.0 + 1.0 / beta);
                        },
                        detail))
                return false;
        if (!spread(YoungFunction::power_log(2.0, 3.0), 2,
                    [](double r) { return std::pow(std::log(1.0 / r), -1.0); }, detail))
            return false;
        // sigma_X from the norm machinery against sigma_A, conjugate bracket
        continuity_kernels k(YoungFunction::exp_power(1.0), 2);
        const auto X = NormSpec::orlicz(YoungFunction::exp_power(1.0), 1.0);
        double lo = inf, hi = 0.0;
        for (double s : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
            const auto m = moduli(X, 2, 1.0, s);
            const double ratio = m.sigma / k.sigma(s);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        if (lo < 0.5 / 1.05 || hi > 2.0 * 1.05) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "sigma_X/sigma_A in [%.3g, %.3g]", lo, hi);
            detail = buf;
            return false;
        }
        return true;
    });

    // 4. K-functional oracle
    run(4, "K-functional oracle", [](std::string& detail) {
        std::mt19937_64 rng(101);
        const auto X0 = NormSpec::lebesgue(1.0);
        const auto X1 = NormSpec::lebesgue(inf);
        for (int trial = 0; trial < 100; ++trial) {
            const auto f = random_profile(rng);
            for (double t : {0.05, 0.3, 1.0, 2.5, 7.0}) {
                const auto res = k_bruteforce(f, t, X0, X1);
                const double exact = k_exact_l1_linf(f, t);
                if (std::fabs(res.value - exact) > 0.01 * std::max(exact, 1e-12)) {
                    detail = "bruteforce off by more than 1%";
                    return false;
                }
            }
            // monotone and concave in t
            double prev = 0.0, prev_inc = inf;
            for (double t = 0.25; t <= 4.0; t += 0.25) {
                const double v = k_exact_l1_linf(f, t);
                const double inc = v - prev;
                if (inc < -1e-9 || inc > prev_inc + 1e-9) {
                    detail = "monotonicity/concavity violated";
                    return false;
                }
                prev = v;
                prev_inc = inc;
            }
        }
        return true;
    });

    // 5. reduction-operator behaviour
    run(5, "reduction operator", [](std::string& detail) {
        std::vector<double> kgrid;
        for (double k = 1.0; k <= 1000.0; k *= 2.0) kgrid.push_back(k);
        for (auto [p, n] : std::vector<std::pair<double, int>>{{1.5, 2}, {2.0, 3}}) {
            const double ps = n * p / (n - p);
            const auto rep = ratio_sup(NormSpec::lebesgue(p, 1.0), NormSpec::lebesgue(ps, 1.0), n,
                                       1.0, TrialFamily::indicator(kgrid, 1.0));
            if (std::fabs(rep.slope) >= 0.02) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "stabilization slope %.4f at p=%.1f", rep.slope, p);
                detail = buf;
                return false;
            }
        }
        {
            const int n = 2;
            const double p = 1.5, ps = 6.0, q = 12.0;
            const auto rep = ratio_sup(NormSpec::lebesgue(p, 1.0), NormSpec::lebesgue(q, 1.0), n,
                                       1.0, TrialFamily::indicator(kgrid, 1.0));
            const double predicted = 1.0 / ps - 1.0 / q;
            if (std::fabs(rep.slope - predicted) > 0.1 * predicted) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "growth slope %.4f vs %.4f", rep.slope, predicted);
                detail = buf;
                return false;
            }
        }
        return true;
    });

    // 6. 2D Sobolev endpoints under refinement
    run(6, "2d sobolev endpoints", [](std::string& detail) {
        const auto d1 = GridDomain::square(64, 1.0 / 64);
        const auto d2 = GridDomain::square(128, 1.0 / 128);
        std::vector<VectorField2D> f1, f2;
        for (int s = 0; s < 50; ++s) {
            const auto spec = BumpFieldSpec::seeded(7000 + static_cast<std::uint64_t>(s));
            f1.push_back(spec.sample(d1));
            f2.push_back(spec.sample(d2));
        }
        const double L1 = d1.measure(), L2 = d2.measure();
        const auto pair1a = verify_sobolev_2d(d1, f1, NormSpec::lebesgue(1.0, L1),
                                              NormSpec::lorentz(2.0, 1.0, L1));
        const auto pair1b = verify_sobolev_2d(d2, f2, NormSpec::lebesgue(1.0, L2),
                                              NormSpec::lorentz(2.0, 1.0, L2));
        const auto pair2a = verify_sobolev_2d(d1, f1, NormSpec::lorentz(2.0, 1.0, L1),
                                              NormSpec::lebesgue(inf, L1));
        const auto pair2b = verify_sobolev_2d(d2, f2, NormSpec::lorentz(2.0, 1.0, L2),
                                              NormSpec::lebesgue(inf, L2));
        const double drift1 = std::fabs(pair1b.max_ratio - pair1a.max_ratio) / pair1a.max_ratio;
        const double drift2 = std::fabs(pair2b.max_ratio - pair2a.max_ratio) / pair2a.max_ratio;
        char buf[128];
        std::snprintf(buf, sizeof buf, "drift %.3f / %.3f, pointwise const %.3g", drift1, drift2,
                      std::max(pair1b.pointwise_const, pair2b.pointwise_const));
        detail = buf;
        return drift1 < 0.10 && drift2 < 0.10 && std::isfinite(pair1b.pointwise_const) &&
               std::isfinite(pair2b.pointwise_const) && pair2b.pointwise_const > 0.0;
    });

    // 7. truncation bounds
    run(7, "truncation bounds", [](std::string& detail) {
        const auto d = GridDomain::square(160, 1.0 / 160);
        double c_global = 0.0;
        for (int seed = 0; seed < 20; ++seed) {
            const auto u = BumpFieldSpec::pinpoint(4000 + static_cast<std::uint64_t>(seed)).sample(d);
            const auto e = symmetric_gradient(d, u);
            const auto mu = maximal_function(d, modulus(u));
            const auto me = maximal_function(d, modulus(e));
            double smax = 0.0, emax = 0.0;
            for (std::size_t k = 0; k < mu.size(); ++k) {
                smax = std::max(smax, mu[k]);
                emax = std::max(emax, me[k]);
            }
            for (double frac : {0.95, 0.3, 0.095, 0.03, 0.0095}) {
                const auto tr = truncate(d, u, smax * frac, emax * frac);
                if (tr.identity) continue;
                if (!tr.cover_report.covers || !tr.cover_report.disjoint ||
                    !tr.cover_report.distance_bounds || !tr.cover_report.neighbour_ratio ||
                    tr.cover_report.max_neighbours > 32 ||
                    tr.cover_report.partition_sum_error > 1e-10) {
                    detail = "whitney structural assertion failed";
                    return false;
                }
                for (std::size_t k = 0; k < u.u1.size(); ++k)
                    if (!tr.omask[k] &&
                        (tr.field.u1[k] != u.u1[k] || tr.field.u2[k] != u.u2[k])) {
                        detail = "identity off the truncation set violated";
                        return false;
                    }
                c_global = std::max({c_global, tr.sup_T_over_theta, tr.sup_eps_over_lambda});
            }
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "global c %.3g", c_global);
        detail = buf;
        return c_global > 0.0 && c_global < 60.0;
    });

    // 8. symmetric-gradient K-functional
    run(8, "symgrad K-functional", [](std::string& detail) {
        const auto d = GridDomain::square(96, 1.0 / 96);
        double c_first = 0.0, c_second = 0.0, lo = inf;
        for (int seed = 0; seed < 20; ++seed) {
            const auto u = BumpFieldSpec::tight(900 + static_cast<std::uint64_t>(seed)).sample(d);
            double cmax = 0.0;
            for (double t : {0.005, 0.01, 0.02, 0.05, 0.1}) {
                const auto res = k_symgrad_compare(d, u, t);
                if (res.predicted <= 0.0) continue;
                const double r = res.upper / res.predicted;
                lo = std::min(lo, r);
                cmax = std::max(cmax, r);
            }
            (seed < 10 ? c_first : c_second) = std::max(seed < 10 ? c_first : c_second, cmax);
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "ratios >= %.3f, C halves %.3g/%.3g", lo, c_first,
                      c_second);
        detail = buf;
        const double cdiff = std::fabs(c_first - c_second) / std::max(c_first, c_second);
        return lo >= 1.0 && cdiff <= 0.30;
    });

    // 9. modular inequality
    run(9, "orlicz modular inequality", [](std::string& detail) {
        const auto A = YoungFunction::power(1.5);
        const auto an = sobolev_conjugate(A, 2);
        std::vector<double> cs;
        for (int nside : {48, 96}) {
            const auto d = GridDomain::square(nside, 1.0 / nside);
            for (int seed = 0; seed < 20; ++seed) {
                const auto u = BumpFieldSpec::seeded(600 + static_cast<std::uint64_t>(seed)).sample(d);
                const auto rep = verify_orlicz_modular(d, u, A, an);
                if (rep.trivial) continue;
                if (!(rep.c > 0.0) || rep.lhs > rep.rhs * (1.0 + 1e-9)) {
                    detail = "no feasible constant";
                    return false;
                }
                cs.push_back(rep.c);
            }
        }
        double lo = inf, hi = 0.0;
        for (double c : cs) {
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "c in [%.3g, %.3g]", lo, hi);
        detail = buf;
        return (hi - lo) / hi <= 0.25 * 2.0 && hi / lo <= 1.0 / (1.0 - 0.25) / (1.0 - 0.25);
    });

    // 10. property suites
    run(10, "property suites", [](std::string& detail) {
        std::mt19937_64 rng(77);
        std::uniform_real_distribution<double> vd(0.0, 7.0), wd(0.1, 2.0), td(0.0, 8.0);
        // equimeasurability
        for (int trial = 0; trial < 1000; ++trial) {
            const std::size_t m = 1 + trial % 10;
            std::vector<double> v(m), w(m);
            for (std::size_t i = 0; i < m; ++i) {
                v[i] = vd(rng);
                w[i] = wd(rng);
            }
            WeightedSamples s(v, w);
            const auto prof = rearrange(s);
            for (int k = 0; k < 10; ++k) {
                const double t = td(rng);
                if (std::fabs(prof.measure_above(t) - s.measure_above(t)) > 1e-12) {
                    detail = "equimeasurability violated";
                    return false;
                }
            }
        }
        // subadditivity and Hardy-Littlewood
        for (int trial = 0; trial < 1000; ++trial) {
            const std::size_t m = 1 + trial % 8;
            std::vector<double> a(m), b(m), w(m), sum(m);
            for (std::size_t i = 0; i < m; ++i) {
                a[i] = vd(rng);
                b[i] = vd(rng);
                w[i] = wd(rng);
                sum[i] = a[i] + b[i];
            }
            const auto fa = rearrange({a, w});
            const auto fb = rearrange({b, w});
            const auto fs = rearrange({sum, w});
            for (int k = 0; k < 5; ++k) {
                const double s = 0.01 + td(rng);
                if (double_star(fs, s) > double_star(fa, s) + double_star(fb, s) + 1e-12) {
                    detail = "subadditivity violated";
                    return false;
                }
            }
            const auto [lhs, rhs] = hardy_littlewood_pairing({a, w}, {b, w});
            if (lhs > rhs + 1e-12) {
                detail = "Hardy-Littlewood violated";
                return false;
            }
        }
        // fundamental-function duality for Lebesgue pairs
        for (double p : {1.0, 1.25, 2.0, 3.0}) {
            const double pc = holder_conjugate(p);
            for (double s = 1e-3; s <= 1e3; s *= 10.0) {
                const double prod = fundamental_function(NormSpec::lebesgue(p), s) *
                                    fundamental_function(NormSpec::lebesgue(pc), s);
                if (std::fabs(prod - s) > 1e-9 * s) {
                    detail = "fundamental duality violated";
                    return false;
                }
            }
        }
        // weak-type maximal bound for L^1
        {
            const auto d = GridDomain::square(64, 1.0 / 64);
            const auto u = BumpFieldSpec::seeded(42).sample(d);
            const auto f = modulus(u);
            double l1 = 0.0, sup_m = 0.0;
            const auto m = maximal_function(d, f);
            for (std::size_t k = 0; k < f.size(); ++k) {
                l1 += f[k] * d.cell_measure();
                sup_m = std::max(sup_m, m[k]);
            }
            for (int k = 1; k <= 20; ++k) {
                const double t = sup_m * k / 21.0;
                double meas = 0.0;
                for (double v : m)
                    if (v > t) meas += d.cell_measure();
                if (t * meas > 9.0 * l1) {
                    detail = "weak-type bound violated";
                    return false;
                }
            }
        }
        // Young's inequality
        {
            std::vector<YoungFunction> As = {YoungFunction::power(2.0), YoungFunction::power(1.5),
                                             YoungFunction::linf_indicator(),
                                             random_table_density(rng)};
            std::uniform_real_distribution<double> dd(0.001, 30.0);
            for (const auto& A : As) {
                const auto At = A.conjugate();
                for (int k = 0; k < 2500; ++k) {
                    const double tau = dd(rng), t = dd(rng);
                    const double rhs = A.value(tau) + At.value(t);
                    if (std::isfinite(rhs) && tau * t > rhs + 1e-10 * std::max(1.0, rhs)) {
                        detail = "Young inequality violated";
                        return false;
                    }
                }
            }
        }
        return true;
    });

    std::printf("%s\n", failures == 0 ? "acceptance: all criteria passed"
                                      : "acceptance: FAILURES present");
    return failures == 0 ? 0 : 1;
}
