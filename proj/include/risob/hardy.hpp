#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "risob/common.hpp"
#include "risob/norms.hpp"
#include "risob/profile.hpp"

namespace risob {

/// ∫_s^L f(r) r^{-1+1/n} dr, exact on step profiles (antiderivative n r^{1/n}).
inline double hardy_finite(const DecreasingProfile& f, double s, double L, int n) {
    if (!(s > 0.0)) throw domain_error("hardy_finite: s > 0 required");
    if (s >= L) return 0.0;
    const double ninv = 1.0 / n;
    double acc = 0.0;
    for (std::size_t i = 0; i < f.steps(); ++i) {
        const double a = std::max(f.left_endpoint(i), s);
        const double b = std::min(f.breakpoints()[i], L);
        if (b <= a) continue;
        acc += f.step_values()[i] * n * (std::pow(b, ninv) - std::pow(a, ninv));
    }
    return acc;
}

/// Same kernel integrated to the end of the support (whole-space variant).
inline double hardy_rn(const DecreasingProfile& f, double s, int n) {
    return hardy_finite(f, s, f.total_length(), n);
}

/// Tf as a decreasing step profile on a geometric s-grid.
inline DecreasingProfile hardy_transform_profile(const DecreasingProfile& f, double L, int n,
                                                 int per_decade = 48, double lo_frac = 1e-9) {
    const double lo = L * lo_frac;
    const int count = std::max(8, static_cast<int>(per_decade * std::log10(1.0 / lo_frac)));
    std::vector<double> bp, val;
    bp.reserve(static_cast<std::size_t>(count));
    val.reserve(static_cast<std::size_t>(count));
    double prev = 0.0;
    for (int i = 1; i <= count; ++i) {
        const double s = lo * std::pow(L / lo, static_cast<double>(i - 1) / (count - 1));
        if (!(s > prev)) continue;
        const double mid = prev == 0.0 ? 0.5 * s : std::sqrt(prev * s);
        double v = hardy_finite(f, mid, L, n);
        if (!val.empty() && v > val.back()) v = val.back();
        bp.push_back(s);
        val.push_back(v);
        prev = s;
    }
    return {bp, val};
}

/// Families of nonincreasing trial functions for operator-norm probing.
struct TrialFamily {
    enum class kind { random_steps, power, indicator, flat };
    kind k = kind::random_steps;
    int count = 100;
    std::uint64_t seed = 1;
    double L = 1.0;
    std::vector<double> params;  // power exponents, indicator 1/k scales, flat lengths

    static TrialFamily random_steps(int count, std::uint64_t seed, double L) {
        TrialFamily t;
        t.k = kind::random_steps;
        t.count = count;
        t.seed = seed;
        t.L = L;
        return t;
    }
    static TrialFamily power(std::vector<double> a_grid, double L) {
        TrialFamily t;
        t.k = kind::power;
        t.params = std::move(a_grid);
        t.L = L;
        return t;
    }
    static TrialFamily indicator(std::vector<double> k_grid, double L) {
        TrialFamily t;
        t.k = kind::indicator;
        t.params = std::move(k_grid);
        t.L = L;
        return t;
    }
    static TrialFamily flat(std::vector<double> K_grid, double L) {
        TrialFamily t;
        t.k = kind::flat;
        t.params = std::move(K_grid);
        t.L = L;
        return t;
    }

    /// (scale parameter, profile) pairs; deterministic under the seed.
    std::vector<std::pair<double, DecreasingProfile>> generate() const {
        std::vector<std::pair<double, DecreasingProfile>> out;
        switch (k) {
            case kind::random_steps: {
                std::mt19937_64 rng(seed);
                std::uniform_int_distribution<int> kd(1, 10);
                std::uniform_real_distribution<double> ud(0.0, 1.0);
                for (int t = 0; t < count; ++t) {
                    const int m = kd(rng);
                    std::vector<double> bp(static_cast<std::size_t>(m)),
                        val(static_cast<std::size_t>(m));
                    for (auto& b : bp) b = L * std::pow(ud(rng), 3.0);
                    std::sort(bp.begin(), bp.end());
                    for (std::size_t i = 0; i < bp.size(); ++i) {
                        if (bp[i] <= (i ? bp[i - 1] : 0.0)) bp[i] = (i ? bp[i - 1] : 1e-12 * L) * 1.5;
                    }
                    for (auto& v : val) v = std::pow(ud(rng), 2.0) * 10.0;
                    std::sort(val.rbegin(), val.rend());
                    if (val.front() == 0.0) val.front() = 1.0;
                    out.emplace_back(static_cast<double>(t + 1), DecreasingProfile(bp, val));
                }
                break;
            }
            case kind::power: {
                for (double a : params) {
                    std::vector<double> bp, val;
                    const double lo = 1e-8 * L;
                    const int m = 32 * 8;
                    double prev = 0.0;
                    for (int i = 1; i <= m; ++i) {
                        const double s = lo * std::pow(L / lo, static_cast<double>(i - 1) / (m - 1));
                        if (s <= prev) continue;
                        const double mid = prev == 0.0 ? 0.5 * s : std::sqrt(prev * s);
                        double v = std::pow(mid, -a);
                        if (!val.empty() && v > val.back()) v = val.back();
                        bp.push_back(s);
                        val.push_back(v);
                        prev = s;
                    }
                    out.emplace_back(a, DecreasingProfile(bp, val));
                }
                break;
            }
            case kind::indicator: {
                for (double kk : params)
                    out.emplace_back(kk, DecreasingProfile::indicator(1.0, 1.0 / kk));
                break;
            }
            case kind::flat: {
                for (double K : params)
                    out.emplace_back(K, DecreasingProfile::indicator(1.0, K));
                break;
            }
        }
        return out;
    }
};

struct ratio_report {
    double best_ratio = 0.0;
    DecreasingProfile witness;
    std::vector<std::pair<double, double>> scale_ratios;  // (scale, ratio)
    double slope = 0.0;                                   // d log(ratio) / d log(scale)
};

namespace hardy_detail {

inline double fit_loglog_slope(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (const auto& [s, r] : pts) {
        if (!(s > 0.0) || !(r > 0.0) || !std::isfinite(r)) continue;
        const double x = std::log(s), y = std::log(r);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return 0.0;
    const double det = n * sxx - sx * sx;
    return det != 0.0 ? (n * sxy - sx * sy) / det : 0.0;
}

}  // namespace hardy_detail

/// Largest observed ||Tf||_Y / ||f||_X over a trial family, with the witness
/// profile and a log-log growth slope across the family scale. A lower bound
/// on the operator norm, never a certified supremum.
inline ratio_report ratio_sup(const NormSpec& X, const NormSpec& Y, int n, double L,
                              const TrialFamily& family) {
    ratio_report rep;
    for (const auto& [scale, f] : family.generate()) {
        const double nx = norm(X, f);
        if (!(nx > 0.0) || !std::isfinite(nx)) continue;  // zero/infinite-norm trial skipped
        const auto Tf = hardy_transform_profile(f, L, n);
        const double ny = norm(Y, Tf);
        const double r = ny / nx;
        if (!std::isfinite(r)) continue;
        rep.scale_ratios.emplace_back(scale, r);
        if (r > rep.best_ratio) {
            rep.best_ratio = r;
            rep.witness = f;
        }
    }
    rep.slope = hardy_detail::fit_loglog_slope(rep.scale_ratios);
    return rep;
}

/// Whole-space split condition: the local Hardy ratio on (0,1) and the plain
/// tail comparison ||chi_(1,inf) f||_Y / ||f||_X.
inline std::pair<ratio_report, ratio_report> rn_split_check(const NormSpec& X, const NormSpec& Y,
                                                            int n, const TrialFamily& family) {
    ratio_report local, global;
    for (const auto& [scale, f] : family.generate()) {
        // local part: restrict f to (0,1)
        {
            std::vector<double> bp, val;
            for (std::size_t i = 0; i < f.steps(); ++i) {
                if (f.left_endpoint(i) >= 1.0) break;
                bp.push_back(std::min(f.breakpoints()[i], 1.0));
                val.push_back(f.step_values()[i]);
            }
            if (!bp.empty() && val.front() > 0.0) {
                DecreasingProfile floc(bp, val);
                const double nx = norm(X, floc);
                if (nx > 0.0 && std::isfinite(nx)) {
                    const auto Tf = hardy_transform_profile(floc, 1.0, n);
                    const double r = norm(Y, Tf) / nx;
                    if (std::isfinite(r)) {
                        local.scale_ratios.emplace_back(scale, r);
                        if (r > local.best_ratio) {
                            local.best_ratio = r;
                            local.witness = floc;
                        }
                    }
                }
            }
        }
        // global part: the tail of f beyond 1, rearranged to the origin
        if (f.total_length() > 1.0) {
            std::vector<double> bp, val;
            for (std::size_t i = 0; i < f.steps(); ++i) {
                const double b = f.breakpoints()[i];
                if (b <= 1.0) continue;
                bp.push_back(b - 1.0);
                val.push_back(f.step_values()[i]);
            }
            if (!bp.empty() && val.front() > 0.0) {
                DecreasingProfile tail(bp, val);
                const double nx = norm(X, f);
                if (nx > 0.0 && std::isfinite(nx)) {
                    const double r = norm(Y, tail) / nx;
                    if (std::isfinite(r)) {
                        global.scale_ratios.emplace_back(scale, r);
                        if (r > global.best_ratio) {
                            global.best_ratio = r;
                            global.witness = tail;
                        }
                    }
                }
            }
        }
    }
    local.slope = hardy_detail::fit_loglog_slope(local.scale_ratios);
    global.slope = hardy_detail::fit_loglog_slope(global.scale_ratios);
    return {local, global};
}

}  // namespace risob
