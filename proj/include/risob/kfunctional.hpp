#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "risob/common.hpp"
#include "risob/norms.hpp"
#include "risob/profile.hpp"
#include "risob/quadrature.hpp"

namespace risob {

/// K(f, t; L^1, L^inf) = ∫_0^t f*(s) ds, exact for step profiles.
inline double k_exact_l1_linf(const DecreasingProfile& f, double t) {
    if (!(t > 0.0)) throw domain_error("k_exact_l1_linf: t > 0 required");
    return f.integral_up_to(t);
}

/// A splitting f = f0 + f1 with exact per-step additivity.
struct Decomposition {
    DecreasingProfile f0, f1;
};

struct k_search_result {
    double value = 0.0;
    Decomposition dec;
};

namespace k_detail {

inline bool is_lebesgue(const NormSpec& s, double p) {
    return s.family() == norm_family::lebesgue && s.p() == p;
}

inline DecreasingProfile clip_above(const DecreasingProfile& f, double lam) {
    std::vector<double> val(f.step_values());
    for (double& v : val) v = std::max(v - lam, 0.0);
    return {f.breakpoints(), val};
}

inline DecreasingProfile clip_below(const DecreasingProfile& f, double lam) {
    std::vector<double> val(f.step_values());
    for (double& v : val) v = std::min(v, lam);
    return {f.breakpoints(), val};
}

}  // namespace k_detail

/// Brute-force K-functional upper bound. For (L^1, L^inf) a golden-section
/// search over the truncation level (the family that contains the optimizer);
/// for general couples a per-step split search on profiles with few steps,
/// exhaustive up to 5 steps and coordinate descent beyond.
inline k_search_result k_bruteforce(const DecreasingProfile& f, double t, const NormSpec& X0,
                                    const NormSpec& X1) {
    if (!(t > 0.0)) throw domain_error("k_bruteforce: t > 0 required");
    k_search_result res;
    if (f.sup_value() == 0.0) {
        res.dec = {f, f};
        return res;
    }
    if (k_detail::is_lebesgue(X0, 1.0) && k_detail::is_lebesgue(X1, inf)) {
        const auto objective = [&](double lam) {
            return k_detail::clip_above(f, lam).integral() + t * lam;
        };
        const double lam = golden_min(objective, 0.0, f.sup_value(), 1e-8);
        res.value = objective(lam);
        res.dec = {k_detail::clip_above(f, lam), k_detail::clip_below(f, lam)};
        return res;
    }

    const std::size_t k = f.steps();
    if (k > 12) throw invalid_input("k_bruteforce: general search limited to 12 steps");
    const int levels = 9;  // split fractions 0, 1/8, ..., 1
    std::vector<int> gamma(k, levels / 2);
    const auto evaluate = [&](const std::vector<int>& g) {
        std::vector<double> v0(k), v1(k);
        for (std::size_t i = 0; i < k; ++i) {
            const double frac = static_cast<double>(g[i]) / (levels - 1);
            v0[i] = f.step_values()[i] * frac;
            v1[i] = f.step_values()[i] - v0[i];
        }
        // per-step splits of a decreasing profile need not stay monotone;
        // rearrange both parts
        std::vector<double> w(k);
        double prev = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            w[i] = f.breakpoints()[i] - prev;
            prev = f.breakpoints()[i];
        }
        const double n0 = norm(X0, rearrange(WeightedSamples(v0, w)));
        const double n1 = norm(X1, rearrange(WeightedSamples(v1, w)));
        return std::make_pair(n0 + t * n1, std::make_pair(v0, v1));
    };

    double best = inf;
    std::vector<int> best_gamma(gamma);
    if (k <= 5) {
        std::vector<int> g(k, 0);
        while (true) {
            const double v = evaluate(g).first;
            if (v < best) {
                best = v;
                best_gamma = g;
            }
            std::size_t i = 0;
            while (i < k && ++g[i] == levels) g[i++] = 0;
            if (i == k) break;
        }
    } else {
        best = evaluate(gamma).first;
        best_gamma = gamma;
        for (int sweep = 0; sweep < 6; ++sweep) {
            bool improved = false;
            for (std::size_t i = 0; i < k; ++i) {
                for (int c = 0; c < levels; ++c) {
                    auto g = best_gamma;
                    g[i] = c;
                    const double v = evaluate(g).first;
                    if (v < best - 1e-15) {
                        best = v;
                        best_gamma = g;
                        improved = true;
                    }
                }
            }
            if (!improved) break;
        }
    }
    const auto [value, parts] = evaluate(best_gamma);
    res.value = value;
    std::vector<double> w(k);
    double prev = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        w[i] = f.breakpoints()[i] - prev;
        prev = f.breakpoints()[i];
    }
    res.dec = {rearrange(WeightedSamples(parts.first, w)),
               rearrange(WeightedSamples(parts.second, w))};
    return res;
}

/// Predicted K-functional for the couple (L^1, L^{n,1}):
/// ∫_0^{t^{n'}} f*(s) ds + t ∫_{t^{n'}}^inf f*(s) s^{-1/n'} ds, exact on steps.
inline double k_l1_ln1_predicted(const DecreasingProfile& f, double t, int n) {
    if (!(t > 0.0)) throw domain_error("k_l1_ln1_predicted: t > 0 required");
    const double cut = std::pow(t, n / (n - 1.0));
    double acc = f.integral_up_to(cut);
    const double ninv = 1.0 / n;
    for (std::size_t i = 0; i < f.steps(); ++i) {
        const double a = std::max(f.left_endpoint(i), cut);
        const double b = f.breakpoints()[i];
        if (b <= a) continue;
        acc += t * f.step_values()[i] * n * (std::pow(b, ninv) - std::pow(a, ninv));
    }
    return acc;
}

}  // namespace risob
