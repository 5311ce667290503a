#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

#include "risob/common.hpp"

namespace risob {

struct quad_options {
    double rel_tol = 1e-9;
    double abs_floor = 1e-14;
    int max_depth = 48;
};

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a, double fa, double b,
                      double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                            double fb, double m, double fm, double whole, const quad_options& opt,
                            int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    if (!std::isfinite(flm) || !std::isfinite(frm)) return inf;
    const double left = simpson(f, a, fa, m, fm, flm);
    const double right = simpson(f, m, fm, b, fb, frm);
    const double err = left + right - whole;
    if (!std::isfinite(err) || depth >= opt.max_depth ||
        std::fabs(err) <= 15.0 * (opt.rel_tol * std::fabs(left + right) + opt.abs_floor)) {
        return left + right + (std::isfinite(err) ? err / 15.0 : 0.0);
    }
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, opt, depth + 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, opt, depth + 1);
}

}  // namespace detail

/// Adaptive Simpson on a finite interval. Returns +inf if the integrand blows
/// up inside the interval.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        quad_options opt = {}) {
    if (!(a < b)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm)) return inf;
    const double whole = detail::simpson(f, a, fa, b, fb, fm);
    return detail::adaptive_step(f, a, fa, b, fb, m, fm, whole, opt, 0);
}

struct improper_result {
    double value = 0.0;
    bool converged = false;   // remainder certified finite and added to value
    double tail_bound = inf;  // estimated remainder beyond the last window
};

namespace detail {

// Remainder estimate from a sequence of geometric-window integrals w_k.
// Models w_k ~ C e^{kappa k} k^f (the form every power-log integrand takes on
// dyadic windows) by a least-squares fit of the log-increments, then sums the
// modelled tail. kappa ~ 0 with f >= -1 means divergence.
inline improper_result classify_windows(const std::vector<double>& w, double acc) {
    improper_result res;
    res.value = acc;
    const int n = static_cast<int>(w.size());
    const int m = std::min(16, n / 2);
    if (m < 6) return res;
    // log-increments d_j = kappa + f/k fitted against x = 1/k
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int cnt = 0;
    for (int j = n - m; j < n - 1; ++j) {
        if (!(w[static_cast<std::size_t>(j)] > 0.0) || !(w[static_cast<std::size_t>(j + 1)] > 0.0))
            return res;
        const double d = std::log(w[static_cast<std::size_t>(j + 1)] / w[static_cast<std::size_t>(j)]);
        const double x = 1.0 / (j + 1);
        sx += x;
        sy += d;
        sxx += x * x;
        sxy += x * d;
        ++cnt;
    }
    const double det = cnt * sxx - sx * sx;
    if (std::fabs(det) < 1e-30) return res;
    const double f_hat = (cnt * sxy - sx * sy) / det;
    const double kappa = (sy - f_hat * sx) / cnt;
    const double w_last = w.back();
    const double k_last = n;
    if (kappa <= -0.02) {
        double tail = 0.0;
        for (int i = 1; i <= 200000; ++i) {
            const double term =
                w_last * std::exp(kappa * i) * std::pow((k_last + i) / k_last, f_hat);
            tail += term;
            if (term < 1e-12 * (tail + std::fabs(acc)) || !std::isfinite(term)) break;
        }
        if (!std::isfinite(tail)) return res;
        res.value = acc + tail;
        res.tail_bound = tail;
        res.converged = true;
        return res;
    }
    if (kappa <= 0.01 && f_hat < -1.05) {
        const double tail = w_last * k_last / (-f_hat - 1.0);
        res.value = acc + tail;
        res.tail_bound = tail;
        res.converged = true;
        return res;
    }
    return res;
}

template <typename NextWindow>
improper_result improper_accumulate(NextWindow&& next, double tail_rel_tol, int max_windows,
                                    const quad_options& opt) {
    improper_result res;
    std::vector<double> windows;
    windows.reserve(static_cast<std::size_t>(max_windows));
    double acc = 0.0;
    int zero_run = 0;
    for (int k = 0; k < max_windows; ++k) {
        const double w = next();
        if (!std::isfinite(w) || !std::isfinite(acc)) {
            res.value = inf;
            return res;
        }
        acc += w;
        windows.push_back(w);
        zero_run = w == 0.0 ? zero_run + 1 : 0;
        if (zero_run >= 3) {
            res.value = acc;
            res.tail_bound = 0.0;
            res.converged = true;
            return res;
        }
        // quick certificate for strongly decaying integrands
        const std::size_t sz = windows.size();
        if (sz >= 4 && w > 0.0) {
            bool strong = true;
            for (std::size_t j = sz - 3; j < sz; ++j)
                strong = strong && windows[j] < 0.9 * windows[j - 1] && windows[j] > 0.0;
            if (strong) {
                const double rho = w / windows[sz - 2];
                const double tail = w * rho / (1.0 - rho);
                if (tail <= tail_rel_tol * std::max(std::fabs(acc), opt.abs_floor)) {
                    res.value = acc + tail;
                    res.tail_bound = tail;
                    res.converged = true;
                    return res;
                }
            }
        }
        if (acc > 1e280) {
            res.value = acc;
            return res;
        }
    }
    return classify_windows(windows, acc);
}

}  // namespace detail

/// ∫_a^∞ f over geometric windows [a 2^k, a 2^{k+1}] with a power-log model
/// for the remainder. converged = false signals a (numerically) divergent
/// integral.
inline improper_result integrate_to_inf(const std::function<double(double)>& f, double a,
                                        double tail_rel_tol = 1e-8, int max_windows = 64,
                                        quad_options opt = {}) {
    if (!(a > 0.0)) throw domain_error("integrate_to_inf: lower limit must be positive");
    double lo = a;
    return detail::improper_accumulate(
        [&]() {
            const double hi = lo * 2.0;
            const double w = integrate(f, lo, hi, opt);
            lo = hi;
            return w;
        },
        tail_rel_tol, max_windows, opt);
}

/// ∫_0^b f with a possible power-log singularity at 0; mirror image of
/// integrate_to_inf over windows [b 2^{-k-1}, b 2^{-k}].
inline improper_result integrate_to_zero(const std::function<double(double)>& f, double b,
                                         double tail_rel_tol = 1e-8, int max_windows = 64,
                                         quad_options opt = {}) {
    if (!(b > 0.0)) throw domain_error("integrate_to_zero: upper limit must be positive");
    double hi = b;
    return detail::improper_accumulate(
        [&]() {
            const double lo = hi * 0.5;
            const double w = integrate(f, lo, hi, opt);
            hi = lo;
            return w;
        },
        tail_rel_tol, max_windows, opt);
}

/// Smallest t in [lo_hint, ∞) with g(t) >= y, for nondecreasing g. The bracket
/// is grown by doubling, then refined by 60 bisection steps.
inline double monotone_inverse(const std::function<double(double)>& g, double y, double lo_hint,
                               double hi_hint) {
    double lo = lo_hint;
    double hi = hi_hint;
    if (!(hi > lo)) hi = lo > 0.0 ? 2.0 * lo : 1.0;
    int guard = 0;
    while (g(hi) < y) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 2000) return inf;
    }
    while (g(lo) >= y && lo > 0.0) {
        hi = lo;
        lo *= 0.5;
        if (++guard > 4000) break;
    }
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) >= y)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

/// Golden-section minimizer of a unimodal function on [a,b].
inline double golden_min(const std::function<double(double)>& f, double a, double b,
                         double rel_tol = 1e-8) {
    static const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    const double scale = std::max(std::fabs(a), std::fabs(b)) + 1e-300;
    while (b - a > rel_tol * scale) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace risob
