#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "risob/common.hpp"
#include "risob/norms.hpp"
#include "risob/profile.hpp"
#include "risob/young_sobolev.hpp"

namespace risob {

namespace embedding_detail {

/// Tabulate a nonnegative function on a geometric grid of (0, hi] and
/// rearrange the samples into a step profile. Doubles the grid density until
/// the requested norm is stable to rel_tol (the function need not be
/// monotone).
inline double norm_of_function(const NormSpec& spec, const std::function<double(double)>& h,
                               double lo, double hi, double rel_tol = 1e-6) {
    double prev = -1.0;
    for (int per_decade = 64; per_decade <= 256; per_decade *= 2) {
        const int count = std::max(8, static_cast<int>(per_decade * std::log10(hi / lo)));
        std::vector<double> vals, wts;
        vals.reserve(static_cast<std::size_t>(count) + 1);
        wts.reserve(static_cast<std::size_t>(count) + 1);
        double prev_s = 0.0;
        for (int i = 1; i <= count; ++i) {
            const double s = lo * std::pow(hi / lo, static_cast<double>(i) / count);
            const double mid = prev_s == 0.0 ? 0.5 * s : std::sqrt(prev_s * s);
            vals.push_back(std::max(0.0, h(mid)));
            wts.push_back(s - prev_s);
            prev_s = s;
        }
        const double v = norm(spec, rearrange(WeightedSamples(vals, wts)));
        if (prev >= 0.0 && (std::fabs(v - prev) <= rel_tol * std::max(prev, 1e-300) ||
                            (std::isinf(v) && std::isinf(prev))))
            return v;
        prev = v;
    }
    return prev;
}

}  // namespace embedding_detail

/// Closed-form optimal rearrangement-invariant target family on a finite
/// interval, where known.
inline NormSpec optimal_target_spec(const NormSpec& X, int n, double L) {
    const double nn = static_cast<double>(n);
    switch (X.family()) {
        case norm_family::lebesgue: {
            const double p = X.p();
            if (std::isinf(p) || p > nn) return NormSpec::lebesgue(inf, L);
            if (p == nn) return NormSpec::lorentz_zygmund(inf, nn, -1.0, L);
            if (p == 1.0) return NormSpec::lorentz(holder_conjugate(nn), 1.0, L);
            return NormSpec::lorentz(nn * p / (nn - p), p, L);
        }
        case norm_family::lorentz: {
            const double p = X.p(), q = X.q();
            if (std::isinf(p) || p > nn) return NormSpec::lebesgue(inf, L);
            if (p == nn && q == 1.0) return NormSpec::lebesgue(inf, L);
            if (p < nn && p > 1.0) return NormSpec::lorentz(nn * p / (nn - p), q, L);
            throw unsupported_space("optimal_target_spec: Lorentz case not tabulated");
        }
        case norm_family::orlicz: {
            const auto& A = X.young();
            const auto tail_kernel = [&A, n](double t) {
                const double v = A.value(t);
                if (!std::isfinite(v)) return 0.0;
                if (v <= 0.0) return t <= 0.0 ? 0.0 : inf;
                return std::pow(t / v, 1.0 / (n - 1.0));
            };
            double anchor = std::max(1.0, 2.0 * A.density_inverse(1e-300));
            if (!std::isfinite(anchor)) anchor = 1.0;
            if (integrate_to_inf(tail_kernel, anchor, 1e-8, 64).converged)
                return NormSpec::lebesgue(inf, L);
            return NormSpec::orlicz_lorentz(hat_A(A, n).A_hat, nn, L);
        }
        default:
            throw unsupported_space("optimal_target_spec: no closed-form target for " +
                                    X.describe());
    }
}

/// || s^{1/n} f**(s) ||_{X'}: the associate norm of the optimal target,
/// evaluated on a refined geometric grid.
inline double x1_associate_norm(const NormSpec& Xprime, const DecreasingProfile& f, int n) {
    if (n < 2) throw invalid_input("x1_associate_norm: n >= 2 required");
    if (f.sup_value() == 0.0) return 0.0;
    const double Lf = f.total_length();
    const double hi = std::isfinite(Xprime.length()) ? Xprime.length() : Lf * 1e8;
    const double lo = 1e-12 * std::min(Lf, hi);
    const auto h = [&](double s) { return std::pow(s, 1.0 / n) * f.integral_up_to(s) / s; };
    return embedding_detail::norm_of_function(Xprime, h, lo, hi);
}

/// Finiteness of || r^{-1/n'} ||_{X'(0,L)}: the sharp criterion for an
/// embedding into L^inf (equivalently X -> L^{n,1}).
inline bool linf_embedding_check(const NormSpec& X, int n, double L) {
    if (!(L > 0.0) || !std::isfinite(L)) throw invalid_input("linf_embedding_check: finite L > 0");
    const auto assoc = associate(X);
    const double npc = n / (n - 1.0);  // n'
    const double ex = 1.0 / npc;       // r^{-1/n'} = r^{-ex} with ex = 1/n' = 1 - 1/n
    switch (assoc.spec.family()) {
        case norm_family::lebesgue: {
            const double pp = assoc.spec.p();
            if (std::isinf(pp)) return false;  // sup of r^{-1/n'} is infinite
            return pp / npc < 1.0;
        }
        case norm_family::lorentz: {
            const double pp = assoc.spec.p(), qq = assoc.spec.q();
            if (1.0 / pp > 1.0 / npc) return true;
            if (1.0 / pp == 1.0 / npc) return std::isinf(qq);
            return false;
        }
        default: {
            // Numeric route: the truncated norm must stabilize as the lower
            // cutoff shrinks; steady growth signals divergence.
            double prev = -1.0;
            double lo = 1e-8 * L;
            for (int k = 0; k < 5; ++k) {
                const double v = embedding_detail::norm_of_function(
                    assoc.spec, [ex](double r) { return std::pow(r, -ex); }, lo, L, 1e-5);
                if (std::isinf(v)) return false;
                if (prev >= 0.0 && v <= prev * (1.0 + 1e-3)) return true;
                prev = v;
                lo *= 1e-4;
            }
            return false;
        }
    }
}

struct moduli_result {
    double theta = inf;  // norm of r^{-1/n'} chi_(0,s^n)
    double rho = inf;    // s * norm of r^{-1} chi_(s^n, R)
    double sigma = inf;
    bool linf_ok = false;
};

/// Continuity moduli built from the associate norm of the two kernels. R
/// defaults to 2 d^n; distinct admissible R give equivalent moduli near 0.
inline moduli_result moduli(const NormSpec& X, int n, double domain_diameter, double s,
                            double R = 0.0) {
    if (!(s > 0.0)) throw domain_error("moduli: s > 0 required");
    const double d = domain_diameter;
    if (!(d > 0.0)) throw invalid_input("moduli: positive diameter required");
    if (R <= 0.0) R = 2.0 * std::pow(d, n);
    if (R <= std::pow(d, n)) throw invalid_input("moduli: R must exceed diam^n");
    s = std::min(s, d);  // continued by the value at the diameter beyond it

    moduli_result res;
    const double Lx = std::isfinite(X.length()) ? X.length() : R;
    res.linf_ok = linf_embedding_check(X, n, Lx);
    if (!res.linf_ok) {
        // theta is infinite for every s; report and bail
        return res;
    }
    const auto assoc = associate(X);
    // associate spec opened up to (0, inf): the kernels live beyond |Omega|
    NormSpec assoc_inf = assoc.spec;
    if (std::isfinite(assoc_inf.length())) {
        switch (assoc_inf.family()) {
            case norm_family::lebesgue:
                assoc_inf = NormSpec::lebesgue(assoc_inf.p());
                break;
            case norm_family::lorentz:
                assoc_inf = NormSpec::lorentz(assoc_inf.p(), assoc_inf.q());
                break;
            case norm_family::orlicz:
                assoc_inf = NormSpec::orlicz(assoc_inf.young());
                break;
            default:
                throw unsupported_space("moduli: associate family not extendable");
        }
    }
    const double ex = 1.0 - 1.0 / n;  // 1/n'
    const double m = std::pow(s, n);
    res.theta = embedding_detail::norm_of_function(
        assoc_inf, [ex](double r) { return std::pow(r, -ex); }, m * 1e-12, m);
    // rearrangement of r^{-1} chi_(s^n, R) is (r + s^n)^{-1} on (0, R - s^n)
    res.rho =
        s * embedding_detail::norm_of_function(
                assoc_inf, [m](double r) { return 1.0 / (r + m); }, (R - m) * 1e-12, R - m);
    res.sigma = res.theta + res.rho;
    return res;
}

struct continuity_verdict {
    std::vector<std::pair<double, double>> sigma_table;  // (s, sigma_X(s))
    bool uniform = false;
};

/// sigma_X on the dyadic grid s = 2^{-k}, k = 1..40, and the vanishing-limit
/// verdict behind embeddings into uniformly continuous functions.
inline continuity_verdict uniform_continuity_check(const NormSpec& X, int n,
                                                   double domain_diameter, int kmax = 40) {
    continuity_verdict v;
    for (int k = 1; k <= kmax; ++k) {
        const double s = std::pow(2.0, -k);
        const auto m = moduli(X, n, domain_diameter, s);
        if (!m.linf_ok) {
            v.uniform = false;
            v.sigma_table.emplace_back(s, inf);
            return v;
        }
        v.sigma_table.emplace_back(s, m.sigma);
    }
    const double first = v.sigma_table.front().second;
    const double last = v.sigma_table.back().second;
    v.uniform = last <= 0.7 * first;
    return v;
}

/// Optimal whole-space target norm: local optimal part on (0,1) plus the
/// norm of X itself.
inline double rn_target_norm(const NormSpec& X, const DecreasingProfile& f, int n) {
    if (f.sup_value() == 0.0) return 0.0;
    // localized part: the (0,1) optimal target applied to f* truncated at 1
    const auto local_spec = optimal_target_spec(X, n, 1.0);
    DecreasingProfile local = f;
    if (f.total_length() > 1.0) {
        std::vector<double> bp, val;
        for (std::size_t i = 0; i < f.steps(); ++i) {
            if (f.left_endpoint(i) >= 1.0) break;
            bp.push_back(std::min(f.breakpoints()[i], 1.0));
            val.push_back(f.step_values()[i]);
        }
        local = DecreasingProfile(bp, val);
    }
    NormSpec Xinf = X;
    if (std::isfinite(X.length())) {
        if (X.family() == norm_family::lebesgue)
            Xinf = NormSpec::lebesgue(X.p());
        else if (X.family() == norm_family::lorentz)
            Xinf = NormSpec::lorentz(X.p(), X.q());
        else if (X.family() == norm_family::orlicz)
            Xinf = NormSpec::orlicz(X.young());
    }
    return norm(local_spec, local) + norm(Xinf, f);
}

/// || (1+r)^{-1/n'} ||_{X'(0,inf)} < inf: the indispensable condition for a
/// whole-space zero-trace embedding into any rearrangement-invariant target.
inline bool rn_zero_space_admissible(const NormSpec& X, int n) {
    const auto assoc = associate(X);
    const double npc = n / (n - 1.0);
    switch (assoc.spec.family()) {
        case norm_family::lebesgue: {
            const double pp = assoc.spec.p();
            if (std::isinf(pp)) return true;  // bounded kernel, sup = 1
            return pp / npc > 1.0;
        }
        case norm_family::lorentz: {
            const double pp = assoc.spec.p(), qq = assoc.spec.q();
            if (1.0 / pp < 1.0 / npc) return true;
            if (1.0 / pp == 1.0 / npc) return std::isinf(qq);  // else log divergence at infinity
            return false;
        }
        default: {
            const double ex = 1.0 / npc;
            double prev = -1.0;
            double hi = 1e8;
            for (int k = 0; k < 5; ++k) {
                const double v = embedding_detail::norm_of_function(
                    assoc.spec, [ex](double r) { return std::pow(1.0 + r, -ex); }, 1e-6, hi, 1e-5);
                if (std::isinf(v)) return false;
                if (prev >= 0.0 && v <= prev * (1.0 + 1e-3)) return true;
                prev = v;
                hi *= 1e4;
            }
            return false;
        }
    }
}

}  // namespace risob
