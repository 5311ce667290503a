#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "risob/common.hpp"
#include "risob/profile.hpp"
#include "risob/quadrature.hpp"
#include "risob/young.hpp"

namespace risob {

/// Positive piecewise-constant weight on (0, L): value values[i] on
/// (breakpoints[i-1], breakpoints[i]], constant beyond the last breakpoint.
struct WeightTable {
    std::vector<double> breakpoints;
    std::vector<double> values;

    void validate() const {
        if (breakpoints.size() != values.size() || breakpoints.empty())
            throw invalid_input("WeightTable: size mismatch");
        double prev = 0.0;
        for (std::size_t i = 0; i < breakpoints.size(); ++i) {
            if (!(breakpoints[i] > prev)) throw invalid_input("WeightTable: breakpoints not increasing");
            if (!(values[i] > 0.0)) throw invalid_input("WeightTable: nonpositive weight");
            prev = breakpoints[i];
        }
    }

    double value(double s) const {
        const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), s);
        if (it == breakpoints.end()) return values.back();
        return values[static_cast<std::size_t>(it - breakpoints.begin())];
    }
};

enum class norm_family {
    lebesgue,        // L^p
    lorentz,         // L^{p,q}
    lorentz_zygmund, // L^{p,q;alpha} with weight log^alpha(eL/s)
    glz,             // L^{inf,p;-1/p,-1}: double-log weight
    orlicz,          // Luxemburg norm of a Young function
    orlicz_lorentz,  // || s^{-1/q} f* ||_{L^A}
    lambda_weighted, // || nu(s) f* ||_{L^A}
};

enum class lambda_weight_kind { table, min_power_one, max_power_one };

/// Tagged description of a rearrangement-invariant function norm on (0, L).
class NormSpec {
  public:
    static NormSpec lebesgue(double p, double L = inf) {
        if (!(p >= 1.0)) throw unsupported_space("Lebesgue exponent must satisfy p >= 1");
        NormSpec s;
        s.family_ = norm_family::lebesgue;
        s.p_ = p;
        s.q_ = p;
        s.L_ = check_len(L);
        return s;
    }

    static NormSpec lorentz(double p, double q, double L = inf) {
        const bool ok = (p > 1.0 && std::isfinite(p) && q >= 1.0) ||
                        (p == 1.0 && q == 1.0) || (std::isinf(p) && std::isinf(q));
        if (!ok) throw unsupported_space("Lorentz(p,q) needs 1<p<inf, 1<=q<=inf or p=q in {1,inf}");
        NormSpec s;
        s.family_ = norm_family::lorentz;
        s.p_ = p;
        s.q_ = q;
        s.L_ = check_len(L);
        return s;
    }

    static NormSpec lorentz_zygmund(double p, double q, double alpha, double L) {
        if (!std::isfinite(L) || !(L > 0.0))
            throw unsupported_space("Lorentz-Zygmund needs a finite interval");
        bool ok = false;
        if (p > 1.0 && std::isfinite(p) && q >= 1.0) ok = true;
        if (std::isinf(p) && std::isfinite(q) && q >= 1.0 && alpha < -1.0 / q) ok = true;
        if (std::isinf(p) && std::isinf(q) && alpha <= 0.0) ok = true;
        if (p == 1.0 && q == 1.0 && alpha >= 0.0) ok = true;
        if (!ok) throw unsupported_space("Lorentz-Zygmund parameters outside the norm range");
        NormSpec s;
        s.family_ = norm_family::lorentz_zygmund;
        s.p_ = p;
        s.q_ = q;
        s.alpha_ = alpha;
        s.L_ = L;
        return s;
    }

    /// The four-parameter space L^{inf,p;-1/p,-1}, p in (1, inf).
    static NormSpec glz(double p, double L) {
        if (!(p > 1.0) || !std::isfinite(p)) throw unsupported_space("GLZ needs p in (1, inf)");
        if (!std::isfinite(L) || !(L > 0.0)) throw unsupported_space("GLZ needs a finite interval");
        NormSpec s;
        s.family_ = norm_family::glz;
        s.p_ = p;
        s.q_ = p;
        s.L_ = L;
        return s;
    }

    static NormSpec orlicz(YoungFunction A, double L = inf) {
        NormSpec s;
        s.family_ = norm_family::orlicz;
        s.young_ = std::move(A);
        s.L_ = check_len(L);
        return s;
    }

    static NormSpec orlicz_lorentz(YoungFunction A, double q, double L = inf) {
        if (!(q > 1.0)) throw unsupported_space("Orlicz-Lorentz needs q > 1");
        const auto tail = integrate_to_inf(
            [&A, q](double t) {
                const double v = A.value(t);
                return std::isfinite(v) ? v * std::pow(t, -1.0 - q) : inf;
            },
            1.0, 1e-8, 64);
        if (!tail.converged)
            throw unsupported_space("Orlicz-Lorentz: ∫^inf A(t)/t^{1+q} dt diverges");
        NormSpec s;
        s.family_ = norm_family::orlicz_lorentz;
        s.young_ = std::move(A);
        s.q_ = q;
        s.L_ = check_len(L);
        return s;
    }

    static NormSpec lambda_weighted(YoungFunction A, WeightTable nu, double L) {
        nu.validate();
        NormSpec s;
        s.family_ = norm_family::lambda_weighted;
        s.young_ = std::move(A);
        s.weight_ = std::move(nu);
        s.weight_kind_ = lambda_weight_kind::table;
        s.L_ = check_len(L);
        return s;
    }

    /// Lambda norm with nu(s) = min(s^{-1/n}, 1) (whole-space zero-trace target).
    static NormSpec lambda_min_power(YoungFunction A, int n, double L = inf) {
        NormSpec s;
        s.family_ = norm_family::lambda_weighted;
        s.young_ = std::move(A);
        s.weight_kind_ = lambda_weight_kind::min_power_one;
        s.p_ = static_cast<double>(n);
        s.L_ = check_len(L);
        return s;
    }

    /// Lambda norm with varpi(s) = max(s^{-1/n}, 1) (whole-space full-norm target).
    static NormSpec lambda_max_power(YoungFunction A, int n, double L = inf) {
        NormSpec s;
        s.family_ = norm_family::lambda_weighted;
        s.young_ = std::move(A);
        s.weight_kind_ = lambda_weight_kind::max_power_one;
        s.p_ = static_cast<double>(n);
        s.L_ = check_len(L);
        return s;
    }

    norm_family family() const { return family_; }
    double p() const { return p_; }
    double q() const { return q_; }
    double alpha() const { return alpha_; }
    double length() const { return L_; }
    const YoungFunction& young() const { return young_; }
    const WeightTable& weight() const { return weight_; }
    lambda_weight_kind weight_kind() const { return weight_kind_; }

    double weight_value(double s) const {
        switch (weight_kind_) {
            case lambda_weight_kind::table:
                return weight_.value(s);
            case lambda_weight_kind::min_power_one:
                return std::min(std::pow(s, -1.0 / p_), 1.0);
            case lambda_weight_kind::max_power_one:
                return std::max(std::pow(s, -1.0 / p_), 1.0);
        }
        return 1.0;
    }

    std::string describe() const {
        auto num = [](double x) {
            if (std::isinf(x)) return std::string("inf");
            return std::to_string(x);
        };
        switch (family_) {
            case norm_family::lebesgue:
                return "L^" + num(p_);
            case norm_family::lorentz:
                return "L^(" + num(p_) + "," + num(q_) + ")";
            case norm_family::lorentz_zygmund:
                return "L^(" + num(p_) + "," + num(q_) + ";" + num(alpha_) + ")";
            case norm_family::glz:
                return "L^(inf," + num(p_) + ";-1/p,-1)";
            case norm_family::orlicz:
                return "Orlicz[" + young_.describe() + "]";
            case norm_family::orlicz_lorentz:
                return "OrliczLorentz[" + young_.describe() + ",q=" + num(q_) + "]";
            case norm_family::lambda_weighted:
                return "Lambda[" + young_.describe() + "]";
        }
        return "";
    }

  private:
    static double check_len(double L) {
        if (!(L > 0.0)) throw unsupported_space("interval length must be positive");
        return L;
    }

    norm_family family_ = norm_family::lebesgue;
    double p_ = 1.0, q_ = 1.0, alpha_ = 0.0;
    double L_ = inf;
    YoungFunction young_;
    WeightTable weight_;
    lambda_weight_kind weight_kind_ = lambda_weight_kind::table;
};

namespace norm_detail {

// weight w(s) multiplying f*(s) inside the outer L^q norm, for the
// Lorentz-type families
inline double lq_weight(const NormSpec& spec, double s) {
    switch (spec.family()) {
        case norm_family::lebesgue:
            return 1.0;
        case norm_family::lorentz:
            return std::pow(s, 1.0 / spec.p() - 1.0 / spec.q());
        case norm_family::lorentz_zygmund: {
            const double e = std::isinf(spec.p()) ? 0.0 : 1.0 / spec.p();
            const double eq = std::isinf(spec.q()) ? 0.0 : 1.0 / spec.q();
            return std::pow(s, e - eq) *
                   std::pow(std::log(std::exp(1.0) * spec.length() / s), spec.alpha());
        }
        case norm_family::glz: {
            const double l = std::log(std::exp(1.0) * spec.length() / s);
            return std::pow(s, -1.0 / spec.p()) * std::pow(l, -1.0 / spec.p()) /
                   std::log1p(l);
        }
        default:
            throw unsupported_space("lq_weight: not a Lorentz-type family");
    }
}

inline double lq_of_weighted_profile(const NormSpec& spec, const DecreasingProfile& f) {
    const double q = spec.q();
    const double Lf = std::min(f.total_length(), spec.length());
    if (std::isinf(q)) {
        const bool monotone_weight =
            spec.family() == norm_family::lebesgue || spec.family() == norm_family::lorentz;
        double best = 0.0;
        double prev = 0.0;
        for (std::size_t i = 0; i < f.steps(); ++i) {
            const double lo = std::max(prev, 1e-300);
            const double hi = std::min(f.breakpoints()[i], Lf);
            prev = f.breakpoints()[i];
            if (!(hi > lo)) continue;
            const double v = f.step_values()[i];
            if (v == 0.0) continue;
            const auto neg = [&](double s) { return -lq_weight(spec, s) * v; };
            best = std::max({best, -neg(lo), -neg(hi)});
            if (!monotone_weight) {
                const double s_star = golden_min(neg, lo, hi, 1e-7);
                best = std::max(best, -neg(s_star));
            }
        }
        return best;
    }
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < f.steps() && prev < Lf; ++i) {
        const double lo = prev;
        const double hi = std::min(f.breakpoints()[i], Lf);
        prev = f.breakpoints()[i];
        if (!(hi > lo)) continue;
        const double v = f.step_values()[i];
        if (v == 0.0) continue;
        const auto g = [&](double s) { return std::pow(lq_weight(spec, s) * v, q); };
        if (spec.family() == norm_family::lebesgue) {
            acc += std::pow(v, q) * (hi - lo);
        } else if (spec.family() == norm_family::lorentz) {
            const double e = q / spec.p();  // ∫ s^{e-1}
            acc += std::pow(v, q) * (std::pow(hi, e) - std::pow(lo, e)) / e;
        } else if (lo == 0.0) {
            const auto r = integrate_to_zero(g, hi, 1e-9);
            if (!r.converged) return inf;
            acc += r.value;
        } else {
            acc += integrate(g, lo, hi);
        }
        if (!std::isfinite(acc)) return inf;
    }
    return std::pow(acc, 1.0 / q);
}

// modular ∫ A(w(s) f*(s) / lambda) ds for the Orlicz-type families; exact sum
// for plain Orlicz, per-step quadrature when a weight is present
inline double orlicz_modular(const NormSpec& spec, const DecreasingProfile& f, double lambda) {
    const auto& A = spec.young();
    const double Lf = std::min(f.total_length(), spec.length());
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < f.steps() && prev < Lf; ++i) {
        const double lo = prev;
        const double hi = std::min(f.breakpoints()[i], Lf);
        prev = f.breakpoints()[i];
        if (!(hi > lo)) continue;
        const double v = f.step_values()[i];
        if (v == 0.0) continue;
        if (spec.family() == norm_family::orlicz) {
            acc += A.value(v / lambda) * (hi - lo);
        } else {
            const auto g = [&](double s) {
                const double w = spec.family() == norm_family::orlicz_lorentz
                                     ? std::pow(s, -1.0 / spec.q())
                                     : spec.weight_value(s);
                return A.value(w * v / lambda);
            };
            if (lo == 0.0) {
                const auto r = integrate_to_zero(g, hi, 1e-9);
                if (!r.converged) return inf;
                acc += r.value;
            } else {
                acc += integrate(g, lo, hi);
            }
        }
        if (!std::isfinite(acc)) return inf;
    }
    return acc;
}

inline double luxemburg(const NormSpec& spec, const DecreasingProfile& f) {
    if (f.sup_value() == 0.0) return 0.0;
    double lambda = std::max(f.sup_value(), 1e-12);
    double m = orlicz_modular(spec, f, lambda);
    int guard = 0;
    while (m > 1.0) {
        lambda *= 2.0;
        m = orlicz_modular(spec, f, lambda);
        if (++guard > 140) return inf;  // modular infinite for every lambda
    }
    double hi = lambda, lo = lambda;
    guard = 0;
    while (m <= 1.0) {
        hi = lo;
        lo *= 0.5;
        m = orlicz_modular(spec, f, lo);
        if (++guard > 140) return 0.0;  // modular vanishes for every lambda
    }
    for (int it = 0; it < 60 && (hi - lo) > 1e-10 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (orlicz_modular(spec, f, mid) <= 1.0 ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace norm_detail

/// Rearrangement-invariant norm of a decreasing step profile.
inline double norm(const NormSpec& spec, const DecreasingProfile& f) {
    if (f.total_length() > spec.length() * (1.0 + 1e-12))
        throw invalid_input("norm: profile longer than the norm interval");
    switch (spec.family()) {
        case norm_family::lebesgue:
            if (std::isinf(spec.p())) return f.sup_value();
            [[fallthrough]];
        case norm_family::lorentz:
            if (std::isinf(spec.p()) && std::isinf(spec.q())) return f.sup_value();
            [[fallthrough]];
        case norm_family::lorentz_zygmund:
        case norm_family::glz:
            return norm_detail::lq_of_weighted_profile(spec, f);
        case norm_family::orlicz:
        case norm_family::orlicz_lorentz:
        case norm_family::lambda_weighted:
            return norm_detail::luxemburg(spec, f);
    }
    throw unsupported_space("norm: unknown family");
}

/// phi_X(s) = norm of the indicator of a set of measure s.
inline double fundamental_function(const NormSpec& spec, double s) {
    if (!(s > 0.0)) throw domain_error("fundamental_function: s > 0 required");
    if (s > spec.length()) throw domain_error("fundamental_function: s exceeds the interval");
    return norm(spec, DecreasingProfile::indicator(1.0, s));
}

struct associate_info {
    NormSpec spec;
    bool exact = true;          // Hölder with constant 1
    double upper_factor = 1.0;  // true associate norm <= upper_factor * this norm
};

/// Closed-form associate family where known (Lebesgue, Lorentz, Orlicz).
inline associate_info associate(const NormSpec& spec) {
    switch (spec.family()) {
        case norm_family::lebesgue:
            return {NormSpec::lebesgue(holder_conjugate(spec.p()), spec.length()), true, 1.0};
        case norm_family::lorentz: {
            const double p = spec.p(), q = spec.q();
            if (p == 1.0 && q == 1.0)
                return {NormSpec::lebesgue(inf, spec.length()), true, 1.0};
            if (std::isinf(p)) return {NormSpec::lebesgue(1.0, spec.length()), true, 1.0};
            return {NormSpec::lorentz(holder_conjugate(p), holder_conjugate(q), spec.length()),
                    false, 4.0};
        }
        case norm_family::orlicz:
            // Luxemburg norm of the conjugate: within a factor 2 of the
            // true associate norm.
            return {NormSpec::orlicz(spec.young().conjugate(), spec.length()), false, 2.0};
        default:
            throw unsupported_space("associate: no closed-form associate family implemented for " +
                                    spec.describe());
    }
}

inline bool associate_known(const NormSpec& spec) {
    switch (spec.family()) {
        case norm_family::lebesgue:
        case norm_family::lorentz:
        case norm_family::orlicz:
            return true;
        default:
            return false;
    }
}

/// Monte-Carlo lower bound for the associate norm: max of ∫ f g over random
/// decreasing profiles g normalized in the known associate family.
inline double associate_pairing_lb(const NormSpec& spec, const DecreasingProfile& f, int trials,
                                   std::uint64_t seed) {
    if (trials < 1) throw invalid_input("associate_pairing_lb: trials >= 1 required");
    if (f.sup_value() == 0.0) return 0.0;
    const auto assoc = associate(spec);
    std::mt19937_64 rng(seed);
    const double Lf = f.total_length();
    std::uniform_int_distribution<int> kd(1, 8);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int k = kd(rng);
        std::vector<double> bp(static_cast<std::size_t>(k)), val(static_cast<std::size_t>(k));
        for (auto& b : bp) b = Lf * std::pow(ud(rng), 2.0);
        std::sort(bp.begin(), bp.end());
        bp.back() = std::max(bp.back(), 1e-9 * Lf);
        for (std::size_t i = 0; i + 1 < bp.size(); ++i)
            if (bp[i + 1] <= bp[i]) bp[i + 1] = bp[i] * (1.0 + 1e-9) + 1e-300;
        for (auto& v : val) v = ud(rng);
        std::sort(val.rbegin(), val.rend());
        if (val.front() == 0.0) continue;
        DecreasingProfile g(bp, val);
        const double gn = norm(spec, g);
        if (!(gn > 0.0) || !std::isfinite(gn)) continue;
        best = std::max(best, profile_pairing(f, g) / gn);
    }
    return best;
}

}  // namespace risob
