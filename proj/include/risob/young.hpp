#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "risob/common.hpp"
#include "risob/quadrature.hpp"

namespace risob {

namespace young_detail {

struct Base {
    virtual ~Base() = default;
    virtual double value(double t) const = 0;            // A(t) = ∫_0^t a
    virtual double density(double t) const = 0;          // a(t), nondecreasing, left-continuous
    virtual double density_inverse(double y) const = 0;  // inf{t : a(t) >= y}
    virtual std::shared_ptr<const Base> conjugate_impl(
        const std::shared_ptr<const Base>& self) const = 0;
    virtual std::string describe() const = 0;
    // log A(t); overridden where A overflows double range.
    virtual double log_value(double t) const { return std::log(value(t)); }
};

using BasePtr = std::shared_ptr<const Base>;

// A(t) = c * t^p, p >= 1, c > 0.
struct PowerImpl final : Base {
    double c, p;
    PowerImpl(double c_, double p_) : c(c_), p(p_) {
        if (!(c > 0.0) || !(p >= 1.0)) throw invalid_input("power Young function needs c>0, p>=1");
    }
    double value(double t) const override { return t <= 0.0 ? 0.0 : c * std::pow(t, p); }
    double density(double t) const override {
        if (t <= 0.0) return 0.0;
        return p == 1.0 ? c : c * p * std::pow(t, p - 1.0);
    }
    double density_inverse(double y) const override {
        if (y <= 0.0) return 0.0;
        if (p == 1.0) return y <= c ? 0.0 : inf;
        return std::pow(y / (c * p), 1.0 / (p - 1.0));
    }
    BasePtr conjugate_impl(const BasePtr&) const override;
    std::string describe() const override {
        return (c == 1.0 ? "" : std::to_string(c) + "*") + "t^" + std::to_string(p);
    }
    double log_value(double t) const override { return std::log(c) + p * std::log(t); }
};

// Step density table: a(t) = a_i on (t_{i-1}, t_i], constant beyond the last
// breakpoint, and +inf above `inf_above` when that is finite. Covers CSV
// tables and the L^inf-type indicator (empty table, finite inf_above).
struct TableImpl final : Base {
    std::vector<double> t;  // strictly increasing, positive
    std::vector<double> a;  // nondecreasing, nonnegative
    double inf_above;

    TableImpl(std::vector<double> t_, std::vector<double> a_, double inf_above_ = inf)
        : t(std::move(t_)), a(std::move(a_)), inf_above(inf_above_) {
        if (t.size() != a.size()) throw invalid_input("young table: size mismatch");
        double prev_t = 0.0, prev_a = -1.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!(t[i] > prev_t)) throw invalid_input("young table: breakpoints not increasing");
            if (!(a[i] >= 0.0) || a[i] < prev_a)
                throw invalid_input("young table: density not nondecreasing");
            prev_t = t[i];
            prev_a = a[i];
        }
        if (!t.empty() && std::isfinite(inf_above) && t.back() > inf_above)
            throw invalid_input("young table: breakpoints beyond the infinity threshold");
        if (t.empty() && !std::isfinite(inf_above))
            throw invalid_input("young table: identically zero density");
        bool allzero = true;
        for (double v : a) allzero = allzero && v == 0.0;
        if (allzero && !std::isfinite(inf_above) && !t.empty())
            throw invalid_input("young table: identically zero density");
    }

    double density(double t_) const override {
        if (t_ <= 0.0) return 0.0;
        if (t_ > inf_above) return inf;
        if (t.empty()) return 0.0;
        const auto it = std::lower_bound(t.begin(), t.end(), t_);
        if (it == t.end()) return a.back();
        return a[static_cast<std::size_t>(it - t.begin())];
    }

    double value(double t_) const override {
        if (t_ <= 0.0) return 0.0;
        if (t_ > inf_above) return inf;
        double acc = 0.0, prev = 0.0;
        for (std::size_t i = 0; i < t.size() && prev < t_; ++i) {
            const double hi = std::min(t[i], t_);
            acc += a[i] * (hi - prev);
            prev = hi;
        }
        if (t_ > prev && !t.empty()) acc += a.back() * (t_ - prev);
        return acc;
    }

    double density_inverse(double y) const override {
        if (y <= 0.0) return 0.0;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (a[i] >= y) return i == 0 ? 0.0 : t[i - 1];
        if (std::isfinite(inf_above)) return inf_above;
        return inf;
    }

    BasePtr conjugate_impl(const BasePtr&) const override {
        // Exact: the conjugate density is the step function y -> inf{t: a(t) >= y}.
        std::vector<double> ct, ca;
        double prev_a = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (a[i] > prev_a) {
                ct.push_back(a[i]);
                ca.push_back(i == 0 ? 0.0 : t[i - 1]);
                prev_a = a[i];
            }
        }
        double c_inf_above = inf;
        if (std::isfinite(inf_above)) {
            // a jumps to +inf at inf_above: the conjugate density is inf_above
            // for all larger y, i.e. plain constant extension.
            if (ct.empty() || ca.back() < inf_above) {
                ct.push_back(prev_a > 0.0 ? prev_a * 2.0 : 1.0);
                ca.push_back(inf_above);
            }
        } else {
            // a is capped at a.back(): the conjugate is +inf above that cap.
            c_inf_above = a.empty() ? 0.0 : a.back();
        }
        return std::make_shared<TableImpl>(std::move(ct), std::move(ca), c_inf_above);
    }

    std::string describe() const override {
        if (t.empty() && std::isfinite(inf_above))
            return "indicator(threshold=" + std::to_string(inf_above) + ")";
        return "table[" + std::to_string(t.size()) + "]";
    }
};

inline BasePtr PowerImpl::conjugate_impl(const BasePtr&) const {
    if (p == 1.0) return std::make_shared<TableImpl>(std::vector<double>{}, std::vector<double>{}, c);
    const double pc = p / (p - 1.0);
    const double cc = std::pow(c * p, -1.0 / (p - 1.0)) / pc;
    return std::make_shared<PowerImpl>(cc, pc);
}

// Closed-form tail above t0 with a linear density ramp below: the canonical
// carrier for power-log / power-log-log / exp-power growth classes. Only the
// behaviour above t0 is meaningful; the ramp keeps the density monotone.
struct RampTailImpl final : Base {
    enum class Tag { power_log, power_log_log, exp_power };
    Tag tag;
    double p = 0.0, alpha = 0.0, beta = 0.0;
    double t0 = 1.0;
    double a0 = 0.0;   // tail density at t0
    double F0 = 0.0;   // tail antiderivative at t0

    static double tail_value_static(Tag tag, double p, double alpha, double beta, double t) {
        switch (tag) {
            case Tag::power_log:
                return std::pow(t, p) * std::pow(std::log(t), alpha);
            case Tag::power_log_log:
                return std::pow(t, p) * std::pow(std::log(t), alpha) *
                       std::pow(std::log(std::log(t)), beta);
            case Tag::exp_power:
                return std::exp(std::pow(t, beta));
        }
        return 0.0;
    }

    double tail_value(double t) const { return tail_value_static(tag, p, alpha, beta, t); }

    double tail_density(double t) const {
        const double lt = std::log(t);
        switch (tag) {
            case Tag::power_log:
                return std::pow(t, p - 1.0) * std::pow(lt, alpha - 1.0) * (p * lt + alpha);
            case Tag::power_log_log: {
                const double llt = std::log(lt);
                return std::pow(t, p - 1.0) * std::pow(lt, alpha - 1.0) * std::pow(llt, beta - 1.0) *
                       (p * lt * llt + alpha * llt + beta);
            }
            case Tag::exp_power:
                return beta * std::pow(t, beta - 1.0) * std::exp(std::pow(t, beta));
        }
        return 0.0;
    }

    RampTailImpl(Tag tag_, double p_, double alpha_, double beta_, double t0_hint)
        : tag(tag_), p(p_), alpha(alpha_), beta(beta_) {
        double lo = tag == Tag::power_log_log ? std::exp(1.5) : 1.5;
        t0 = std::max(t0_hint, lo);
        // Grow t0 until the closed-form density is positive and nondecreasing
        // on a log-spaced check grid.
        for (int attempt = 0; attempt < 60; ++attempt) {
            bool ok = tail_density(t0) > 0.0;
            double prev = tail_density(t0);
            for (int k = 1; ok && k <= 160; ++k) {
                const double tk = t0 * std::pow(10.0, 0.05 * k);
                const double ak = tail_density(tk);
                if (!(ak >= prev * (1.0 - 1e-12)) || !(ak > 0.0)) ok = false;
                prev = ak;
                if (ak > 1e290) break;
            }
            if (ok) break;
            t0 = t0 * t0 < 3.0 ? 3.0 : t0 * t0;
            if (tag == Tag::power_log_log) t0 = std::max(t0, std::exp(2.5));
        }
        a0 = tail_density(t0);
        F0 = tail_value(t0);
    }

    double density(double t) const override {
        if (t <= 0.0) return 0.0;
        return t <= t0 ? a0 * t / t0 : tail_density(t);
    }
    double value(double t) const override {
        if (t <= 0.0) return 0.0;
        if (t <= t0) return 0.5 * a0 * t * t / t0;
        const double tail = tail_value(t);
        if (!std::isfinite(tail)) return inf;
        // exp_power antiderivative of the density is the tail itself; the
        // power-log tails integrate exactly to F since a = F'.
        return 0.5 * a0 * t0 + tail - F0;
    }
    double density_inverse(double y) const override {
        if (y <= 0.0) return 0.0;
        if (y <= a0) return y * t0 / a0;
        return monotone_inverse([this](double t) { return density(t); }, y, t0, 2.0 * t0);
    }
    BasePtr conjugate_impl(const BasePtr& self) const override;
    std::string describe() const override {
        switch (tag) {
            case Tag::power_log:
                return "t^" + std::to_string(p) + " log^" + std::to_string(alpha);
            case Tag::power_log_log:
                return "t^" + std::to_string(p) + " log^" + std::to_string(alpha) + " loglog^" +
                       std::to_string(beta);
            case Tag::exp_power:
                return "exp(t^" + std::to_string(beta) + ")";
        }
        return "";
    }
    double log_value(double t) const override {
        if (t <= t0 || value(t) < 1e280) return std::log(value(t));
        switch (tag) {
            case Tag::power_log:
                return p * std::log(t) + alpha * std::log(std::log(t));
            case Tag::power_log_log:
                return p * std::log(t) + alpha * std::log(std::log(t)) +
                       beta * std::log(std::log(std::log(t)));
            case Tag::exp_power:
                return std::pow(t, beta);
        }
        return inf;
    }
};

// Conjugate backed by the generalized inverse of the parent density, with a
// lazily built cumulative table so value() stays cheap and accurate.
struct DerivedConjugateImpl final : Base {
    BasePtr parent;

    explicit DerivedConjugateImpl(BasePtr parent_) : parent(std::move(parent_)) {}

    double density(double t) const override { return t <= 0.0 ? 0.0 : parent->density_inverse(t); }

    double value(double t) const override {
        if (t <= 0.0) return 0.0;
        ensure_cache();
        if (t <= grid_.front()) {
            return integrate([this](double y) { return density(y); }, 0.0, t, {1e-10, 1e-300});
        }
        if (t >= grid_.back()) {
            // Continue with the local power model of the density at the grid end.
            const double hi = grid_.back();
            const double d1 = density(hi), d0 = density(hi * 0.5);
            if (!(d1 > 0.0)) return cum_.back();
            const double q = d0 > 0.0 ? std::log(d1 / d0) / std::log(2.0) : 0.0;
            return cum_.back() + d1 * hi * (std::pow(t / hi, q + 1.0) - 1.0) / (q + 1.0);
        }
        const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
        return cum_[i] + integrate([this](double y) { return density(y); }, grid_[i], t,
                                   {1e-10, 1e-300});
    }

    double density_inverse(double y) const override {
        if (y <= 0.0) return 0.0;
        return monotone_inverse([this](double t) { return density(t); }, y, 1.0, 2.0);
    }

    BasePtr conjugate_impl(const BasePtr&) const override { return parent; }

    std::string describe() const override { return "conjugate(" + parent->describe() + ")"; }

  private:
    mutable std::once_flag built_;
    mutable std::vector<double> grid_, cum_;

    void ensure_cache() const {
        std::call_once(built_, [this] {
            const double lo = 1e-9, hi = 1e18;
            const int per_decade = 48;
            const int count = static_cast<int>(per_decade * std::log10(hi / lo)) + 1;
            grid_.resize(static_cast<std::size_t>(count));
            for (int i = 0; i < count; ++i)
                grid_[static_cast<std::size_t>(i)] =
                    lo * std::pow(10.0, static_cast<double>(i) / per_decade);
            cum_.resize(grid_.size());
            double acc = integrate([this](double y) { return density(y); }, 0.0, grid_.front(),
                                   {1e-10, 1e-300});
            cum_[0] = acc;
            for (std::size_t i = 1; i < grid_.size(); ++i) {
                acc += integrate([this](double y) { return density(y); }, grid_[i - 1], grid_[i],
                                 {1e-10, 1e-300});
                cum_[i] = acc;
            }
        });
    }
};

// Near-zero replacement of the density: `constant` floors a(t) at a positive
// level (keeps ∫_0 (t/A)^{1/(n-1)} finite for every n >= 2), `linear` swaps
// the density on (0, t0] for a ramp (used on conjugates whose density jumps
// at 0). Both leave the function unchanged up to equivalence near infinity.
struct RegularizedImpl final : Base {
    enum class Mode { constant, linear };
    BasePtr parent;
    Mode mode;
    double t0;     // ramp width (linear mode only)
    double level;  // floor value / ramp top
    double z;      // constant mode: first t with parent density >= level

    RegularizedImpl(BasePtr parent_, Mode mode_, double t0_, double level_hint)
        : parent(std::move(parent_)), mode(mode_), t0(t0_) {
        level = mode == Mode::constant ? parent->density(t0) : parent->density(t0);
        if (!(level > 0.0) || !std::isfinite(level)) level = level_hint;
        if (!(level > 0.0) || !std::isfinite(level)) level = 1.0;
        z = mode == Mode::constant ? parent->density_inverse(level) : 0.0;
        if (!std::isfinite(z)) z = t0;
    }

    double density(double t) const override {
        if (t <= 0.0) return 0.0;
        if (mode == Mode::constant) return std::max(parent->density(t), level);
        return t <= t0 ? level * t / t0 : parent->density(t);
    }
    double value(double t) const override {
        if (t <= 0.0) return 0.0;
        if (mode == Mode::constant) {
            if (t <= z) return level * t;
            const double pv = parent->value(t);
            if (!std::isfinite(pv)) return inf;
            return level * z + pv - parent->value(z);
        }
        if (t <= t0) return 0.5 * level * t * t / t0;
        const double pv = parent->value(t);
        if (!std::isfinite(pv)) return inf;
        return 0.5 * level * t0 + pv - parent->value(t0);
    }
    double density_inverse(double y) const override {
        if (y <= 0.0) return 0.0;
        if (mode == Mode::constant)
            return y <= level ? 0.0 : parent->density_inverse(y);
        if (y <= level) return y * t0 / level;
        return parent->density_inverse(y);
    }
    BasePtr conjugate_impl(const BasePtr& self) const override {
        return std::make_shared<DerivedConjugateImpl>(self);
    }
    std::string describe() const override {
        return (mode == Mode::constant ? "flatten0(" : "ramp0(") + parent->describe() + ")";
    }
};

}  // namespace young_detail

/// Convex A(t) = ∫_0^t a with nondecreasing left-continuous density a.
/// Immutable value type; all evaluations are thread-safe.
class YoungFunction {
  public:
    YoungFunction() = default;

    static YoungFunction power(double p, double scale = 1.0) {
        return YoungFunction(std::make_shared<young_detail::PowerImpl>(scale, p));
    }
    /// ~ t^p (log t)^alpha above an automatically chosen cutoff.
    static YoungFunction power_log(double p, double alpha, double t0 = 0.0) {
        if (alpha == 0.0) return power(p);
        return YoungFunction(std::make_shared<young_detail::RampTailImpl>(
            young_detail::RampTailImpl::Tag::power_log, p, alpha, 0.0, t0));
    }
    static YoungFunction power_log_log(double p, double alpha, double beta, double t0 = 0.0) {
        if (beta == 0.0) return power_log(p, alpha, t0);
        return YoungFunction(std::make_shared<young_detail::RampTailImpl>(
            young_detail::RampTailImpl::Tag::power_log_log, p, alpha, beta, t0));
    }
    /// ~ exp(t^beta) above the cutoff.
    static YoungFunction exp_power(double beta) {
        if (!(beta > 0.0)) throw invalid_input("exp_power needs beta > 0");
        return YoungFunction(std::make_shared<young_detail::RampTailImpl>(
            young_detail::RampTailImpl::Tag::exp_power, 0.0, 0.0, beta, 1.0));
    }
    /// A = 0 on [0, threshold], +inf beyond: generates L^inf.
    static YoungFunction linf_indicator(double threshold = 1.0) {
        return YoungFunction(std::make_shared<young_detail::TableImpl>(
            std::vector<double>{}, std::vector<double>{}, threshold));
    }
    static YoungFunction from_density_table(std::vector<double> t, std::vector<double> a) {
        return YoungFunction(
            std::make_shared<young_detail::TableImpl>(std::move(t), std::move(a)));
    }
    /// Wrap an externally built implementation (library-internal).
    static YoungFunction adopt(young_detail::BasePtr impl) { return YoungFunction(std::move(impl)); }

    bool valid() const { return impl_ != nullptr; }

    double value(double t) const { return impl_->value(t); }
    double log_value(double t) const { return impl_->log_value(t); }
    double density(double t) const { return impl_->density(t); }
    double density_inverse(double y) const { return impl_->density_inverse(y); }

    YoungFunction conjugate() const { return YoungFunction(impl_->conjugate_impl(impl_)); }

    /// Density replaced by a positive constant on (0, t0]; equivalent near
    /// infinity to the original.
    YoungFunction flattened_near_zero(double t0 = 1.0, double level_hint = 1.0) const {
        return YoungFunction(std::make_shared<young_detail::RegularizedImpl>(
            impl_, young_detail::RegularizedImpl::Mode::constant, t0, level_hint));
    }
    /// Density replaced by a linear ramp on (0, t0].
    YoungFunction ramped_near_zero(double t0 = 1.0, double level_hint = 1.0) const {
        return YoungFunction(std::make_shared<young_detail::RegularizedImpl>(
            impl_, young_detail::RegularizedImpl::Mode::linear, t0, level_hint));
    }

    /// True when the density vanishes identically on an initial interval
    /// (the conjugate is then linear near zero).
    bool density_vanishes_near_zero(double probe = 1e-10) const { return density(probe) == 0.0; }

    /// Flags a density with a flat stretch spanning at least one decade.
    bool has_flat_density_decade(double lo = 1e-6, double hi = 1e6) const {
        double t = lo;
        while (t < hi) {
            const double d1 = density(t), d2 = density(10.0 * t);
            if (std::isfinite(d1) && d1 > 0.0 && d2 <= d1 * (1.0 + 1e-12)) return true;
            t *= 2.0;
        }
        return false;
    }

    std::string describe() const { return impl_ ? impl_->describe() : "<null>"; }

  private:
    explicit YoungFunction(young_detail::BasePtr impl) : impl_(std::move(impl)) {}
    young_detail::BasePtr impl_;
};

inline young_detail::BasePtr young_detail::RampTailImpl::conjugate_impl(
    const young_detail::BasePtr& self) const {
    return std::make_shared<DerivedConjugateImpl>(self);
}

/// Legendre transform sup_{tau}(tau*t - A(tau)), evaluated numerically; the
/// independent cross-check for conjugate().
inline double legendre_transform(const YoungFunction& A, double t, double tau_hi = 1e9) {
    // The objective is concave in tau; scan a log grid for a bracket, then
    // refine by golden section.
    double best = 0.0, best_tau = 0.0;
    for (double tau = 1e-9; tau <= tau_hi; tau *= 1.25) {
        const double av = A.value(tau);
        if (!std::isfinite(av)) break;
        const double obj = tau * t - av;
        if (obj > best) {
            best = obj;
            best_tau = tau;
        }
    }
    if (best_tau == 0.0) return best;
    const double lo = best_tau / 1.3, hi = best_tau * 1.3;
    const double tau_star = golden_min(
        [&](double tau) {
            const double av = A.value(tau);
            return std::isfinite(av) ? av - tau * t : inf;
        },
        lo, hi, 1e-12);
    return std::max(best, tau_star * t - A.value(tau_star));
}

}  // namespace risob
