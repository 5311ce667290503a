#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "risob/common.hpp"
#include "risob/quadrature.hpp"
#include "risob/young.hpp"

namespace risob {

namespace sobolev_detail {

// Local model g(s) ~ C s^e (log s)^f fitted at three geometric samples; used
// to continue integrals analytically beyond the tabulated range.
struct powerlog_fit {
    double C = 0.0, e = 0.0, f = 0.0;
    bool zero = true;

    static powerlog_fit at(const std::function<double(double)>& g, double anchor) {
        powerlog_fit fit;
        const double s1 = anchor / 16.0, s2 = anchor / 4.0, s3 = anchor;
        const double g1 = g(s1), g2 = g(s2), g3 = g(s3);
        if (!(g1 > 0.0) || !(g2 > 0.0) || !(g3 > 0.0)) return fit;
        const double l1 = std::log(s1), l2 = std::log(s2), l3 = std::log(s3);
        const double m1 = std::log(l1), m2 = std::log(l2), m3 = std::log(l3);
        // Solve [dl, dm; dl', dm'] (e, f)^T = (dg, dg')^T.
        const double a11 = l2 - l1, a12 = m2 - m1, b1 = std::log(g2) - std::log(g1);
        const double a21 = l3 - l2, a22 = m3 - m2, b2 = std::log(g3) - std::log(g2);
        const double det = a11 * a22 - a12 * a21;
        if (std::fabs(det) < 1e-14) {
            fit.e = b2 / a21;
            fit.f = 0.0;
        } else {
            fit.e = (b1 * a22 - b2 * a12) / det;
            fit.f = (a11 * b2 - a21 * b1) / det;
        }
        fit.C = g3 / (std::pow(s3, fit.e) * std::pow(l3, fit.f));
        fit.zero = !(fit.C > 0.0) || !std::isfinite(fit.C);
        return fit;
    }

    // Fitted exponents carry O(1/log^2) contamination from lower-order terms,
    // so "e == -1" is detected with a loose tolerance.
    static constexpr double eps_e = 3e-2;

    // Antiderivative of C e^{(e+1)x} x^f in x = log s (leading order when
    // e != -1; exact when e == -1).
    double anti(double x) const {
        if (zero) return 0.0;
        const double ep1 = e + 1.0;
        if (std::fabs(ep1) < eps_e) {
            if (std::fabs(f + 1.0) < 1e-9) return C * std::log(x);
            return C * std::pow(x, f + 1.0) / (f + 1.0);
        }
        return C * std::exp(ep1 * x) * std::pow(x, f) / ep1;
    }

    bool integrable_at_inf() const {
        if (zero) return true;
        if (e < -1.0 - eps_e) return true;
        return std::fabs(e + 1.0) <= eps_e && f < -1.0 - 1e-6;
    }

    double tail_from(double x) const {
        if (zero) return 0.0;
        if (!integrable_at_inf()) return inf;
        return -anti(x);
    }
};

// Cumulative ∫_0^s g on a log grid, with a head integral below the grid and
// power-log continuation above it. g must be nonnegative. With
// include_head = false the reference point is the grid start instead of 0,
// so tail differences stay finite even when ∫_0 g diverges.
class LogCumulative {
  public:
    LogCumulative() = default;

    LogCumulative(std::function<double(double)> g, double lo, double hi, int per_decade = 48,
                  bool include_head = true)
        : g_(std::move(g)), lo_(lo), hi_(hi) {
        const int count = std::max(2, static_cast<int>(per_decade * std::log10(hi / lo)) + 1);
        grid_.resize(static_cast<std::size_t>(count));
        const double step = std::log(hi / lo) / (count - 1);
        for (int i = 0; i < count; ++i) grid_[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
        if (include_head) {
            const auto head = integrate_to_zero(g_, lo, 1e-9);
            head_ = head.value;
            head_converged_ = head.converged;
        } else {
            head_ = 0.0;
            head_converged_ = true;
            headless_ = true;
        }
        std::vector<double> seg(grid_.size() - 1);
        for (std::size_t i = 0; i + 1 < grid_.size(); ++i)
            seg[i] = integrate(g_, grid_[i], grid_[i + 1]);
        cum_.resize(grid_.size());
        cum_[0] = 0.0;
        for (std::size_t i = 1; i < grid_.size(); ++i) cum_[i] = cum_[i - 1] + seg[i - 1];
        fit_ = powerlog_fit::at(g_, hi);
        // suffix sums keep far-tail differences free of cancellation
        suffix_.resize(grid_.size());
        suffix_.back() = fit_.tail_from(std::log(hi_));
        for (std::size_t i = grid_.size() - 1; i-- > 0;) suffix_[i] = suffix_[i + 1] + seg[i];
    }

    bool head_converged() const { return head_converged_; }
    double head() const { return head_; }
    double grid_hi() const { return hi_; }

    /// ∫_0^s g (resp. the signed integral from the grid start when headless),
    /// continued analytically beyond the grid.
    double total_to(double s) const {
        if (s <= 0.0) return headless_ ? -inf : 0.0;
        if (s < lo_)
            return headless_ ? -integrate(g_, s, lo_) : integrate_to_zero(g_, s, 1e-9).value;
        if (s <= hi_) {
            const auto it = std::upper_bound(grid_.begin(), grid_.end(), s);
            const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
            return head_ + cum_[i] + integrate(g_, grid_[i], s);
        }
        return total_to_log(std::log(s));
    }

    double total_to_log(double x) const {
        if (x <= std::log(hi_)) return total_to(std::exp(x));
        const double base = head_ + cum_.back();
        if (fit_.zero) return base;
        return base + fit_.anti(x) - fit_.anti(std::log(hi_));
    }

    double grand_total() const { return head_ + suffix_.front(); }

    bool tail_integrable() const { return fit_.integrable_at_inf(); }

    /// ∫_x^∞ g, computed from suffix sums (no cancellation for large x).
    double tail_to_inf(double x) const {
        if (!fit_.integrable_at_inf()) return inf;
        if (x >= hi_) return fit_.tail_from(std::log(x));
        if (x >= lo_) {
            const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
            const std::size_t i = static_cast<std::size_t>(it - grid_.begin());
            return integrate(g_, x, grid_[i]) + suffix_[i];
        }
        if (x > 0.0) return integrate(g_, x, lo_) + suffix_.front();
        return headless_ ? inf : head_ + suffix_.front();
    }

    /// log s solving total_to(s) = tau (monotone; +inf when unreachable).
    double inverse_log(double tau) const {
        if (tau <= head_ + cum_.front()) {
            // Below the grid; bisect in (0, lo].
            double a = lo_ * 1e-12, b = lo_;
            for (int i = 0; i < 60; ++i) {
                const double m = std::sqrt(a * b);
                (total_to(m) >= tau ? b : a) = m;
            }
            return std::log(b);
        }
        if (tau <= head_ + cum_.back()) {
            const double target = tau - head_;
            const auto it = std::lower_bound(cum_.begin(), cum_.end(), target);
            std::size_t i = static_cast<std::size_t>(it - cum_.begin());
            if (i == 0) i = 1;
            // Linear interpolation inside one segment of the cumulative.
            const double c0 = cum_[i - 1], c1 = cum_[i];
            const double w = c1 > c0 ? (target - c0) / (c1 - c0) : 0.0;
            return std::log(grid_[i - 1]) + w * (std::log(grid_[i]) - std::log(grid_[i - 1]));
        }
        if (!fit_.zero && fit_.integrable_at_inf() &&
            tau >= grand_total() * (1.0 - 1e-12))
            return inf;
        double a = std::log(hi_), b = std::log(hi_) * 2.0 + 10.0;
        int guard = 0;
        while (total_to_log(b) < tau) {
            a = b;
            b *= 2.0;
            if (++guard > 200) return inf;
        }
        for (int i = 0; i < 80; ++i) {
            const double m = 0.5 * (a + b);
            (total_to_log(m) >= tau ? b : a) = m;
        }
        return 0.5 * (a + b);
    }

  private:
    std::function<double(double)> g_;
    double lo_ = 0.0, hi_ = 0.0;
    std::vector<double> grid_, cum_, suffix_;
    double head_ = 0.0;
    bool head_converged_ = false;
    bool headless_ = false;
    powerlog_fit fit_;
};

// Young function A_n = B ∘ H^{-1} with H^{n'} the tabulated cumulative.
struct SobolevConjugateImpl final : young_detail::Base {
    YoungFunction B;  // the (possibly regularized) base function
    std::shared_ptr<LogCumulative> Hn;
    int n;
    double nprime;
    bool collapse;
    double Hn_total;          // sup of H^{n'}
    double fitC, fitP, fitQ;  // log B(e^x) ~ fitC + fitP x + fitQ log x for large x

    SobolevConjugateImpl(YoungFunction B_, std::shared_ptr<LogCumulative> Hn_, int n_,
                         bool collapse_, double Hn_total_)
        : B(std::move(B_)), Hn(std::move(Hn_)), n(n_), nprime(n_ / (n_ - 1.0)),
          collapse(collapse_), Hn_total(Hn_total_) {
        const double x1 = std::log(1e8), x2 = std::log(1e10), x3 = std::log(1e12);
        const double v1 = B.log_value(1e8), v2 = B.log_value(1e10), v3 = B.log_value(1e12);
        const double m1 = std::log(x1), m2 = std::log(x2), m3 = std::log(x3);
        const double a11 = x2 - x1, a12 = m2 - m1, b1 = v2 - v1;
        const double a21 = x3 - x2, a22 = m3 - m2, b2 = v3 - v2;
        const double det = a11 * a22 - a12 * a21;
        if (std::fabs(det) < 1e-14 || !std::isfinite(b1) || !std::isfinite(b2)) {
            fitP = std::isfinite(b2) ? b2 / a21 : 0.0;
            fitQ = 0.0;
        } else {
            fitP = (b1 * a22 - b2 * a12) / det;
            fitQ = (a11 * b2 - a21 * b1) / det;
        }
        fitC = v3 - fitP * x3 - fitQ * m3;
    }

    double inverse_arg_log(double t) const {
        const double tau = std::pow(t, nprime);
        return Hn->inverse_log(tau);
    }

    double value(double t) const override {
        if (t <= 0.0) return 0.0;
        if (collapse && std::pow(t, nprime) >= Hn_total * (1.0 - 1e-12)) return inf;
        const double x = inverse_arg_log(t);
        if (!std::isfinite(x)) return inf;
        if (x > std::log(1e12)) {
            const double lv = fitC + fitP * x + fitQ * std::log(x);
            return lv > 700.0 ? inf : std::exp(lv);
        }
        return B.value(std::exp(x));
    }

    double log_value(double t) const override {
        if (t <= 0.0) return -inf;
        if (collapse && std::pow(t, nprime) >= Hn_total * (1.0 - 1e-12)) return inf;
        const double x = inverse_arg_log(t);
        if (!std::isfinite(x)) return inf;
        if (x > std::log(1e12)) return fitC + fitP * x + fitQ * std::log(x);
        return B.log_value(std::exp(x));
    }

    double density(double t) const override {
        if (t <= 0.0) return 0.0;
        const double h = 1e-5 * t;
        const double v1 = value(t - h), v2 = value(t + h);
        if (!std::isfinite(v2)) return inf;
        return std::max(0.0, (v2 - v1) / (2.0 * h));
    }

    double density_inverse(double y) const override {
        if (y <= 0.0) return 0.0;
        return monotone_inverse([this](double t) { return density(t); }, y, 1.0, 2.0);
    }

    young_detail::BasePtr conjugate_impl(const young_detail::BasePtr& self) const override {
        return std::make_shared<young_detail::DerivedConjugateImpl>(self);
    }

    std::string describe() const override {
        return "sobolev_conjugate(" + B.describe() + ", n=" + std::to_string(n) + ")";
    }
};

inline bool needs_near_zero_regularization(const YoungFunction& A, int n) {
    if (A.value(1e-12) == 0.0) return true;
    const auto kernel = [&](double s) {
        const double v = A.value(s);
        if (!std::isfinite(v)) return 0.0;
        if (v <= 0.0) return inf;
        return std::pow(s / v, 1.0 / (n - 1.0));
    };
    return !integrate_to_zero(kernel, 1e-2, 1e-8, 160).converged;
}

}  // namespace sobolev_detail

struct sobolev_conjugate_result {
    YoungFunction A_n;
    bool collapse = false;           // ∫^∞ (t/A)^{1/(n-1)} dt finite: L^{A_n} = L^∞
    bool regularized = false;        // A was replaced near zero
    double H_limit = inf;            // sup H; A_n = +inf above it when collapse
    YoungFunction base;              // the function the conjugate was built from
};

/// Optimal Orlicz Sobolev conjugate: A_n = A ∘ H^{-1} with
/// H(t) = (∫_0^t (s/A(s))^{1/(n-1)} ds)^{1/n'}.
inline sobolev_conjugate_result sobolev_conjugate(const YoungFunction& A, int n) {
    if (n < 2) throw invalid_input("sobolev_conjugate: n >= 2 required");
    sobolev_conjugate_result res;
    res.regularized = sobolev_detail::needs_near_zero_regularization(A, n);
    YoungFunction B = res.regularized ? A.flattened_near_zero(1.0, 1.0) : A;
    res.base = B;

    const double nprime = n / (n - 1.0);
    const auto kernel = [B, n](double s) {
        const double v = B.value(s);
        if (!std::isfinite(v)) return 0.0;
        if (v <= 0.0) return s <= 0.0 ? 0.0 : inf;
        return std::pow(s / v, 1.0 / (n - 1.0));
    };

    auto Hn = std::make_shared<sobolev_detail::LogCumulative>(kernel, 1e-9, 1e12);
    if (!Hn->head_converged())
        throw precondition_error("sobolev_conjugate: near-zero integral diverges after regularization");

    double anchor = std::max(1.0, 2.0 * B.density_inverse(1e-300));
    if (!std::isfinite(anchor)) anchor = 1.0;
    const auto tail = integrate_to_inf(kernel, anchor, 1e-8, 240);
    res.collapse = tail.converged;
    if (res.collapse) {
        const double grand = Hn->total_to(anchor) + tail.value;
        res.H_limit = std::pow(grand, 1.0 / nprime);
    }
    const double Hn_total = res.collapse ? std::pow(res.H_limit, nprime) : inf;
    res.A_n = YoungFunction::adopt(std::make_shared<sobolev_detail::SobolevConjugateImpl>(
        B, Hn, n, res.collapse, Hn_total));
    return res;
}

struct hat_A_result {
    YoungFunction A_hat;
    bool regularized = false;
    bool flat_density_flag = false;  // density has a flat stretch >= one decade
};

/// Density of the optimal Orlicz-Lorentz target: the Young function with
/// density inverse (∫_{a^{-1}(t)}^∞ (∫_0^s a(r)^{-1/(n-1)} dr)^{-n}
/// a(s)^{-n/(n-1)} ds)^{1/(1-n)}.
inline hat_A_result hat_A(const YoungFunction& A, int n) {
    if (n < 2) throw invalid_input("hat_A: n >= 2 required");
    {
        const auto kernel = [&](double s) {
            const double v = A.value(s);
            if (!std::isfinite(v)) return 0.0;
            if (v <= 0.0) return s <= 0.0 ? 0.0 : inf;
            return std::pow(s / v, 1.0 / (n - 1.0));
        };
        double anchor = std::max(1.0, 2.0 * A.density_inverse(1e-300));
        if (!std::isfinite(anchor)) anchor = 1.0;
        if (integrate_to_inf(kernel, anchor, 1e-8, 240).converged)
            throw precondition_error(
                "hat_A: collapse regime (∫^∞ (t/A)^{1/(n-1)} dt < ∞); the optimal "
                "rearrangement-invariant target is L^B(nu) with nu = min(s^{-1/n}, 1)");
    }

    hat_A_result res;
    res.regularized = sobolev_detail::needs_near_zero_regularization(A, n);
    YoungFunction B = res.regularized ? A.flattened_near_zero(1.0, 1.0) : A;
    res.flat_density_flag = B.has_flat_density_decade();

    const double ex = 1.0 / (n - 1.0);
    const auto inv_dens_kernel = [B, ex](double r) {
        const double a = B.density(r);
        if (!std::isfinite(a)) return 0.0;
        if (a <= 0.0) return r <= 0.0 ? 0.0 : inf;
        return std::pow(a, -ex);
    };
    sobolev_detail::LogCumulative inner(inv_dens_kernel, 1e-9, 1e12);
    if (!inner.head_converged())
        throw precondition_error("hat_A: inner integral diverges near zero after regularization");

    const auto G = [&](double s) {
        const double F = inner.total_to(s);
        const double a = B.density(s);
        if (!(F > 0.0) || !std::isfinite(F) || !(a > 0.0)) return 0.0;
        if (!std::isfinite(a)) return 0.0;
        return std::pow(F, -static_cast<double>(n)) * std::pow(a, -n * ex);
    };
    // ∫_0 G typically diverges; only tail differences enter, so keep the
    // cumulative head-free.
    sobolev_detail::LogCumulative Gcum(G, 1e-9, 1e12, 48, false);
    if (!Gcum.tail_integrable())
        throw precondition_error("hat_A: tail integral does not converge");

    // Sample the density inverse of \hat A on a log grid of levels, then swap
    // the table to obtain the density itself (exact step inversion).
    const int per_decade = 16;
    const double t_lo = 1e-8, t_hi = 1e8;
    const int count = static_cast<int>(per_decade * std::log10(t_hi / t_lo)) + 1;
    std::vector<double> breaks, dens;
    double prev_w = 0.0, prev_t = 0.0;
    for (int i = 0; i < count; ++i) {
        const double t = t_lo * std::pow(10.0, static_cast<double>(i) / per_decade);
        const double x = B.density_inverse(t);
        double T;  // ∫_x^∞ G
        if (!std::isfinite(x))
            T = 0.0;
        else if (x > 0.0)
            T = Gcum.tail_to_inf(x);
        else
            T = inf;
        if (!(T > 0.0)) break;  // density inverse has reached +inf
        const double w = std::pow(T, -ex);  // \hat a^{-1}(t)
        if (w > prev_w * (1.0 + 1e-12) && w > 0.0 && std::isfinite(w)) {
            breaks.push_back(w);
            dens.push_back(prev_t);
            prev_w = w;
        }
        prev_t = t;
    }
    if (breaks.size() < 4) throw precondition_error("hat_A: degenerate density table");
    res.A_hat = YoungFunction::from_density_table(std::move(breaks), std::move(dens));
    return res;
}

/// Cached evaluators for the continuity kernels xi_A, eta_A and the modulus
/// sigma_A built from them.
class continuity_kernels {
  public:
    continuity_kernels(const YoungFunction& A, int n) : n_(n), nprime_(n / (n - 1.0)) {
        if (n < 2) throw invalid_input("continuity_kernels: n >= 2 required");
        YoungFunction At = A.conjugate();
        if (At.density(1e-14) > 0.0 || (At.value(1e-10) > 0.0 && At.value(1e-10) >= 0.5e-10)) {
            // Conjugate is linear near zero: eta's defining integral diverges.
            // Swap the density on (0,1) for a linear ramp.
            At = At.ramped_near_zero(1.0, 1.0);
            regularized_ = true;
        }
        Atilde_ = At;
        const auto xi_kernel = [At, np = nprime_](double tau) {
            const double v = At.value(tau);
            if (!std::isfinite(v)) return inf;
            return v * std::pow(tau, -1.0 - np);
        };
        xi_cum_ = sobolev_detail::LogCumulative(xi_kernel, 1e-6, 1e12, 16);
        xi_finite_ = xi_cum_.tail_integrable();
        const auto eta_kernel = [At](double tau) {
            const double v = At.value(tau);
            if (!std::isfinite(v)) return inf;
            return v / (tau * tau);
        };
        eta_cum_ = sobolev_detail::LogCumulative(eta_kernel, 1e-6, 1e12, 16);
        if (!eta_cum_.head_converged())
            throw precondition_error("continuity_kernels: eta integral diverges near zero");
    }

    bool xi_finite() const { return xi_finite_; }
    bool regularized_conjugate() const { return regularized_; }
    const YoungFunction& conjugate() const { return Atilde_; }

    double xi(double t) const {
        if (!(t > 0.0)) throw domain_error("xi: t > 0 required");
        if (!xi_finite_) return inf;
        return std::pow(t, nprime_) * xi_cum_.tail_to_inf(t);
    }

    double eta(double t) const {
        if (!(t > 0.0)) throw domain_error("eta: t > 0 required");
        return t * eta_cum_.total_to(t);
    }

    double xi_inverse(double y) const {
        if (!xi_finite_) throw precondition_error("xi_inverse: xi is infinite");
        return monotone_inverse([this](double t) { return xi(t); }, y, 1.0, 2.0);
    }

    double eta_inverse(double y) const {
        return monotone_inverse([this](double t) { return eta(t); }, y, 1.0, 2.0);
    }

    /// sigma_A(r) = r^{1-n}/xi^{-1}(r^{-n}) + r^{1-n}/eta^{-1}(r^{-n}).
    double sigma(double r) const {
        if (!(r > 0.0)) throw domain_error("sigma: r > 0 required");
        if (!xi_finite_) throw precondition_error("sigma: condition ∫^∞ (t/A)^{1/(n-1)} < ∞ fails");
        const double y = std::pow(r, -static_cast<double>(n_));
        const double rp = std::pow(r, 1.0 - n_);
        return rp / xi_inverse(y) + rp / eta_inverse(y);
    }

  private:
    int n_;
    double nprime_;
    YoungFunction Atilde_;
    bool regularized_ = false;
    bool xi_finite_ = false;
    sobolev_detail::LogCumulative xi_cum_, eta_cum_;
};

inline std::pair<double, double> xi_eta(const YoungFunction& A, int n, double t) {
    continuity_kernels k(A, n);
    return {k.xi(t), k.eta(t)};
}

inline double sigma_A(const YoungFunction& A, int n, double r) {
    continuity_kernels k(A, n);
    return k.sigma(r);
}

}  // namespace risob
