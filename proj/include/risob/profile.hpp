#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "risob/common.hpp"

namespace risob {

/// Nonnegative sample values with positive weights (the measure of the cell
/// each value lives on). The canonical flat representation of |u| before
/// rearranging.
struct WeightedSamples {
    std::vector<double> values;
    std::vector<double> weights;

    WeightedSamples() = default;
    WeightedSamples(std::vector<double> v, std::vector<double> w)
        : values(std::move(v)), weights(std::move(w)) {
        validate();
    }

    void validate() const {
        if (values.size() != weights.size())
            throw invalid_input("WeightedSamples: values/weights size mismatch");
        if (values.empty()) throw invalid_input("WeightedSamples: empty");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
                throw invalid_input("WeightedSamples: negative or non-finite value");
            if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
                throw invalid_input("WeightedSamples: nonpositive weight");
        }
    }

    double total_measure() const {
        double L = 0.0;
        for (double w : weights) L += w;
        return L;
    }

    /// Measure of the superlevel set {value > t}.
    double measure_above(double t) const {
        double m = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] > t) m += weights[i];
        return m;
    }
};

/// Nonincreasing nonnegative step function on (0, L), extended by zero beyond
/// L. `breakpoints` holds the k right endpoints 0 < s_1 < ... < s_k = L and
/// `values` the k step heights v_1 >= ... >= v_k >= 0.
class DecreasingProfile {
  public:
    DecreasingProfile() = default;

    DecreasingProfile(std::vector<double> breakpoints, std::vector<double> values)
        : s_(std::move(breakpoints)), v_(std::move(values)) {
        if (s_.size() != v_.size() || s_.empty())
            throw invalid_input("DecreasingProfile: breakpoint/value size mismatch");
        double prev_s = 0.0;
        for (std::size_t i = 0; i < s_.size(); ++i) {
            if (!(s_[i] > prev_s)) throw invalid_input("DecreasingProfile: breakpoints not increasing");
            if (!(v_[i] >= 0.0)) throw invalid_input("DecreasingProfile: negative value");
            if (i > 0 && v_[i] > v_[i - 1] + 1e-15 * std::max(1.0, v_[i - 1]))
                throw invalid_input("DecreasingProfile: values not nonincreasing");
            prev_s = s_[i];
        }
        rebuild_cumulative();
    }

    static DecreasingProfile constant(double c, double L) { return {{L}, {c}}; }
    static DecreasingProfile indicator(double height, double m) { return {{m}, {height}}; }

    std::size_t steps() const { return s_.size(); }
    double total_length() const { return s_.empty() ? 0.0 : s_.back(); }
    const std::vector<double>& breakpoints() const { return s_; }
    const std::vector<double>& step_values() const { return v_; }

    double left_endpoint(std::size_t i) const { return i == 0 ? 0.0 : s_[i - 1]; }

    /// Value at a point s > 0 (right-continuous; zero beyond L).
    double value(double s) const {
        if (s_.empty() || s >= s_.back()) return 0.0;
        const auto it = std::upper_bound(s_.begin(), s_.end(), s);
        return v_[static_cast<std::size_t>(it - s_.begin())];
    }

    double sup_value() const { return v_.empty() ? 0.0 : v_.front(); }

    /// ∫_0^t f(r) dr, exact (piecewise linear in t).
    double integral_up_to(double t) const {
        if (t <= 0.0 || s_.empty()) return 0.0;
        if (t >= s_.back()) return cum_.back();
        const auto it = std::upper_bound(s_.begin(), s_.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - s_.begin());
        const double left = i == 0 ? 0.0 : s_[i - 1];
        const double base = i == 0 ? 0.0 : cum_[i - 1];
        return base + v_[i] * (t - left);
    }

    double integral() const { return cum_.empty() ? 0.0 : cum_.back(); }

    /// Measure of {f > t}.
    double measure_above(double t) const {
        double m = 0.0;
        for (std::size_t i = 0; i < s_.size(); ++i)
            if (v_[i] > t) m = s_[i];
        return m;
    }

    DecreasingProfile scaled(double c) const {
        if (!(c >= 0.0)) throw invalid_input("scale factor must be nonnegative");
        std::vector<double> w(v_);
        for (double& x : w) x *= c;
        return DecreasingProfile(s_, std::move(w));
    }

  private:
    std::vector<double> s_;
    std::vector<double> v_;
    std::vector<double> cum_;  // cum_[i] = ∫_0^{s_i} f

    void rebuild_cumulative() {
        cum_.resize(s_.size());
        double acc = 0.0, prev = 0.0;
        for (std::size_t i = 0; i < s_.size(); ++i) {
            acc += v_[i] * (s_[i] - prev);
            cum_[i] = acc;
            prev = s_[i];
        }
    }
};

/// Exact decreasing rearrangement: sort by value descending, accumulate
/// weights, merge equal-value cells into one step.
inline DecreasingProfile rearrange(const WeightedSamples& samples) {
    samples.validate();
    std::vector<std::size_t> order(samples.values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return samples.values[a] > samples.values[b];
    });
    std::vector<double> bp, val;
    double acc = 0.0;
    for (std::size_t idx : order) {
        const double v = samples.values[idx];
        acc += samples.weights[idx];
        if (!val.empty() && val.back() == v)
            bp.back() = acc;
        else {
            bp.push_back(acc);
            val.push_back(v);
        }
    }
    return DecreasingProfile(std::move(bp), std::move(val));
}

/// f**(s) = (1/s) ∫_0^s f(r) dr, exact for step profiles.
inline double double_star(const DecreasingProfile& f, double s) {
    if (!(s > 0.0)) throw domain_error("double_star: s must be positive");
    return f.integral_up_to(s) / s;
}

/// Both sides of the Hardy-Littlewood pairing on a shared cell partition:
/// lhs = Σ u_i v_i w_i, rhs = ∫_0^∞ u*(s) v*(s) ds (exact on steps).
inline std::pair<double, double> hardy_littlewood_pairing(const WeightedSamples& u,
                                                          const WeightedSamples& v) {
    u.validate();
    v.validate();
    if (u.weights.size() != v.weights.size())
        throw invalid_input("hardy_littlewood_pairing: partitions differ in size");
    for (std::size_t i = 0; i < u.weights.size(); ++i)
        if (std::fabs(u.weights[i] - v.weights[i]) > 1e-12 * std::max(1.0, u.weights[i]))
            throw invalid_input("hardy_littlewood_pairing: mismatched cell weights");

    double lhs = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i)
        lhs += u.values[i] * v.values[i] * u.weights[i];

    const DecreasingProfile us = rearrange(u);
    const DecreasingProfile vs = rearrange(v);
    std::vector<double> cuts;
    cuts.reserve(us.steps() + vs.steps());
    cuts.insert(cuts.end(), us.breakpoints().begin(), us.breakpoints().end());
    cuts.insert(cuts.end(), vs.breakpoints().begin(), vs.breakpoints().end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double rhs = 0.0, prev = 0.0;
    for (double c : cuts) {
        const double mid = 0.5 * (prev + c);
        rhs += us.value(mid) * vs.value(mid) * (c - prev);
        prev = c;
    }
    return {lhs, rhs};
}

/// ∫_0^∞ f(s) g(s) ds for two step profiles, exact.
inline double profile_pairing(const DecreasingProfile& f, const DecreasingProfile& g) {
    double acc = 0.0, prev = 0.0;
    std::vector<double> cuts;
    cuts.insert(cuts.end(), f.breakpoints().begin(), f.breakpoints().end());
    cuts.insert(cuts.end(), g.breakpoints().begin(), g.breakpoints().end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (double c : cuts) {
        const double mid = 0.5 * (prev + c);
        acc += f.value(mid) * g.value(mid) * (c - prev);
        prev = c;
    }
    return acc;
}

/// Pointwise sum of two profiles (as functions on (0, max L)); the result is
/// again nonincreasing.
inline DecreasingProfile profile_sum(const DecreasingProfile& f, const DecreasingProfile& g) {
    std::vector<double> cuts;
    cuts.insert(cuts.end(), f.breakpoints().begin(), f.breakpoints().end());
    cuts.insert(cuts.end(), g.breakpoints().begin(), g.breakpoints().end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<double> bp, val;
    double prev = 0.0;
    for (double c : cuts) {
        const double mid = 0.5 * (prev + c);
        const double v = f.value(mid) + g.value(mid);
        if (!val.empty() && val.back() == v)
            bp.back() = c;
        else {
            bp.push_back(c);
            val.push_back(v);
        }
        prev = c;
    }
    return DecreasingProfile(std::move(bp), std::move(val));
}

}  // namespace risob
