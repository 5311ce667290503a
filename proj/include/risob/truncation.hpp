#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "risob/common.hpp"
#include "risob/grid.hpp"
#include "risob/hardy.hpp"
#include "risob/kfunctional.hpp"
#include "risob/norms.hpp"
#include "risob/whitney.hpp"
#include "risob/young_sobolev.hpp"

namespace risob {

struct TruncationResult {
    VectorField2D field;
    std::vector<std::uint8_t> omask;   // the truncation set
    std::size_t o_cells = 0;
    bool identity = false;             // empty truncation set: Tu = u exactly
    double sup_T_over_theta = 0.0;     // max |Tu| / theta
    double sup_eps_over_lambda = 0.0;  // max |eps(Tu)| / lambda
    whitney_check_report cover_report;
};

namespace trunc_detail {

inline TruncationResult assemble(const GridDomain& d, const VectorField2D& u,
                                 const std::vector<std::uint8_t>& omask, double theta,
                                 double lambda) {
    TruncationResult res;
    res.omask = omask;
    for (auto m : omask) res.o_cells += m != 0;
    if (res.o_cells == 0) {
        res.field = u;
        res.identity = true;
        const auto e = symmetric_gradient(d, u);
        const auto me = modulus(e);
        const auto mu = modulus(u);
        for (std::size_t k = 0; k < mu.size(); ++k) {
            res.sup_T_over_theta = std::max(res.sup_T_over_theta, mu[k] / theta);
            res.sup_eps_over_lambda = std::max(res.sup_eps_over_lambda, me[k] / lambda);
        }
        return res;
    }

    const auto cover = whitney_cover(d, omask);
    res.cover_report = verify_whitney(d, omask, cover);

    // per-cube rigid motions over the dilated cubes
    res.field = u;
    std::vector<double> acc1(d.mask.size(), 0.0), acc2(d.mask.size(), 0.0);
    for (std::size_t jq = 0; jq < cover.cubes.size(); ++jq) {
        if (cover.partition[jq].empty()) continue;
        const auto rigid = rigid_fit_or_mean(d, u, cover.star_cells[jq]);
        for (auto [k, w] : cover.partition[jq]) {
            const int i = static_cast<int>(k % static_cast<std::size_t>(d.nx));
            const int j = static_cast<int>(k / static_cast<std::size_t>(d.nx));
            acc1[k] += w * rigid.eval1(d.cx(i), d.cy(j));
            acc2[k] += w * rigid.eval2(d.cx(i), d.cy(j));
        }
    }
    for (std::size_t k = 0; k < d.mask.size(); ++k) {
        if (!omask[k]) continue;
        res.field.u1[k] = acc1[k];
        res.field.u2[k] = acc2[k];
    }

    const auto e = symmetric_gradient(d, res.field);
    const auto me = modulus(e);
    const auto mt = modulus(res.field);
    for (std::size_t k = 0; k < d.mask.size(); ++k) {
        res.sup_T_over_theta = std::max(res.sup_T_over_theta, mt[k] / theta);
        res.sup_eps_over_lambda = std::max(res.sup_eps_over_lambda, me[k] / lambda);
    }
    return res;
}

}  // namespace trunc_detail

/// Truncation through the level sets of the maximal function of u and of its
/// symmetric gradient: rigid motions glued over a Whitney cover of
/// O = {Mu > theta} ∪ {M eps(u) > lambda}; the identity off O.
inline TruncationResult truncate(const GridDomain& d, const VectorField2D& u, double theta,
                                 double lambda) {
    if (!(theta > 0.0) || !(lambda > 0.0))
        throw domain_error("truncate: positive thresholds required");
    const auto e = symmetric_gradient(d, u);
    const auto mu = maximal_function(d, modulus(u));
    const auto me = maximal_function(d, modulus(e));
    std::vector<std::uint8_t> omask(d.mask.size(), 0);
    for (std::size_t k = 0; k < omask.size(); ++k)
        omask[k] = (mu[k] > theta || me[k] > lambda) ? 1 : 0;
    return trunc_detail::assemble(d, u, omask, theta, lambda);
}

/// Gradient-only variant: O = {M eps(u) > lambda}.
inline TruncationResult truncate_grad_only(const GridDomain& d, const VectorField2D& u,
                                           double lambda) {
    if (!(lambda > 0.0)) throw domain_error("truncate_grad_only: positive threshold required");
    const auto e = symmetric_gradient(d, u);
    const auto me = maximal_function(d, modulus(e));
    std::vector<std::uint8_t> omask(d.mask.size(), 0);
    for (std::size_t k = 0; k < omask.size(); ++k) omask[k] = me[k] > lambda ? 1 : 0;
    // theta plays no role; report |Tu| against the sup of |u| instead
    double sup_u = 1e-300;
    for (double v : modulus(u)) sup_u = std::max(sup_u, v);
    return trunc_detail::assemble(d, u, omask, sup_u, lambda);
}

struct k_compare_result {
    double predicted = 0.0;  // ∫_0^t |(u, eps u)|*(s) ds
    double upper = 0.0;      // || u - Tu ||_{E1 L1} + t || Tu ||_{E1 Linf}
    double theta = 0.0, lambda = 0.0;
};

/// Two-sided probe of the K-functional formula for (E1 L1, E1 Linf): the
/// truncation at theta = (Mu)*(t), lambda = (M eps u)*(t) realizes the
/// decomposition whose cost is compared against the predicted integral.
inline k_compare_result k_symgrad_compare(const GridDomain& d, const VectorField2D& u, double t) {
    if (!(t > 0.0)) throw domain_error("k_symgrad_compare: t > 0 required");
    if (t < d.cell_measure())
        throw resolution_error("k_symgrad_compare: t below the cell measure");
    const auto e = symmetric_gradient(d, u);
    k_compare_result res;
    res.predicted = rearrange_field(d, pair_modulus(u, e)).integral_up_to(t);

    const auto mu_star = rearrange_field(d, maximal_function(d, modulus(u)));
    const auto me_star = rearrange_field(d, maximal_function(d, modulus(e)));
    res.theta = mu_star.value(t);
    res.lambda = me_star.value(t);
    if (!(res.theta > 0.0) || !(res.lambda > 0.0)) {
        // u vanishes identically (or t beyond the support measure): K = 0
        return res;
    }
    const auto tr = truncate(d, u, res.theta, res.lambda);
    const auto et = symmetric_gradient(d, tr.field);
    VectorField2D diff = u;
    for (std::size_t k = 0; k < diff.u1.size(); ++k) {
        diff.u1[k] -= tr.field.u1[k];
        diff.u2[k] -= tr.field.u2[k];
    }
    const auto ed = symmetric_gradient(d, diff);
    const double a = d.cell_measure();
    double l1 = 0.0, l1e = 0.0, li = 0.0, lie = 0.0;
    const auto md = modulus(diff), mde = modulus(ed), mt = modulus(tr.field), mte = modulus(et);
    for (std::size_t k = 0; k < md.size(); ++k) {
        l1 += md[k] * a;
        l1e += mde[k] * a;
        li = std::max(li, mt[k]);
        lie = std::max(lie, mte[k]);
    }
    res.upper = (l1 + l1e) + t * (li + lie);
    return res;
}

struct sobolev2d_report {
    double max_ratio = 0.0;       // max ||u||_Y / ||eps u||_X over the family
    double pointwise_const = 0.0; // max over sampled s of the rearrangement bound constant
};

/// Norm-ratio probe of || u ||_Y <= C || eps(u) ||_X over a family of fields,
/// including the pointwise rearrangement inequality
/// u*(s) <= C (s^{-1/n'} ∫_0^s eps* + ∫_s^inf eps* r^{-1/n'} dr).
inline sobolev2d_report verify_sobolev_2d(const GridDomain& d,
                                          const std::vector<VectorField2D>& fields,
                                          const NormSpec& X, const NormSpec& Y) {
    sobolev2d_report rep;
    const int n = 2;
    for (const auto& u : fields) {
        const auto e = symmetric_gradient(d, u);
        const auto ustar = rearrange_field(d, modulus(u));
        const auto estar = rearrange_field(d, modulus(e));
        const double nx = norm(X, estar);
        if (!(nx > 0.0)) continue;
        rep.max_ratio = std::max(rep.max_ratio, norm(Y, ustar) / nx);
        const double L = estar.total_length();
        for (int k = 1; k <= 20; ++k) {
            const double s = L * k / 21.0;
            const double us = ustar.value(s);
            if (us <= 0.0) continue;
            const double bound = std::pow(s, -0.5) * estar.integral_up_to(s) +
                                 hardy_finite(estar, s, L, n);
            if (bound > 0.0) rep.pointwise_const = std::max(rep.pointwise_const, us / bound);
        }
    }
    return rep;
}

struct modular_report {
    double c = 0.0;          // smallest feasible constant
    double lhs = 0.0, rhs = 0.0;
    bool trivial = false;    // both modulars vanish
};

/// Smallest c with ∫ A_n(|u| / (c (∫ A(|eps u|))^{1/n})) <= ∫ A(|eps u|),
/// for the dimension-2 Sobolev conjugate of A.
inline modular_report verify_orlicz_modular(const GridDomain& d, const VectorField2D& u,
                                            const YoungFunction& A,
                                            const sobolev_conjugate_result& an) {
    const int n = 2;
    const auto e = symmetric_gradient(d, u);
    const double a = d.cell_measure();
    double M = 0.0;
    const auto me = modulus(e);
    for (std::size_t k = 0; k < me.size(); ++k) M += A.value(me[k]) * a;
    modular_report rep;
    rep.rhs = M;
    if (M <= 0.0) {
        rep.trivial = true;
        return rep;
    }
    const auto mu = modulus(u);
    const double scale = std::pow(M, 1.0 / n);
    const auto lhs_of = [&](double c) {
        double s = 0.0;
        for (std::size_t k = 0; k < mu.size(); ++k) {
            const double v = an.A_n.value(mu[k] / (c * scale));
            if (!std::isfinite(v)) return inf;
            s += v * a;
        }
        return s;
    };
    double c = 1.0;
    int guard = 0;
    while (lhs_of(c) > M && guard++ < 200) c *= 2.0;
    double lo = c / 2.0, hi = c;
    guard = 0;
    while (guard++ < 200 && lhs_of(lo) <= M) {
        hi = lo;
        lo *= 0.5;
        if (lo < 1e-12) break;
    }
    for (int it = 0; it < 50; ++it) {
        const double mid = std::sqrt(lo * hi);
        (lhs_of(mid) <= M ? hi : lo) = mid;
    }
    rep.c = hi;
    rep.lhs = lhs_of(hi);
    return rep;
}

/// || u - P u ||_Y / || eps(u) ||_X with the rigid least-squares projection
/// as the infimum surrogate.
inline double sobolev_poincare_check(const GridDomain& d, const VectorField2D& u,
                                     const NormSpec& X, const NormSpec& Y) {
    const auto r = rigid_project(d, u, d.mask);
    VectorField2D w = u;
    for (int j = 0; j < d.ny; ++j)
        for (int i = 0; i < d.nx; ++i) {
            if (!d.active(i, j)) continue;
            const std::size_t k = d.idx(i, j);
            w.u1[k] -= r.eval1(d.cx(i), d.cy(j));
            w.u2[k] -= r.eval2(d.cx(i), d.cy(j));
        }
    const auto e = symmetric_gradient(d, u);
    const double den = norm(X, rearrange_field(d, modulus(e)));
    const double floor_scale = norm(X, rearrange_field(d, modulus(u)));
    if (den <= 1e-12 * (floor_scale / std::sqrt(d.measure()) + 1e-300)) return 0.0;
    return norm(Y, rearrange_field(d, modulus(w))) / den;
}

}  // namespace risob
