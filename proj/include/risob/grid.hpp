#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <random>
#include <vector>

#include "risob/common.hpp"
#include "risob/profile.hpp"

namespace risob {

/// Masked uniform grid for a planar domain. Cell (i, j) covers
/// [x0 + i h, x0 + (i+1) h) x [y0 + j h, y0 + (j+1) h); field values live at
/// cell centers.
struct GridDomain {
    double x0 = 0.0, y0 = 0.0;
    double h = 1.0;
    int nx = 0, ny = 0;
    std::vector<std::uint8_t> mask;

    static GridDomain square(int n, double h) {
        GridDomain d;
        d.nx = d.ny = n;
        d.h = h;
        d.mask.assign(static_cast<std::size_t>(n) * n, 1);
        return d;
    }

    /// Square with a centred square hole of the given half-width fraction.
    static GridDomain square_annulus(int n, double h, double hole_frac) {
        GridDomain d = square(n, h);
        const int lo = static_cast<int>(n * (0.5 - hole_frac / 2.0));
        const int hi = static_cast<int>(n * (0.5 + hole_frac / 2.0));
        for (int j = lo; j < hi; ++j)
            for (int i = lo; i < hi; ++i) d.mask[d.idx(i, j)] = 0;
        return d;
    }

    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
               static_cast<std::size_t>(i);
    }
    bool inside(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }
    bool active(int i, int j) const { return inside(i, j) && mask[idx(i, j)] != 0; }
    double cx(int i) const { return x0 + (i + 0.5) * h; }
    double cy(int j) const { return y0 + (j + 0.5) * h; }
    double cell_measure() const { return h * h; }
    std::size_t active_count() const {
        std::size_t c = 0;
        for (auto m : mask) c += m != 0;
        return c;
    }
    double measure() const { return static_cast<double>(active_count()) * cell_measure(); }
};

/// Planar vector field sampled at cell centers; zero outside the mask.
struct VectorField2D {
    std::vector<double> u1, u2;

    static VectorField2D zeros(const GridDomain& d) {
        VectorField2D f;
        f.u1.assign(d.mask.size(), 0.0);
        f.u2.assign(d.mask.size(), 0.0);
        return f;
    }
};

/// Symmetric 2x2 matrix field (e12 = e21 exactly, stored once).
struct TensorField2D {
    std::vector<double> e11, e12, e22;

    static TensorField2D zeros(const GridDomain& d) {
        TensorField2D f;
        f.e11.assign(d.mask.size(), 0.0);
        f.e12.assign(d.mask.size(), 0.0);
        f.e22.assign(d.mask.size(), 0.0);
        return f;
    }

    double frobenius(std::size_t k) const {
        return std::sqrt(e11[k] * e11[k] + 2.0 * e12[k] * e12[k] + e22[k] * e22[k]);
    }
};

/// b + Q x with the single planar skew parameter: (b1 - w y, b2 + w x).
struct RigidMotion2D {
    double b1 = 0.0, b2 = 0.0, omega = 0.0;

    double eval1(double x, double y) const { return b1 - omega * y; (void)x; }
    double eval2(double x, double y) const { return b2 + omega * x; (void)y; }
};

namespace grid_detail {

// one-sided/central difference of a component along an axis
inline double diff(const GridDomain& d, const std::vector<double>& c, int i, int j, int di,
                   int dj) {
    const bool plus = d.active(i + di, j + dj);
    const bool minus = d.active(i - di, j - dj);
    const std::size_t k = d.idx(i, j);
    if (plus && minus)
        return (c[d.idx(i + di, j + dj)] - c[d.idx(i - di, j - dj)]) / (2.0 * d.h);
    if (plus) return (c[d.idx(i + di, j + dj)] - c[k]) / d.h;
    if (minus) return (c[k] - c[d.idx(i - di, j - dj)]) / d.h;
    return 0.0;
}

}  // namespace grid_detail

/// Discrete symmetric gradient: central differences in the interior,
/// one-sided at the mask boundary; exactly symmetric by construction.
inline TensorField2D symmetric_gradient(const GridDomain& d, const VectorField2D& u) {
    bool has_interior = false;
    TensorField2D e = TensorField2D::zeros(d);
    for (int j = 0; j < d.ny; ++j) {
        for (int i = 0; i < d.nx; ++i) {
            if (!d.active(i, j)) continue;
            if (d.active(i + 1, j) && d.active(i - 1, j) && d.active(i, j + 1) &&
                d.active(i, j - 1))
                has_interior = true;
            const std::size_t k = d.idx(i, j);
            const double du1dx = grid_detail::diff(d, u.u1, i, j, 1, 0);
            const double du1dy = grid_detail::diff(d, u.u1, i, j, 0, 1);
            const double du2dx = grid_detail::diff(d, u.u2, i, j, 1, 0);
            const double du2dy = grid_detail::diff(d, u.u2, i, j, 0, 1);
            e.e11[k] = du1dx;
            e.e22[k] = du2dy;
            e.e12[k] = 0.5 * (du1dy + du2dx);
        }
    }
    if (!has_interior) throw domain_error("symmetric_gradient: mask has no interior cells");
    return e;
}

/// Least-squares projection onto the rigid motions over the cells of
/// `submask` (same layout as the grid). Throws rank_error on degenerate
/// subdomains (< 3 cells or collinear).
inline RigidMotion2D rigid_project(const GridDomain& d, const VectorField2D& u,
                                   const std::vector<std::uint8_t>& submask) {
    double sx = 0.0, sy = 0.0, su1 = 0.0, su2 = 0.0;
    std::size_t cells = 0;
    for (int j = 0; j < d.ny; ++j)
        for (int i = 0; i < d.nx; ++i) {
            if (!submask[d.idx(i, j)]) continue;
            sx += d.cx(i);
            sy += d.cy(j);
            su1 += u.u1[d.idx(i, j)];
            su2 += u.u2[d.idx(i, j)];
            ++cells;
        }
    if (cells < 3) throw rank_error("rigid_project: fewer than 3 cells");
    const double cx = sx / cells, cy = sy / cells;
    const double m1 = su1 / cells, m2 = su2 / cells;
    double num = 0.0, den = 0.0;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int j = 0; j < d.ny; ++j)
        for (int i = 0; i < d.nx; ++i) {
            if (!submask[d.idx(i, j)]) continue;
            const double dx = d.cx(i) - cx, dy = d.cy(j) - cy;
            const std::size_t k = d.idx(i, j);
            num += -dy * (u.u1[k] - m1) + dx * (u.u2[k] - m2);
            den += dx * dx + dy * dy;
            sxx += dx * dx;
            sxy += dx * dy;
            syy += dy * dy;
        }
    // collinear cells: the centred second-moment matrix is singular
    const double tr = sxx + syy, det = sxx * syy - sxy * sxy;
    const double lam_min = 0.5 * (tr - std::sqrt(std::max(tr * tr - 4.0 * det, 0.0)));
    if (lam_min <= 1e-12 * std::max(tr, 1e-300))
        throw rank_error("rigid_project: collinear cells");
    RigidMotion2D r;
    r.omega = den > 0.0 ? num / den : 0.0;
    r.b1 = m1 + r.omega * cy;
    r.b2 = m2 - r.omega * cx;
    return r;
}

/// Projection variant used inside the truncation operator: falls back to the
/// plain mean (omega = 0) on degenerate cell sets.
inline RigidMotion2D rigid_fit_or_mean(const GridDomain& d, const VectorField2D& u,
                                       const std::vector<std::size_t>& cells) {
    double sx = 0.0, sy = 0.0, su1 = 0.0, su2 = 0.0;
    for (std::size_t k : cells) {
        const int i = static_cast<int>(k % static_cast<std::size_t>(d.nx));
        const int j = static_cast<int>(k / static_cast<std::size_t>(d.nx));
        sx += d.cx(i);
        sy += d.cy(j);
        su1 += u.u1[k];
        su2 += u.u2[k];
    }
    const double cells_n = static_cast<double>(cells.size());
    const double cx = sx / cells_n, cy = sy / cells_n;
    const double m1 = su1 / cells_n, m2 = su2 / cells_n;
    double num = 0.0, den = 0.0;
    for (std::size_t k : cells) {
        const int i = static_cast<int>(k % static_cast<std::size_t>(d.nx));
        const int j = static_cast<int>(k / static_cast<std::size_t>(d.nx));
        const double dx = d.cx(i) - cx, dy = d.cy(j) - cy;
        num += -dy * (u.u1[k] - m1) + dx * (u.u2[k] - m2);
        den += dx * dx + dy * dy;
    }
    RigidMotion2D r;
    r.omega = den > 1e-300 ? num / den : 0.0;
    r.b1 = m1 + r.omega * cy;
    r.b2 = m2 - r.omega * cx;
    return r;
}

/// || u - P u ||_{L^1(Q)} / (|Q|^{1/2} || eps(u) ||_{L^1(Q)}) with P the rigid
/// least-squares projection over the submask.
struct poincare_report {
    double ratio = 0.0;
    bool rigid_field = false;  // eps vanished on the subdomain
};

inline poincare_report poincare_check(const GridDomain& d, const VectorField2D& u,
                                      const std::vector<std::uint8_t>& submask) {
    const auto r = rigid_project(d, u, submask);
    const auto e = symmetric_gradient(d, u);
    double num = 0.0, den = 0.0;
    double measure = 0.0, u_scale = 0.0;
    for (int j = 0; j < d.ny; ++j)
        for (int i = 0; i < d.nx; ++i) {
            if (!submask[d.idx(i, j)]) continue;
            const std::size_t k = d.idx(i, j);
            const double d1 = u.u1[k] - r.eval1(d.cx(i), d.cy(j));
            const double d2 = u.u2[k] - r.eval2(d.cx(i), d.cy(j));
            num += std::sqrt(d1 * d1 + d2 * d2);
            den += e.frobenius(k);
            u_scale += std::sqrt(u.u1[k] * u.u1[k] + u.u2[k] * u.u2[k]);
            measure += d.cell_measure();
        }
    num *= d.cell_measure();
    den *= d.cell_measure();
    u_scale *= d.cell_measure();
    poincare_report rep;
    // eps at machine-zero relative to the field scale: rigid input
    if (den <= 1e-12 * (u_scale / std::sqrt(measure) + 1e-300)) {
        rep.rigid_field = true;
        return rep;
    }
    rep.ratio = num / (std::sqrt(measure) * den);
    return rep;
}

namespace grid_detail {

// out[c] = max over o in [c-w+1, c] ∩ [0, o_count) of in[stride*o + base],
// for c = 0..cells-1 (sliding max over the window origins containing c)
inline void origin_max_1d(const std::vector<double>& in, std::vector<double>& out,
                          std::size_t base, std::size_t stride, int o_count, int cells, int w) {
    std::deque<int> dq;
    for (int c = 0; c < cells; ++c) {
        if (c < o_count) {
            while (!dq.empty() &&
                   in[base + stride * static_cast<std::size_t>(dq.back())] <=
                       in[base + stride * static_cast<std::size_t>(c)])
                dq.pop_back();
            dq.push_back(c);
        }
        while (!dq.empty() && dq.front() < c - w + 1) dq.pop_front();
        out[base + stride * static_cast<std::size_t>(c)] =
            dq.empty() ? 0.0 : in[base + stride * static_cast<std::size_t>(dq.front())];
    }
}

}  // namespace grid_detail

/// Hardy-Littlewood maximal function restricted to axis-aligned squares with
/// dyadic side lengths h 2^k that fit inside the grid box. Exact within that
/// class; the restriction changes M by a bounded dimensional factor only.
inline std::vector<double> maximal_function(const GridDomain& d, const std::vector<double>& f) {
    const std::size_t N = d.mask.size();
    std::vector<double> best(N, 0.0);
    for (std::size_t k = 0; k < N; ++k) best[k] = std::fabs(f[k]);

    // summed-area table of |f|
    std::vector<double> sat(static_cast<std::size_t>(d.nx + 1) * (d.ny + 1), 0.0);
    const auto S = [&](int i, int j) -> double& {
        return sat[static_cast<std::size_t>(j) * (d.nx + 1) + i];
    };
    for (int j = 0; j < d.ny; ++j)
        for (int i = 0; i < d.nx; ++i)
            S(i + 1, j + 1) =
                std::fabs(f[d.idx(i, j)]) + S(i, j + 1) + S(i + 1, j) - S(i, j);

    std::vector<double> avg(N, 0.0), rows(N, 0.0), cellmax(N, 0.0);
    for (int w = 2; w <= std::min(d.nx, d.ny); w *= 2) {
        const int ox = d.nx - w + 1, oy = d.ny - w + 1;
        if (ox <= 0 || oy <= 0) break;
        for (int j = 0; j < oy; ++j)
            for (int i = 0; i < ox; ++i)
                avg[d.idx(i, j)] =
                    (S(i + w, j + w) - S(i, j + w) - S(i + w, j) + S(i, j)) / (w * w);
        // per-cell max over containing windows: rows over origins, then columns
        for (int j = 0; j < oy; ++j)
            grid_detail::origin_max_1d(avg, rows, d.idx(0, j), 1, ox, d.nx, w);
        for (int i = 0; i < d.nx; ++i)
            grid_detail::origin_max_1d(rows, cellmax, static_cast<std::size_t>(i),
                                       static_cast<std::size_t>(d.nx), oy, d.ny, w);
        for (std::size_t k = 0; k < N; ++k) best[k] = std::max(best[k], cellmax[k]);
    }
    return best;
}

/// Euclidean modulus fields and rearrangements over the active cells.
inline std::vector<double> modulus(const VectorField2D& u) {
    std::vector<double> m(u.u1.size());
    for (std::size_t k = 0; k < m.size(); ++k)
        m[k] = std::sqrt(u.u1[k] * u.u1[k] + u.u2[k] * u.u2[k]);
    return m;
}

inline std::vector<double> modulus(const TensorField2D& e) {
    std::vector<double> m(e.e11.size());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = e.frobenius(k);
    return m;
}

/// |(u, eps(u))| per cell.
inline std::vector<double> pair_modulus(const VectorField2D& u, const TensorField2D& e) {
    std::vector<double> m(u.u1.size());
    for (std::size_t k = 0; k < m.size(); ++k) {
        const double fe = e.frobenius(k);
        m[k] = std::sqrt(u.u1[k] * u.u1[k] + u.u2[k] * u.u2[k] + fe * fe);
    }
    return m;
}

/// Decreasing rearrangement of a scalar cell field over the active cells.
inline DecreasingProfile rearrange_field(const GridDomain& d, const std::vector<double>& f) {
    std::vector<double> vals, wts;
    vals.reserve(d.active_count());
    for (int j = 0; j < d.ny; ++j)
        for (int i = 0; i < d.nx; ++i)
            if (d.active(i, j)) {
                vals.push_back(std::fabs(f[d.idx(i, j)]));
                wts.push_back(d.cell_measure());
            }
    return rearrange(WeightedSamples(vals, wts));
}

/// Analytic sum-of-bumps test fields with an exact compact-support cutoff.
struct BumpFieldSpec {
    struct Bump {
        double cx, cy, sx, sy, a1, a2;
    };
    std::vector<Bump> bumps;
    double margin = 0.15;  // cutoff band width as a fraction of the box

    static BumpFieldSpec seeded(std::uint64_t seed, int count = 3) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> cd(0.3, 0.7), sd(0.05, 0.2), ad(-1.0, 1.0);
        BumpFieldSpec s;
        for (int i = 0; i < count; ++i)
            s.bumps.push_back({cd(rng), cd(rng), sd(rng), sd(rng), ad(rng), ad(rng)});
        return s;
    }

    /// Narrow bumps concentrated near the centre; keeps maximal-function
    /// level sets away from the grid edge over a wide threshold range.
    static BumpFieldSpec tight(std::uint64_t seed, int count = 2) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> cd(0.42, 0.58), sd(0.02, 0.05), ad(-1.0, 1.0);
        BumpFieldSpec s;
        for (int i = 0; i < count; ++i)
            s.bumps.push_back({cd(rng), cd(rng), sd(rng), sd(rng), ad(rng), ad(rng)});
        return s;
    }

    /// Very concentrated support (central tenth of the box): survives
    /// truncation thresholds spanning two decades below the maximum.
    static BumpFieldSpec pinpoint(std::uint64_t seed, int count = 2) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> cd(0.45, 0.55), sd(0.015, 0.03), ad(-1.0, 1.0);
        BumpFieldSpec s;
        for (int i = 0; i < count; ++i)
            s.bumps.push_back({cd(rng), cd(rng), sd(rng), sd(rng), ad(rng), ad(rng)});
        return s;
    }

    // smoothstep cutoff vanishing on the margin band of the unit box
    static double cutoff(double t, double margin) {
        const double lo = t / margin, hi = (1.0 - t) / margin;
        const double c = std::min({lo, hi, 1.0});
        if (c <= 0.0) return 0.0;
        return c * c * (3.0 - 2.0 * c);
    }

    // evaluated in unit-box coordinates
    void eval(double x, double y, double& v1, double& v2) const {
        const double c = cutoff(x, margin) * cutoff(y, margin);
        v1 = v2 = 0.0;
        if (c == 0.0) return;
        for (const auto& b : bumps) {
            const double g = std::exp(-0.5 * ((x - b.cx) * (x - b.cx) / (b.sx * b.sx) +
                                              (y - b.cy) * (y - b.cy) / (b.sy * b.sy)));
            v1 += b.a1 * g;
            v2 += b.a2 * g;
        }
        v1 *= c;
        v2 *= c;
    }

    VectorField2D sample(const GridDomain& d) const {
        VectorField2D u = VectorField2D::zeros(d);
        const double w = d.nx * d.h, hgt = d.ny * d.h;
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i) {
                if (!d.active(i, j)) continue;
                double v1, v2;
                eval((d.cx(i) - d.x0) / w, (d.cy(j) - d.y0) / hgt, v1, v2);
                u.u1[d.idx(i, j)] = v1;
                u.u2[d.idx(i, j)] = v2;
            }
        return u;
    }
};

}  // namespace risob
