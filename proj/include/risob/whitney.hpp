#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "risob/common.hpp"
#include "risob/grid.hpp"

namespace risob {

/// Closed dyadic cube in cell coordinates: cells [i0, i0+size) x [j0, j0+size).
struct WhitneyCube {
    int i0, j0, size;  // size is a power of two
    bool forced;       // level-0 cell kept for coverage despite the distance rule

    double r(const GridDomain& d) const { return size * d.h; }  // physical side
    double x_lo(const GridDomain& d) const { return d.x0 + i0 * d.h; }
    double y_lo(const GridDomain& d) const { return d.y0 + j0 * d.h; }
    double x_hi(const GridDomain& d) const { return d.x0 + (i0 + size) * d.h; }
    double y_hi(const GridDomain& d) const { return d.y0 + (j0 + size) * d.h; }
    double cx(const GridDomain& d) const { return 0.5 * (x_lo(d) + x_hi(d)); }
    double cy(const GridDomain& d) const { return 0.5 * (y_lo(d) + y_hi(d)); }
};

/// Whitney decomposition of an open cell set plus the subordinate partition
/// of unity on the 9/8-dilated cubes.
struct WhitneyCover {
    std::vector<WhitneyCube> cubes;
    // partition weights, one sparse row per cube: (cell index, phi_j(cell))
    std::vector<std::vector<std::pair<std::size_t, double>>> partition;
    // cells of the dilated cube (for the per-cube projections)
    std::vector<std::vector<std::size_t>> star_cells;
};

namespace whitney_detail {

inline double rect_gap(double alo, double ahi, double blo, double bhi) {
    if (bhi < alo) return alo - bhi;
    if (blo > ahi) return blo - ahi;
    return 0.0;
}

inline double cube_rect_distance(const GridDomain& d, const WhitneyCube& q, int ci, int cj) {
    const double gx = rect_gap(q.x_lo(d), q.x_hi(d), d.x0 + ci * d.h, d.x0 + (ci + 1) * d.h);
    const double gy = rect_gap(q.y_lo(d), q.y_hi(d), d.y0 + cj * d.h, d.y0 + (cj + 1) * d.h);
    return std::hypot(gx, gy);
}

// distance from the cube to the nearest complement cell (boundary candidates
// precomputed as the non-O cells face-adjacent to O)
inline double dist_to_complement(const GridDomain& d, const WhitneyCube& q,
                                 const std::vector<std::pair<int, int>>& boundary) {
    double best = inf;
    for (const auto& [ci, cj] : boundary)
        best = std::min(best, cube_rect_distance(d, q, ci, cj));
    return best;
}

// smoothstep profile of the unnormalized bump: 1 on |y| <= 7/9, 0 beyond 1
inline double bump_1d(double y) {
    y = std::fabs(y);
    if (y <= 7.0 / 9.0) return 1.0;
    if (y >= 1.0) return 0.0;
    const double t = (1.0 - y) / (2.0 / 9.0);
    return t * t * (3.0 - 2.0 * t);
}

}  // namespace whitney_detail

/// Whitney decomposition of the open set given by `omask` (1 = in O).
/// Dyadic subdivision accepts a cube contained in O once
/// 8 sqrt(2) r(Q) <= dist(Q, ∂O); single cells are kept unconditionally so
/// the cover reaches every cell of O (they sit within 8 sqrt(2) h of the
/// boundary and satisfy the upper distance bound trivially).
inline WhitneyCover whitney_cover(const GridDomain& d, const std::vector<std::uint8_t>& omask) {
    bool any = false, all = true;
    for (std::size_t k = 0; k < omask.size(); ++k) {
        any = any || omask[k];
        all = all && omask[k];
    }
    if (!any) throw invalid_input("whitney_cover: empty set");
    if (all) throw invalid_input("whitney_cover: set must have nonempty complement");

    // complement cells adjacent to O (the boundary candidates)
    std::vector<std::pair<int, int>> boundary;
    const auto in_o = [&](int i, int j) { return d.inside(i, j) && omask[d.idx(i, j)] != 0; };
    for (int j = 0; j < d.ny; ++j)
        for (int i = 0; i < d.nx; ++i) {
            if (omask[d.idx(i, j)]) continue;
            if (in_o(i + 1, j) || in_o(i - 1, j) || in_o(i, j + 1) || in_o(i, j - 1))
                boundary.emplace_back(i, j);
        }
    // O touching the grid edge leaves part of ∂O unrepresented
    for (int i = 0; i < d.nx; ++i)
        if (omask[d.idx(i, 0)] || omask[d.idx(i, d.ny - 1)])
            throw resolution_error("whitney_cover: set touches the grid edge; enlarge the grid");
    for (int j = 0; j < d.ny; ++j)
        if (omask[d.idx(0, j)] || omask[d.idx(d.nx - 1, j)])
            throw resolution_error("whitney_cover: set touches the grid edge; enlarge the grid");

    int root = 1;
    while (root < std::max(d.nx, d.ny)) root *= 2;

    WhitneyCover cover;
    const double k_lo = 8.0 * std::sqrt(2.0);
    std::vector<WhitneyCube> stack{{0, 0, root, false}};
    while (!stack.empty()) {
        WhitneyCube q = stack.back();
        stack.pop_back();
        // classify the cube against O
        bool any_in = false, all_in = true;
        for (int j = q.j0; j < q.j0 + q.size; ++j)
            for (int i = q.i0; i < q.i0 + q.size; ++i) {
                const bool in = in_o(i, j);
                any_in = any_in || in;
                all_in = all_in && in;
            }
        if (!any_in) continue;
        if (all_in) {
            if (q.size == 1) {
                q.forced =
                    whitney_detail::dist_to_complement(d, q, boundary) < k_lo * q.r(d);
                cover.cubes.push_back(q);
                continue;
            }
            const double dist = whitney_detail::dist_to_complement(d, q, boundary);
            if (dist >= k_lo * q.r(d)) {
                cover.cubes.push_back(q);
                continue;
            }
        }
        const int half = q.size / 2;
        stack.push_back({q.i0, q.j0, half, false});
        stack.push_back({q.i0 + half, q.j0, half, false});
        stack.push_back({q.i0, q.j0 + half, half, false});
        stack.push_back({q.i0 + half, q.j0 + half, half, false});
    }

    // partition of unity on the dilated cubes, normalized over the O-cells
    std::vector<double> total(d.mask.size(), 0.0);
    std::vector<std::vector<std::pair<std::size_t, double>>> raw(cover.cubes.size());
    cover.star_cells.resize(cover.cubes.size());
    for (std::size_t jq = 0; jq < cover.cubes.size(); ++jq) {
        const auto& q = cover.cubes[jq];
        const double star = 9.0 / 8.0 * q.r(d);  // side of Q*
        const double cx = q.cx(d), cy = q.cy(d);
        const int ilo = std::max(0, static_cast<int>(std::floor((cx - 0.5 * star - d.x0) / d.h)));
        const int ihi = std::min(d.nx - 1, static_cast<int>(std::ceil((cx + 0.5 * star - d.x0) / d.h)));
        const int jlo = std::max(0, static_cast<int>(std::floor((cy - 0.5 * star - d.y0) / d.h)));
        const int jhi = std::min(d.ny - 1, static_cast<int>(std::ceil((cy + 0.5 * star - d.y0) / d.h)));
        for (int j = jlo; j <= jhi; ++j)
            for (int i = ilo; i <= ihi; ++i) {
                const double wx = whitney_detail::bump_1d(2.0 * (d.cx(i) - cx) / star);
                const double wy = whitney_detail::bump_1d(2.0 * (d.cy(j) - cy) / star);
                const double w = wx * wy;
                const std::size_t k = d.idx(i, j);
                if (w > 0.0) cover.star_cells[jq].push_back(k);
                if (w > 0.0 && omask[k]) {
                    raw[jq].emplace_back(k, w);
                    total[k] += w;
                }
            }
    }
    cover.partition.resize(cover.cubes.size());
    for (std::size_t jq = 0; jq < cover.cubes.size(); ++jq) {
        for (auto [k, w] : raw[jq])
            if (total[k] > 0.0) cover.partition[jq].emplace_back(k, w / total[k]);
    }
    return cover;
}

struct whitney_check_report {
    bool disjoint = true;
    bool covers = true;
    bool distance_bounds = true;  // lower bound on non-forced cubes, upper on all
    bool neighbour_ratio = true;
    int max_neighbours = 0;
    double partition_sum_error = 0.0;
};

/// Structural assertions on a produced cover.
inline whitney_check_report verify_whitney(const GridDomain& d,
                                           const std::vector<std::uint8_t>& omask,
                                           const WhitneyCover& cover) {
    whitney_check_report rep;
    std::vector<int> hit(d.mask.size(), 0);
    for (const auto& q : cover.cubes)
        for (int j = q.j0; j < q.j0 + q.size; ++j)
            for (int i = q.i0; i < q.i0 + q.size; ++i) {
                if (!d.inside(i, j)) {
                    rep.covers = false;
                    continue;
                }
                ++hit[d.idx(i, j)];
            }
    for (std::size_t k = 0; k < d.mask.size(); ++k) {
        if (omask[k] && hit[k] != 1) (hit[k] == 0 ? rep.covers : rep.disjoint) = false;
        if (!omask[k] && hit[k] != 0) rep.covers = false;
    }

    std::vector<std::pair<int, int>> boundary;
    const auto in_o = [&](int i, int j) { return d.inside(i, j) && omask[d.idx(i, j)] != 0; };
    for (int j = 0; j < d.ny; ++j)
        for (int i = 0; i < d.nx; ++i) {
            if (omask[d.idx(i, j)]) continue;
            if (in_o(i + 1, j) || in_o(i - 1, j) || in_o(i, j + 1) || in_o(i, j - 1))
                boundary.emplace_back(i, j);
        }
    const double k_lo = 8.0 * std::sqrt(2.0), k_hi = 32.0 * std::sqrt(2.0);
    for (const auto& q : cover.cubes) {
        const double dist = whitney_detail::dist_to_complement(d, q, boundary);
        if (!q.forced && dist < k_lo * q.r(d) * (1.0 - 1e-12)) rep.distance_bounds = false;
        if (dist > k_hi * q.r(d) * (1.0 + 1e-12)) rep.distance_bounds = false;
    }

    for (std::size_t a = 0; a < cover.cubes.size(); ++a) {
        int neighbours = 0;
        for (std::size_t b = 0; b < cover.cubes.size(); ++b) {
            if (a == b) continue;
            const auto &qa = cover.cubes[a], &qb = cover.cubes[b];
            const double gx = whitney_detail::rect_gap(qa.x_lo(d), qa.x_hi(d), qb.x_lo(d), qb.x_hi(d));
            const double gy = whitney_detail::rect_gap(qa.y_lo(d), qa.y_hi(d), qb.y_lo(d), qb.y_hi(d));
            if (gx <= 1e-12 * d.h && gy <= 1e-12 * d.h) {
                ++neighbours;
                const double ratio = qa.r(d) / qb.r(d);
                if (ratio > 2.0 + 1e-12 || ratio < 0.5 - 1e-12) rep.neighbour_ratio = false;
            }
        }
        rep.max_neighbours = std::max(rep.max_neighbours, neighbours);
    }

    std::vector<double> total(d.mask.size(), 0.0);
    for (const auto& row : cover.partition)
        for (auto [k, w] : row) total[k] += w;
    for (std::size_t k = 0; k < d.mask.size(); ++k)
        if (omask[k]) rep.partition_sum_error = std::max(rep.partition_sum_error,
                                                         std::fabs(total[k] - 1.0));
    return rep;
}

}  // namespace risob
