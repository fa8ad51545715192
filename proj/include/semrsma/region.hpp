/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The semrsma Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Rate-region boundaries, time sharing and the comparison sweeps.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "semrsma/digest.hpp"
#include "semrsma/errors.hpp"
#include "semrsma/fdma.hpp"
#include "semrsma/noma.hpp"
#include "semrsma/rsma.hpp"
#include "semrsma/scenario.hpp"

namespace semrsma {

enum class Scheme { Fdma, Noma, Rsma, Timeshare };

inline const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::Fdma: return "fdma";
        case Scheme::Noma: return "noma";
        case Scheme::Rsma: return "rsma";
        case Scheme::Timeshare: return "timeshare";
    }
    return "?";
}

inline std::optional<Scheme> scheme_from_string(std::string_view s) {
    for (Scheme k : {Scheme::Fdma, Scheme::Noma, Scheme::Rsma, Scheme::Timeshare})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

struct RatePoint {
    double s_rate = 0.0;  // suts/s
    double b_rate = 0.0;  // bit/s
};

/// One evaluated grid value. `q` is set for NOMA and `active_splits` and
/// `split_fractions` for RSMA; both are -1 / empty otherwise.
struct RegionSample {
    double s_rate = 0.0;
    double b_rate = 0.0;
    bool feasible = false;
    int q = -1;
    int active_splits = -1;
    int iterations = 0;
    std::vector<double> split_fractions;
    bool warning = false;  // evaluation failed for a reason other than infeasibility
};

struct RegionBoundary {
    Scheme scheme = Scheme::Fdma;
    std::vector<RatePoint> points;       // feasible prefix, strictly increasing in s_rate
    std::vector<RegionSample> samples;   // one per grid value
    std::string scenario_digest;
    std::vector<double> grid;
};

struct SweepOptions {
    int jobs = 1;
    ScaOptions sca;
};

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
/// thrown by any call is rethrown after all threads finish.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& fn) {
    const std::size_t nt = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n && !failed; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

/// Upper end of the flat part of the NOMA/RSMA boundary: the largest S for
/// which the similarity threshold alone sets the SINR floor.
inline double plateau_edge(const Scenario& scn) {
    return scn.cfg.s_th * scn.bandwidth_hz * scn.cfg.i_per_l / scn.cfg.k;
}

/// 60-point default grid: 0, 15 log-spaced values from 1e-4 to 0.1 of the
/// plateau edge, 24 linear values up to the edge, then 20 linear values up to
/// just below the rate ceiling.
inline std::vector<double> default_s_grid(const Scenario& scn) {
    const double edge = plateau_edge(scn);
    const double top = semantic_rate_ceiling(scn.cfg, scn.params, scn.bandwidth_hz) * (1.0 - 1e-3);
    std::vector<double> g{0.0};
    const double lo = 1e-4 * edge, hi = 0.1 * edge;
    for (int i = 0; i < 15; ++i) g.push_back(lo * std::pow(hi / lo, i / 14.0));
    for (int i = 1; i <= 24; ++i) g.push_back(hi + (edge - hi) * i / 24.0);
    for (int i = 1; i <= 20; ++i) g.push_back(edge + (top - edge) * i / 20.0);
    return g;
}

inline RegionSample boundary_sample(const Scenario& scn, Scheme scheme, double s, const ScaOptions& opt) {
    RegionSample out;
    out.s_rate = s;
    try {
        switch (scheme) {
            case Scheme::Fdma: {
                const auto a = fdma_boundary_point(scn, s);
                out.b_rate = a.bit_rate;
                break;
            }
            case Scheme::Noma: {
                const auto a = noma_boundary_point(scn, s, opt);
                out.b_rate = a.bit_rate;
                out.q = a.q;
                out.iterations = a.report.iterations;
                break;
            }
            case Scheme::Rsma: {
                const auto a = rsma_boundary_point(scn, s, opt);
                out.b_rate = a.bit_rate;
                out.active_splits = a.active_splits;
                out.split_fractions = a.split_fractions;
                out.iterations = a.report.iterations;
                break;
            }
            case Scheme::Timeshare:
                throw DomainError("timeshare points come from timeshare_hull");
        }
        out.feasible = true;
    } catch (const PointInfeasible&) {
        out.feasible = false;
    } catch (const InfeasibleRate&) {
        out.feasible = false;
    } catch (const std::runtime_error&) {
        out.feasible = false;
        out.warning = true;
    }
    return out;
}

/// Evaluates the scheme at every grid value (S = 0 is added when missing).
/// The boundary stops at the first infeasible value; later samples are
/// reported infeasible.
inline RegionBoundary sweep_region(const Scenario& scn, Scheme scheme, std::vector<double> s_grid,
                                   const SweepOptions& opt = {}) {
    if (scheme == Scheme::Timeshare) throw DomainError("sweep_region: use timeshare_hull for time sharing");
    if (s_grid.empty() || s_grid.front() != 0.0) s_grid.insert(s_grid.begin(), 0.0);
    for (std::size_t i = 1; i < s_grid.size(); ++i)
        if (!(s_grid[i] > s_grid[i - 1])) throw DomainError("sweep_region: grid must be strictly increasing");
    if (s_grid.back() > semantic_rate_ceiling(scn.cfg, scn.params, scn.bandwidth_hz))
        throw DomainError("sweep_region: grid exceeds the semantic rate ceiling");

    RegionBoundary b;
    b.scheme = scheme;
    b.grid = s_grid;
    b.scenario_digest = scenario_digest(scn);
    b.samples.resize(s_grid.size());
    parallel_for(s_grid.size(), opt.jobs,
                 [&](std::size_t i) { b.samples[i] = boundary_sample(scn, scheme, s_grid[i], opt.sca); });
    bool open = true;
    for (auto& smp : b.samples) {
        open = open && smp.feasible;
        if (!open) {
            RegionSample cut;
            cut.s_rate = smp.s_rate;
            cut.warning = smp.warning;
            smp = std::move(cut);
            continue;
        }
        b.points.push_back({smp.s_rate, smp.b_rate});
    }
    return b;
}

/// Piecewise-linear value of the boundary at s; 0 beyond its last point
/// (a relative overshoot of 1e-12 counts as the last point).
inline double interpolate(const RegionBoundary& b, double s) {
    const auto& p = b.points;
    if (p.empty() || s > p.back().s_rate * (1.0 + 1e-12)) return 0.0;
    if (s >= p.back().s_rate) return p.back().b_rate;
    if (s <= p.front().s_rate) return p.front().b_rate;
    auto it = std::lower_bound(p.begin(), p.end(), s, [](const RatePoint& r, double v) { return r.s_rate < v; });
    const auto& r = *it;
    const auto& l = *(it - 1);
    if (r.s_rate == s) return r.b_rate;
    return l.b_rate + (r.b_rate - l.b_rate) * (s - l.s_rate) / (r.s_rate - l.s_rate);
}

/// Area under the boundary, including the final drop to the S axis.
inline double region_area(const RegionBoundary& b) {
    double a = 0.0;
    for (std::size_t i = 1; i < b.points.size(); ++i)
        a += 0.5 * (b.points[i].b_rate + b.points[i - 1].b_rate) * (b.points[i].s_rate - b.points[i - 1].s_rate);
    return a;
}

/// Upper concave envelope of every boundary point plus each boundary's
/// intercept with the S axis. Samples are the envelope evaluated on the
/// first input's grid.
inline RegionBoundary timeshare_hull(const std::vector<RegionBoundary>& boundaries) {
    if (boundaries.empty()) throw DomainError("timeshare_hull: need at least one boundary");
    std::vector<RatePoint> pts;
    for (const auto& b : boundaries) {
        pts.insert(pts.end(), b.points.begin(), b.points.end());
        if (!b.points.empty()) pts.push_back({b.points.back().s_rate, 0.0});
    }
    std::sort(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) {
        return a.s_rate < b.s_rate || (a.s_rate == b.s_rate && a.b_rate > b.b_rate);
    });
    // Monotone chain, upper part only; equal-S duplicates keep the highest.
    std::vector<RatePoint> hull;
    for (const auto& p : pts) {
        if (!hull.empty() && hull.back().s_rate == p.s_rate) continue;
        while (hull.size() >= 2) {
            const auto& o = hull[hull.size() - 2];
            const auto& a = hull.back();
            const double cross = (a.s_rate - o.s_rate) * (p.b_rate - o.b_rate) - (a.b_rate - o.b_rate) * (p.s_rate - o.s_rate);
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    // Points left of the maximum are dominated: the region is closed downward.
    const auto top = std::max_element(hull.begin(), hull.end(),
                                      [](const RatePoint& a, const RatePoint& b) { return a.b_rate < b.b_rate; });
    RegionBoundary out;
    out.scheme = Scheme::Timeshare;
    if (top != hull.begin()) {
        RatePoint first{0.0, top->b_rate};
        hull.erase(hull.begin(), top);
        if (hull.front().s_rate > 0.0) hull.insert(hull.begin(), first);
    }
    out.points = std::move(hull);
    out.scenario_digest = boundaries.front().scenario_digest;
    out.grid = boundaries.front().grid;
    for (double s : out.grid) {
        RegionSample smp;
        smp.s_rate = s;
        smp.feasible = !out.points.empty() && s <= out.points.back().s_rate;
        if (smp.feasible) smp.b_rate = interpolate(out, s);
        out.samples.push_back(smp);
    }
    return out;
}

struct UserSweepRow {
    Scheme scheme = Scheme::Fdma;
    int n_sem = 0;
    double bit_rate = 0.0;
    bool feasible = false;
    int q = -1;
    int active_splits = -1;
    int iterations = 0;
};

/// Bit rate of each scheme at semantic rate `fixed_s` with the first n
/// generated semantic users, for each n. Rows are ordered by n, then by
/// scheme (fdma, noma, rsma).
inline std::vector<UserSweepRow> sweep_users(const Scenario& base, const std::vector<int>& n_values, double fixed_s,
                                             const SweepOptions& opt = {}) {
    constexpr Scheme kSchemes[] = {Scheme::Fdma, Scheme::Noma, Scheme::Rsma};
    std::vector<UserSweepRow> rows(n_values.size() * 3);
    for (int n : n_values)
        if (n < 1 || static_cast<std::size_t>(n) > base.n_sem())
            throw DomainError("sweep_users: n_values must lie in 1..N_s of the base scenario");
    parallel_for(rows.size(), opt.jobs, [&](std::size_t i) {
        const int n = n_values[i / 3];
        const Scheme sc = kSchemes[i % 3];
        const Scenario scn = with_first_users(base, static_cast<std::size_t>(n));
        const auto smp = boundary_sample(scn, sc, fixed_s, opt.sca);
        rows[i] = {sc, n, smp.b_rate, smp.feasible, smp.q, smp.active_splits, smp.iterations};
    });
    return rows;
}

struct ThresholdResult {
    double s_th = 0.0;
    RegionBoundary fdma, noma, rsma;
    double area_improvement = 0.0;  // (area_rsma - area_noma) / area_noma
    double gap_improvement = 0.0;   // same ratio for the bit rate at gap_s
    double gap_s = 0.0;
};

/// Regions for each threshold on a shared grid. The improvement of RSMA over
/// NOMA is reported both as a relative area gain and as a relative bit-rate
/// gain at semantic rate `gap_s`.
inline std::vector<ThresholdResult> sweep_threshold(const Scenario& base, const std::vector<double>& s_th_values,
                                                    const std::vector<double>& s_grid, double gap_s,
                                                    const SweepOptions& opt = {}) {
    std::vector<ThresholdResult> out;
    for (double th : s_th_values) {
        if (!(th > base.params.a1 && th < base.params.a2))
            throw DomainError("sweep_threshold: each threshold must lie strictly inside (a1, a2)");
        const Scenario scn = with_threshold(base, th);
        ThresholdResult r;
        r.s_th = th;
        r.gap_s = gap_s;
        r.fdma = sweep_region(scn, Scheme::Fdma, s_grid, opt);
        r.noma = sweep_region(scn, Scheme::Noma, s_grid, opt);
        r.rsma = sweep_region(scn, Scheme::Rsma, s_grid, opt);
        const double an = region_area(r.noma);
        r.area_improvement = an > 0.0 ? (region_area(r.rsma) - an) / an : 0.0;
        const double gn = interpolate(r.noma, gap_s);
        r.gap_improvement = gn > 0.0 ? (interpolate(r.rsma, gap_s) - gn) / gn : 0.0;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace semrsma
