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

// RSMA boundary points.
//
// The bit user splits its message into N+1 streams interleaved with the
// semantic users in the decoding order b_0, s_0, b_1, s_1, ..., s_{N-1}, b_N
// (zero-based, semantic users strongest first). Bit stream k sees semantic
// users i >= k and bit streams l > k; semantic user j sees semantic users
// i > j and bit streams l > j. Stream b_0 therefore interferes with nobody
// and stream b_N with every semantic user.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "semrsma/errors.hpp"
#include "semrsma/noma.hpp"
#include "semrsma/sca.hpp"
#include "semrsma/scenario.hpp"
#include "semrsma/subsolver.hpp"

namespace semrsma {

/// Streams below this fraction of P are reported as inactive.
inline constexpr double kActiveStreamRel = 1e-12;

struct RsmaAllocation {
    std::vector<double> p_sem;
    std::vector<double> p_bit_split;
    double bit_rate = 0.0;
    std::vector<double> split_fractions;
    int active_splits = 0;
    SolveReport report;
};

struct RsmaSinrs {
    std::vector<double> sem;
    std::vector<double> bit;
};

inline RsmaSinrs rsma_exact_sinrs(const Scenario& scn, const std::vector<double>& p_sem,
                                  const std::vector<double>& p_bit_split) {
    const std::size_t n = scn.n_sem();
    if (p_sem.size() != n || p_bit_split.size() != n + 1)
        throw DomainError("rsma_exact_sinrs: expected N_s semantic and N_s + 1 bit powers");
    const double noise = scn.noise_w();
    RsmaSinrs out;
    out.sem.resize(n);
    out.bit.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        double interf = noise;
        for (std::size_t i = k; i < n; ++i) interf += p_sem[i] * scn.gains_sem[i];
        for (std::size_t l = k + 1; l <= n; ++l) interf += p_bit_split[l] * scn.gain_bit;
        out.bit[k] = p_bit_split[k] * scn.gain_bit / interf;
    }
    for (std::size_t j = 0; j < n; ++j) {
        double interf = noise;
        for (std::size_t i = j + 1; i < n; ++i) interf += p_sem[i] * scn.gains_sem[i];
        for (std::size_t l = j + 1; l <= n; ++l) interf += p_bit_split[l] * scn.gain_bit;
        out.sem[j] = p_sem[j] * scn.gains_sem[j] / interf;
    }
    return out;
}

inline std::vector<double> split_fraction_profile(const std::vector<double>& p_bit_split) {
    double sum = 0.0;
    for (double p : p_bit_split) sum += p;
    if (!(sum > 0.0)) throw DomainError("split_fraction_profile: bit user has no power");
    std::vector<double> out;
    out.reserve(p_bit_split.size());
    for (double p : p_bit_split) out.push_back(p / sum);
    return out;
}

inline std::vector<double> split_fraction_profile(const RsmaAllocation& alloc) {
    return split_fraction_profile(alloc.p_bit_split);
}

namespace detail {

// Point layout [x_0 .. x_{N-1}, y_0 .. y_N]; the subproblem appends
// rho_0 .. rho_N and sigma_0 .. sigma_N.
struct RsmaProblem {
    std::vector<double> a;
    double b = 0.0;
    double gamma = 0.0;
    double w = 0.0;

    std::size_t n() const { return a.size(); }
    std::size_t iy(std::size_t k) const { return n() + k; }
    std::size_t ir(std::size_t k) const { return 2 * n() + 1 + k; }
    std::size_t is(std::size_t k) const { return 3 * n() + 2 + k; }
    std::size_t nvars() const { return 4 * n() + 3; }

    double stream_interference(const PowerPoint& p, std::size_t k) const {
        double s = 1.0;
        for (std::size_t i = k; i < n(); ++i) s += a[i] * p[i];
        for (std::size_t l = k + 1; l <= n(); ++l) s += b * p[iy(l)];
        return s;
    }

    ConvexSubproblem build(const PowerPoint& lin) const {
        const std::size_t nn = n(), nv = nvars();
        ConvexSubproblem sp(nv);
        for (std::size_t j = 0; j < 2 * nn + 1; ++j) sp.set_bounds(j, 0.0, 1.0);
        std::vector<double> row(nv, 0.0);
        for (std::size_t k = 0; k <= nn; ++k) row[iy(k)] = 1.0;
        sp.add_constraint(row, 1.0);

        for (std::size_t k = 0; k <= nn; ++k) {
            sp.set_bounds(ir(k), 0.0, b);
            sp.log_terms.push_back({ir(k), w, 1.0});
            if (k == nn) {
                sp.set_bounds(is(k), 1.0, 1.0);
            } else {
                double cap = 1.0 + b;
                for (std::size_t i = k; i < nn; ++i) cap += a[i];
                sp.set_bounds(is(k), 1.0, cap);
                row.assign(nv, 0.0);
                for (std::size_t i = k; i < nn; ++i) row[i] = a[i];
                for (std::size_t l = k + 1; l <= nn; ++l) row[iy(l)] = b;
                row[is(k)] = -1.0;
                sp.add_constraint(row, -1.0);
            }
            const double s0 = stream_interference(lin, k), y0 = lin[iy(k)];
            row.assign(nv, 0.0);
            row[ir(k)] = 1.0;
            row[iy(k)] = -b / s0;
            row[is(k)] = b * y0 / (s0 * s0);
            sp.add_constraint(row, b * y0 / s0);
        }
        for (std::size_t j = 0; j < nn; ++j) {
            row.assign(nv, 0.0);
            row[j] = -a[j];
            for (std::size_t i = j + 1; i < nn; ++i) row[i] = gamma * a[i];
            for (std::size_t l = j + 1; l <= nn; ++l) row[iy(l)] = gamma * b;
            sp.add_constraint(row, -gamma);
        }
        return sp;
    }

    std::vector<double> hint(const PowerPoint& lin) const {
        std::vector<double> h(lin);
        std::vector<double> s(n() + 1);
        for (std::size_t k = 0; k <= n(); ++k) s[k] = stream_interference(lin, k);
        for (std::size_t k = 0; k <= n(); ++k) h.push_back(b * lin[iy(k)] / s[k]);
        for (std::size_t k = 0; k <= n(); ++k) h.push_back(s[k]);
        return h;
    }

    PowerPoint extract(std::span<const double> x) const {
        PowerPoint p(2 * n() + 1);
        for (std::size_t j = 0; j < p.size(); ++j) p[j] = std::clamp(x[j], 0.0, 1.0);
        return p;
    }

    double exact(const PowerPoint& p) const {
        double r = 0.0;
        for (std::size_t k = 0; k <= n(); ++k) r += w * std::log2(1.0 + b * p[iy(k)] / stream_interference(p, k));
        return r;
    }

    bool feasible(const PowerPoint& p) const {
        double sum = 0.0;
        for (std::size_t k = 0; k <= n(); ++k) sum += p[iy(k)];
        if (sum > 1.0 + 1e-9) return false;
        for (std::size_t j = 0; j < n(); ++j) {
            double rhs = 1.0;
            for (std::size_t i = j + 1; i < n(); ++i) rhs += a[i] * p[i];
            for (std::size_t l = j + 1; l <= n(); ++l) rhs += b * p[iy(l)];
            if (a[j] * p[j] < gamma * rhs * (1.0 - kSinrCheckRelTol)) return false;
        }
        return true;
    }

    /// Interior-point solutions leave residual power of order 1e-9 on
    /// streams that carry nothing at the optimum. Each stream below `rel` is
    /// folded into b_0, which interferes with no one, and then dropped, as
    /// long as the exact objective loses at most `obj_rel` relative.
    PowerPoint purify(PowerPoint p, double rel, double obj_rel) const {
        auto try_replace = [&](PowerPoint c) {
            const double f = exact(p);
            if (exact(c) >= f - obj_rel * std::abs(f)) p = std::move(c);
        };
        for (std::size_t k = 1; k <= n(); ++k) {
            if (p[iy(k)] == 0.0 || p[iy(k)] >= rel) continue;
            PowerPoint c = p;
            c[iy(0)] += c[iy(k)];
            c[iy(k)] = 0.0;
            try_replace(std::move(c));
        }
        for (std::size_t k = 0; k <= n(); ++k) {
            if (p[iy(k)] == 0.0 || p[iy(k)] >= rel) continue;
            PowerPoint c = p;
            c[iy(k)] = 0.0;
            try_replace(std::move(c));
        }
        return p;
    }
};

inline RsmaProblem make_rsma_problem(const Scenario& scn, double target_rate) {
    const auto ng = normalized_gains(scn);
    RsmaProblem prob;
    prob.a = ng.a;
    prob.b = ng.b;
    try {
        prob.gamma = sinr_floor(scn, target_rate);
    } catch (const InfeasibleRate& e) {
        throw PointInfeasible(e.what());
    }
    if (!std::isfinite(prob.gamma)) throw PointInfeasible("rsma: target at the semantic rate ceiling");
    prob.w = scn.bandwidth_hz;
    return prob;
}

}  // namespace detail

/// Normalized RSMA point that reproduces a NOMA allocation: all bit power on
/// the stream decoded in the bit user's NOMA slot.
inline PowerPoint rsma_point_from_noma(const Scenario& scn, const NomaAllocation& noma) {
    const std::size_t n = scn.n_sem();
    PowerPoint p(2 * n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) p[j] = noma.p_sem[j] / scn.p_max_watt;
    p[n + static_cast<std::size_t>(noma.q)] = noma.p_bit / scn.p_max_watt;
    return p;
}

inline RsmaAllocation rsma_silent_point(const Scenario& scn) {
    const std::size_t n = scn.n_sem();
    RsmaAllocation out;
    out.p_sem.assign(n, 0.0);
    out.p_bit_split.assign(n + 1, 0.0);
    out.p_bit_split[n] = scn.p_max_watt;
    out.bit_rate = scn.bandwidth_hz * std::log2(1.0 + scn.p_max_watt * scn.gain_bit / scn.noise_w());
    out.split_fractions = split_fraction_profile(out.p_bit_split);
    out.active_splits = 1;
    out.report.objective_trace = {out.bit_rate};
    out.report.converged = true;
    return out;
}

/// SCA over all N+1 bit streams. Starts from the bottom-up equality semantic
/// powers with the remaining bit power on the last stream, scaled by each of
/// `opt.start_scales`, plus any normalized `extra_starts`; the best feasible
/// result is kept.
inline RsmaAllocation sca_rsma(const Scenario& scn, double target_rate, ScaOptions opt = {},
                               const std::vector<PowerPoint>& extra_starts = {}) {
    const std::size_t n = scn.n_sem();
    if (target_rate < 0.0) throw DomainError("sca_rsma: target_rate must be >= 0");
    if (target_rate == 0.0 || n == 0) return rsma_silent_point(scn);
    opt.tau_bps = resolve_tau(opt, scn.bandwidth_hz);
    const auto prob = detail::make_rsma_problem(scn, target_rate);

    auto powers_at_y = [&](double y) {
        return detail::equality_powers(prob.a, prob.gamma, std::vector<double>(n, prob.b * y));
    };
    const auto y_last = detail::largest_feasible(powers_at_y, 1.0);
    if (!y_last) throw PointInfeasible("rsma: semantic SINR floors unreachable at full power");
    const auto x0 = powers_at_y(*y_last);

    std::vector<PowerPoint> starts;
    for (double s : opt.start_scales) {
        PowerPoint p(2 * n + 1, 0.0);
        for (std::size_t j = 0; j < n; ++j) p[j] = s * x0[j];
        p[prob.iy(n)] = *y_last;
        if (detail::within_unit(p)) starts.push_back(std::move(p));
    }
    for (const auto& p : extra_starts) {
        if (p.size() != 2 * n + 1) throw DomainError("sca_rsma: extra start has the wrong length");
        starts.push_back(p);
    }

    std::optional<ScaResult> best;
    for (const auto& st : starts) {
        auto r = run_sca(prob, st, opt);
        if (!r.feasible || !prob.feasible(r.point)) continue;
        if (!best || r.objective > best->objective) best = std::move(r);
    }
    if (!best) throw PointInfeasible("rsma: no feasible allocation found");

    const PowerPoint p = prob.purify(best->point, 1e-6, 1e-9);
    RsmaAllocation out;
    for (std::size_t j = 0; j < n; ++j) out.p_sem.push_back(p[j] * scn.p_max_watt);
    for (std::size_t k = 0; k <= n; ++k) out.p_bit_split.push_back(p[prob.iy(k)] * scn.p_max_watt);
    out.bit_rate = prob.exact(p);
    double sum = 0.0;
    for (double v : out.p_bit_split) sum += v;
    if (sum > 0.0) out.split_fractions = split_fraction_profile(out.p_bit_split);
    for (double v : out.p_bit_split) out.active_splits += v >= kActiveStreamRel * scn.p_max_watt ? 1 : 0;
    out.report = std::move(best->report);
    return out;
}

/// RSMA point seeded with the best NOMA allocation as an extra start. NOMA
/// is the special case with one active stream, so the result is never below
/// the NOMA point.
inline RsmaAllocation rsma_boundary_point(const Scenario& scn, double target_rate, ScaOptions opt = {}) {
    if (target_rate == 0.0 || scn.n_sem() == 0) return rsma_silent_point(scn);
    std::vector<PowerPoint> extra;
    try {
        extra.push_back(rsma_point_from_noma(scn, noma_boundary_point(scn, target_rate, opt)));
    } catch (const PointInfeasible&) {
    }
    return sca_rsma(scn, target_rate, opt, extra);
}

struct TwoUserBaseline {
    double r1_max = 0.0;  // bit/s
    double alpha = 0.0;
    double p2 = 0.0;
    double p11 = 0.0;
    double p12 = 0.0;
    SolveReport report;
};

namespace detail {

// User 1 split in two streams around user 2: order x_{1,1}, x_2, x_{1,2}.
// Point layout [x2, y1, y2]; subproblem appends rho11, sigma11, rho12.
struct TwoUserProblem {
    double a1 = 0.0, a2 = 0.0, theta = 0.0, w = 0.0;

    double interference(const PowerPoint& p) const { return 1.0 + a2 * p[0] + a1 * p[2]; }

    ConvexSubproblem build(const PowerPoint& lin) const {
        ConvexSubproblem sp(6);
        for (std::size_t j = 0; j < 3; ++j) sp.set_bounds(j, 0.0, 1.0);
        sp.set_bounds(3, 0.0, a1);
        sp.set_bounds(4, 1.0, 1.0 + a1 + a2);
        sp.set_bounds(5, 0.0, a1);
        sp.log_terms.push_back({3, w, 1.0});
        sp.log_terms.push_back({5, w, 1.0});
        sp.add_constraint({0, 1, 1, 0, 0, 0}, 1.0);
        sp.add_constraint({a2, 0, a1, 0, -1, 0}, -1.0);
        sp.add_constraint({-a2, 0, theta * a1, 0, 0, 0}, -theta);
        sp.add_constraint({0, 0, -a1, 0, 0, 1}, 0.0);
        const double s0 = interference(lin), y0 = lin[1];
        sp.add_constraint({0, -a1 / s0, 0, 1, a1 * y0 / (s0 * s0), 0}, a1 * y0 / s0);
        return sp;
    }

    std::vector<double> hint(const PowerPoint& lin) const {
        const double s0 = interference(lin);
        return {lin[0], lin[1], lin[2], a1 * lin[1] / s0, s0, a1 * lin[2]};
    }

    PowerPoint extract(std::span<const double> x) const {
        return {std::clamp(x[0], 0.0, 1.0), std::clamp(x[1], 0.0, 1.0), std::clamp(x[2], 0.0, 1.0)};
    }

    double exact(const PowerPoint& p) const {
        return w * (std::log2(1.0 + a1 * p[1] / interference(p)) + std::log2(1.0 + a1 * p[2]));
    }
};

}  // namespace detail

/// Two bit users, user 1 split around user 2, user 2 held to `r2_target`
/// bit/s. Returns the largest rate of user 1 and its first-stream share.
/// At r2_target = 0 every split is optimal; the reported one puts all of
/// user 1's power on the stream decoded last (alpha = 0).
inline TwoUserBaseline two_bit_user_baseline(double g1, double g2, double p_max, double w, double noise_w,
                                             double r2_target, ScaOptions opt = {}) {
    if (!(g1 > 0.0 && g2 > 0.0 && p_max > 0.0 && w > 0.0 && noise_w > 0.0))
        throw DomainError("two_bit_user_baseline: gains, power, bandwidth and noise must be > 0");
    if (r2_target < 0.0) throw DomainError("two_bit_user_baseline: r2_target must be >= 0");
    detail::TwoUserProblem prob;
    prob.a1 = p_max * g1 / noise_w;
    prob.a2 = p_max * g2 / noise_w;
    prob.theta = std::exp2(r2_target / w) - 1.0;
    prob.w = w;
    if (prob.a2 < prob.theta * (1.0 - 1e-12))
        throw PointInfeasible("two_bit_user_baseline: user 2 cannot reach the target rate at full power");

    TwoUserBaseline out;
    if (r2_target == 0.0) {
        out.r1_max = w * std::log2(1.0 + prob.a1);
        out.p12 = p_max;
        out.report.objective_trace = {out.r1_max};
        out.report.converged = true;
        return out;
    }
    if (prob.theta >= prob.a2 * (1.0 - 1e-12)) {
        // User 2 needs full power with no stream after it: only one point.
        out.r1_max = w * std::log2(1.0 + prob.a1 / (1.0 + prob.a2));
        out.p2 = p_max;
        out.p11 = p_max;
        out.alpha = 1.0;
        out.report.objective_trace = {out.r1_max};
        out.report.converged = true;
        return out;
    }
    opt.tau_bps = resolve_tau(opt, w);
    const double x2 = std::min(1.0, prob.theta / prob.a2);
    std::optional<ScaResult> best;
    for (const PowerPoint& st : {PowerPoint{x2, 1.0, 0.0}, PowerPoint{1.0, 0.5, 0.5 * std::min(1.0, (prob.a2 / prob.theta - 1.0) / prob.a1)}}) {
        if (st[0] * prob.a2 < prob.theta * (1.0 + prob.a1 * st[2])) continue;
        auto r = run_sca(prob, st, opt);
        if (r.feasible && (!best || r.objective > best->objective)) best = std::move(r);
    }
    if (!best) throw PointInfeasible("two_bit_user_baseline: no feasible allocation found");
    const auto& p = best->point;
    out.r1_max = best->objective;
    out.p2 = p[0] * p_max;
    out.p11 = p[1] * p_max;
    out.p12 = p[2] * p_max;
    const double s = p[1] + p[2];
    out.alpha = s > 0.0 ? p[1] / s : 0.0;
    out.report = std::move(best->report);
    return out;
}

}  // namespace semrsma
