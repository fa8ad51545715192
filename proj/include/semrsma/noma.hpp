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

// NOMA boundary points.
//
// Semantic users are decoded strongest first; the bit user is decoded after
// the first q of them. Powers are normalized by P and SNRs by the band noise,
// so A_j = P g_j / sigma^2 and B = P g_b / sigma^2. Semantic SINR floors are
// linear in the powers. The bit SINR B y / (1 + sum_{i>=q} A_i x_i) is
// handled by SCA with a first-order expansion at the previous iterate.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "semrsma/errors.hpp"
#include "semrsma/sca.hpp"
#include "semrsma/scenario.hpp"
#include "semrsma/semantic_model.hpp"
#include "semrsma/subsolver.hpp"

namespace semrsma {

struct NomaAllocation {
    std::vector<double> p_sem;
    double p_bit = 0.0;
    int q = 0;
    double bit_rate = 0.0;
    SolveReport report;
};

/// Relative slack allowed when re-checking SINR floors on returned powers.
inline constexpr double kSinrCheckRelTol = 1e-8;

/// Linear SINR floor for a semantic user at `target_rate`.
inline double sinr_floor(const Scenario& scn, double target_rate) {
    return db_to_linear(gamma_for_rate(scn.cfg, scn.params, scn.bandwidth_hz, target_rate));
}

inline double noma_sinr_sem(const Scenario& scn, const std::vector<double>& p_sem, double p_bit, int q,
                            std::size_t j) {
    double interf = scn.noise_w();
    for (std::size_t i = j + 1; i < p_sem.size(); ++i) interf += p_sem[i] * scn.gains_sem[i];
    if (static_cast<int>(j) < q) interf += p_bit * scn.gain_bit;
    return p_sem[j] * scn.gains_sem[j] / interf;
}

inline double noma_sinr_bit(const Scenario& scn, const std::vector<double>& p_sem, double p_bit, int q) {
    double interf = scn.noise_w();
    for (std::size_t i = static_cast<std::size_t>(q); i < p_sem.size(); ++i) interf += p_sem[i] * scn.gains_sem[i];
    return p_bit * scn.gain_bit / interf;
}

namespace detail {

struct NormalizedGains {
    std::vector<double> a;  // semantic
    double b = 0.0;         // bit
};

inline NormalizedGains normalized_gains(const Scenario& scn) {
    NormalizedGains n;
    const double s = scn.p_max_watt / scn.noise_w();
    for (double g : scn.gains_sem) n.a.push_back(s * g);
    n.b = s * scn.gain_bit;
    return n;
}

/// Smallest normalized semantic powers meeting SINR floor `gamma`, solved
/// from the last-decoded user up. `bit_interf[j]` is the normalized bit
/// power user j sees. Entries may exceed 1 when the floor is out of reach.
inline std::vector<double> equality_powers(const std::vector<double>& a, double gamma,
                                           const std::vector<double>& bit_interf) {
    std::vector<double> x(a.size(), 0.0);
    double below = 0.0;
    for (std::size_t jj = a.size(); jj-- > 0;) {
        x[jj] = gamma * (1.0 + below + bit_interf[jj]) / a[jj];
        below += a[jj] * x[jj];
    }
    return x;
}

inline bool within_unit(const std::vector<double>& x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return v <= 1.0; });
}

/// Largest t in [0, t_max] for which `powers_at(t)` stays within unit power.
template <class F>
std::optional<double> largest_feasible(F powers_at, double t_max) {
    if (!within_unit(powers_at(0.0))) return std::nullopt;
    if (within_unit(powers_at(t_max))) return t_max;
    double lo = 0.0, hi = t_max;
    for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (within_unit(powers_at(mid)) ? lo : hi) = mid;
    }
    return lo;
}

// Point layout [x_0 .. x_{N-1}, y]; subproblem adds rho and sigma.
struct NomaProblem {
    std::vector<double> a;
    double b = 0.0;
    double gamma = 0.0;
    double w = 0.0;
    std::size_t q = 0;

    std::size_t n() const { return a.size(); }

    double interference(const PowerPoint& p) const {
        double s = 1.0;
        for (std::size_t i = q; i < n(); ++i) s += a[i] * p[i];
        return s;
    }

    ConvexSubproblem build(const PowerPoint& lin) const {
        const std::size_t nn = n(), iy = nn, ir = nn + 1, is = nn + 2;
        ConvexSubproblem sp(nn + 3);
        for (std::size_t j = 0; j <= nn; ++j) sp.set_bounds(j, 0.0, 1.0);
        double a_tail = 0.0;
        for (std::size_t i = q; i < nn; ++i) a_tail += a[i];
        sp.set_bounds(ir, 0.0, b);
        sp.set_bounds(is, 1.0, 1.0 + a_tail);
        sp.log_terms.push_back({ir, w, 1.0});

        const double s0 = interference(lin), y0 = lin[iy];
        std::vector<double> row(nn + 3, 0.0);
        row[ir] = 1.0;
        row[iy] = -b / s0;
        row[is] = b * y0 / (s0 * s0);
        sp.add_constraint(row, b * y0 / s0);

        if (q < nn) {
            row.assign(nn + 3, 0.0);
            for (std::size_t i = q; i < nn; ++i) row[i] = a[i];
            row[is] = -1.0;
            sp.add_constraint(row, -1.0);
        }
        for (std::size_t j = 0; j < nn; ++j) {
            row.assign(nn + 3, 0.0);
            row[j] = -a[j];
            for (std::size_t i = j + 1; i < nn; ++i) row[i] = gamma * a[i];
            if (j < q) row[iy] = gamma * b;
            sp.add_constraint(row, -gamma);
        }
        return sp;
    }

    std::vector<double> hint(const PowerPoint& lin) const {
        std::vector<double> h(lin);
        const double s0 = interference(lin);
        h.push_back(b * lin[n()] / s0);
        h.push_back(s0);
        return h;
    }

    PowerPoint extract(std::span<const double> x) const {
        PowerPoint p(n() + 1);
        for (std::size_t j = 0; j <= n(); ++j) p[j] = std::clamp(x[j], 0.0, 1.0);
        return p;
    }

    double exact(const PowerPoint& p) const { return w * std::log2(1.0 + b * p[n()] / interference(p)); }

    bool feasible(const PowerPoint& p) const {
        for (std::size_t j = 0; j < n(); ++j) {
            double rhs = 1.0;
            for (std::size_t i = j + 1; i < n(); ++i) rhs += a[i] * p[i];
            if (j < q) rhs += b * p[n()];
            if (a[j] * p[j] < gamma * rhs * (1.0 - kSinrCheckRelTol)) return false;
        }
        return true;
    }
};

}  // namespace detail

/// Allocation at S = 0: semantic users silent, bit user at full power.
inline NomaAllocation noma_silent_point(const Scenario& scn) {
    NomaAllocation out;
    out.p_sem.assign(scn.n_sem(), 0.0);
    out.p_bit = scn.p_max_watt;
    out.q = 0;
    out.bit_rate = scn.bandwidth_hz * std::log2(1.0 + scn.p_max_watt * scn.gain_bit / scn.noise_w());
    out.report.objective_trace = {out.bit_rate};
    out.report.iterations = 0;
    out.report.converged = true;
    return out;
}

/// SCA for one decoding position. Without `init`, starts from the bottom-up
/// equality powers with p_b = P/2 (lowered if the semantic floors require
/// it), scaled by each of `opt.start_scales`; the best result is kept.
inline NomaAllocation sca_noma(const Scenario& scn, double target_rate, int q,
                               const std::optional<PowerPoint>& init = std::nullopt, ScaOptions opt = {}) {
    const std::size_t n = scn.n_sem();
    if (q < 0 || static_cast<std::size_t>(q) > n) throw DomainError("sca_noma: q out of range");
    if (target_rate < 0.0) throw DomainError("sca_noma: target_rate must be >= 0");
    if (target_rate == 0.0 || n == 0) return noma_silent_point(scn);
    opt.tau_bps = resolve_tau(opt, scn.bandwidth_hz);

    const auto ng = detail::normalized_gains(scn);
    detail::NomaProblem prob;
    prob.a = ng.a;
    prob.b = ng.b;
    try {
        prob.gamma = sinr_floor(scn, target_rate);
    } catch (const InfeasibleRate& e) {
        throw PointInfeasible(e.what());
    }
    if (!std::isfinite(prob.gamma)) throw PointInfeasible("noma: target at the semantic rate ceiling");
    prob.w = scn.bandwidth_hz;
    prob.q = static_cast<std::size_t>(q);

    std::vector<PowerPoint> starts;
    if (init) {
        if (init->size() != n + 1) throw DomainError("sca_noma: init must hold N_s + 1 normalized powers");
        starts.push_back(*init);
    } else {
        auto powers_at_y = [&](double y) {
            std::vector<double> bi(n, 0.0);
            for (std::size_t j = 0; j < prob.q; ++j) bi[j] = prob.b * y;
            return detail::equality_powers(prob.a, prob.gamma, bi);
        };
        const auto y0 = detail::largest_feasible(powers_at_y, 0.5);
        if (!y0) throw PointInfeasible("noma: semantic SINR floors unreachable for q = " + std::to_string(q));
        const auto x0 = powers_at_y(*y0);
        for (double s : opt.start_scales) {
            PowerPoint p(n + 1);
            for (std::size_t j = 0; j < n; ++j) p[j] = s * x0[j];
            p[n] = *y0;
            if (!detail::within_unit(p)) continue;
            starts.push_back(std::move(p));
        }
    }

    std::optional<ScaResult> best;
    for (const auto& st : starts) {
        auto r = run_sca(prob, st, opt);
        if (!r.feasible || !prob.feasible(r.point)) continue;
        if (!best || r.objective > best->objective) best = std::move(r);
    }
    if (!best) throw PointInfeasible("noma: no feasible allocation for q = " + std::to_string(q));

    NomaAllocation out;
    out.q = q;
    for (std::size_t j = 0; j < n; ++j) out.p_sem.push_back(best->point[j] * scn.p_max_watt);
    out.p_bit = best->point[n] * scn.p_max_watt;
    out.bit_rate = best->objective;
    out.report = std::move(best->report);
    return out;
}

/// Best decoding position by exhaustive search; ties within 1e-9 relative
/// keep the smaller q.
inline NomaAllocation noma_boundary_point(const Scenario& scn, double target_rate, ScaOptions opt = {}) {
    if (target_rate < 0.0) throw DomainError("noma_boundary_point: target_rate must be >= 0");
    if (target_rate == 0.0 || scn.n_sem() == 0) return noma_silent_point(scn);
    std::optional<NomaAllocation> best;
    for (int q = 0; q <= static_cast<int>(scn.n_sem()); ++q) {
        try {
            auto r = sca_noma(scn, target_rate, q, std::nullopt, opt);
            if (!best || r.bit_rate > best->bit_rate * (1.0 + 1e-9)) best = std::move(r);
        } catch (const PointInfeasible&) {
        }
    }
    if (!best) throw PointInfeasible("noma: no decoding position admits the target semantic rate");
    return *best;
}

}  // namespace semrsma
