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

// Successive convex approximation driver shared by the NOMA, RSMA and
// two-bit-user solvers.
//
// A `Problem` supplies
//   ConvexSubproblem build(const Point& lin) const;   // convexified at `lin`
//   Point extract(std::span<const double> x) const;   // powers from a solution
//   double exact(const Point& p) const;               // true objective
//   std::vector<double> hint(const Point& lin) const; // subproblem start
// where Point is a vector of normalized powers. Each iterate is feasible for
// the original problem because every power constraint is linear and exact;
// only the rate-to-SINR coupling is linearized. The trace records the exact
// objective. If a new iterate lowers it, the step toward it is halved until
// it does not (the feasible power set is convex), so the trace never
// decreases.

#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "semrsma/subsolver.hpp"

namespace semrsma {

struct SolveReport {
    std::vector<double> objective_trace;
    int iterations = 0;
    bool converged = false;
    double tau = 0.0;
    int newton_steps = 0;
};

struct ScaOptions {
    double tau_bps = 0.0;  // <= 0 selects 1e-6 * bandwidth
    int max_iterations = 200;
    std::vector<double> start_scales{1.0, 1.5, 2.0};
    SolverSettings solver;
};

inline double resolve_tau(const ScaOptions& opt, double bandwidth_hz) {
    return opt.tau_bps > 0.0 ? opt.tau_bps : 1e-6 * bandwidth_hz;
}

using PowerPoint = std::vector<double>;

struct ScaResult {
    bool feasible = false;
    PowerPoint point;
    double objective = -std::numeric_limits<double>::infinity();
    SolveReport report;
};

template <class Problem>
ScaResult run_sca(const Problem& prob, const PowerPoint& start, const ScaOptions& opt) {
    ScaResult res;
    res.report.tau = opt.tau_bps;
    SolverSettings settings = opt.solver;
    auto solve_at = [&](const PowerPoint& lin) {
        settings.initial_hint = prob.hint(lin);
        return solve(prob.build(lin), settings);
    };
    auto sub = solve_at(start);
    res.report.newton_steps += sub.newton_steps;
    res.report.iterations = 1;
    if (sub.status != SolveStatus::Optimal) return res;
    PowerPoint cur = prob.extract(sub.x);
    double f = prob.exact(cur);
    res.feasible = true;
    res.report.objective_trace.push_back(f);

    while (res.report.iterations < opt.max_iterations) {
        ++res.report.iterations;
        sub = solve_at(cur);
        res.report.newton_steps += sub.newton_steps;
        if (sub.status != SolveStatus::Optimal) break;
        PowerPoint cand = prob.extract(sub.x);
        double fc = prob.exact(cand);
        if (!(fc >= f)) {
            PowerPoint mix(cur.size());
            double theta = 0.5;
            bool accepted = false;
            for (int k = 0; k < 30; ++k, theta *= 0.5) {
                for (std::size_t i = 0; i < cur.size(); ++i) mix[i] = cur[i] + theta * (cand[i] - cur[i]);
                const double fm = prob.exact(mix);
                if (fm >= f) {
                    cand = mix;
                    fc = fm;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) {
                cand = cur;
                fc = f;
            }
        }
        res.report.objective_trace.push_back(fc);
        const double delta = fc - f;
        cur = std::move(cand);
        f = fc;
        if (std::abs(delta) < opt.tau_bps) {
            res.report.converged = true;
            break;
        }
    }
    res.point = std::move(cur);
    res.objective = f;
    return res;
}

}  // namespace semrsma
