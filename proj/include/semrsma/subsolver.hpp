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

// Small dense convex solver for SCA subproblems:
//
//   maximize   sum_i weight_i * log2(1 + gain_i * x[var_i])
//   subject to A x <= b,  lo <= x <= hi.
//
// Log-barrier interior point method. Variables are scaled to unit box width
// and constraint rows to unit infinity norm before solving. A phase-I problem
// (minimize s subject to A x - s <= b, s >= -1) produces the strictly
// feasible start. When exactly one log term is present the objective is
// replaced by the linear term x[var] (log2 is increasing), so the barrier
// solves an LP.
//
// Fixed parameters:
//   start point:     box center (or the caller's hint), phase I if not strict
//   barrier weight:  t0 = 1, multiplied by 20 per outer step
//   presolve:        single-variable rows folded into the bounds
//   centering:       Newton, stop at decrement^2 / 2 <= max(1e-12, rounding
//                    level of t * f), at most 50 steps per t
//   line search:     fraction-to-boundary (0.99), then Armijo (0.01, 0.5) on
//                    merit differences formed term by term
//   stop:            m / t <= rel_tol * max(1, |objective|)

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace semrsma {

struct LogTerm {
    std::size_t var = 0;
    double weight = 1.0;
    double gain = 1.0;  // term is weight * log2(1 + gain * x[var])
};

struct LinearConstraint {
    std::vector<double> coeffs;  // a, meaning a . x <= rhs
    double rhs = 0.0;
};

struct ConvexSubproblem {
    std::size_t n_vars = 0;
    std::vector<LogTerm> log_terms;
    std::vector<LinearConstraint> constraints;
    std::vector<double> lo;
    std::vector<double> hi;

    explicit ConvexSubproblem(std::size_t n = 0)
        : n_vars(n),
          lo(n, -std::numeric_limits<double>::infinity()),
          hi(n, std::numeric_limits<double>::infinity()) {}

    void set_bounds(std::size_t j, double l, double h) {
        lo.at(j) = l;
        hi.at(j) = h;
    }

    void add_constraint(std::vector<double> a, double b) { constraints.push_back({std::move(a), b}); }

    void validate() const {
        if (lo.size() != n_vars || hi.size() != n_vars)
            throw std::invalid_argument("subproblem: bounds size mismatch");
        for (std::size_t j = 0; j < n_vars; ++j)
            if (!(lo[j] <= hi[j])) throw std::invalid_argument("subproblem: lo > hi");
        for (const auto& t : log_terms) {
            if (t.var >= n_vars) throw std::invalid_argument("subproblem: log term index out of range");
            if (!(t.weight > 0.0) || !(t.gain > 0.0))
                throw std::invalid_argument("subproblem: log term weight and gain must be > 0");
            if (!(lo[t.var] >= 0.0)) throw std::invalid_argument("subproblem: log term variable needs lo >= 0");
        }
        for (const auto& c : constraints)
            if (c.coeffs.size() != n_vars) throw std::invalid_argument("subproblem: constraint width mismatch");
    }
};

enum class SolveStatus { Optimal, Infeasible, IterLimit };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::IterLimit: return "iter_limit";
    }
    return "?";
}

struct SubSolution {
    std::vector<double> x;
    double objective = -std::numeric_limits<double>::infinity();
    SolveStatus status = SolveStatus::Infeasible;
    double kkt_residual = std::numeric_limits<double>::infinity();
    int newton_steps = 0;
};

struct SolverSettings {
    double rel_tol = 1e-8;
    double feas_tol = 1e-9;
    int max_barrier_steps = 500;  // Newton steps over both phases
    std::vector<double> initial_hint;
};

inline double objective_value(const ConvexSubproblem& sp, std::span<const double> x) {
    double f = 0.0;
    for (const auto& t : sp.log_terms) f += t.weight * std::log2(1.0 + t.gain * x[t.var]);
    return f;
}

/// Largest scaled violation: rows divided by max(1, ||a||_inf), bounds
/// unscaled. Zero when x is feasible.
inline double check_feasible(const ConvexSubproblem& sp, std::span<const double> x) {
    if (x.size() != sp.n_vars) throw std::invalid_argument("check_feasible: wrong vector length");
    double worst = 0.0;
    for (const auto& c : sp.constraints) {
        double ax = 0.0;
        double scale = 1.0;
        for (std::size_t j = 0; j < sp.n_vars; ++j) {
            ax += c.coeffs[j] * x[j];
            scale = std::max(scale, std::abs(c.coeffs[j]));
        }
        worst = std::max(worst, (ax - c.rhs) / scale);
    }
    for (std::size_t j = 0; j < sp.n_vars; ++j) {
        worst = std::max(worst, sp.lo[j] - x[j]);
        worst = std::max(worst, x[j] - sp.hi[j]);
    }
    return worst;
}

/// Plain-text dump for offline inspection.
inline void dump_subproblem(std::ostream& os, const ConvexSubproblem& sp) {
    const auto old = os.precision(std::numeric_limits<double>::max_digits10);
    os << "# semrsma convex subproblem v1\n";
    os << "n_vars " << sp.n_vars << '\n';
    for (const auto& t : sp.log_terms) os << "log " << t.var << ' ' << t.weight << ' ' << t.gain << '\n';
    for (std::size_t j = 0; j < sp.n_vars; ++j) os << "bound " << j << ' ' << sp.lo[j] << ' ' << sp.hi[j] << '\n';
    for (const auto& c : sp.constraints) {
        os << "row " << c.rhs;
        for (double a : c.coeffs) os << ' ' << a;
        os << '\n';
    }
    os.precision(old);
}

namespace detail {

// Objective in scaled coordinates, to be minimized.
struct ScaledObjective {
    // Either linear (c) or a sum of -w * log(1 + g * z[v]) / ln 2.
    Eigen::VectorXd linear;
    std::vector<Eigen::Index> vars;
    std::vector<double> weights;
    std::vector<double> gains;

    double value(const Eigen::VectorXd& z) const {
        double f = 0.0;
        for (std::size_t i = 0; i < vars.size(); ++i) f -= weights[i] * std::log1p(gains[i] * z[vars[i]]);
        return (linear.size() ? linear.dot(z) : 0.0) + f / std::numbers::ln2;
    }

    // value(z + step) - value(z) without cancellation.
    double delta(const Eigen::VectorXd& z, const Eigen::VectorXd& step) const {
        double f = 0.0;
        for (std::size_t i = 0; i < vars.size(); ++i)
            f -= weights[i] * std::log1p(gains[i] * step[vars[i]] / (1.0 + gains[i] * z[vars[i]]));
        return (linear.size() ? linear.dot(step) : 0.0) + f / std::numbers::ln2;
    }

    void add_derivatives(const Eigen::VectorXd& z, double t, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
        if (linear.size()) grad += t * linear;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const double u = 1.0 + gains[i] * z[vars[i]];
            const double c = t * weights[i] / std::numbers::ln2;
            grad[vars[i]] -= c * gains[i] / u;
            hess(vars[i], vars[i]) += c * gains[i] * gains[i] / (u * u);
        }
    }
};

inline constexpr int kMaxCenteringSteps = 50;

struct BarrierResult {
    Eigen::VectorXd z;
    double t = 1.0;
    bool converged = false;
    bool budget_exhausted = false;
};

// Minimizes obj over {G z < h} from a strictly feasible z0. `early_stop`
// is checked after every centering pass.
template <class Stop>
BarrierResult barrier_minimize(const ScaledObjective& obj, const Eigen::MatrixXd& g, const Eigen::VectorXd& h,
                               Eigen::VectorXd z0, double rel_tol, int& steps_left, Stop&& early_stop) {
    const Eigen::Index n = z0.size();
    const auto m = static_cast<double>(g.rows());
    BarrierResult res;
    res.z = std::move(z0);
    double t = 1.0;
    Eigen::VectorXd grad(n), dz(n);
    Eigen::MatrixXd hess(n, n);

    while (true) {
        // Centering. Merit differences are formed term by term so that
        // decreases far below the merit value itself are still resolved.
        // The decrement floor follows the rounding of the gradient at t.
        const double dec_floor = std::max(2e-12, 1e-15 * (t * std::abs(obj.value(res.z)) + m));
        for (int pass = 0; pass < kMaxCenteringSteps; ++pass) {
            if (steps_left <= 0) {
                res.budget_exhausted = true;
                res.t = t;
                return res;
            }
            --steps_left;
            const Eigen::VectorXd slack = h - g * res.z;
            const Eigen::VectorXd inv = slack.cwiseInverse();
            grad = g.transpose() * inv;
            hess.noalias() = g.transpose() * inv.cwiseAbs2().asDiagonal() * g;
            obj.add_derivatives(res.z, t, grad, hess);
            hess.diagonal().array() += 1e-14 * (1.0 + hess.diagonal().array().abs());
            dz = hess.ldlt().solve(-grad);
            const double dec2 = -grad.dot(dz);
            if (!(dec2 > dec_floor) || !dz.allFinite()) break;
            double alpha = 1.0;
            const Eigen::VectorXd gdz = g * dz;
            for (Eigen::Index i = 0; i < gdz.size(); ++i)
                if (gdz[i] > 0.0) alpha = std::min(alpha, 0.99 * slack[i] / gdz[i]);
            bool accepted = false;
            while (alpha > 1e-12) {
                const Eigen::VectorXd step = alpha * dz;
                double d = t * obj.delta(res.z, step);
                bool inside = true;
                for (Eigen::Index i = 0; i < gdz.size() && inside; ++i) {
                    const double r = alpha * gdz[i] / slack[i];
                    inside = r < 1.0;
                    if (inside) d -= std::log1p(-r);
                }
                if (inside && std::isfinite(d) && d <= -0.01 * alpha * dec2) {
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!accepted) break;
            res.z += alpha * dz;
        }
        res.t = t;
#ifdef SEMRSMA_TRACE_BARRIER
        std::fprintf(stderr, "t=%g steps_left=%d obj=%.15g\n", t, steps_left, obj.value(res.z));
#endif
        if (early_stop(res.z, m / t)) {
            res.converged = true;
            return res;
        }
        const double tol = rel_tol * std::max(1.0, std::abs(obj.value(res.z)));
        if (m / t <= tol) {
            res.converged = true;
            return res;
        }
        t *= 20.0;
    }
}

// KKT residual at z using the multipliers of the Newton system at barrier
// weight t: lambda = (1/s + (G dz)/s^2) / t. Largest of the stationarity,
// dual infeasibility and complementarity terms, in scaled units.
inline double kkt_residual(const ScaledObjective& obj, const Eigen::MatrixXd& g, const Eigen::VectorXd& h,
                           const Eigen::VectorXd& z, double t) {
    const Eigen::Index n = z.size();
    const Eigen::VectorXd slack = h - g * z;
    const Eigen::VectorXd inv = slack.cwiseInverse();
    Eigen::VectorXd grad = g.transpose() * inv;
    Eigen::MatrixXd hess = g.transpose() * inv.cwiseAbs2().asDiagonal() * g;
    obj.add_derivatives(z, t, grad, hess);
    hess.diagonal().array() += 1e-14 * (1.0 + hess.diagonal().array().abs());
    const Eigen::VectorXd dz = hess.ldlt().solve(-grad);
    const Eigen::VectorXd lambda = (inv + (g * dz).cwiseProduct(inv.cwiseAbs2())) / t;
    Eigen::VectorXd grad_f = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd unused = Eigen::MatrixXd::Zero(n, n);
    obj.add_derivatives(z, 1.0, grad_f, unused);
    double res = (grad_f + g.transpose() * lambda).lpNorm<Eigen::Infinity>();
    if (lambda.size() > 0) {
        res = std::max(res, -lambda.minCoeff());
        res = std::max(res, lambda.cwiseProduct(slack).cwiseAbs().maxCoeff());
    }
    return std::isfinite(res) ? res : std::numeric_limits<double>::infinity();
}

}  // namespace detail

inline SubSolution solve(const ConvexSubproblem& sp, const SolverSettings& settings = {}) {
    sp.validate();
    constexpr double inf = std::numeric_limits<double>::infinity();
    SubSolution out;
    const std::size_t n = sp.n_vars;

    // Rows with a single nonzero coefficient become bounds.
    std::vector<double> lo_b = sp.lo, hi_b = sp.hi;
    std::vector<char> as_bound(sp.constraints.size(), 0);
    for (std::size_t r = 0; r < sp.constraints.size(); ++r) {
        const auto& c = sp.constraints[r];
        std::size_t nz = 0, k = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (c.coeffs[j] != 0.0) ++nz, k = j;
        if (nz != 1) continue;
        as_bound[r] = 1;
        const double v = c.rhs / c.coeffs[k];
        if (c.coeffs[k] > 0.0)
            hi_b[k] = std::min(hi_b[k], v);
        else
            lo_b[k] = std::max(lo_b[k], v);
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (lo_b[j] > hi_b[j] + settings.feas_tol * std::max(1.0, std::abs(hi_b[j]))) {
            out.status = SolveStatus::Infeasible;
            return out;
        }
        if (lo_b[j] > hi_b[j]) lo_b[j] = hi_b[j];
    }

    // Column scaling and fixed-variable elimination.
    std::vector<double> scale(n, 1.0);
    std::vector<Eigen::Index> free_index(n, -1);
    std::vector<std::size_t> free_vars;
    std::vector<double> fixed_value(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double lo = lo_b[j], hi = hi_b[j];
        if (std::isfinite(lo) && std::isfinite(hi) && hi - lo <= 1e-15 * std::max(1.0, std::abs(hi))) {
            fixed_value[j] = lo;
            continue;
        }
        if (std::isfinite(lo) && std::isfinite(hi))
            scale[j] = hi - lo;
        else
            scale[j] = std::max({1.0, std::isfinite(lo) ? std::abs(lo) : 0.0, std::isfinite(hi) ? std::abs(hi) : 0.0});
        free_index[j] = static_cast<Eigen::Index>(free_vars.size());
        free_vars.push_back(j);
    }
    const auto nf = static_cast<Eigen::Index>(free_vars.size());

    auto to_x = [&](const Eigen::VectorXd& z) {
        std::vector<double> x(n);
        for (std::size_t j = 0; j < n; ++j)
            x[j] = free_index[j] >= 0 ? scale[j] * z[free_index[j]] : fixed_value[j];
        return x;
    };

    // Rows G z <= h, unit infinity norm.
    std::vector<Eigen::VectorXd> rows;
    std::vector<double> rhs;
    auto push_row = [&](Eigen::VectorXd a, double b) {
        const double r = a.lpNorm<Eigen::Infinity>();
        if (r == 0.0) {
            if (b < -settings.feas_tol) rhs.push_back(-inf);  // marks an unsatisfiable empty row
            return;
        }
        rows.push_back(a / r);
        rhs.push_back(b / r);
    };
    for (std::size_t r = 0; r < sp.constraints.size(); ++r) {
        if (as_bound[r]) continue;
        const auto& c = sp.constraints[r];
        Eigen::VectorXd a = Eigen::VectorXd::Zero(nf);
        double b = c.rhs;
        for (std::size_t j = 0; j < n; ++j) {
            if (free_index[j] >= 0)
                a[free_index[j]] = c.coeffs[j] * scale[j];
            else
                b -= c.coeffs[j] * fixed_value[j];
        }
        push_row(std::move(a), b);
    }
    for (std::size_t j : free_vars) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(nf);
        e[free_index[j]] = 1.0;
        if (std::isfinite(hi_b[j])) push_row(e, hi_b[j] / scale[j]);
        if (std::isfinite(lo_b[j])) push_row(-e, -lo_b[j] / scale[j]);
    }
    if (std::find(rhs.begin(), rhs.end(), -inf) != rhs.end()) {
        out.status = SolveStatus::Infeasible;
        return out;
    }
    const auto m = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd g(m, nf);
    Eigen::VectorXd h(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        g.row(i) = rows[static_cast<std::size_t>(i)].transpose();
        h[i] = rhs[static_cast<std::size_t>(i)];
    }

    // Objective in scaled coordinates.
    detail::ScaledObjective obj;
    double wmax = 0.0;
    for (const auto& t : sp.log_terms) wmax = std::max(wmax, t.weight);
    const bool lp_path = sp.log_terms.size() == 1;
    if (lp_path) {
        const auto& t = sp.log_terms.front();
        obj.linear = Eigen::VectorXd::Zero(nf);
        if (free_index[t.var] >= 0) obj.linear[free_index[t.var]] = -1.0;
    } else {
        for (const auto& t : sp.log_terms) {
            if (free_index[t.var] < 0) continue;
            obj.vars.push_back(free_index[t.var]);
            obj.weights.push_back(t.weight / wmax);
            obj.gains.push_back(t.gain * scale[t.var]);
        }
    }

    // Start point.
    Eigen::VectorXd z0(nf);
    const bool has_hint = settings.initial_hint.size() == n;
    for (std::size_t j : free_vars) {
        const double lo = lo_b[j], hi = hi_b[j];
        double x;
        if (has_hint && std::isfinite(settings.initial_hint[j]))
            x = std::clamp(settings.initial_hint[j], lo, hi);
        else if (std::isfinite(lo) && std::isfinite(hi))
            x = 0.5 * (lo + hi);
        else if (std::isfinite(lo))
            x = lo + scale[j];
        else if (std::isfinite(hi))
            x = hi - scale[j];
        else
            x = 0.0;
        z0[free_index[j]] = x / scale[j];
    }
    // Pull the start 1% toward the box center so bound rows are strict.
    for (std::size_t j : free_vars) {
        if (std::isfinite(lo_b[j]) && std::isfinite(hi_b[j])) {
            const double c = 0.5 * (lo_b[j] + hi_b[j]) / scale[j];
            z0[free_index[j]] = c + 0.99 * (z0[free_index[j]] - c);
        }
    }

    int steps_left = settings.max_barrier_steps;
    auto finish_iter_limit = [&](const Eigen::VectorXd& z) {
        out.x = to_x(z);
        out.objective = objective_value(sp, out.x);
        out.status = SolveStatus::IterLimit;
        out.newton_steps = settings.max_barrier_steps - steps_left;
        return out;
    };

    // Phase I.
    Eigen::VectorXd viol = g * z0 - h;
    double s0 = m > 0 ? viol.maxCoeff() : -1.0;
    constexpr double kStrictMargin = 1e-12;
    if (s0 > -kStrictMargin) {
        Eigen::MatrixXd g1 = Eigen::MatrixXd::Zero(m + 1, nf + 1);
        g1.topLeftCorner(m, nf) = g;
        g1.col(nf).head(m).setConstant(-1.0);
        g1(m, nf) = -1.0;
        Eigen::VectorXd h1(m + 1);
        h1.head(m) = h;
        h1[m] = 1.0;
        Eigen::VectorXd y0(nf + 1);
        y0.head(nf) = z0;
        y0[nf] = std::max(s0, 0.0) + 1.0;
        detail::ScaledObjective phase1;
        phase1.linear = Eigen::VectorXd::Zero(nf + 1);
        phase1.linear[nf] = 1.0;
        // Stop once strictly feasible, or once the duality gap certifies
        // min s > feas_tol.
        auto done = [&](const Eigen::VectorXd& y, double gap) {
            return y[nf] < -kStrictMargin || y[nf] - gap > settings.feas_tol;
        };
        auto r1 = detail::barrier_minimize(phase1, g1, h1, y0, 1e-13, steps_left, done);
        if (r1.budget_exhausted && !(r1.z[nf] < 0.0)) return finish_iter_limit(r1.z.head(nf));
        const double s_star = r1.z[nf];
        z0 = r1.z.head(nf);
        if (s_star > settings.feas_tol) {
            out.x = to_x(z0);
            out.objective = objective_value(sp, out.x);
            out.status = SolveStatus::Infeasible;
            out.newton_steps = settings.max_barrier_steps - steps_left;
            return out;
        }
        if (s_star >= 0.0) {
            // Feasible within tolerance but without an interior: relax.
            h.array() += s_star + kStrictMargin;
        }
    }

    auto never = [](const Eigen::VectorXd&, double) { return false; };
    auto r2 = detail::barrier_minimize(obj, g, h, z0, settings.rel_tol, steps_left, never);
    out.x = to_x(r2.z);
    out.objective = objective_value(sp, out.x);
    out.newton_steps = settings.max_barrier_steps - steps_left;
    out.kkt_residual = detail::kkt_residual(obj, g, h, r2.z, r2.t);
    out.status = r2.converged ? SolveStatus::Optimal : SolveStatus::IterLimit;
    return out;
}

}  // namespace semrsma
