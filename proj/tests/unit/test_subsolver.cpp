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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "semrsma/subsolver.hpp"

using namespace semrsma;
using Catch::Matchers::WithinAbs;

namespace {

ConvexSubproblem two_log(double c1, double c2, double rhs) {
    ConvexSubproblem sp(2);
    sp.set_bounds(0, 0.0, 1e9);
    sp.set_bounds(1, 0.0, 1e9);
    sp.log_terms = {{0, 1.0, 1.0}, {1, 1.0, 1.0}};
    sp.add_constraint({c1, c2}, rhs);
    return sp;
}

// Grid maximum of sum w_i log2(1 + g_i x_i) over the feasible grid points.
double grid_oracle(const ConvexSubproblem& sp, int n) {
    double best = -1e300;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            const std::vector<double> x{sp.lo[0] + (sp.hi[0] - sp.lo[0]) * i / n,
                                        sp.lo[1] + (sp.hi[1] - sp.lo[1]) * j / n};
            bool ok = true;
            for (const auto& c : sp.constraints) ok = ok && c.coeffs[0] * x[0] + c.coeffs[1] * x[1] <= c.rhs;
            if (ok) best = std::max(best, objective_value(sp, x));
        }
    return best;
}

}  // namespace

TEST_CASE("single log term saturates its bound", "[subsolver]") {
    ConvexSubproblem sp(1);
    sp.set_bounds(0, 0.0, 1e9);
    sp.log_terms = {{0, 1.0, 1.0}};
    sp.add_constraint({1.0}, 3.0);
    const auto r = solve(sp);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK_THAT(r.x[0], WithinAbs(3.0, 1e-6));
    CHECK_THAT(r.objective, WithinAbs(2.0, 1e-7));
}

TEST_CASE("symmetric water filling", "[subsolver]") {
    const auto r = solve(two_log(1, 1, 2));
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK_THAT(r.x[0], WithinAbs(1.0, 1e-6));
    CHECK_THAT(r.x[1], WithinAbs(1.0, 1e-6));
    CHECK_THAT(r.objective, WithinAbs(2.0, 1e-7));
}

TEST_CASE("asymmetric water filling against a fine scan", "[subsolver]") {
    const auto sp = two_log(1, 2, 3);
    const auto r = solve(sp);
    REQUIRE(r.status == SolveStatus::Optimal);
    // On the face x1 = 3 - 2 x2 the optimum is a 1-D maximum.
    double best = -1.0;
    for (int i = 0; i <= 10000; ++i) {
        const double x2 = 1.5 * i / 10000.0;
        best = std::max(best, std::log2(1.0 + 3.0 - 2.0 * x2) + std::log2(1.0 + x2));
    }
    CHECK_THAT(r.objective, WithinAbs(best, 1e-4));
    CHECK(r.objective >= best - 1e-9);
}

TEST_CASE("infeasible polyhedron is reported", "[subsolver]") {
    ConvexSubproblem sp(2);
    sp.set_bounds(0, 0.0, 1.0);
    sp.set_bounds(1, 0.0, 1.0);
    sp.log_terms = {{0, 1.0, 1.0}};
    sp.add_constraint({-1.0, -1.0}, -3.0);
    CHECK(solve(sp).status == SolveStatus::Infeasible);
}

TEST_CASE("randomized instances never lose to a grid", "[subsolver]") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (int t = 0; t < 50; ++t) {
        ConvexSubproblem sp(2);
        sp.set_bounds(0, 0.0, u(rng));
        sp.set_bounds(1, 0.0, u(rng));
        sp.log_terms = {{0, u(rng), u(rng)}, {1, u(rng), u(rng)}};
        sp.add_constraint({u(rng), u(rng)}, u(rng));
        sp.add_constraint({u(rng), -0.3 * u(rng)}, u(rng));
        const auto r = solve(sp);
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.objective >= grid_oracle(sp, 400) - 1e-6);
        CHECK(check_feasible(sp, r.x) <= 1e-8);
        CHECK(r.kkt_residual <= 1e-6);
    }
}

TEST_CASE("consistent unit rescaling leaves the argmax invariant", "[subsolver]") {
    auto sp = two_log(1, 2, 3);
    sp.log_terms = {{0, 1.0, 1.0}, {1, 1.0, 1.0}};
    const auto a = solve(sp);
    // Variables in half units: x' = 2x, gains halved, rhs doubled.
    auto sc = two_log(1, 2, 6);
    sc.log_terms = {{0, 1.0, 0.5}, {1, 1.0, 0.5}};
    const auto b = solve(sc);
    REQUIRE(a.status == SolveStatus::Optimal);
    REQUIRE(b.status == SolveStatus::Optimal);
    CHECK_THAT(b.x[0], WithinAbs(2.0 * a.x[0], 1e-5));
    CHECK_THAT(b.x[1], WithinAbs(2.0 * a.x[1], 1e-5));
    CHECK_THAT(b.objective, WithinAbs(a.objective, 1e-7));
}

TEST_CASE("fixed variables are honoured", "[subsolver]") {
    auto sp = two_log(1, 1, 2);
    sp.set_bounds(1, 0.5, 0.5);
    const auto r = solve(sp);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.x[1] == 0.5);
    CHECK_THAT(r.x[0], WithinAbs(1.5, 1e-6));
}

TEST_CASE("check_feasible", "[subsolver]") {
    auto sp = two_log(1, 1, 2);
    sp.set_bounds(0, 0.0, 1.0);
    CHECK(check_feasible(sp, std::vector<double>{0.5, 0.5}) == 0.0);
    CHECK_THAT(check_feasible(sp, std::vector<double>{1.5, 0.0}), WithinAbs(0.5, 1e-15));

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.0, 4.0);
    sp.add_constraint({3.0, -0.5}, 1.0);
    for (int i = 0; i < 20; ++i) {
        const std::vector<double> x{u(rng), u(rng)};
        double worst = 0.0;
        worst = std::max(worst, (x[0] + x[1] - 2.0) / 1.0);
        worst = std::max(worst, (3.0 * x[0] - 0.5 * x[1] - 1.0) / 3.0);
        worst = std::max({worst, -x[0], x[0] - 1.0, -x[1], x[1] - 1e9});
        CHECK_THAT(check_feasible(sp, x), WithinAbs(worst, 1e-15));
    }
}

TEST_CASE("malformed subproblems are rejected and dumps are readable", "[subsolver]") {
    ConvexSubproblem sp(1);
    sp.set_bounds(0, 1.0, 0.0);
    CHECK_THROWS(solve(sp));
    ConvexSubproblem neg(1);
    neg.set_bounds(0, -1.0, 1.0);
    neg.log_terms = {{0, 1.0, 1.0}};
    CHECK_THROWS(solve(neg));

    std::ostringstream os;
    dump_subproblem(os, two_log(1, 2, 3));
    CHECK(os.str().find("n_vars 2") != std::string::npos);
}
