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
#include <vector>

#include "semrsma/config.hpp"
#include "semrsma/errors.hpp"
#include "semrsma/fdma.hpp"
#include "semrsma/region.hpp"

using namespace semrsma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Scenario default_scenario(int n) { return RunConfig{}.make_scenario(n); }

RegionBoundary from_points(std::vector<RatePoint> pts) {
    RegionBoundary b;
    b.scheme = Scheme::Rsma;
    for (const auto& p : pts) b.grid.push_back(p.s_rate);
    b.points = std::move(pts);
    return b;
}

// Largest normalized second difference of the hull vertices, with slopes
// taken between consecutive vertices.
double max_slope_increase(const RegionBoundary& h) {
    const auto& p = h.points;
    double scale_s = p.back().s_rate, scale_b = 0.0;
    for (const auto& r : p) scale_b = std::max(scale_b, r.b_rate);
    double worst = -1.0;
    for (std::size_t i = 2; i < p.size(); ++i) {
        const double s1 = (p[i - 1].b_rate - p[i - 2].b_rate) / scale_b / ((p[i - 1].s_rate - p[i - 2].s_rate) / scale_s);
        const double s2 = (p[i].b_rate - p[i - 1].b_rate) / scale_b / ((p[i].s_rate - p[i - 1].s_rate) / scale_s);
        worst = std::max(worst, s2 - s1);
    }
    return worst;
}

}  // namespace

TEST_CASE("scheme names round trip", "[region]") {
    for (Scheme s : {Scheme::Fdma, Scheme::Noma, Scheme::Rsma, Scheme::Timeshare})
        CHECK(scheme_from_string(to_string(s)) == s);
    CHECK_FALSE(scheme_from_string("tdma").has_value());
}

TEST_CASE("time sharing two corner points gives the straight segment", "[region]") {
    const auto h = timeshare_hull({from_points({{0.0, 10.0}}), from_points({{0.0, 0.0}, {10.0, 0.0}})});
    CHECK_THAT(interpolate(h, 5.0), WithinAbs(5.0, 1e-12));
    CHECK_THAT(interpolate(h, 0.0), WithinAbs(10.0, 1e-12));
    CHECK_THAT(interpolate(h, 10.0), WithinAbs(0.0, 1e-12));
}

TEST_CASE("hull of a concave boundary is that boundary", "[region]") {
    std::vector<RatePoint> pts;
    for (int i = 0; i <= 40; ++i) {
        const double s = i / 40.0;
        pts.push_back({s, std::sqrt(1.0 - s * s)});
    }
    const auto b = from_points(pts);
    const auto h = timeshare_hull({b});
    for (int i = 0; i <= 400; ++i) {
        const double s = i / 400.0;
        CHECK_THAT(interpolate(h, s), WithinAbs(interpolate(b, s), 1e-12));
    }
    const auto hh = timeshare_hull({h});
    REQUIRE(hh.points.size() == h.points.size());
    for (std::size_t i = 0; i < h.points.size(); ++i) {
        CHECK(hh.points[i].s_rate == h.points[i].s_rate);
        CHECK(hh.points[i].b_rate == h.points[i].b_rate);
    }
}

TEST_CASE("hull is concave and dominates every mixture of input points", "[region]") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        std::vector<RegionBoundary> in;
        std::vector<RatePoint> all;
        for (int k = 0; k < 3; ++k) {
            std::vector<RatePoint> pts;
            double s = 0.0;
            for (int i = 0; i < 15; ++i) {
                pts.push_back({s, 1e6 * u(rng)});
                s += 1e4 * (0.1 + u(rng));
            }
            all.insert(all.end(), pts.begin(), pts.end());
            all.push_back({pts.back().s_rate, 0.0});
            in.push_back(from_points(pts));
        }
        const auto h = timeshare_hull(in);
        CHECK(max_slope_increase(h) <= 1e-9);
        for (std::size_t i = 1; i < h.points.size(); ++i) CHECK(h.points[i].s_rate > h.points[i - 1].s_rate);
        for (int m = 0; m < 500; ++m) {
            const auto& a = all[rng() % all.size()];
            const auto& b = all[rng() % all.size()];
            const double l = u(rng);
            const double s = l * a.s_rate + (1 - l) * b.s_rate;
            const double r = l * a.b_rate + (1 - l) * b.b_rate;
            CHECK(interpolate(h, s) >= r - 1e-9 * 1e6);
        }
    }
}

TEST_CASE("default grid resolves the drop just above zero", "[region]") {
    const auto s = default_scenario(4);
    const auto g = default_s_grid(s);
    REQUIRE(g.size() == 60);
    CHECK(g[0] == 0.0);
    CHECK_THAT(g[1], WithinRel(1e-4 * plateau_edge(s), 1e-12));
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    CHECK(g.back() < semantic_rate_ceiling(s.cfg, s.params, s.bandwidth_hz));
}

TEST_CASE("a zero-only grid gives one shared point", "[region]") {
    const auto s = default_scenario(4);
    const double ref = sweep_region(s, Scheme::Fdma, {0.0}).points.at(0).b_rate;
    for (Scheme sc : {Scheme::Noma, Scheme::Rsma}) {
        const auto b = sweep_region(s, sc, {0.0});
        REQUIRE(b.points.size() == 1);
        CHECK(b.points[0].s_rate == 0.0);
        CHECK_THAT(b.points[0].b_rate, WithinRel(ref, 1e-9));
    }
    CHECK_THROWS_AS(sweep_region(s, Scheme::Timeshare, {0.0}), DomainError);
    CHECK_THROWS_AS(sweep_region(s, Scheme::Fdma, {0.0, 2.0, 1.0}), DomainError);
}

TEST_CASE("FDMA boundary is close to a straight line", "[region]") {
    const auto s = default_scenario(4);
    const double r0 = fdma_boundary_point(s, 0.0).bit_rate;
    const double s_max = fdma_max_semantic_rate(s);
    const double r_end = fdma_boundary_point(s, s_max).bit_rate;
    for (int i = 0; i < 20; ++i) {
        const double x = s_max * i / 19.0;
        const double line = r0 + (r_end - r0) * x / s_max;
        CHECK(std::abs(fdma_boundary_point(s, x).bit_rate - line) <= 0.05 * r0);
    }
}

TEST_CASE("small sweeps are non-increasing, nested and thread independent", "[region]") {
    const auto s = default_scenario(2);
    const double e = plateau_edge(s);
    const std::vector<double> grid{1e-4 * e, 0.5 * e, e, 1.05 * e, 1.1 * e};
    const auto n1 = sweep_region(s, Scheme::Noma, grid);
    const auto r1 = sweep_region(s, Scheme::Rsma, grid, SweepOptions{1, {}});
    const auto r4 = sweep_region(s, Scheme::Rsma, grid, SweepOptions{4, {}});
    REQUIRE(r1.points.size() == r4.points.size());
    for (std::size_t i = 0; i < r1.points.size(); ++i) CHECK(r1.points[i].b_rate == r4.points[i].b_rate);
    for (const auto* b : {&n1, &r1}) {
        CHECK(b->points.size() == grid.size() + 1);
        for (std::size_t i = 1; i < b->points.size(); ++i)
            CHECK(b->points[i].b_rate <= b->points[i - 1].b_rate * (1.0 + 1e-9));
    }
    for (std::size_t i = 0; i < n1.points.size(); ++i)
        CHECK(r1.points[i].b_rate >= n1.points[i].b_rate - 1e-6 * s.bandwidth_hz);
}

TEST_CASE("infeasible values truncate the boundary", "[region]") {
    const auto s = default_scenario(4);
    const double top = semantic_rate_ceiling(s.cfg, s.params, s.bandwidth_hz);
    const auto b = sweep_region(s, Scheme::Fdma, {0.5 * top, 0.99 * top});
    CHECK(b.samples.size() == 3);
    CHECK(b.points.size() == 1);
    CHECK_FALSE(b.samples.back().feasible);
}

TEST_CASE("user sweep rows and cells", "[region]") {
    const auto base = default_scenario(3);
    const auto rows = sweep_users(base, {1, 2, 3}, 0.0);
    REQUIRE(rows.size() == 9);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].n_sem == static_cast<int>(i / 3) + 1);
        CHECK_THAT(rows[i].bit_rate, WithinRel(rows[0].bit_rate, 1e-9));
    }
    const double fixed = 0.05e6;
    const auto cells = sweep_users(base, {2}, fixed);
    const auto two = with_first_users(base, 2);
    for (const auto& c : cells) {
        const auto b = sweep_region(two, c.scheme, {fixed});
        REQUIRE(c.feasible);
        CHECK(c.bit_rate == b.points.back().b_rate);
    }
    CHECK_THROWS_AS(sweep_users(base, {4}, fixed), DomainError);
}

TEST_CASE("threshold sweep keeps shared grids and nests", "[region]") {
    const auto s = default_scenario(1);
    const double e = 0.7 * s.bandwidth_hz / s.cfg.k;
    const std::vector<double> grid{1e-3 * e, 0.5 * e, e};
    const auto res = sweep_threshold(s, {0.7, 0.8, 0.9}, grid, 0.5 * e);
    REQUIRE(res.size() == 3);
    for (std::size_t t = 1; t < res.size(); ++t) {
        for (std::size_t i = 0; i < res[t].rsma.points.size(); ++i) {
            CHECK(res[t].rsma.points[i].b_rate <= res[t - 1].rsma.points[i].b_rate * (1.0 + 1e-9));
            CHECK(res[t].noma.points[i].b_rate <= res[t - 1].noma.points[i].b_rate * (1.0 + 1e-9));
        }
        CHECK(res[t].fdma.grid == res[0].fdma.grid);
    }
    const double mid = s.params.a1 + 0.5 * (s.params.a2 - s.params.a1);
    CHECK_THAT(gamma_sem(s.params, mid), WithinAbs(-s.params.c2 / s.params.c1, 1e-12));
    CHECK_THROWS_AS(sweep_threshold(s, {0.96}, grid, e), DomainError);
}
