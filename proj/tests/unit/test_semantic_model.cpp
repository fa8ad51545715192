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
#include <limits>
#include <random>
#include <vector>

#include "semrsma/errors.hpp"
#include "semrsma/semantic_model.hpp"

using namespace semrsma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const LogisticParams kP{0.2, 0.9, 0.25, 0.0, 8};

// Independent inverse: plain bisection on the logistic, no closed form.
double bisect_inverse(const LogisticParams& p, double target, double lo = -500, double hi = 500) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double v = p.a1 + (p.a2 - p.a1) / (1.0 + std::exp(-(p.c1 * mid + p.c2)));
        (v < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("similarity hits the logistic midpoint and asymptotes", "[semantic_model]") {
    CHECK_THAT(similarity(kP, 0.0), WithinAbs(0.55, 1e-15));
    CHECK_THAT(similarity(kP, 1e4), WithinAbs(0.9, 1e-15));
    CHECK_THAT(similarity(kP, -1e4), WithinAbs(0.2, 1e-15));
    CHECK_THAT(similarity(kP, 10.0), WithinAbs(0.2 + 0.7 / (1.0 + std::exp(-2.5)), 1e-15));
}

TEST_CASE("similarity is strictly increasing", "[semantic_model]") {
    double prev = similarity(kP, -50.0);
    for (int i = 1; i < 1000; ++i) {
        const double v = similarity(kP, -50.0 + 0.1 * i);
        REQUIRE(v > prev);
        prev = v;
    }
}

TEST_CASE("semantic rate scales bandwidth, I/L and K", "[semantic_model]") {
    const SemanticConfig cfg{8, 1.0, 0.8};
    const LogisticParams p{0.35, 0.96, 0.35, -0.4, 8};
    const double x = bisect_inverse(p, 0.8);
    CHECK_THAT(semantic_rate(cfg, p, 1e6, x), WithinRel(0.1e6, 1e-9));
    CHECK(semantic_rate(cfg, p, 0.0, 10.0) == 0.0);
    CHECK_THAT(semantic_rate(cfg, p, 1e6, 1e4), WithinRel(0.96e6 / 8, 1e-12));
    CHECK_THAT(semantic_rate_ceiling(cfg, p, 1e6), WithinRel(0.12e6, 1e-12));
}

TEST_CASE("gamma_sem inverts the logistic", "[semantic_model]") {
    CHECK_THAT(gamma_sem(kP, 0.55), WithinAbs(0.0, 1e-12));
    const LogisticParams q{0.1, 0.95, 0.4, -2.0, 4};
    CHECK_THAT(gamma_sem(q, 0.525), WithinAbs(-q.c2 / q.c1, 1e-12));
    CHECK_THAT(gamma_sem(kP, 0.8), WithinAbs(bisect_inverse(kP, 0.8), 1e-9));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(kP.a1 + 1e-6, kP.a2 - 1e-6);
    for (int i = 0; i < 100; ++i) {
        const double s = u(rng);
        REQUIRE_THAT(similarity(kP, gamma_sem(kP, s)), WithinAbs(s, 1e-10));
    }
}

TEST_CASE("gamma_sem rejects unreachable thresholds", "[semantic_model]") {
    CHECK_THROWS_AS(gamma_sem(kP, 0.9), DomainError);
    CHECK_THROWS_AS(gamma_sem(kP, 0.2), DomainError);
    CHECK_THROWS_AS(gamma_sem(kP, 0.95), DomainError);
    CHECK(gamma_sem(kP, 0.9 - 1e-9) > gamma_sem(kP, 0.89));
}

TEST_CASE("gamma_for_rate: threshold branch then logistic inversion", "[semantic_model]") {
    const SemanticConfig cfg{8, 1.0, 0.8};
    const double floor_db = gamma_sem(kP, 0.8);
    CHECK(gamma_for_rate(cfg, kP, 1e6, 0.0) == floor_db);
    CHECK(gamma_for_rate(cfg, kP, 1e6, 0.1e6) == floor_db);

    // 0.105e6 suts/s over 1 MHz at K = 8 needs similarity 0.84.
    const double x = gamma_for_rate(cfg, kP, 1e6, 0.105e6);
    CHECK_THAT(x, WithinAbs(bisect_inverse(kP, 0.84), 1e-9));
    CHECK(semantic_rate(cfg, kP, 1e6, x) >= 0.105e6);

    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 200; ++i) {
        const double s = 0.1125e6 * i / 200.0 * 0.999;
        const double g = gamma_for_rate(cfg, kP, 1e6, s);
        REQUIRE(g >= prev);
        REQUIRE(g >= floor_db);
        prev = g;
    }
    CHECK(std::isinf(gamma_for_rate(cfg, kP, 1e6, 0.9e6 / 8)));
    CHECK_THROWS_AS(gamma_for_rate(cfg, kP, 1e6, 0.9e6 / 8 * 1.001), InfeasibleRate);
}

TEST_CASE("fit_logistic recovers noiseless parameters", "[semantic_model]") {
    std::vector<SimilaritySample> s;
    for (int i = 0; i <= 40; ++i) {
        const double x = -20.0 + i;
        s.push_back({x, similarity(kP, x)});
    }
    const auto r = fit_logistic(s, 8);
    CHECK(r.mse < 1e-6);
    CHECK_THAT(r.params.a1, WithinAbs(0.2, 1e-6));
    CHECK_THAT(r.params.a2, WithinAbs(0.9, 1e-6));
    CHECK_THAT(r.params.c1, WithinAbs(0.25, 1e-6));
    CHECK_THAT(r.params.c2, WithinAbs(0.0, 1e-6));
    CHECK(r.params.k == 8);
}

TEST_CASE("fit_logistic tolerates small noise", "[semantic_model]") {
    const LogisticParams truth{0.1, 0.95, 0.4, -2.0, 4};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> noise(-0.005, 0.005);
    std::vector<SimilaritySample> s;
    for (int i = 0; i <= 60; ++i) {
        const double x = -15.0 + 0.5 * i;
        s.push_back({x, similarity(truth, x) + noise(rng)});
    }
    const auto r = fit_logistic(s, 4);
    CHECK_THAT(r.params.a1, WithinRel(truth.a1, 0.05));
    CHECK_THAT(r.params.a2, WithinRel(truth.a2, 0.05));
    CHECK_THAT(r.params.c1, WithinRel(truth.c1, 0.05));
    CHECK_THAT(r.params.c2, WithinRel(truth.c2, 0.05));
}

TEST_CASE("fit_logistic rejects degenerate samples", "[semantic_model]") {
    std::vector<SimilaritySample> flat;
    for (int i = 0; i < 10; ++i) flat.push_back({double(i), 0.5});
    CHECK_THROWS_AS(fit_logistic(flat, 8), FitError);
    CHECK_THROWS_AS(fit_logistic(std::vector<SimilaritySample>{{0, 0.3}, {1, 0.4}, {2, 0.5}}, 8), FitError);
    std::vector<SimilaritySample> one_snr(6, {3.0, 0.5});
    one_snr[2].similarity = 0.6;
    CHECK_THROWS_AS(fit_logistic(one_snr, 8), FitError);
    std::vector<SimilaritySample> out_of_range{{0, 0.2}, {1, 0.4}, {2, 1.2}, {3, 0.6}};
    CHECK_THROWS_AS(fit_logistic(out_of_range, 8), FitError);
}

TEST_CASE("parameter and config validation", "[semantic_model]") {
    CHECK_THROWS_AS((LogisticParams{0.5, 0.4, 1, 0, 1}.validate()), DomainError);
    CHECK_THROWS_AS((LogisticParams{0.1, 0.9, 0, 0, 1}.validate()), DomainError);
    CHECK_THROWS_AS((SemanticConfig{8, 1.0, 0.95}.validate(kP)), DomainError);
    CHECK_NOTHROW((SemanticConfig{8, 1.0, 0.8}.validate(kP)));
    CHECK(db_to_linear(10.0) == 10.0);
    CHECK(std::isinf(linear_to_db(0.0)));
}
