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
#include <vector>

#include "semrsma/scenario.hpp"

using namespace semrsma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const LogisticParams kParams{0.35, 0.96, 0.35, -0.4, 8};
const SemanticConfig kCfg{8, 1.0, 0.8};
}  // namespace

TEST_CASE("noise power converts dBm/Hz to watts", "[scenario]") {
    Scenario s;
    s.noise_psd_dbm_hz = -140.0;
    CHECK_THAT(noise_power(s, 1e6), WithinRel(1e-11, 1e-12));
    CHECK_THAT(noise_power(s, 0.5e6), WithinRel(0.5e-11, 1e-12));
    CHECK_THAT(noise_power(s, 1.0), WithinRel(1e-17, 1e-12));
}

TEST_CASE("path loss mean gain", "[scenario]") {
    const PathLossModel pl;
    CHECK_THAT(pl.linear_gain(), WithinRel(1e-3 * std::pow(30.0, -3.0), 1e-12));
    CHECK_THROWS_AS((PathLossModel{-30, 3, 0.5}.validate()), DomainError);
    CHECK_THROWS_AS((PathLossModel{-30, 0, 30}.validate()), DomainError);
}

TEST_CASE("channel draws are seeded and prefix-stable", "[scenario]") {
    const PathLossModel pl;
    const auto a = draw_channels(pl, 5, 42);
    const auto b = draw_channels(pl, 5, 42);
    const auto c = draw_channels(pl, 8, 42);
    CHECK(a == b);
    for (int i = 0; i < 5; ++i) CHECK(a[i] == c[i]);
    CHECK(draw_channels(pl, 5, 43) != a);
    for (double g : c) CHECK(g > 0.0);
}

TEST_CASE("exponential fading has unit mean", "[scenario]") {
    const PathLossModel pl;
    const auto g = draw_channels(pl, 100000, 3);
    double sum = 0.0;
    for (double v : g) sum += v;
    CHECK_THAT(sum / g.size() / pl.linear_gain(), WithinAbs(1.0, 0.02));
}

TEST_CASE("sinr_db", "[scenario]") {
    CHECK_THAT(sinr_db(1e-9, 0.0, 1e-11), WithinAbs(20.0, 1e-12));
    CHECK_THAT(sinr_db(1e-9, 9e-11, 1e-11), WithinAbs(10.0, 1e-12));
    CHECK(sinr_db(0.0, 1.0, 1.0) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("scenario sorts semantic users and keeps the permutation", "[scenario]") {
    const auto s = make_scenario(1e6, -140, 1.0, 1e-8, {1e-9, 3e-9, 2e-9, 3e-9}, kCfg, kParams);
    CHECK(s.gains_sem == std::vector<double>{3e-9, 3e-9, 2e-9, 1e-9});
    CHECK(s.sem_order == std::vector<std::size_t>{1, 3, 2, 0});
    CHECK_THROWS_AS(make_scenario(1e6, -140, 1.0, 0.0, {1e-9}, kCfg, kParams), DomainError);
    CHECK_THROWS_AS(make_scenario(0.0, -140, 1.0, 1e-9, {1e-9}, kCfg, kParams), DomainError);
}

TEST_CASE("generated scenarios nest by user count", "[scenario]") {
    const PathLossModel pl;
    const auto big = generate_scenario(1e6, -140, 1.0, pl, 6, kCfg, kParams, 9);
    const auto small = generate_scenario(1e6, -140, 1.0, pl, 3, kCfg, kParams, 9);
    const auto cut = with_first_users(big, 3);
    CHECK(cut.gains_sem == small.gains_sem);
    CHECK(cut.gain_bit == small.gain_bit);
    CHECK(with_threshold(big, 0.9).cfg.s_th == 0.9);
    CHECK_THROWS_AS(with_first_users(big, 7), DomainError);
}
