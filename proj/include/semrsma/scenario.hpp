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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "semrsma/errors.hpp"
#include "semrsma/semantic_model.hpp"

namespace semrsma {

// Large-scale attenuation rho0 * (1/d)^beta.
struct PathLossModel {
    double rho0_db = -30.0;
    double exponent = 3.0;
    double distance_m = 30.0;

    void validate() const {
        if (!(distance_m >= 1.0)) throw DomainError("path loss: distance_m must be >= 1");
        if (!(exponent > 0.0)) throw DomainError("path loss: exponent must be > 0");
    }

    double linear_gain() const { return db_to_linear(rho0_db) * std::pow(distance_m, -exponent); }

    friend bool operator==(const PathLossModel&, const PathLossModel&) = default;
};

// Channel draws: std::mt19937_64 seeded with `seed`; each gain consumes one
// 64-bit output u64, u = (u64 >> 11) * 2^-53, e = -ln(1 - u). Draw 0 is the
// bit user, draws 1..N are semantic users in generation order. The stream is
// a prefix code, so N and N+1 users share the first N+1 gains.
inline constexpr const char* kChannelRngName = "mt19937_64/inverse-cdf-exponential/v1";

inline std::vector<double> draw_channels(const PathLossModel& pl, int n_users, std::uint64_t seed) {
    pl.validate();
    if (n_users < 1) throw DomainError("draw_channels: n_users must be >= 1");
    std::mt19937_64 rng(seed);
    const double mean = pl.linear_gain();
    std::vector<double> out(static_cast<std::size_t>(n_users));
    for (auto& g : out) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        g = mean * -std::log1p(-u);
    }
    return out;
}

inline double sinr_db(double signal_w, double interference_w, double noise_w) {
    if (signal_w <= 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal_w / (interference_w + noise_w));
}

struct Scenario {
    double bandwidth_hz = 1e6;
    double noise_psd_dbm_hz = -140.0;
    double p_max_watt = 1.0;
    double gain_bit = 0.0;
    std::vector<double> gains_sem;       // sorted descending
    std::vector<std::size_t> sem_order;  // sem_order[j] = input index of sorted user j
    SemanticConfig cfg;
    LogisticParams params;
    std::uint64_t seed = 0;

    std::size_t n_sem() const { return gains_sem.size(); }

    /// Noise power over the whole band, in watts.
    double noise_w() const;

    void validate() const {
        if (!(bandwidth_hz > 0.0)) throw DomainError("scenario: bandwidth_hz must be > 0");
        if (!(p_max_watt > 0.0)) throw DomainError("scenario: p_max_watt must be > 0");
        if (!(gain_bit > 0.0)) throw DomainError("scenario: gain_bit must be > 0");
        for (double g : gains_sem)
            if (!(g > 0.0)) throw DomainError("scenario: semantic gains must be > 0");
        if (!std::is_sorted(gains_sem.begin(), gains_sem.end(), std::greater<>{}))
            throw DomainError("scenario: semantic gains must be sorted descending");
        params.validate();
        cfg.validate(params);
    }
};

inline double noise_power(const Scenario& scn, double bandwidth_hz) {
    return db_to_linear(scn.noise_psd_dbm_hz - 30.0) * bandwidth_hz;
}

inline double Scenario::noise_w() const { return noise_power(*this, bandwidth_hz); }

/// Builds a scenario from unsorted semantic gains. Users are re-indexed by
/// descending gain (ties keep input order) and the permutation is kept in
/// `sem_order`.
inline Scenario make_scenario(double bandwidth_hz, double noise_psd_dbm_hz, double p_max_watt, double gain_bit,
                              std::vector<double> gains_sem, SemanticConfig cfg, LogisticParams params,
                              std::uint64_t seed = 0) {
    Scenario s;
    s.bandwidth_hz = bandwidth_hz;
    s.noise_psd_dbm_hz = noise_psd_dbm_hz;
    s.p_max_watt = p_max_watt;
    s.gain_bit = gain_bit;
    s.cfg = cfg;
    s.params = params;
    s.seed = seed;
    s.sem_order.resize(gains_sem.size());
    std::iota(s.sem_order.begin(), s.sem_order.end(), std::size_t{0});
    std::stable_sort(s.sem_order.begin(), s.sem_order.end(),
                     [&](std::size_t a, std::size_t b) { return gains_sem[a] > gains_sem[b]; });
    s.gains_sem.reserve(gains_sem.size());
    for (std::size_t i : s.sem_order) s.gains_sem.push_back(gains_sem[i]);
    s.validate();
    return s;
}

/// Draws 1 + n_sem Rayleigh-faded gains (bit user first) and builds the
/// scenario.
inline Scenario generate_scenario(double bandwidth_hz, double noise_psd_dbm_hz, double p_max_watt,
                                  const PathLossModel& pl, int n_sem, SemanticConfig cfg, LogisticParams params,
                                  std::uint64_t seed) {
    if (n_sem < 0) throw DomainError("generate_scenario: n_sem must be >= 0");
    auto g = draw_channels(pl, n_sem + 1, seed);
    std::vector<double> sem(g.begin() + 1, g.end());
    return make_scenario(bandwidth_hz, noise_psd_dbm_hz, p_max_watt, g.front(), std::move(sem), cfg, params, seed);
}

/// Same scenario with only the first `n` semantic users in generation order.
inline Scenario with_first_users(const Scenario& base, std::size_t n) {
    if (n > base.n_sem()) throw DomainError("with_first_users: not enough semantic users in base scenario");
    std::vector<double> unsorted(base.n_sem());
    for (std::size_t j = 0; j < base.n_sem(); ++j) unsorted[base.sem_order[j]] = base.gains_sem[j];
    unsorted.resize(n);
    return make_scenario(base.bandwidth_hz, base.noise_psd_dbm_hz, base.p_max_watt, base.gain_bit, std::move(unsorted),
                         base.cfg, base.params, base.seed);
}

inline Scenario with_threshold(const Scenario& base, double s_th) {
    Scenario s = base;
    s.cfg.s_th = s_th;
    s.validate();
    return s;
}

}  // namespace semrsma
