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

// FDMA boundary points.
//
// With disjoint bands the bit rate at a fixed semantic rate S is maximized by
// giving every semantic user full power and the smallest band that still
// carries S, then handing the rest of the band to the bit user at full power.
// The per-user semantic rate f(W) = W/K * (I/L) * eps(P g / (W N0)) is
// increasing in W whenever the SNR meets the similarity floor, so the minimal
// band is the unique root of f(W) = S below W_h = P g / (gamma_sem N0).

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "semrsma/errors.hpp"
#include "semrsma/scenario.hpp"
#include "semrsma/semantic_model.hpp"

namespace semrsma {

struct FdmaAllocation {
    std::vector<double> w_sem;
    double w_bit = 0.0;
    std::vector<double> p_sem;
    double p_bit = 0.0;
    double bit_rate = 0.0;
};

/// Semantic rate of one FDMA user holding band `w_hz` at transmit power `power_w`.
inline double fdma_user_rate(const Scenario& scn, double gain, double power_w, double w_hz) {
    if (w_hz <= 0.0) return 0.0;
    const double snr = power_w * gain / noise_power(scn, w_hz);
    return semantic_rate(scn.cfg, scn.params, w_hz, linear_to_db(snr));
}

/// Largest band a user may occupy before its SNR falls below the similarity
/// floor.
inline double fdma_max_band(const Scenario& scn, double gain, double power_w) {
    const double floor_lin = db_to_linear(gamma_sem(scn.params, scn.cfg.s_th));
    return power_w * gain / (floor_lin * noise_power(scn, 1.0));
}

/// Minimal band (Hz) that carries `target_rate` at transmit power `power_w`
/// (full power by default).
inline double min_bandwidth_user(const Scenario& scn, double gain, double target_rate, double power_w = -1.0) {
    if (power_w < 0.0) power_w = scn.p_max_watt;
    if (!(target_rate > 0.0)) throw DomainError("min_bandwidth_user: target_rate must be > 0");
    const double w_hi_bound = fdma_max_band(scn, gain, power_w);
    auto f = [&](double w) { return fdma_user_rate(scn, gain, power_w, w); };
    if (f(w_hi_bound) < target_rate)
        throw InfeasibleUser("FDMA user with gain " + std::to_string(gain) + " cannot carry " +
                             std::to_string(target_rate) + " suts/s above the similarity floor");
    double lo = w_hi_bound * 1e-9;
    while (f(lo) >= target_rate && lo > 1e-300) lo *= 1e-3;
    double hi = w_hi_bound;
    while (hi - lo > 1e-14 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) >= target_rate)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

inline double fdma_bit_rate(const Scenario& scn, double w_bit, double p_bit) {
    if (w_bit <= 0.0) return 0.0;
    return w_bit * std::log2(1.0 + p_bit * scn.gain_bit / noise_power(scn, w_bit));
}

inline FdmaAllocation fdma_boundary_point(const Scenario& scn, double target_rate) {
    if (target_rate < 0.0) throw DomainError("fdma_boundary_point: target_rate must be >= 0");
    FdmaAllocation a;
    const std::size_t n = scn.n_sem();
    a.w_sem.assign(n, 0.0);
    a.p_sem.assign(n, 0.0);
    a.p_bit = scn.p_max_watt;
    if (target_rate > 0.0) {
        double used = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            try {
                a.w_sem[j] = min_bandwidth_user(scn, scn.gains_sem[j], target_rate);
            } catch (const InfeasibleUser& e) {
                throw PointInfeasible(std::string("fdma: ") + e.what());
            }
            a.p_sem[j] = scn.p_max_watt;
            used += a.w_sem[j];
        }
        if (used > scn.bandwidth_hz * (1.0 + 1e-9))
            throw PointInfeasible("fdma: semantic users need " + std::to_string(used) + " Hz of " +
                                  std::to_string(scn.bandwidth_hz));
        a.w_bit = std::max(0.0, scn.bandwidth_hz - used);
    } else {
        a.w_bit = scn.bandwidth_hz;
    }
    a.bit_rate = fdma_bit_rate(scn, a.w_bit, a.p_bit);
    return a;
}

/// Semantic rate at which the FDMA bit rate reaches zero, or the largest rate
/// every user can carry above the similarity floor if that comes first.
inline double fdma_max_semantic_rate(const Scenario& scn) {
    if (scn.n_sem() == 0) return 0.0;
    double s_hi = semantic_rate_ceiling(scn.cfg, scn.params, scn.bandwidth_hz);
    for (double g : scn.gains_sem)
        s_hi = std::min(s_hi, fdma_user_rate(scn, g, scn.p_max_watt, fdma_max_band(scn, g, scn.p_max_watt)));
    auto total_band = [&](double s) {
        double sum = 0.0;
        for (double g : scn.gains_sem) sum += min_bandwidth_user(scn, g, s);
        return sum;
    };
    if (total_band(s_hi) <= scn.bandwidth_hz) return s_hi;
    double lo = 0.0, hi = s_hi;
    while (hi - lo > 1e-13 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (total_band(mid) <= scn.bandwidth_hz)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace semrsma
