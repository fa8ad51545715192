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

// Sentence-similarity model for text semantic users.
//
// Similarity is a generalized logistic function of the received SNR in dB:
//
//   eps(x) = a1 + (a2 - a1) / (1 + exp(-(c1 * x + c2)))
//
// and the semantic rate delivered over a band W is W * (I/L) / K * eps(x),
// in semantic units (suts) per second.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "semrsma/errors.hpp"

namespace semrsma {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double lin) {
    if (lin <= 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(lin);
}

struct LogisticParams {
    double a1 = 0.0;  // lower asymptote
    double a2 = 1.0;  // upper asymptote
    double c1 = 1.0;  // growth rate, per dB
    double c2 = 0.0;  // midpoint offset
    int k = 1;        // semantic symbols per word this set was fitted for

    void validate() const {
        if (!(0.0 <= a1 && a1 < a2 && a2 <= 1.0))
            throw DomainError("logistic params: require 0 <= a1 < a2 <= 1");
        if (!(c1 > 0.0)) throw DomainError("logistic params: require c1 > 0");
        if (k < 1) throw DomainError("logistic params: require k >= 1");
    }

    friend bool operator==(const LogisticParams&, const LogisticParams&) = default;
};

struct SemanticConfig {
    int k = 8;              // symbols per word
    double i_per_l = 1.0;   // suts per word
    double s_th = 0.8;      // similarity threshold

    void validate(const LogisticParams& p) const {
        if (k < 1) throw DomainError("semantic config: k must be >= 1");
        if (!(i_per_l > 0.0)) throw DomainError("semantic config: i_per_l must be > 0");
        if (!(p.a1 <= s_th && s_th <= p.a2))
            throw DomainError("semantic config: s_th must lie in [a1, a2]");
    }

    friend bool operator==(const SemanticConfig&, const SemanticConfig&) = default;
};

inline double similarity(const LogisticParams& p, double snr_db) {
    const double z = p.c1 * snr_db + p.c2;
    return p.a1 + (p.a2 - p.a1) / (1.0 + std::exp(-z));
}

/// Semantic rate in suts/s over `bandwidth_hz` at the given SNR.
inline double semantic_rate(const SemanticConfig& cfg, const LogisticParams& p, double bandwidth_hz,
                            double snr_db) {
    if (bandwidth_hz <= 0.0) return 0.0;
    return bandwidth_hz * cfg.i_per_l / cfg.k * similarity(p, snr_db);
}

/// Largest semantic rate reachable over `bandwidth_hz` (similarity -> a2).
inline double semantic_rate_ceiling(const SemanticConfig& cfg, const LogisticParams& p,
                                    double bandwidth_hz) {
    return p.a2 * bandwidth_hz * cfg.i_per_l / cfg.k;
}

/// SNR floor (dB) that guarantees similarity >= s_th.
inline double gamma_sem(const LogisticParams& p, double s_th) {
    if (!(s_th > p.a1 && s_th < p.a2))
        throw DomainError("similarity threshold " + std::to_string(s_th) +
                          " unreachable: must lie strictly inside (a1, a2)");
    return -(p.c2 + std::log((p.a2 - p.a1) / (s_th - p.a1) - 1.0)) / p.c1;
}

/// Bisection tolerance, in dB, used when inverting the logistic for a rate.
inline constexpr double kRateInversionTolDb = 1e-10;

/// SNR floor (dB) for a semantic user that must deliver `target_rate` suts/s
/// over `bandwidth_hz` while also meeting the similarity threshold.
///
/// On the first branch (target <= s_th * W * (I/L) / K) the threshold
/// dominates and the result is gamma_sem. Above it, the logistic is inverted
/// by bisection; the returned value is the upper end of the final bracket, so
/// semantic_rate(result) >= target_rate always holds. Returns +inf exactly at
/// the a2 ceiling.
inline double gamma_for_rate(const SemanticConfig& cfg, const LogisticParams& p, double bandwidth_hz,
                             double target_rate) {
    const double floor_db = gamma_sem(p, cfg.s_th);
    const double ceiling = semantic_rate_ceiling(cfg, p, bandwidth_hz);
    if (target_rate > ceiling)
        throw InfeasibleRate("target semantic rate " + std::to_string(target_rate) +
                             " exceeds ceiling " + std::to_string(ceiling));
    if (target_rate >= ceiling) return std::numeric_limits<double>::infinity();
    if (target_rate <= cfg.s_th * bandwidth_hz * cfg.i_per_l / cfg.k) return floor_db;

    auto rate_at = [&](double x) { return semantic_rate(cfg, p, bandwidth_hz, x); };
    double lo = floor_db;
    double step = 1.0;
    double hi = lo + step;
    while (rate_at(hi) < target_rate) {
        lo = hi;
        step *= 2.0;
        hi = lo + step;
        if (!std::isfinite(hi)) return std::numeric_limits<double>::infinity();
    }
    while (hi - lo > kRateInversionTolDb) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (rate_at(mid) >= target_rate)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

struct SimilaritySample {
    double snr_db = 0.0;
    double similarity = 0.0;
};

struct FitResult {
    LogisticParams params;
    double mse = 0.0;
    int iterations = 0;
};

namespace detail {

inline double logistic_mse(std::span<const SimilaritySample> s, const Eigen::Vector4d& th) {
    double acc = 0.0;
    for (const auto& smp : s) {
        const double z = th[2] * smp.snr_db + th[3];
        const double r = th[0] + (th[1] - th[0]) / (1.0 + std::exp(-z)) - smp.similarity;
        acc += r * r;
    }
    return acc / static_cast<double>(s.size());
}

}  // namespace detail

/// Least-squares fit of the four logistic coefficients to (snr_db, similarity)
/// samples by Levenberg-Marquardt (damped Gauss-Newton).
///
/// Initialization is deterministic: the asymptotes start at the sample
/// min/max, the midpoint at the SNR whose similarity is closest to their mean,
/// and the growth rate from the steepest finite-difference slope of the
/// SNR-sorted samples (c1 = 4 * slope / (a2 - a1)).
inline FitResult fit_logistic(std::span<const SimilaritySample> samples, int k, int max_iterations = 500) {
    if (samples.size() < 4) throw FitError("fit_logistic: need at least 4 samples");
    if (k < 1) throw FitError("fit_logistic: k must be >= 1");
    std::vector<SimilaritySample> s(samples.begin(), samples.end());
    for (const auto& smp : s) {
        if (!std::isfinite(smp.snr_db) || !(smp.similarity >= 0.0 && smp.similarity <= 1.0))
            throw FitError("fit_logistic: similarity samples must lie in [0, 1]");
    }
    std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.snr_db < b.snr_db; });
    if (s.front().snr_db == s.back().snr_db) throw FitError("fit_logistic: need two distinct SNR values");
    auto [ymin_it, ymax_it] = std::minmax_element(
        s.begin(), s.end(), [](const auto& a, const auto& b) { return a.similarity < b.similarity; });
    const double ymin = ymin_it->similarity;
    const double ymax = ymax_it->similarity;
    if (ymax - ymin < 1e-12) throw FitError("fit_logistic: similarity is constant, logistic is undetermined");

    const double ymid = 0.5 * (ymin + ymax);
    double xmid = s.front().snr_db;
    double best = std::numeric_limits<double>::infinity();
    double slope = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::abs(s[i].similarity - ymid) < best) {
            best = std::abs(s[i].similarity - ymid);
            xmid = s[i].snr_db;
        }
        if (i + 1 < s.size() && s[i + 1].snr_db > s[i].snr_db) {
            slope = std::max(slope, (s[i + 1].similarity - s[i].similarity) / (s[i + 1].snr_db - s[i].snr_db));
        }
    }
    double c1 = 4.0 * slope / (ymax - ymin);
    if (!(c1 > 0.0)) c1 = 4.0 / (s.back().snr_db - s.front().snr_db);

    Eigen::Vector4d th(ymin, ymax, c1, -c1 * xmid);
    double cost = detail::logistic_mse(s, th);
    double lambda = 1e-3;
    int it = 0;
    bool done = false;
    for (; it < max_iterations && !done; ++it) {
        Eigen::Matrix4d jtj = Eigen::Matrix4d::Zero();
        Eigen::Vector4d jtr = Eigen::Vector4d::Zero();
        for (const auto& smp : s) {
            const double z = th[2] * smp.snr_db + th[3];
            const double sig = 1.0 / (1.0 + std::exp(-z));
            const double r = th[0] + (th[1] - th[0]) * sig - smp.similarity;
            const double dz = (th[1] - th[0]) * sig * (1.0 - sig);
            const Eigen::Vector4d g(1.0 - sig, sig, dz * smp.snr_db, dz);
            jtj += g * g.transpose();
            jtr += g * r;
        }
        bool improved = false;
        while (lambda < 1e12) {
            Eigen::Matrix4d a = jtj;
            a.diagonal() += lambda * (jtj.diagonal().array() + 1e-12).matrix();
            const Eigen::Vector4d step = a.ldlt().solve(-jtr);
            const Eigen::Vector4d cand = th + step;
            const double c = detail::logistic_mse(s, cand);
            if (std::isfinite(c) && c <= cost) {
                const double gain = cost - c;
                th = cand;
                cost = c;
                lambda = std::max(lambda / 3.0, 1e-12);
                improved = true;
                done = gain <= 1e-15 * std::max(cost, 1e-30) || step.norm() <= 1e-13 * (th.norm() + 1e-13);
                break;
            }
            lambda *= 4.0;
        }
        if (!improved) done = true;
    }

    FitResult out;
    out.params = LogisticParams{th[0], th[1], th[2], th[3], k};
    out.mse = cost;
    out.iterations = it;
    if (!(out.params.c1 > 0.0)) throw FitError("fit_logistic: fitted growth rate is not positive");
    return out;
}

}  // namespace semrsma
