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

// Run configuration: JSON with nested blocks, unknown keys rejected.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "semrsma/errors.hpp"
#include "semrsma/region.hpp"
#include "semrsma/scenario.hpp"
#include "semrsma/semantic_model.hpp"

namespace semrsma {

struct ScenarioBlock {
    double bandwidth_hz = 1e6;
    double noise_psd_dbm_hz = -140.0;
    double p_max_watt = 1.0;
    PathLossModel path_loss;
    int n_sem_users = 4;
    std::uint64_t seed = 15;
};

struct ModelBlock {
    SemanticConfig semantic;
    std::vector<LogisticParams> logistic{{0.35, 0.96, 0.35, -0.4, 8}};

    /// Logistic set fitted for the configured K.
    const LogisticParams& params() const {
        for (const auto& p : logistic)
            if (p.k == semantic.k) return p;
        throw ConfigError("model.logistic", "no logistic set for k = " + std::to_string(semantic.k));
    }
};

struct SolverBlock {
    double tau_bps = 1.0;
    int max_sca_iterations = 200;
    int max_barrier_steps = 500;
    std::vector<double> start_scales{1.0, 1.5, 2.0};
};

struct SweepBlock {
    std::vector<double> s_grid_suts_per_s;  // empty: default grid
    std::vector<int> n_values{1, 2, 3, 4, 5, 6, 7};
    double fixed_s_suts_per_s = 1e5;
    std::vector<double> s_th_values{0.7, 0.8, 0.9};
    double gap_s_suts_per_s = 43750.0;
    int alpha_n_sem_users = 1;
    int r2_points = 20;
};

struct OutputBlock {
    std::string directory = "out";
    bool svg = true;
};

struct RunConfig {
    ScenarioBlock scenario;
    ModelBlock model;
    SolverBlock solver;
    SweepBlock sweep;
    OutputBlock output;

    ScaOptions sca_options() const {
        ScaOptions o;
        o.tau_bps = solver.tau_bps;
        o.max_iterations = solver.max_sca_iterations;
        o.start_scales = solver.start_scales;
        o.solver.max_barrier_steps = solver.max_barrier_steps;
        return o;
    }

    /// Scenario with `n` semantic users (n < 0: scenario.n_sem_users).
    Scenario make_scenario(int n = -1) const {
        const ScenarioBlock& s = scenario;
        return generate_scenario(s.bandwidth_hz, s.noise_psd_dbm_hz, s.p_max_watt, s.path_loss,
                                 n < 0 ? s.n_sem_users : n, model.semantic, model.params(), s.seed);
    }

    std::vector<double> s_grid(const Scenario& scn) const {
        return sweep.s_grid_suts_per_s.empty() ? default_s_grid(scn) : sweep.s_grid_suts_per_s;
    }
};

nlohmann::ordered_json to_json(const RunConfig& c);

/// Parses a configuration document. Missing keys keep their defaults;
/// unknown keys and out-of-range values raise ConfigError naming the key.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

/// Digest of everything except the output block, so the same physics in a
/// different output directory carries the same tag.
std::string config_digest(const RunConfig& c);

}  // namespace semrsma
