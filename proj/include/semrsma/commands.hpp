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

// Batch commands behind the semrsma tool. Each writes one CSV, one SVG plot
// and a run.json report into the output directory and returns an exit code:
// 0 on success, 1 on a runtime failure, 2 on a configuration error.

#pragma once

#include <filesystem>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "semrsma/config.hpp"
#include "semrsma/errors.hpp"
#include "semrsma/semantic_model.hpp"

namespace semrsma {

namespace fs = std::filesystem;

struct CommandEnv {
    fs::path out_dir = "out";
    int jobs = 1;
    std::ostream* log = &std::cerr;
};

namespace io {

/// Runs a command body, mapping configuration errors to exit code 2 and any
/// other failure to exit code 1.
template <class F>
int guarded(CommandEnv env, F&& body) {
    try {
        fs::create_directories(env.out_dir);
        return body();
    } catch (const ConfigError& e) {
        *env.log << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        *env.log << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace io

int cmd_region(const RunConfig& cfg, const CommandEnv& env);

/// Reads `snr_db,similarity` samples (header row required, '#' comments
/// skipped).
std::vector<SimilaritySample> read_similarity_csv(const fs::path& path);

int cmd_fit(const fs::path& samples_csv, int k, const CommandEnv& env);
int cmd_sweep_users(const RunConfig& cfg, const CommandEnv& env);
int cmd_sweep_threshold(const RunConfig& cfg, const CommandEnv& env);
int cmd_alpha(const RunConfig& cfg, const CommandEnv& env);

}  // namespace semrsma
