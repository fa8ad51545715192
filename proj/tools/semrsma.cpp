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

// semrsma command-line front end.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "semrsma/commands.hpp"

namespace {

struct Common {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
};

void add_common(CLI::App* sub, Common& c, bool needs_config) {
    auto* opt = sub->add_option("--config", c.config, "JSON run configuration")->check(CLI::ExistingFile);
    if (needs_config) opt->required();
    sub->add_option("--out", c.out, "output directory (overrides output.directory)");
    sub->add_option("--seed", c.seed, "channel seed (overrides scenario.seed)");
    sub->add_option("--jobs", c.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rate regions of semantic and bit users under FDMA, NOMA and RSMA"};
    app.require_subcommand(1);

    Common common;
    auto* region = app.add_subcommand("region", "rate regions of all schemes and the time-sharing envelope");
    auto* users = app.add_subcommand("sweep-users", "bit rate against the number of semantic users");
    auto* threshold = app.add_subcommand("sweep-threshold", "rate regions for several similarity thresholds");
    auto* alpha = app.add_subcommand("alpha", "split fraction of the first bit stream");
    auto* fit = app.add_subcommand("fit", "fit the logistic similarity model to samples");
    for (auto* s : {region, users, threshold, alpha}) add_common(s, common, true);

    std::string samples;
    int k = 8;
    fit->add_option("--samples", samples, "CSV with header snr_db,similarity")->required()->check(CLI::ExistingFile);
    fit->add_option("--k", k, "semantic symbols per word")->check(CLI::PositiveNumber);
    fit->add_option("--out", common.out, "output directory")->default_val("out");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    semrsma::CommandEnv env;
    env.jobs = common.jobs;
    if (fit->parsed()) {
        env.out_dir = common.out;
        return semrsma::cmd_fit(samples, k, env);
    }

    semrsma::RunConfig cfg;
    try {
        cfg = semrsma::load_config(common.config);
    } catch (const semrsma::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    if (common.seed) cfg.scenario.seed = *common.seed;
    if (!common.out.empty()) cfg.output.directory = common.out;
    env.out_dir = cfg.output.directory;

    if (region->parsed()) return semrsma::cmd_region(cfg, env);
    if (users->parsed()) return semrsma::cmd_sweep_users(cfg, env);
    if (threshold->parsed()) return semrsma::cmd_sweep_threshold(cfg, env);
    return semrsma::cmd_alpha(cfg, env);
}
