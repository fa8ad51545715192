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

#include "semrsma/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "semrsma/digest.hpp"
#include "semrsma/plot.hpp"
#include "semrsma/region.hpp"
#include "semrsma/rsma.hpp"

namespace semrsma {

namespace io {

std::string g12(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.12g", v);
    return b;
}

/// CSV with LF endings and a leading comment line naming the inputs.
class CsvFile {
public:
    CsvFile(const fs::path& path, const std::string& comment, const std::string& header)
        : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot write " + path.string());
        out_ << "# " << comment << '\n' << header << '\n';
    }

    template <class... T>
    void row(const T&... cells) {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
        out_ << '\n';
    }

private:
    static std::string cell(double v) { return g12(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(bool v) { return v ? "1" : "0"; }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(const char* v) { return v; }

    std::ofstream out_;
};

std::string provenance(const RunConfig& cfg) {
    return "config_digest=" + config_digest(cfg) + " seed=" + std::to_string(cfg.scenario.seed) +
           " p_max_watt=" + g12(cfg.scenario.p_max_watt) +
           " path_loss_exponent=" + g12(cfg.scenario.path_loss.exponent);
}

std::string opt_int(int v) { return v < 0 ? std::string() : std::to_string(v); }

void write_svg_file(const fs::path& path, const std::vector<plot::Panel>& panels, const std::string& tag) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    plot::write_svg(os, panels, tag);
}

void write_run_json(const fs::path& path, const std::string& command, const RunConfig* cfg,
                           const std::string& scenario_dig, int warnings, const std::vector<std::string>& outputs,
                           nlohmann::ordered_json summary) {
    nlohmann::ordered_json j;
    j["command"] = command;
    if (cfg) {
        j["config_digest"] = config_digest(*cfg);
        j["seed"] = cfg->scenario.seed;
        j["channel_rng"] = kChannelRngName;
    }
    if (!scenario_dig.empty()) j["scenario_digest"] = scenario_dig;
    j["warnings"] = warnings;
    j["outputs"] = outputs;
    j["summary"] = std::move(summary);
    if (cfg) j["config"] = to_json(*cfg);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << j.dump(2) << '\n';
}

plot::Series boundary_series(const RegionBoundary& b, bool dashed = false) {
    plot::Series s{to_string(b.scheme), {}, dashed, false};
    for (const auto& p : b.points) s.xy.emplace_back(p.s_rate * 1e-6, p.b_rate * 1e-6);
    if (!b.points.empty()) s.xy.emplace_back(b.points.back().s_rate * 1e-6, 0.0);
    return s;
}

/// Output file list for run.json; the plot is listed only when written.
std::vector<std::string> outputs(const RunConfig& cfg, std::vector<std::string> files, const std::string& svg) {
    if (cfg.output.svg) files.push_back(svg);
    return files;
}

}  // namespace io

/// Rate regions of all schemes plus the time-sharing envelope.
int cmd_region(const RunConfig& cfg, const CommandEnv& env) {
    return io::guarded(env, [&] {
        const Scenario scn = cfg.make_scenario();
        SweepOptions so{env.jobs, cfg.sca_options()};
        const auto grid = cfg.s_grid(scn);
        std::vector<RegionBoundary> bs;
        for (Scheme s : {Scheme::Fdma, Scheme::Noma, Scheme::Rsma}) bs.push_back(sweep_region(scn, s, grid, so));
        bs.push_back(timeshare_hull({bs[0], bs[1], bs[2]}));

        int warnings = 0;
        io::CsvFile csv(env.out_dir / "region.csv", io::provenance(cfg),
                        "scheme,s_suts_per_s,bit_rate_bps,q,active_splits,iterations,feasible");
        for (const auto& b : bs)
            for (const auto& p : b.samples) {
                warnings += p.warning ? 1 : 0;
                csv.row(to_string(b.scheme), p.s_rate, p.feasible ? p.b_rate : 0.0, io::opt_int(p.q),
                        io::opt_int(p.active_splits), p.iterations, p.feasible);
            }
        if (cfg.output.svg) {
            plot::Panel pan{"Rate regions, N_s = " + std::to_string(scn.n_sem()), "semantic rate (Msuts/s)",
                            "bit rate (Mbit/s)", {}};
            for (std::size_t i = 0; i < bs.size(); ++i) pan.series.push_back(io::boundary_series(bs[i], i == 3));
            io::write_svg_file(env.out_dir / "region.svg", {pan}, io::provenance(cfg));
        }
        nlohmann::ordered_json summary;
        for (const auto& b : bs) {
            summary[to_string(b.scheme)] = {{"points", b.points.size()},
                                            {"area", region_area(b)},
                                            {"max_s_suts_per_s", b.points.empty() ? 0.0 : b.points.back().s_rate}};
        }
        io::write_run_json(env.out_dir / "run.json", "region", &cfg, scenario_digest(scn), warnings,
                           io::outputs(cfg, {"region.csv"}, "region.svg"), summary);
        if (warnings > 0) *env.log << "region: " << warnings << " point(s) failed to solve and were marked infeasible\n";
        return 0;
    });
}

std::vector<SimilaritySample> read_similarity_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string(), "cannot open samples file");
    std::vector<SimilaritySample> out;
    std::string line;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != "snr_db,similarity")
                throw ConfigError(path.string() + ":" + std::to_string(lineno), "expected header 'snr_db,similarity'");
            header = true;
            continue;
        }
        std::istringstream ss(line);
        SimilaritySample s;
        char comma = 0;
        if (!(ss >> s.snr_db >> comma >> s.similarity) || comma != ',')
            throw ConfigError(path.string() + ":" + std::to_string(lineno), "malformed sample row");
        out.push_back(s);
    }
    return out;
}

int cmd_fit(const fs::path& samples_csv, int k, const CommandEnv& env) {
    return io::guarded(env, [&] {
        const auto samples = read_similarity_csv(samples_csv);
        const FitResult fit = fit_logistic(samples, k);
        std::ifstream raw(samples_csv, std::ios::binary);
        std::ostringstream ss;
        ss << raw.rdbuf();
        const std::string dig = digest_string(fnv1a64(ss.str()));

        nlohmann::ordered_json params = {{"k", fit.params.k},
                                         {"a1", fit.params.a1},
                                         {"a2", fit.params.a2},
                                         {"c1", fit.params.c1},
                                         {"c2", fit.params.c2}};
        {
            std::ofstream os(env.out_dir / "params.json", std::ios::binary);
            os << params.dump(2) << '\n';
        }
        io::CsvFile csv(env.out_dir / "fit.csv", "samples_digest=" + dig, "snr_db,similarity,fitted");
        for (const auto& s : samples) csv.row(s.snr_db, s.similarity, similarity(fit.params, s.snr_db));
        {
            plot::Series data{"samples", {}, false, true, false}, curve{"fit", {}, false, false};
            double lo = samples.front().snr_db, hi = lo;
            for (const auto& s : samples) {
                data.xy.emplace_back(s.snr_db, s.similarity);
                lo = std::min(lo, s.snr_db);
                hi = std::max(hi, s.snr_db);
            }
            for (int i = 0; i <= 200; ++i) {
                const double x = lo + (hi - lo) * i / 200.0;
                curve.xy.emplace_back(x, similarity(fit.params, x));
            }
            io::write_svg_file(env.out_dir / "fit.svg",
                               {{"Logistic fit, K = " + std::to_string(k), "SNR (dB)", "similarity", {curve, data}}},
                               "samples_digest=" + dig);
        }
        nlohmann::ordered_json summary = {{"samples", samples.size()},
                                          {"samples_digest", dig},
                                          {"mse", fit.mse},
                                          {"iterations", fit.iterations},
                                          {"params", params}};
        io::write_run_json(env.out_dir / "run.json", "fit", nullptr, "", 0, {"params.json", "fit.csv", "fit.svg"},
                           summary);
        return 0;
    });
}

/// Bit rate against the number of semantic users at a fixed semantic rate.
int cmd_sweep_users(const RunConfig& cfg, const CommandEnv& env) {
    return io::guarded(env, [&] {
        if (cfg.sweep.n_values.empty()) throw ConfigError("sweep.n_values", "must not be empty");
        const int n_max = *std::max_element(cfg.sweep.n_values.begin(), cfg.sweep.n_values.end());
        const Scenario base = cfg.make_scenario(n_max);
        SweepOptions so{env.jobs, cfg.sca_options()};
        const auto rows = sweep_users(base, cfg.sweep.n_values, cfg.sweep.fixed_s_suts_per_s, so);
        io::CsvFile csv(env.out_dir / "users.csv", io::provenance(cfg),
                        "scheme,n_sem,bit_rate_bps,q,active_splits,iterations,feasible");
        for (const auto& r : rows)
            csv.row(to_string(r.scheme), r.n_sem, r.feasible ? r.bit_rate : 0.0, io::opt_int(r.q),
                    io::opt_int(r.active_splits), r.iterations, r.feasible);
        if (cfg.output.svg) {
            plot::Panel pan{"Bit rate at S = " + io::g12(cfg.sweep.fixed_s_suts_per_s * 1e-6) + " Msuts/s",
                            "number of semantic users", "bit rate (Mbit/s)", {}};
            for (Scheme s : {Scheme::Fdma, Scheme::Noma, Scheme::Rsma}) {
                plot::Series ser{to_string(s), {}, false, true};
                for (const auto& r : rows)
                    if (r.scheme == s && r.feasible) ser.xy.emplace_back(r.n_sem, r.bit_rate * 1e-6);
                pan.series.push_back(std::move(ser));
            }
            io::write_svg_file(env.out_dir / "users.svg", {pan}, io::provenance(cfg));
        }
        nlohmann::ordered_json summary = {{"rows", rows.size()}, {"fixed_s_suts_per_s", cfg.sweep.fixed_s_suts_per_s}};
        io::write_run_json(env.out_dir / "run.json", "sweep-users", &cfg, scenario_digest(base), 0,
                           io::outputs(cfg, {"users.csv"}, "users.svg"), summary);
        return 0;
    });
}

/// Regions for several similarity thresholds on one shared grid.
int cmd_sweep_threshold(const RunConfig& cfg, const CommandEnv& env) {
    return io::guarded(env, [&] {
        if (cfg.sweep.s_th_values.empty()) throw ConfigError("sweep.s_th_values", "must not be empty");
        const Scenario base = cfg.make_scenario();
        const double th_max = *std::max_element(cfg.sweep.s_th_values.begin(), cfg.sweep.s_th_values.end());
        const auto grid = cfg.sweep.s_grid_suts_per_s.empty() ? default_s_grid(with_threshold(base, th_max))
                                                              : cfg.sweep.s_grid_suts_per_s;
        SweepOptions so{env.jobs, cfg.sca_options()};
        const auto res = sweep_threshold(base, cfg.sweep.s_th_values, grid, cfg.sweep.gap_s_suts_per_s, so);

        int warnings = 0;
        io::CsvFile csv(env.out_dir / "threshold.csv", io::provenance(cfg),
                        "s_th,scheme,s_suts_per_s,bit_rate_bps,feasible");
        for (const auto& r : res)
            for (const RegionBoundary* b : {&r.fdma, &r.noma, &r.rsma})
                for (const auto& p : b->samples) {
                    warnings += p.warning ? 1 : 0;
                    csv.row(r.s_th, to_string(b->scheme), p.s_rate, p.feasible ? p.b_rate : 0.0, p.feasible);
                }
        io::CsvFile imp(env.out_dir / "threshold_improvement.csv", io::provenance(cfg),
                        "s_th,area_noma,area_rsma,area_improvement,gap_s_suts_per_s,gap_improvement");
        nlohmann::ordered_json summary = nlohmann::ordered_json::array();
        for (const auto& r : res) {
            imp.row(r.s_th, region_area(r.noma), region_area(r.rsma), r.area_improvement, r.gap_s, r.gap_improvement);
            summary.push_back(
                {{"s_th", r.s_th}, {"area_improvement", r.area_improvement}, {"gap_improvement", r.gap_improvement}});
        }
        if (cfg.output.svg) {
            std::vector<plot::Panel> panels;
            for (const auto& r : res) {
                plot::Panel pan{"S_th = " + io::g12(r.s_th), "semantic rate (Msuts/s)", "bit rate (Mbit/s)", {}};
                pan.series = {io::boundary_series(r.fdma), io::boundary_series(r.noma), io::boundary_series(r.rsma)};
                panels.push_back(std::move(pan));
            }
            io::write_svg_file(env.out_dir / "threshold.svg", panels, io::provenance(cfg));
        }
        io::write_run_json(env.out_dir / "run.json", "sweep-threshold", &cfg, scenario_digest(base), warnings,
                           io::outputs(cfg, {"threshold.csv", "threshold_improvement.csv"}, "threshold.svg"), summary);
        return 0;
    });
}

/// Split fraction of the first bit stream: the two-bit-user baseline against
/// the second user's rate, and the bit/semantic coexistence case against
/// the semantic rate.
int cmd_alpha(const RunConfig& cfg, const CommandEnv& env) {
    return io::guarded(env, [&] {
        const Scenario scn = cfg.make_scenario(cfg.sweep.alpha_n_sem_users);
        const ScaOptions sca = cfg.sca_options();
        io::CsvFile csv(env.out_dir / "alpha.csv", io::provenance(cfg), "panel,x,rate_bps,alpha,feasible");

        plot::Series base{"two bit users", {}, false, true}, coex{"bit + semantic", {}, false, true};
        const double noise = scn.noise_w();
        const double g2 = scn.gains_sem.front();
        const double r2_max = scn.bandwidth_hz * std::log2(1.0 + scn.p_max_watt * g2 / noise);
        const int n2 = cfg.sweep.r2_points;
        for (int i = 0; i < n2; ++i) {
            const double r2 = r2_max * i / (n2 - 1);
            try {
                const auto b = two_bit_user_baseline(scn.gain_bit, g2, scn.p_max_watt, scn.bandwidth_hz, noise, r2, sca);
                csv.row("two_bit_user", r2, b.r1_max, b.alpha, true);
                base.xy.emplace_back(r2 * 1e-6, b.alpha);
            } catch (const PointInfeasible&) {
                csv.row("two_bit_user", r2, 0.0, 0.0, false);
            }
        }
        auto grid = cfg.s_grid(scn);
        if (grid.empty() || grid.front() != 0.0) grid.insert(grid.begin(), 0.0);
        std::vector<RsmaAllocation> allocs(grid.size());
        std::vector<char> ok(grid.size(), 0);
        parallel_for(grid.size(), env.jobs, [&](std::size_t i) {
            try {
                allocs[i] = rsma_boundary_point(scn, grid[i], sca);
                ok[i] = 1;
            } catch (const PointInfeasible&) {
            } catch (const InfeasibleRate&) {
            }
        });
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const bool f = ok[i] && !allocs[i].split_fractions.empty();
            const double a = f ? allocs[i].split_fractions.front() : 0.0;
            csv.row("coexistence", grid[i], f ? allocs[i].bit_rate : 0.0, a, f);
            if (f) coex.xy.emplace_back(grid[i] * 1e-6, a);
        }
        if (cfg.output.svg)
            io::write_svg_file(env.out_dir / "alpha.svg",
                               {{"Two bit users", "rate of user 2 (Mbit/s)", "alpha", {base}},
                                {"Bit and semantic user", "semantic rate (Msuts/s)", "alpha", {coex}}},
                               io::provenance(cfg));
        nlohmann::ordered_json summary = {{"r2_points", n2}, {"s_points", grid.size()}};
        io::write_run_json(env.out_dir / "run.json", "alpha", &cfg, scenario_digest(scn), 0, io::outputs(cfg, {"alpha.csv"}, "alpha.svg"),
                           summary);
        return 0;
    });
}

}  // namespace semrsma
