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

#include "semrsma/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "semrsma/digest.hpp"

namespace semrsma {

nlohmann::ordered_json to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    const auto& s = c.scenario;
    j["scenario"] = {{"bandwidth_hz", s.bandwidth_hz},
                     {"noise_psd_dbm_hz", s.noise_psd_dbm_hz},
                     {"p_max_watt", s.p_max_watt},
                     {"path_loss",
                      {{"rho0_db", s.path_loss.rho0_db},
                       {"exponent", s.path_loss.exponent},
                       {"distance_m", s.path_loss.distance_m}}},
                     {"n_sem_users", s.n_sem_users},
                     {"seed", s.seed}};
    auto logistic = nlohmann::ordered_json::array();
    for (const auto& p : c.model.logistic)
        logistic.push_back({{"k", p.k}, {"a1", p.a1}, {"a2", p.a2}, {"c1", p.c1}, {"c2", p.c2}});
    j["model"] = {{"k", c.model.semantic.k},
                  {"i_per_l", c.model.semantic.i_per_l},
                  {"s_th", c.model.semantic.s_th},
                  {"logistic", logistic}};
    j["solver"] = {{"tau_bps", c.solver.tau_bps},
                   {"max_sca_iterations", c.solver.max_sca_iterations},
                   {"max_barrier_steps", c.solver.max_barrier_steps},
                   {"start_scales", c.solver.start_scales}};
    j["sweep"] = {{"s_grid_suts_per_s", c.sweep.s_grid_suts_per_s},
                  {"n_values", c.sweep.n_values},
                  {"fixed_s_suts_per_s", c.sweep.fixed_s_suts_per_s},
                  {"s_th_values", c.sweep.s_th_values},
                  {"gap_s_suts_per_s", c.sweep.gap_s_suts_per_s},
                  {"alpha_n_sem_users", c.sweep.alpha_n_sem_users},
                  {"r2_points", c.sweep.r2_points}};
    j["output"] = {{"directory", c.output.directory}, {"svg", c.output.svg}};
    return j;
}

namespace {

class JsonReader {
public:
    JsonReader(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    JsonReader child(const char* key) {
        seen_.insert(key);
        static const nlohmann::json empty = nlohmann::json::object();
        auto it = j_.find(key);
        return JsonReader(it == j_.end() ? empty : *it, join(key));
    }

    template <class T>
    void get(const char* key, T& out) {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end()) return;
        try {
            out = it->get<T>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(join(key), std::string("wrong type: ") + e.what());
        }
    }

    const nlohmann::json& raw(const char* key) {
        seen_.insert(key);
        static const nlohmann::json null;
        auto it = j_.find(key);
        return it == j_.end() ? null : *it;
    }

    std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void reject_unknown() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) throw ConfigError(join(it.key()), "unknown key");
    }

private:
    const nlohmann::json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void line_col(const std::string& text, std::size_t byte, int& line, int& col) {
    line = 1;
    col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        int line = 0, col = 0;
        line_col(text, e.byte == 0 ? 0 : e.byte - 1, line, col);
        throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col), "JSON syntax error");
    }
    RunConfig c;
    JsonReader r(root, "");
    {
        auto s = r.child("scenario");
        s.get("bandwidth_hz", c.scenario.bandwidth_hz);
        s.get("noise_psd_dbm_hz", c.scenario.noise_psd_dbm_hz);
        s.get("p_max_watt", c.scenario.p_max_watt);
        s.get("n_sem_users", c.scenario.n_sem_users);
        s.get("seed", c.scenario.seed);
        auto pl = s.child("path_loss");
        pl.get("rho0_db", c.scenario.path_loss.rho0_db);
        pl.get("exponent", c.scenario.path_loss.exponent);
        pl.get("distance_m", c.scenario.path_loss.distance_m);
        pl.reject_unknown();
        s.reject_unknown();
    }
    {
        auto m = r.child("model");
        m.get("k", c.model.semantic.k);
        m.get("i_per_l", c.model.semantic.i_per_l);
        m.get("s_th", c.model.semantic.s_th);
        const auto& lg = m.raw("logistic");
        if (!lg.is_null()) {
            if (!lg.is_array()) throw ConfigError(m.join("logistic"), "expected an array");
            c.model.logistic.clear();
            for (std::size_t i = 0; i < lg.size(); ++i) {
                JsonReader e(lg[i], m.join("logistic[" + std::to_string(i) + "]"));
                LogisticParams p;
                e.get("k", p.k);
                e.get("a1", p.a1);
                e.get("a2", p.a2);
                e.get("c1", p.c1);
                e.get("c2", p.c2);
                e.reject_unknown();
                c.model.logistic.push_back(p);
            }
        }
        m.reject_unknown();
    }
    {
        auto s = r.child("solver");
        s.get("tau_bps", c.solver.tau_bps);
        s.get("max_sca_iterations", c.solver.max_sca_iterations);
        s.get("max_barrier_steps", c.solver.max_barrier_steps);
        s.get("start_scales", c.solver.start_scales);
        s.reject_unknown();
    }
    {
        auto s = r.child("sweep");
        s.get("s_grid_suts_per_s", c.sweep.s_grid_suts_per_s);
        s.get("n_values", c.sweep.n_values);
        s.get("fixed_s_suts_per_s", c.sweep.fixed_s_suts_per_s);
        s.get("s_th_values", c.sweep.s_th_values);
        s.get("gap_s_suts_per_s", c.sweep.gap_s_suts_per_s);
        s.get("alpha_n_sem_users", c.sweep.alpha_n_sem_users);
        s.get("r2_points", c.sweep.r2_points);
        s.reject_unknown();
    }
    {
        auto o = r.child("output");
        o.get("directory", c.output.directory);
        o.get("svg", c.output.svg);
        o.reject_unknown();
    }
    r.reject_unknown();

    // Value checks, reported against the key that carries the value.
    auto need = [](bool ok, const char* where, const char* what) {
        if (!ok) throw ConfigError(where, what);
    };
    need(c.scenario.bandwidth_hz > 0.0, "scenario.bandwidth_hz", "must be > 0");
    need(c.scenario.p_max_watt > 0.0, "scenario.p_max_watt", "must be > 0");
    need(c.scenario.n_sem_users >= 1, "scenario.n_sem_users", "must be >= 1");
    need(c.scenario.path_loss.distance_m >= 1.0, "scenario.path_loss.distance_m", "must be >= 1");
    need(c.scenario.path_loss.exponent > 0.0, "scenario.path_loss.exponent", "must be > 0");
    need(c.solver.tau_bps > 0.0, "solver.tau_bps", "must be > 0");
    need(c.solver.max_sca_iterations >= 1, "solver.max_sca_iterations", "must be >= 1");
    need(c.solver.max_barrier_steps >= 1, "solver.max_barrier_steps", "must be >= 1");
    need(!c.solver.start_scales.empty(), "solver.start_scales", "must not be empty");
    need(c.sweep.r2_points >= 2, "sweep.r2_points", "must be >= 2");
    need(c.sweep.alpha_n_sem_users >= 1, "sweep.alpha_n_sem_users", "must be >= 1");
    for (int n : c.sweep.n_values) need(n >= 1, "sweep.n_values", "entries must be >= 1");
    try {
        const auto& p = c.model.params();
        p.validate();
        c.model.semantic.validate(p);
        for (double th : c.sweep.s_th_values) (void)gamma_sem(p, th);
        (void)gamma_sem(p, c.model.semantic.s_th);
    } catch (const DomainError& e) {
        throw ConfigError("model", e.what());
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path, "cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.where(), e.detail());
    }
}

std::string config_digest(const RunConfig& c) {
    auto j = to_json(c);
    j.erase("output");
    return digest_string(fnv1a64(j.dump()));
}

}  // namespace semrsma
