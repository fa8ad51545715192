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

// FNV-1a digests used to tag outputs with the inputs that produced them.

#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "semrsma/scenario.hpp"

namespace semrsma {

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string digest_string(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Digest of every numeric input of a scenario, printed at full precision.
inline std::string scenario_digest(const Scenario& s) {
    std::string text;
    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g;", v);
        text += buf;
    };
    put(s.bandwidth_hz);
    put(s.noise_psd_dbm_hz);
    put(s.p_max_watt);
    put(s.gain_bit);
    for (double g : s.gains_sem) put(g);
    put(s.cfg.k);
    put(s.cfg.i_per_l);
    put(s.cfg.s_th);
    put(s.params.a1);
    put(s.params.a2);
    put(s.params.c1);
    put(s.params.c2);
    text += std::to_string(s.seed);
    return digest_string(fnv1a64(text));
}

}  // namespace semrsma
