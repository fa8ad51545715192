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

#include <stdexcept>
#include <string>
#include <utility>

namespace semrsma {

// Threshold outside the open interval (a1, a2) of a logistic model, or any
// other argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Requested semantic rate exceeds the a2 * w * (I/L) / K ceiling.
class InfeasibleRate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A single FDMA semantic user cannot reach the target even with full power.
class InfeasibleUser : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// No allocation exists for a boundary point (for one scheme, or one decoding
// position).
class PointInfeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent run configuration. `where` names the offending
// key path or line/column.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string where, const std::string& what)
        : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)), detail_(what) {}

    const std::string& where() const noexcept { return where_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string where_;
    std::string detail_;
};

}  // namespace semrsma
