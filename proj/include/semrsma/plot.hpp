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

// Minimal SVG line plots for the command outputs.

#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace semrsma::plot {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> xy;
    bool dashed = false;
    bool markers = false;
    bool line = true;
};

struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

/// Writes side-by-side panels. `tag` is placed in an XML comment.
void write_svg(std::ostream& os, const std::vector<Panel>& panels, const std::string& tag);

}  // namespace semrsma::plot
