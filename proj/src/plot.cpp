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

#include "semrsma/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace semrsma::plot {

namespace {

std::string num(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.4g", v);
    return b;
}

std::string escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        switch (c) {
            case '&': o += "&amp;"; break;
            case '<': o += "&lt;"; break;
            case '>': o += "&gt;"; break;
            default: o += c;
        }
    }
    return o;
}

// Round tick step: 1, 2 or 5 times a power of ten.
double tick_step(double span) {
    if (!(span > 0.0)) return 1.0;
    const double raw = span / 5.0;
    const double p = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * p >= raw) return m * p;
    return 10.0 * p;
}

}  // namespace

void write_svg(std::ostream& os, const std::vector<Panel>& panels, const std::string& tag) {
    constexpr double pw = 520, ph = 380, ml = 70, mr = 20, mt = 36, mb = 52;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#7f7f7f", "#9467bd", "#ff7f0e"};
    const double width = pw * static_cast<double>(panels.size());
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << ph
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<!-- " << escape(tag) << " -->\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const Panel& p = panels[pi];
        const double ox = pw * static_cast<double>(pi);
        double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
        for (const auto& s : p.series)
            for (auto [x, y] : s.xy) {
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
                y0 = std::min(y0, y);
                y1 = std::max(y1, y);
            }
        if (!(x1 >= x0)) x0 = 0, x1 = 1;
        if (!(y1 >= y0)) y0 = 0, y1 = 1;
        y0 = std::min(y0, 0.0);
        if (x1 == x0) x1 = x0 + 1;
        if (y1 == y0) y1 = y0 + 1;
        const double l = ox + ml, r = ox + pw - mr, t = mt, b = ph - mb;
        auto sx = [&](double x) { return l + (x - x0) / (x1 - x0) * (r - l); };
        auto sy = [&](double y) { return b - (y - y0) / (y1 - y0) * (b - t); };

        os << "<text x=\"" << (l + r) / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
           << escape(p.title) << "</text>\n";
        os << "<rect x=\"" << l << "\" y=\"" << t << "\" width=\"" << r - l << "\" height=\"" << b - t
           << "\" fill=\"none\" stroke=\"black\"/>\n";
        const double xs = tick_step(x1 - x0), ys = tick_step(y1 - y0);
        for (double v = std::ceil(x0 / xs) * xs; v <= x1 + 1e-9 * xs; v += xs)
            os << "<line x1=\"" << sx(v) << "\" y1=\"" << b << "\" x2=\"" << sx(v) << "\" y2=\"" << b + 5
               << "\" stroke=\"black\"/><text x=\"" << sx(v) << "\" y=\"" << b + 18 << "\" text-anchor=\"middle\">"
               << num(std::abs(v) < 1e-12 * xs ? 0.0 : v) << "</text>\n";
        for (double v = std::ceil(y0 / ys) * ys; v <= y1 + 1e-9 * ys; v += ys)
            os << "<line x1=\"" << l - 5 << "\" y1=\"" << sy(v) << "\" x2=\"" << l << "\" y2=\"" << sy(v)
               << "\" stroke=\"black\"/><text x=\"" << l - 8 << "\" y=\"" << sy(v) + 4 << "\" text-anchor=\"end\">"
               << num(std::abs(v) < 1e-12 * ys ? 0.0 : v) << "</text>\n";
        os << "<text x=\"" << (l + r) / 2 << "\" y=\"" << ph - 12 << "\" text-anchor=\"middle\">"
           << escape(p.x_label) << "</text>\n";
        os << "<text transform=\"translate(" << ox + 16 << "," << (t + b) / 2
           << ") rotate(-90)\" text-anchor=\"middle\">" << escape(p.y_label) << "</text>\n";

        for (std::size_t si = 0; si < p.series.size(); ++si) {
            const Series& s = p.series[si];
            const char* c = colors[si % 6];
            if (s.line) {
                os << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.8\"";
                if (s.dashed) os << " stroke-dasharray=\"6,4\"";
                os << " points=\"";
                for (auto [x, y] : s.xy) os << num(sx(x)) << ',' << num(sy(y)) << ' ';
                os << "\"/>\n";
            }
            if (s.markers)
                for (auto [x, y] : s.xy)
                    os << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y))
                       << "\" r=\"2.5\" fill=\"" << c << "\"/>\n";
            const double ly = t + 16 + 16 * static_cast<double>(si);
            os << "<line x1=\"" << r - 130 << "\" y1=\"" << ly << "\" x2=\"" << r - 105 << "\" y2=\"" << ly
               << "\" stroke=\"" << c << "\" stroke-width=\"1.8\"" << (s.dashed ? " stroke-dasharray=\"6,4\"" : "")
               << "/><text x=\"" << r - 100 << "\" y=\"" << ly + 4 << "\">" << escape(s.name) << "</text>\n";
        }
    }
    os << "</svg>\n";
}

}  // namespace semrsma::plot
