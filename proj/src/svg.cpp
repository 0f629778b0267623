// Copyright 2026 The pidtune Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pidtune/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace pidtune {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

}  // namespace

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::vector<SvgSeries>& series) {
    if (series.empty()) {
        throw std::invalid_argument("write_svg_chart: no series");
    }
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x->size(); ++i) {
            const double x = (*s.x)[i];
            const double y = (*s.y)[i];
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    const int width = 720, height = 420;
    const int ml = 60, mr = 20, mt = 36, mb = 44;
    const double pw = width - ml - mr;
    const double ph = height - mt - mb;
    const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    const auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << title << "</text>\n";

    // Axes with a handful of ticks.
    out << "<g stroke=\"#444\" fill=\"none\"><path d=\"M" << ml << " " << mt << " V" << mt + ph
        << " H" << ml + pw << "\"/></g>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (int i = 0; i <= 6; ++i) {
        const double x = xmin + (xmax - xmin) * i / 6.0;
        const double y = ymin + (ymax - ymin) * i / 6.0;
        out << "<text x=\"" << px(x) << "\" y=\"" << mt + ph + 16
            << "\" text-anchor=\"middle\">" << x << "</text>\n";
        out << "<text x=\"" << ml - 6 << "\" y=\"" << py(y) + 4
            << "\" text-anchor=\"end\">" << y << "</text>\n";
        out << "<line x1=\"" << px(x) << "\" y1=\"" << mt + ph << "\" x2=\"" << px(x) << "\" y2=\""
            << mt + ph + 4 << "\" stroke=\"#444\"/>\n";
        out << "<line x1=\"" << ml - 4 << "\" y1=\"" << py(y) << "\" x2=\"" << ml << "\" y2=\""
            << py(y) << "\" stroke=\"#444\"/>\n";
    }
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 8
        << "\" text-anchor=\"middle\">t [s]</text>\n";
    out << "<text x=\"16\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << mt + ph / 2
        << ")\">y(t)</text>\n";
    out << "</g>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kColors[si % 5];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        const std::size_t n = s.x->size();
        // Cap the polyline at ~2000 points; finer sampling is invisible.
        const std::size_t stride = std::max<std::size_t>(1, n / 2000);
        for (std::size_t i = 0; i < n; i += stride) {
            out << px((*s.x)[i]) << "," << py((*s.y)[i]) << " ";
        }
        if (n > 0 && (n - 1) % stride != 0) {
            out << px((*s.x)[n - 1]) << "," << py((*s.y)[n - 1]);
        }
        out << "\"/>\n";
        out << "<text x=\"" << ml + pw - 8 << "\" y=\"" << mt + 16 + 16 * si
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
            << color << "\">" << s.label << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace pidtune
