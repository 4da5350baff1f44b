// Copyright 2026 The swarmseg Authors
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


// Minimal static SVG charts for the CLI outputs.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "swarmseg/analysis.hpp"
#include "swarmseg/search.hpp"

namespace swarmseg::plot {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> lo;  // optional error bars, same length as y
    std::vector<double> hi;
};

namespace detail {

inline constexpr double kWidth = 640, kHeight = 420, kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!std::isfinite(lo)) lo = 0, hi = 1;
        if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
        const double m = 0.05 * (hi - lo);
        lo -= m;
        hi += m;
    }
};

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

inline std::string header(const std::string& title) {
    return fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        "<text x=\"{2}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{3}</text>\n",
        kWidth, kHeight, kWidth / 2, escape(title));
}

}  // namespace detail

/// Line chart with markers and optional vertical error bars.
inline std::string line_chart(const Series& s, const std::string& title, const std::string& xlabel,
                              const std::string& ylabel) {
    using namespace detail;
    Range rx, ry;
    for (double v : s.x) rx.add(v);
    for (double v : s.y) ry.add(v);
    for (double v : s.lo) ry.add(v);
    for (double v : s.hi) ry.add(v);
    rx.pad();
    ry.pad();
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto X = [&](double v) { return kLeft + (v - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto Y = [&](double v) { return kTop + (ry.hi - v) / (ry.hi - ry.lo) * ph; };

    std::string svg = header(title);
    svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft,
                       kTop, pw, ph);
    for (int k = 0; k <= 4; ++k) {
        const double vx = rx.lo + (rx.hi - rx.lo) * k / 4, vy = ry.lo + (ry.hi - ry.lo) * k / 4;
        svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.3g}</text>\n", X(vx),
                           kTop + ph + 16, vx);
        svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.4g}</text>\n", kLeft - 6,
                           Y(vy) + 4, vy);
    }
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", kLeft + pw / 2,
                       kHeight - 12, escape(xlabel));
    svg += fmt::format(
        "<text x=\"16\" y=\"{:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1f})\">{}</text>\n",
        kTop + ph / 2, kTop + ph / 2, escape(ylabel));

    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) pts += fmt::format("{:.2f},{:.2f} ", X(s.x[i]), Y(s.y[i]));
    svg += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n", pts);
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (i < s.lo.size() && i < s.hi.size())
            svg += fmt::format("<line x1=\"{0:.2f}\" x2=\"{0:.2f}\" y1=\"{1:.2f}\" y2=\"{2:.2f}\" stroke=\"#555\"/>\n",
                               X(s.x[i]), Y(s.lo[i]), Y(s.hi[i]));
        if (s.x.size() <= 50)
            svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"#1f77b4\"/>\n", X(s.x[i]),
                               Y(s.y[i]));
    }
    return svg + "</svg>\n";
}

inline std::string experiment_chart(const std::vector<ExperimentPoint>& points, const std::string& title,
                                    const std::string& xlabel) {
    Series s;
    for (const auto& p : points) {
        s.x.push_back(p.value);
        s.y.push_back(p.mean);
        s.lo.push_back(p.ci.low);
        s.hi.push_back(p.ci.high);
    }
    return line_chart(s, title, xlabel, "mean c_total (95% CI)");
}

/// Heatmap of a marginal table; darker is lower (better) cost.
inline std::string heatmap(const MarginalTable& t) {
    using namespace detail;
    Range rc;
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j)
            if (t.populated(i, j)) rc.add(t.mean(i, j));
    if (!std::isfinite(rc.lo)) rc.lo = rc.hi = 0.0;
    const double span = rc.hi - rc.lo > 0 ? rc.hi - rc.lo : 1.0;
    const double pw = kWidth - kLeft - kRight - 60, ph = kHeight - kTop - kBottom;
    const double cw = pw / static_cast<double>(t.cols()), ch = ph / static_cast<double>(t.rows());

    std::string svg = header(fmt::format("mean c_total over p{} (rows) x p{} (columns)", t.first, t.second));
    for (std::size_t i = 0; i < t.rows(); ++i) {
        const double y = kTop + ph - static_cast<double>(i + 1) * ch;  // rows ascend upward
        for (std::size_t j = 0; j < t.cols(); ++j) {
            const double x = kLeft + static_cast<double>(j) * cw;
            std::string fill = "#eeeeee";
            if (t.populated(i, j)) {
                const int g = static_cast<int>(std::lround(30 + 210 * (t.mean(i, j) - rc.lo) / span));
                fill = fmt::format("rgb({},{},255)", g, g);
            }
            svg += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                               x, y, cw, ch, fill);
        }
        svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.3g}</text>\n", kLeft - 6,
                           y + ch / 2 + 4, t.row_values[i]);
    }
    for (std::size_t j = 0; j < t.cols(); ++j)
        svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.3g}</text>\n",
                           kLeft + (static_cast<double>(j) + 0.5) * cw, kTop + ph + 16, t.col_values[j]);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">p{}</text>\n", kLeft + pw / 2,
                       kHeight - 12, t.second);
    svg += fmt::format("<text x=\"16\" y=\"{0:.1f}\" transform=\"rotate(-90 16 {0:.1f})\">p{1}</text>\n",
                       kTop + ph / 2, t.first);
    const double lx = kWidth - kRight - 40;
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{:.4g}</text>\n", lx, kTop + 10, rc.lo);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{:.4g}</text>\n", lx, kTop + ph, rc.hi);
    return svg + "</svg>\n";
}

}  // namespace swarmseg::plot
