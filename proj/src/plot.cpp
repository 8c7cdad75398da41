// Copyright 2026 The ghzdeco Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ghzdeco::detail {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 50;

const char *const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const std::string &title, const std::string &x_label, const std::string &y_label,
                       const std::vector<PlotSeries> &series, bool log_y) {
    auto ty = [log_y](double v) { return log_y ? std::log10(v) : v; };
    auto usable = [log_y](double v) { return std::isfinite(v) && (!log_y || v > 0.0); };

    double x0 = std::numeric_limits<double>::infinity();
    double x1 = -x0;
    double y0 = x0;
    double y1 = -x0;
    for (const auto &s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!usable(s.y[i]) || !std::isfinite(s.x[i])) continue;
            const double e = i < s.err.size() ? s.err[i] : 0.0;
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            const double lo = usable(s.y[i] - e) ? s.y[i] - e : s.y[i];
            y0 = std::min(y0, ty(lo));
            y1 = std::max(y1, ty(s.y[i] + e));
        }
    }
    if (!std::isfinite(x0)) {
        x0 = 0;
        x1 = 1;
        y0 = 0;
        y1 = 1;
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return kTop + (1.0 - (ty(y) - y0) / (y1 - y0)) * ph; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
        << "</text>\n";
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4.0;
        const double yv = y0 + (y1 - y0) * k / 4.0;
        const double gx = kLeft + pw * k / 4.0;
        const double gy = kTop + ph * (1.0 - k / 4.0);
        out << "<text x=\"" << gx << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">" << num(xv)
            << "</text>\n";
        out << "<text x=\"" << kLeft - 6 << "\" y=\"" << gy + 4 << "\" text-anchor=\"end\">"
            << num(log_y ? std::pow(10.0, yv) : yv) << "</text>\n";
    }
    out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">"
        << escape(x_label) << "</text>\n";
    out << "<text transform=\"translate(16," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(y_label) << (log_y ? " (log)" : "") << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto &ser = series[s];
        const char *color = kPalette[s % std::size(kPalette)];
        if (ser.markers) {
            for (std::size_t i = 0; i < ser.x.size() && i < ser.y.size(); ++i) {
                if (!usable(ser.y[i])) continue;
                if (i < ser.err.size() && ser.err[i] > 0.0) {
                    const double lo = usable(ser.y[i] - ser.err[i]) ? ser.y[i] - ser.err[i] : ser.y[i];
                    out << "<line x1=\"" << px(ser.x[i]) << "\" x2=\"" << px(ser.x[i]) << "\" y1=\"" << py(lo)
                        << "\" y2=\"" << py(ser.y[i] + ser.err[i]) << "\" stroke=\"" << color << "\"/>\n";
                }
                out << "<circle cx=\"" << px(ser.x[i]) << "\" cy=\"" << py(ser.y[i]) << "\" r=\"3\" fill=\"" << color
                    << "\"/>\n";
            }
        } else {
            out << "<polyline fill=\"none\" stroke-dasharray=\"5,3\" stroke=\"" << color << "\" points=\"";
            for (std::size_t i = 0; i < ser.x.size() && i < ser.y.size(); ++i) {
                if (usable(ser.y[i])) out << px(ser.x[i]) << "," << py(ser.y[i]) << " ";
            }
            out << "\"/>\n";
        }
        const double ly = kTop + 14.0 * static_cast<double>(s) + 8.0;
        out << "<rect x=\"" << kLeft + pw + 12 << "\" y=\"" << ly - 8 << "\" width=\"10\" height=\"10\" fill=\"" << color
            << "\"/>\n";
        out << "<text x=\"" << kLeft + pw + 26 << "\" y=\"" << ly + 1 << "\">" << escape(ser.label) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace ghzdeco::detail
