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

#pragma once

#include <string>
#include <vector>

namespace ghzdeco::detail {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    /// Optional symmetric error bars (same length as y).
    std::vector<double> err;
    bool markers = true;  // false draws a line
};

/// Static SVG line/scatter plot. With log_y, nonpositive values are skipped.
std::string render_svg(const std::string &title, const std::string &x_label, const std::string &y_label,
                       const std::vector<PlotSeries> &series, bool log_y = false);

}  // namespace ghzdeco::detail
