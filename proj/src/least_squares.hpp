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

#include <Eigen/Core>

namespace ghzdeco::detail {

struct LinearSolution {
    Eigen::VectorXd coef;
    /// (A^T W A)^{-1}, not scaled by the residual variance.
    Eigen::MatrixXd cov;
    /// sum_i w_i (y_i - (A c)_i)^2
    double rss = 0.0;
    int dof = 0;
};

/// Minimizes sum_i w_i (y_i - (A c)_i)^2. Throws Error{Fit} when the weighted
/// design is rank deficient or every weight is zero.
LinearSolution weighted_least_squares(const Eigen::MatrixXd &design, const Eigen::VectorXd &y,
                                      const Eigen::VectorXd &weights);

}  // namespace ghzdeco::detail
