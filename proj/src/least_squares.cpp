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

#include "least_squares.hpp"

#include <Eigen/SVD>

#include "ghzdeco/error.hpp"

namespace ghzdeco::detail {

LinearSolution weighted_least_squares(const Eigen::MatrixXd &design, const Eigen::VectorXd &y,
                                      const Eigen::VectorXd &weights) {
    if (design.rows() != y.size() || weights.size() != y.size()) {
        throw Error(ErrorCategory::Fit, "least squares: mismatched input sizes");
    }
    if (design.rows() < design.cols()) throw Error(ErrorCategory::Fit, "least squares: fewer points than parameters");
    if ((weights.array() < 0.0).any() || !weights.allFinite()) {
        throw Error(ErrorCategory::Fit, "least squares: weights must be finite and nonnegative");
    }
    if ((weights.array() == 0.0).all()) throw Error(ErrorCategory::Fit, "least squares: all weights are zero");

    const Eigen::VectorXd sw = weights.cwiseSqrt();
    const Eigen::MatrixXd a = sw.asDiagonal() * design;
    const Eigen::VectorXd b = sw.cwiseProduct(y);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &s = svd.singularValues();
    if (s.size() == 0 || s(s.size() - 1) <= 1e-12 * s(0)) {
        throw Error(ErrorCategory::Fit, "least squares: singular design (degenerate sample points)");
    }
    LinearSolution out;
    out.coef = svd.solve(b);
    const Eigen::VectorXd inv_s2 = s.cwiseAbs2().cwiseInverse();
    out.cov = svd.matrixV() * inv_s2.asDiagonal() * svd.matrixV().transpose();
    out.rss = (b - a * out.coef).squaredNorm();
    out.dof = static_cast<int>(design.rows() - design.cols());
    return out;
}

}  // namespace ghzdeco::detail
