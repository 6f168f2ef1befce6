// Copyright 2026 The CDPQ Authors
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

#ifndef CDPQ_CORE_FIT_HPP
#define CDPQ_CORE_FIT_HPP

#include <functional>
#include <span>

#include <Eigen/Dense>

namespace cdpq {

/// model(params, x) -> y.
using ModelFn = std::function<double(const Eigen::VectorXd&, double)>;

struct CurveFit {
    Eigen::VectorXd params;
    Eigen::VectorXd stderr;  // sqrt(diag(s^2 (J^T J)^-1))
    double rss = 0.0;
    bool converged = false;
};

/// Levenberg-Marquardt least squares with a forward-difference Jacobian.
CurveFit least_squares(const ModelFn& model, std::span<const double> x, std::span<const double> y,
                       const Eigen::VectorXd& initial);

/// y = offset + amplitude * cos(omega * x + phase).
struct SinusoidFit {
    double offset = 0.0;
    double amplitude = 0.0;  // >= 0
    double omega = 0.0;
    double phase = 0.0;
    double omega_err = 0.0;
    double rss = 0.0;

    /// Peak-to-peak of the fitted curve.
    double contrast() const { return 2.0 * amplitude; }
};

/// Frequency is seeded by a dense scan over [omega_min, omega_max] (linear
/// least squares at each trial frequency) and then polished jointly.
SinusoidFit fit_sinusoid(std::span<const double> x, std::span<const double> y, double omega_min,
                         double omega_max, int scan_points = 400);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_err = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace cdpq

#endif  // CDPQ_CORE_FIT_HPP
