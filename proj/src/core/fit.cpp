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

#include "cdpq/core/fit.hpp"

#include <cmath>
#include <limits>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "cdpq/error.hpp"

namespace cdpq {
namespace {

struct ResidualFunctor {
    using Scalar = double;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;

    const ModelFn* model;
    std::span<const double> x;
    std::span<const double> y;
    int n_params;

    int inputs() const { return n_params; }
    int values() const { return static_cast<int>(x.size()); }

    int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& r) const {
        for (std::size_t i = 0; i < x.size(); ++i) {
            r(static_cast<Eigen::Index>(i)) = (*model)(p, x[i]) - y[i];
        }
        return 0;
    }
};

Eigen::MatrixXd jacobian(const ResidualFunctor& f, const Eigen::VectorXd& p) {
    Eigen::MatrixXd j(f.values(), f.inputs());
    Eigen::VectorXd r_plus(f.values()), r_minus(f.values());
    for (int k = 0; k < f.inputs(); ++k) {
        const double h = 1e-6 * std::max(std::abs(p(k)), 1e-9);
        Eigen::VectorXd pp = p, pm = p;
        pp(k) += h;
        pm(k) -= h;
        f(pp, r_plus);
        f(pm, r_minus);
        j.col(k) = (r_plus - r_minus) / (2.0 * h);
    }
    return j;
}

}  // namespace

CurveFit least_squares(const ModelFn& model, std::span<const double> x, std::span<const double> y,
                       const Eigen::VectorXd& initial) {
    if (x.size() != y.size()) throw Error(ErrorCode::InvalidDimension, "least_squares: x/y size mismatch");
    const int n_params = static_cast<int>(initial.size());
    if (static_cast<int>(x.size()) <= n_params) {
        throw Error(ErrorCode::FitFailed, "least_squares: not enough points for the model");
    }
    ResidualFunctor functor{&model, x, y, n_params};
    Eigen::NumericalDiff<ResidualFunctor> diff(functor);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<ResidualFunctor>> lm(diff);
    lm.parameters.maxfev = 4000;
    lm.parameters.xtol = 1e-12;
    lm.parameters.ftol = 1e-14;
    Eigen::VectorXd p = initial;
    const auto status = lm.minimize(p);

    CurveFit out;
    out.params = p;
    Eigen::VectorXd r(functor.values());
    functor(p, r);
    out.rss = r.squaredNorm();
    out.converged = p.allFinite() && status != Eigen::LevenbergMarquardtSpace::ImproperInputParameters &&
                    status != Eigen::LevenbergMarquardtSpace::TooManyFunctionEvaluation;

    const Eigen::MatrixXd j = jacobian(functor, p);
    const double dof = static_cast<double>(functor.values() - n_params);
    const double s2 = out.rss / dof;
    Eigen::MatrixXd jtj = j.transpose() * j;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
    if (lu.isInvertible()) {
        out.stderr = (s2 * lu.inverse().diagonal()).cwiseAbs().cwiseSqrt();
    } else {
        out.stderr = Eigen::VectorXd::Constant(n_params, std::numeric_limits<double>::infinity());
    }
    return out;
}

SinusoidFit fit_sinusoid(std::span<const double> x, std::span<const double> y, double omega_min,
                         double omega_max, int scan_points) {
    const auto n = static_cast<Eigen::Index>(x.size());
    if (n < 5 || x.size() != y.size()) {
        throw Error(ErrorCode::FitFailed, "fit_sinusoid: need at least 5 matching samples");
    }
    Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);

    // Dense scan: for each trial frequency the model is linear in
    // (offset, cos, sin) amplitudes.
    double best_rss = std::numeric_limits<double>::infinity();
    Eigen::Vector3d best_coef = Eigen::Vector3d::Zero();
    double best_omega = omega_min;
    Eigen::MatrixXd design(n, 3);
    for (int s = 0; s < scan_points; ++s) {
        const double w = omega_min + (omega_max - omega_min) * s / std::max(1, scan_points - 1);
        for (Eigen::Index i = 0; i < n; ++i) {
            design(i, 0) = 1.0;
            design(i, 1) = std::cos(w * x[i]);
            design(i, 2) = std::sin(w * x[i]);
        }
        const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(yv);
        const double rss = (design * coef - yv).squaredNorm();
        if (rss < best_rss) {
            best_rss = rss;
            best_coef = coef;
            best_omega = w;
        }
    }

    const ModelFn model = [](const Eigen::VectorXd& p, double t) {
        return p(0) + p(1) * std::cos(p(3) * t) + p(2) * std::sin(p(3) * t);
    };
    Eigen::VectorXd init(4);
    init << best_coef(0), best_coef(1), best_coef(2), best_omega;
    const CurveFit fit = least_squares(model, x, y, init);

    SinusoidFit out;
    out.offset = fit.params(0);
    out.amplitude = std::hypot(fit.params(1), fit.params(2));
    out.omega = fit.params(3);
    out.phase = std::atan2(-fit.params(2), fit.params(1));
    out.omega_err = fit.stderr(3);
    out.rss = fit.rss;
    if (!std::isfinite(out.omega)) throw Error(ErrorCode::FitFailed, "fit_sinusoid: diverged");
    return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<Eigen::Index>(x.size());
    if (n < 2 || x.size() != y.size()) throw Error(ErrorCode::FitFailed, "fit_line: need >= 2 points");
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd yv(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        design(i, 0) = x[i];
        design(i, 1) = 1.0;
        yv(i) = y[i];
    }
    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(yv);
    LineFit out{coef(0), coef(1), 0.0};
    if (n > 2) {
        const double s2 = (design * coef - yv).squaredNorm() / static_cast<double>(n - 2);
        const Eigen::Matrix2d cov = s2 * (design.transpose() * design).inverse();
        out.slope_err = std::sqrt(cov(0, 0));
    }
    return out;
}

}  // namespace cdpq
