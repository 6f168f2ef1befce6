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

#ifndef CDPQ_CORE_PROPAGATE_HPP
#define CDPQ_CORE_PROPAGATE_HPP

#include <cmath>
#include <span>
#include <vector>

#include "cdpq/core/linalg.hpp"

namespace cdpq {

/// Time step that keeps the per-step phase of the fastest eigenvalue at
/// 1/200 rad.
inline double default_time_step(double spectral_scale) {
    return 1.0 / (200.0 * std::max(spectral_scale, 1.0));
}

/// Largest |eigenvalue| of a Hermitian operator.
template <typename Derived>
double spectral_scale(const Eigen::MatrixBase<Derived>& h) {
    Eigen::SelfAdjointEigenSolver<OperatorT<double>> solver(h.derived(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

/// Piecewise-constant propagation of pre-sampled Hamiltonians. Sample k acts
/// for dt; the trajectory holds psi0 followed by the state after each step.
template <typename Scalar>
std::vector<StateVectorT<Scalar>> propagate(std::span<const OperatorT<Scalar>> h_samples,
                                            double dt, const StateVectorT<Scalar>& psi0) {
    if (!(dt > 0)) throw Error(ErrorCode::Validation, "propagate: dt must be positive");
    std::vector<StateVectorT<Scalar>> trajectory;
    trajectory.reserve(h_samples.size() + 1);
    trajectory.push_back(psi0);
    for (const auto& h : h_samples) {
        if (h.rows() != psi0.size() || h.cols() != psi0.size()) {
            throw Error(ErrorCode::InvalidDimension, "propagate: sample dimension mismatch");
        }
        require_hermitian(h, "propagate");
        trajectory.push_back(expm_hermitian(h, dt) * trajectory.back());
    }
    return trajectory;
}

/// Ordered product of the per-sample propagators.
template <typename Scalar>
OperatorT<Scalar> propagator(std::span<const OperatorT<Scalar>> h_samples, double dt) {
    if (h_samples.empty()) return OperatorT<Scalar>();
    const auto n = h_samples.front().rows();
    OperatorT<Scalar> u = OperatorT<Scalar>::Identity(n, n);
    for (const auto& h : h_samples) u = (expm_hermitian(h, dt) * u).eval();
    return u;
}

/// Number of equal midpoint steps covering `duration` with step <= max_dt.
inline long step_count(double duration, double max_dt) {
    if (duration <= 0) return 0;
    return std::max(1L, static_cast<long>(std::ceil(duration / max_dt - 1e-9)));
}

/// Propagator of a time-dependent Hamiltonian over [t0, t0 + duration],
/// sampled at segment midpoints. `h_of_t(t)` returns an Operator.
template <typename HamiltonianFn>
Operator evolve_unitary(HamiltonianFn&& h_of_t, double t0, double duration, double max_dt,
                        Eigen::Index dim) {
    Operator u = Operator::Identity(dim, dim);
    const long n = step_count(duration, max_dt);
    if (n == 0) return u;
    const double dt = duration / static_cast<double>(n);
    for (long k = 0; k < n; ++k) {
        const double t = t0 + (static_cast<double>(k) + 0.5) * dt;
        u = (expm_hermitian(h_of_t(t), dt) * u).eval();
    }
    return u;
}

/// State-vector variant of evolve_unitary; cheaper when only one state matters.
template <typename HamiltonianFn>
StateVector evolve_state(HamiltonianFn&& h_of_t, double t0, double duration, double max_dt,
                         StateVector psi) {
    const long n = step_count(duration, max_dt);
    if (n == 0) return psi;
    const double dt = duration / static_cast<double>(n);
    for (long k = 0; k < n; ++k) {
        const double t = t0 + (static_cast<double>(k) + 0.5) * dt;
        psi = (expm_hermitian(h_of_t(t), dt) * psi).eval();
    }
    return psi;
}

}  // namespace cdpq

#endif  // CDPQ_CORE_PROPAGATE_HPP
