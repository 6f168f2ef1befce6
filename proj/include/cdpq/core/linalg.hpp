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

#ifndef CDPQ_CORE_LINALG_HPP
#define CDPQ_CORE_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "cdpq/core/types.hpp"
#include "cdpq/error.hpp"

namespace cdpq {

// ---------------------------------------------------------------------------
// Operator construction
// ---------------------------------------------------------------------------

template <typename Scalar>
struct LadderT {
    OperatorT<Scalar> lowering;
    OperatorT<Scalar> raising;
    OperatorT<Scalar> number;
};
using Ladder = LadderT<double>;

/// Truncated harmonic-oscillator ladder: lowering(i, i+1) = sqrt(i+1).
template <typename Scalar = double>
LadderT<Scalar> ladder_operators(Eigen::Index n_levels) {
    if (n_levels < 2) {
        throw Error(ErrorCode::InvalidDimension,
                    "ladder_operators: n_levels must be >= 2, got " + std::to_string(n_levels));
    }
    LadderT<Scalar> out;
    out.lowering = OperatorT<Scalar>::Zero(n_levels, n_levels);
    for (Eigen::Index i = 0; i + 1 < n_levels; ++i) {
        out.lowering(i, i + 1) = std::sqrt(static_cast<Scalar>(i + 1));
    }
    out.raising = out.lowering.adjoint();
    out.number = out.raising * out.lowering;
    return out;
}

template <typename Scalar = double>
OperatorT<Scalar> sigma_x() {
    OperatorT<Scalar> m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

template <typename Scalar = double>
OperatorT<Scalar> sigma_y() {
    using C = std::complex<Scalar>;
    OperatorT<Scalar> m(2, 2);
    m << C(0), C(0, -1), C(0, 1), C(0);
    return m;
}

template <typename Scalar = double>
OperatorT<Scalar> sigma_z() {
    OperatorT<Scalar> m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& h, double rel_tol = 1e-12) {
    if (h.rows() != h.cols()) return false;
    const double scale = std::max(h.norm(), 1.0e-300);
    return (h - h.adjoint()).norm() <= rel_tol * scale;
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& h, const char* where) {
    if (h.rows() != h.cols()) {
        throw Error(ErrorCode::InvalidDimension, std::string(where) + ": operator is not square");
    }
    if (!is_hermitian(h)) {
        throw Error(ErrorCode::Validation, std::string(where) + ": operator is not Hermitian");
    }
}

// ---------------------------------------------------------------------------
// Spectral tools
// ---------------------------------------------------------------------------

template <typename Scalar>
struct EigensystemT {
    RealVectorT<Scalar> values;     // ascending
    OperatorT<Scalar> vectors;      // column k pairs with values(k)
};
using Eigensystem = EigensystemT<double>;

/// Rotate a vector's global phase so its largest-magnitude entry is real and
/// positive. Ties resolve to the lowest index.
template <typename Derived>
void fix_phase(Eigen::MatrixBase<Derived>&& v) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        if (std::abs(v(i)) > std::abs(v(best)) * (1.0 + 1e-12)) best = i;
    }
    const auto a = v(best);
    if (std::abs(a) > 0) v *= std::conj(a) / std::abs(a);
}

template <typename Derived>
auto eigendecompose(const Eigen::MatrixBase<Derived>& h) {
    using Scalar = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    require_hermitian(h, "eigendecompose");
    Eigen::SelfAdjointEigenSolver<OperatorT<Scalar>> solver(h.derived());
    EigensystemT<Scalar> out{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) fix_phase(out.vectors.col(k));
    return out;
}

/// exp(-i H t) for Hermitian H. Spectral route for small spaces, Pade
/// scaling-and-squaring above eight levels.
template <typename Derived>
auto expm_hermitian(const Eigen::MatrixBase<Derived>& h, double t) {
    using Scalar = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    using C = std::complex<Scalar>;
    if (h.rows() <= 8) {
        Eigen::SelfAdjointEigenSolver<OperatorT<Scalar>> solver(h.derived());
        const auto& v = solver.eigenvectors();
        StateVectorT<Scalar> phases(h.rows());
        for (Eigen::Index k = 0; k < h.rows(); ++k) {
            phases(k) = std::exp(C(0, -solver.eigenvalues()(k) * t));
        }
        return OperatorT<Scalar>(v * phases.asDiagonal() * v.adjoint());
    }
    OperatorT<Scalar> a = (C(0, -t) * h.derived()).eval();
    return OperatorT<Scalar>(a.exp());
}

// ---------------------------------------------------------------------------
// Measurement and distances
// ---------------------------------------------------------------------------

/// Probability of each basis state. `basis` columns must be orthonormal;
/// the default is the computational basis.
template <typename Scalar>
RealVectorT<Scalar> populations(const StateVectorT<Scalar>& psi,
                                const std::optional<OperatorT<Scalar>>& basis = std::nullopt) {
    if (!basis) return psi.cwiseAbs2();
    const auto& b = *basis;
    if (b.rows() != psi.size()) {
        throw Error(ErrorCode::InvalidDimension, "populations: basis/state dimension mismatch");
    }
    const OperatorT<Scalar> gram = b.adjoint() * b;
    if ((gram - OperatorT<Scalar>::Identity(b.cols(), b.cols())).norm() > 1e-9) {
        throw Error(ErrorCode::Validation, "populations: basis columns are not orthonormal");
    }
    return (b.adjoint() * psi).cwiseAbs2();
}

template <typename Scalar>
Scalar state_fidelity(const StateVectorT<Scalar>& a, const StateVectorT<Scalar>& b) {
    return std::norm(a.dot(b));
}

/// 1 - |tr(U^dag V)|^2 / d^2 : zero iff U and V agree up to global phase.
template <typename DA, typename DB>
double trace_infidelity(const Eigen::MatrixBase<DA>& u, const Eigen::MatrixBase<DB>& v) {
    const double d = static_cast<double>(u.rows());
    const auto tr = (u.adjoint() * v).trace();
    return 1.0 - std::norm(tr) / (d * d);
}

/// Frobenius distance after removing the optimal global phase.
template <typename DA, typename DB>
double phase_invariant_distance(const Eigen::MatrixBase<DA>& u, const Eigen::MatrixBase<DB>& v) {
    const auto tr = (v.adjoint() * u).trace();
    const auto phase = std::abs(tr) > 0 ? tr / std::abs(tr) : decltype(tr)(1);
    return (u - phase * v).norm();
}

}  // namespace cdpq

#endif  // CDPQ_CORE_LINALG_HPP
