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

#ifndef CDPQ_CORE_TYPES_HPP
#define CDPQ_CORE_TYPES_HPP

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace cdpq {

template <typename Scalar>
using OperatorT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using StateVectorT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealVectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Hamiltonians are stored as H/hbar, i.e. in rad/s.
using Operator = OperatorT<double>;
using StateVector = StateVectorT<double>;
using RealVector = RealVectorT<double>;
using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Hz -> rad/s.
constexpr double angular(double hz) { return kTwoPi * hz; }
/// rad/s -> Hz.
constexpr double hertz(double rad_per_s) { return rad_per_s / kTwoPi; }

}  // namespace cdpq

#endif  // CDPQ_CORE_TYPES_HPP
