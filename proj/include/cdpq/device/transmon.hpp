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

#ifndef CDPQ_DEVICE_TRANSMON_HPP
#define CDPQ_DEVICE_TRANSMON_HPP

#include "cdpq/core/linalg.hpp"
#include "cdpq/core/types.hpp"

namespace cdpq {

/// Static device constants. omega0 is the bare junction-plasma scale of the
/// flux map, so omega0/2pi - E_C/h is the upper-sweet-spot qubit frequency.
struct TransmonParams {
    double omega0 = 0.0;       // rad/s
    double e_c_over_h = 0.0;   // Hz
    int n_levels = 3;

    /// E_C / hbar in rad/s.
    double e_c() const { return kTwoPi * e_c_over_h; }
    void validate() const;

    /// 4.64 GHz upper-sweet-spot transition, 137 MHz anharmonicity.
    static TransmonParams reference();
};

/// CDD drive plus flux bias. omega_drive == 0 means "resonant with the
/// dressed transition": the drive sits at the sweet-spot detuning of the
/// rotating-frame model and detuning_offset is added on top of it.
struct DriveConfig {
    double a_cdd = 0.0;            // rad/s
    double omega_drive = 0.0;      // rad/s, 0 = auto
    double phi = 0.0;              // flux in units of the flux quantum
    double detuning_offset = 0.0;  // rad/s

    void validate() const;

    /// A_CDD/2pi = 23 MHz at phi = 0.367.
    static DriveConfig reference();
};

/// hbar A_CDD / E_C.
double beta(const TransmonParams& params, const DriveConfig& drive);

/// omega_0 sqrt(cos(pi phi)) - E_C/hbar. Throws OutOfRangeFlux when the
/// junction frequency vanishes.
double qubit_frequency(const TransmonParams& params, double phi);

/// Lab-frame H/hbar truncated to params.n_levels:
///   w_q a^dag a - (E_C/hbar) a^dag a^dag a a
///   + A_CDD (a + a^dag) cos(w t) + A(t) (a + a^dag) sin(w t).
/// Uses the explicit drive frequency, or the sweet-spot drive when omega_drive is 0.
Operator lab_hamiltonian(const TransmonParams& params, const DriveConfig& drive, double a_gate, double t);

/// Rotating-frame three-level Hamiltonian written exactly as
///   [[D, Ac - iA, 0], [Ac + iA, -D, r2(Ac - iA)], [0, r2(Ac + iA), -2Ec - 3D]] / 2.
Operator rwa_hamiltonian_3lvl(const DriveConfig& drive, double a_gate, double delta,
                              const TransmonParams& params);

/// n-level rotating-frame generalization. Level k sits at
/// D/2 - k D - (E_C/2) k (k - 1); it coincides with rwa_hamiltonian_3lvl for
/// n = 3 and exists for leakage-convergence checks.
Operator rwa_hamiltonian(int n_levels, double a_cdd, double a_gate, double delta,
                         const TransmonParams& params);

/// Ideal two-level control in the dressed frame:
///   A_CDD sz/2 + A sx/2 + D sy/2.
Operator ideal_two_level_hamiltonian(const DriveConfig& drive, double a_gate, double delta);

/// Fixed SU(2) rotation V with V (D sz + Ac sx + A sy) V^dag = Ac sz + A sx + D sy,
/// i.e. the map from the bare rotating two-level frame to the dressed frame.
/// Row 0 of V is the upper dressed state (|0> + |1>)/sqrt2 up to phase.
Operator dressed_frame_rotation();

struct DressedBasis {
    Operator transform;   // analytic, rows |->, |+>, |f> in the bare basis
    Operator numerical;   // same rows, exact eigenvectors of the 3-level model
    double beta = 0.0;
    bool within_validity = true;  // beta < 0.2
};

/// Analytic first-order transform with rows
///   ( 1/r2, -1/r2,  r2 b^2)
///   (-1/r2, -1/r2, -r2 b)
///   (  -b,    -b,   1)
/// plus the numerically exact eigenbasis of rwa_hamiltonian_3lvl at A = D = 0
/// with E_C/hbar = 1 and A_CDD = beta, rows matched to the analytic ones by
/// overlap and signed to agree with them.
DressedBasis dressed_transform(double beta);

/// Dressed-frame three-level Hamiltonian transcribed as
///   [[Ac, -iA - D, iA + bD], [iA - D, -Ac, iA + bD],
///    [-iA + bD, -iA + bD, -2Ec - 3D]] / 2.
Operator dressed_hamiltonian(const DriveConfig& drive, double a_gate, double delta,
                             const TransmonParams& params);

/// sqrt(A_CDD^2 + D^2).
double cdpq_splitting(double a_cdd, double delta);

/// Indices into an ascending eigensystem of a rotating-frame model: the two
/// states carrying most of the |0>,|1> weight, and the rest.
struct CdpqPairIndex {
    Eigen::Index upper = 0;  // dressed |+>
    Eigen::Index lower = 0;  // dressed |->
};
CdpqPairIndex locate_cdpq_pair(const Eigensystem& es);

/// Energy gap of the computational dressed pair of the n-level RWA model.
double dressed_pair_splitting(const TransmonParams& params, double a_cdd, double delta);

/// Detuning that minimises dressed_pair_splitting (the Stark-shifted sweet
/// spot; roughly A_CDD^2 / (2 E_C) for the three-level model).
double sweet_spot_detuning(const TransmonParams& params, double a_cdd);

/// Rotating-frame detuning D = omega - omega_q(phi) implied by a drive config
/// (auto frequency resolves to the sweet spot), including detuning_offset.
double drive_detuning(const TransmonParams& params, const DriveConfig& drive);

}  // namespace cdpq

#endif  // CDPQ_DEVICE_TRANSMON_HPP
