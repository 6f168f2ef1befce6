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

#include "cdpq/device/transmon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace cdpq {

void TransmonParams::validate() const {
    if (!(omega0 > 0)) throw Error(ErrorCode::Validation, "TransmonParams: omega0 must be positive");
    if (!(e_c_over_h > 0)) throw Error(ErrorCode::Validation, "TransmonParams: E_C/h must be positive");
    if (n_levels < 2 || n_levels > 8) {
        throw Error(ErrorCode::InvalidDimension,
                    "TransmonParams: n_levels must lie in [2, 8], got " + std::to_string(n_levels));
    }
}

TransmonParams TransmonParams::reference() {
    TransmonParams p;
    p.e_c_over_h = 137e6;
    p.omega0 = angular(4.64e9 + 137e6);
    p.n_levels = 3;
    return p;
}

void DriveConfig::validate() const {
    if (!(a_cdd >= 0)) throw Error(ErrorCode::Validation, "DriveConfig: a_cdd must be >= 0");
    if (!(std::abs(phi) < 0.5)) {
        throw Error(ErrorCode::OutOfRangeFlux, "DriveConfig: |phi| must be < 0.5");
    }
    if (omega_drive < 0) throw Error(ErrorCode::Validation, "DriveConfig: omega_drive must be >= 0");
}

DriveConfig DriveConfig::reference() {
    DriveConfig d;
    d.a_cdd = angular(23e6);
    d.phi = 0.367;
    return d;
}

double beta(const TransmonParams& params, const DriveConfig& drive) {
    return drive.a_cdd / params.e_c();
}

double qubit_frequency(const TransmonParams& params, double phi) {
    const double c = std::cos(kPi * phi);
    if (!(std::abs(phi) < 0.5) || !(c > 0)) {
        throw Error(ErrorCode::OutOfRangeFlux,
                    "qubit_frequency: cos(pi*phi) must be positive (phi = " + std::to_string(phi) + ")");
    }
    return params.omega0 * std::sqrt(c) - params.e_c();
}

Operator lab_hamiltonian(const TransmonParams& params, const DriveConfig& drive, double a_gate, double t) {
    params.validate();
    const auto ladder = ladder_operators(params.n_levels);
    const double wq = qubit_frequency(params, drive.phi);
    const double w = wq + drive_detuning(params, drive);
    const Operator x = ladder.lowering + ladder.raising;
    const Operator duffing = ladder.raising * ladder.raising * ladder.lowering * ladder.lowering;
    const double field = drive.a_cdd * std::cos(w * t) + a_gate * std::sin(w * t);
    return wq * ladder.number - params.e_c() * duffing + field * x;
}

Operator rwa_hamiltonian_3lvl(const DriveConfig& drive, double a_gate, double delta,
                              const TransmonParams& params) {
    const double r2 = std::sqrt(2.0);
    const cplx minus(drive.a_cdd, -a_gate);  // A_CDD - iA
    const cplx plus(drive.a_cdd, a_gate);    // A_CDD + iA
    Operator h(3, 3);
    h << delta, minus, 0.0,
         plus, -delta, r2 * minus,
         0.0, r2 * plus, -2.0 * params.e_c() - 3.0 * delta;
    return h / 2.0;
}

Operator rwa_hamiltonian(int n_levels, double a_cdd, double a_gate, double delta,
                         const TransmonParams& params) {
    if (n_levels < 2) throw Error(ErrorCode::InvalidDimension, "rwa_hamiltonian: n_levels must be >= 2");
    Operator h = Operator::Zero(n_levels, n_levels);
    const cplx coupling(a_cdd / 2.0, -a_gate / 2.0);
    for (int k = 0; k < n_levels; ++k) {
        const double kd = static_cast<double>(k);
        h(k, k) = delta / 2.0 - kd * delta - 0.5 * params.e_c() * kd * (kd - 1.0);
        if (k + 1 < n_levels) {
            h(k, k + 1) = std::sqrt(kd + 1.0) * coupling;
            h(k + 1, k) = std::conj(h(k, k + 1));
        }
    }
    return h;
}

Operator ideal_two_level_hamiltonian(const DriveConfig& drive, double a_gate, double delta) {
    return (drive.a_cdd * sigma_z() + a_gate * sigma_x() + delta * sigma_y()) / 2.0;
}

Operator dressed_frame_rotation() {
    const cplx i(0, 1);
    return (Operator::Identity(2, 2) + i * (sigma_x() + sigma_y() + sigma_z())) / 2.0;
}

DressedBasis dressed_transform(double b) {
    if (!(b >= 0)) throw Error(ErrorCode::Validation, "dressed_transform: beta must be >= 0");
    const double r2 = std::sqrt(2.0);
    DressedBasis out;
    out.beta = b;
    out.within_validity = b < 0.2;
    out.transform.resize(3, 3);
    out.transform << 1.0 / r2, -1.0 / r2, r2 * b * b,
                     -1.0 / r2, -1.0 / r2, -r2 * b,
                     -b, -b, 1.0;

    // Exact eigenvectors in units where E_C/hbar = 1.
    TransmonParams unit;
    unit.omega0 = 1.0;
    unit.e_c_over_h = 1.0 / kTwoPi;
    DriveConfig drive;
    drive.a_cdd = b;
    const auto es = eigendecompose(rwa_hamiltonian_3lvl(drive, 0.0, 0.0, unit));

    out.numerical = Operator::Zero(3, 3);
    std::array<bool, 3> used{false, false, false};
    for (int row = 0; row < 3; ++row) {
        const StateVector target = out.transform.row(row).transpose();
        int best = -1;
        double best_overlap = -1.0;
        for (int k = 0; k < 3; ++k) {
            if (used[k]) continue;
            const double ov = std::abs(es.vectors.col(k).dot(target));
            if (ov > best_overlap) {
                best_overlap = ov;
                best = k;
            }
        }
        used[best] = true;
        StateVector v = es.vectors.col(best);
        const cplx ov = v.dot(target);  // <v|target>
        if (std::abs(ov) > 0) v *= ov / std::abs(ov);
        out.numerical.row(row) = v.transpose();
    }
    return out;
}

Operator dressed_hamiltonian(const DriveConfig& drive, double a_gate, double delta,
                             const TransmonParams& params) {
    const cplx i(0, 1);
    const double ac = drive.a_cdd;
    const double b = ac / params.e_c();
    const cplx a = a_gate;
    Operator h(3, 3);
    h << ac, -i * a - delta, i * a + b * delta,
         i * a - delta, -ac, i * a + b * delta,
         -i * a + b * delta, -i * a + b * delta, -2.0 * params.e_c() - 3.0 * delta;
    return h / 2.0;
}

double cdpq_splitting(double a_cdd, double delta) {
    if (!(a_cdd > 0)) throw Error(ErrorCode::Validation, "cdpq_splitting: a_cdd must be positive");
    return std::hypot(a_cdd, delta);
}

CdpqPairIndex locate_cdpq_pair(const Eigensystem& es) {
    const auto n = es.values.size();
    if (n < 2) throw Error(ErrorCode::InvalidDimension, "locate_cdpq_pair: need at least two levels");
    std::vector<std::pair<double, Eigen::Index>> weight;
    for (Eigen::Index k = 0; k < n; ++k) {
        weight.emplace_back(std::norm(es.vectors(0, k)) + std::norm(es.vectors(1, k)), k);
    }
    std::sort(weight.begin(), weight.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    Eigen::Index p = weight[0].second;
    Eigen::Index q = weight[1].second;
    if (es.values(p) < es.values(q)) std::swap(p, q);
    return {p, q};
}

double dressed_pair_splitting(const TransmonParams& params, double a_cdd, double delta) {
    const auto es = eigendecompose(rwa_hamiltonian(params.n_levels, a_cdd, 0.0, delta, params));
    const auto pair = locate_cdpq_pair(es);
    return es.values(pair.upper) - es.values(pair.lower);
}

double sweet_spot_detuning(const TransmonParams& params, double a_cdd) {
    if (params.n_levels <= 2 || a_cdd == 0.0) return 0.0;
    // Newton iteration on the finite-difference slope.
    const double h = 1e-4 * std::max(a_cdd, 1.0);
    double d = a_cdd * a_cdd / (2.0 * params.e_c());
    for (int it = 0; it < 30; ++it) {
        const double sp = dressed_pair_splitting(params, a_cdd, d + h);
        const double s0 = dressed_pair_splitting(params, a_cdd, d);
        const double sm = dressed_pair_splitting(params, a_cdd, d - h);
        const double slope = (sp - sm) / (2.0 * h);
        const double curvature = (sp - 2.0 * s0 + sm) / (h * h);
        if (!(curvature > 0)) break;
        const double step = slope / curvature;
        d -= step;
        if (std::abs(step) < 1e-9 * a_cdd) break;
    }
    return d;
}

double drive_detuning(const TransmonParams& params, const DriveConfig& drive) {
    if (drive.omega_drive > 0) {
        return drive.omega_drive - qubit_frequency(params, drive.phi) + drive.detuning_offset;
    }
    return sweet_spot_detuning(params, drive.a_cdd) + drive.detuning_offset;
}

}  // namespace cdpq
