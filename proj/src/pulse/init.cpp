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

#include "cdpq/pulse/init.hpp"

#include <cmath>

#include "cdpq/core/propagate.hpp"

namespace cdpq {
namespace {

Eigen::Index most_overlapping(const Eigensystem& es, const StateVector& ref) {
    Eigen::Index best = 0;
    double best_ov = -1.0;
    for (Eigen::Index k = 0; k < es.vectors.cols(); ++k) {
        const double ov = std::norm(es.vectors.col(k).dot(ref));
        if (ov > best_ov) {
            best_ov = ov;
            best = k;
        }
    }
    return best;
}

template <typename HamiltonianFn>
InitializationResult track(HamiltonianFn&& h_of_t, double duration, int checkpoints, StateVector psi,
                           StateVector tracked, double max_dt) {
    if (checkpoints < 1) throw Error(ErrorCode::Validation, "initialization: checkpoints must be >= 1");
    InitializationResult out;
    const double chunk = duration / checkpoints;
    for (int c = 1; c <= checkpoints; ++c) {
        psi = evolve_state(h_of_t, (c - 1) * chunk, chunk, max_dt, psi);
        const auto es = eigendecompose(h_of_t(c * chunk));
        tracked = es.vectors.col(most_overlapping(es, tracked));
        const double f = std::norm(tracked.dot(psi));
        out.times.push_back(c * chunk);
        out.fidelity.push_back(f);
        out.min_fidelity = std::min(out.min_fidelity, f);
    }
    out.final_state = psi;
    out.target_state = tracked;
    out.final_fidelity = out.fidelity.back();
    return out;
}

}  // namespace

InitializationResult adiabatic_ramp_on(const TransmonParams& params, double a_cdd, double delta,
                                       double ramp_time, int checkpoints) {
    params.validate();
    const auto ramp = half_gaussian_ramp(a_cdd, ramp_time, RampDirection::On);
    const int n = params.n_levels;
    auto h = [&](double t) { return rwa_hamiltonian(n, ramp(t), 0.0, delta, params); };
    StateVector ground = StateVector::Zero(n);
    ground(0) = 1.0;
    const double dt = default_time_step(spectral_scale(rwa_hamiltonian(n, a_cdd, 0.0, delta, params)));
    return track(h, ramp_time, checkpoints, ground, ground, dt);
}

InitializationResult chirp_initialize(const TransmonParams& params, double a_cdd, double f_start,
                                      double f_stop, double chirp_time, int checkpoints) {
    params.validate();
    const auto chirp = chirp_profile(a_cdd, f_start, f_stop, chirp_time);
    const int n = params.n_levels;
    auto h = [&](double t) { return rwa_hamiltonian(n, a_cdd, 0.0, chirp(t), params); };
    StateVector bare0 = StateVector::Zero(n);
    bare0(0) = 1.0;
    const auto es0 = eigendecompose(h(0.0));
    const StateVector start = es0.vectors.col(most_overlapping(es0, bare0));
    const double scale = std::max(spectral_scale(h(0.0)), spectral_scale(h(chirp_time)));
    return track(h, chirp_time, checkpoints, start, start, default_time_step(scale));
}

}  // namespace cdpq
