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

#ifndef CDPQ_PULSE_INIT_HPP
#define CDPQ_PULSE_INIT_HPP

#include <vector>

#include "cdpq/device/transmon.hpp"
#include "cdpq/pulse/envelope.hpp"

namespace cdpq {

/// Fidelity with the tracked instantaneous eigenstate along a preparation
/// protocol. The tracked state starts as the eigenstate with the largest bare
/// |0> weight and is followed by maximal overlap between checkpoints.
struct InitializationResult {
    std::vector<double> times;
    std::vector<double> fidelity;
    StateVector final_state;
    StateVector target_state;  // tracked eigenstate at the end
    double final_fidelity = 0.0;
    double min_fidelity = 1.0;
};

/// Ramp A_CDD on with a half-Gaussian of length ramp_time at fixed detuning,
/// starting from bare |0>. Uses the n-level rotating-frame model.
InitializationResult adiabatic_ramp_on(const TransmonParams& params, double a_cdd, double delta,
                                       double ramp_time, int checkpoints = 200);

/// Chirp the detuning from f_start to f_stop (Hz) with A_CDD held on,
/// starting in the eigenstate at f_start that is connected to bare |0>.
InitializationResult chirp_initialize(const TransmonParams& params, double a_cdd, double f_start,
                                      double f_stop, double chirp_time, int checkpoints = 200);

}  // namespace cdpq

#endif  // CDPQ_PULSE_INIT_HPP
