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


#ifndef CDPQ_NOISE_COHERENCE_HPP
#define CDPQ_NOISE_COHERENCE_HPP

#include <optional>
#include <span>
#include <vector>

#include "cdpq/calibration/result.hpp"
#include "cdpq/gates/simulator.hpp"
#include "cdpq/noise/noise.hpp"

namespace cdpq {

enum class SystemKind { Bare, Cdpq };

struct DecayCurve {
    std::vector<double> delays;    // s
    std::vector<double> survival;  // shot mean
    std::vector<double> stderr;    // shot std / sqrt(n)
    std::optional<DecayFit> fit;   // empty when the fit fails (e.g. no decay)
};

/// Bare experiments use ideal instantaneous pulses: survival is
/// (1 + cos phi)/2 with phi the accumulated detuning phase (sign-flipped
/// after the echo pulse). CDPQ experiments run compiled X/2 schedules on
/// `sim` from dressed |->; pulses see the static part of the shot's noise,
/// waits see the full trajectory stepped at noise_step. The optional T1
/// envelope pulls survival toward 1/2 as exp(-t/T1).
struct CoherenceSetup {
    SystemKind system = SystemKind::Bare;
    const Simulator* sim = nullptr;         // required for Cdpq
    std::optional<CalibrationResult> calib;  // required for Cdpq
    DecayModel fit_model = DecayModel::Gaussian;
    double noise_step = 2e-9;  // s
    int workers = 1;
};

/// Ramsey: X/2 - wait - X/2. For the CDPQ survival is P(|+>), which is 1
/// without noise when delays are whole dressed periods.
DecayCurve ramsey_experiment(std::span<const double> delays, const NoiseModel& model, int n_shots,
                             const CoherenceSetup& setup);

/// Hahn echo: X/2 - wait/2 - X/2 X/2 - wait/2 - X/2. Survival is the return
/// probability for the CDPQ.
DecayCurve hahn_experiment(std::span<const double> delays, const NoiseModel& model, int n_shots,
                           const CoherenceSetup& setup);

/// delays k * round(max_delay / (n - 1) / T) * T for k = 0..n-1, T the
/// dressed period; the step is at least one period.
std::vector<double> period_aligned_delays(double period, double max_delay, std::size_t n);

}  // namespace cdpq

#endif  // CDPQ_NOISE_COHERENCE_HPP
