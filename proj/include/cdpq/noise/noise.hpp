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

#ifndef CDPQ_NOISE_NOISE_HPP
#define CDPQ_NOISE_NOISE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "cdpq/core/random.hpp"

namespace cdpq {

struct NoiseModel {
    double sigma_quasistatic = 0.0;  // rad/s, shot-to-shot detuning std
    double one_over_f_amp = 0.0;     // rad/s per sqrt(decade)
    double f_low = 1e3;              // Hz
    double f_high = 10e6;            // Hz
    int tones_per_decade = 20;
    double a_cdd_frac_noise = 0.0;   // std of the fractional A_CDD error
    double t1 = 0.0;                 // s, 0 disables the envelope
    std::uint64_t seed = 0;

    void validate() const;
    bool time_dependent() const { return one_over_f_amp > 0; }
    bool silent() const { return sigma_quasistatic == 0 && one_over_f_amp == 0 && a_cdd_frac_noise == 0; }
};

/// One shot of noise: a static detuning, a static fractional A_CDD error
/// and a sum of random-phase tones a_k cos(2 pi f_k t + phi_k).
struct NoiseTrajectory {
    double delta_static = 0.0;  // rad/s
    double a_cdd_frac = 0.0;
    std::vector<double> tone_freq;   // Hz
    std::vector<double> tone_amp;    // rad/s
    std::vector<double> tone_phase;  // rad
    double duration = 0.0;

    /// Detuning offset at time t, rad/s.
    double delta(double t) const;
    /// Integral of delta over [t0, t1], rad.
    double phase(double t0, double t1) const;
    /// Midpoint samples of delta at the given rate over [0, duration).
    std::vector<double> sample(double rate) const;
};

/// Tones are log-spaced, tones_per_decade per decade over [f_low, f_high],
/// each of amplitude one_over_f_amp * sqrt(2 / tones_per_decade), so every
/// decade carries variance one_over_f_amp^2.
NoiseTrajectory sample_noise_trajectory(const NoiseModel& model, double duration, RngStream& rng);

enum class DecayModel { Exponential, Gaussian };

struct DecayFit {
    DecayModel model = DecayModel::Exponential;
    double amplitude = 0.0;
    double offset = 0.0;
    double t2 = 0.0;
    double t2_err = 0.0;
    double rss = 0.0;
};

/// a exp(-t/T2) + c or a exp(-(t/T2)^2) + c. Throws FitFailed when the
/// curve does not decay or the fit diverges.
DecayFit fit_decay(std::span<const double> delays, std::span<const double> survival, DecayModel model);

}  // namespace cdpq

#endif  // CDPQ_NOISE_NOISE_HPP
