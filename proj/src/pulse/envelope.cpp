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

#include "cdpq/pulse/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "cdpq/core/types.hpp"
#include "cdpq/error.hpp"

namespace cdpq {
namespace {

constexpr double kRampSigmas = 2.5;

// Normalized rising half-Gaussian on s in [0, 1].
double rising_profile(double s) {
    const double g0 = std::exp(-0.5 * kRampSigmas * kRampSigmas);
    const double x = kRampSigmas * (s - 1.0);
    return (std::exp(-0.5 * x * x) - g0) / (1.0 - g0);
}

}  // namespace

void PulseEnvelope::validate() const {
    if (!(duration > 0)) throw Error(ErrorCode::Validation, "PulseEnvelope: duration must be positive");
}

double PulseEnvelope::operator()(double t) const {
    const double s = (t - start_time) / duration;
    switch (kind) {
        case EnvelopeKind::GateCosSin:
            return gate_envelope(amplitude, duration, start_time + 0.5 * duration, t);
        case EnvelopeKind::Flat:
            return (s >= 0.0 && s <= 1.0) ? amplitude : 0.0;
        case EnvelopeKind::HalfGaussianOn:
            if (s <= 0.0) return 0.0;
            if (s >= 1.0) return amplitude;
            return amplitude * rising_profile(s);
        case EnvelopeKind::HalfGaussianOff:
            if (s <= 0.0) return amplitude;
            if (s >= 1.0) return 0.0;
            return amplitude * rising_profile(1.0 - s);
        case EnvelopeKind::ChirpRamp: {
            const double c = std::clamp(s, 0.0, 1.0);
            const double f = f_start + (f_stop - f_start) * 0.5 * (1.0 - std::cos(kPi * c));
            return angular(f);
        }
    }
    return 0.0;
}

double gate_envelope(double a_g, double t_g, double t0, double t) {
    if (!(t_g > 0)) throw Error(ErrorCode::Validation, "gate_envelope: t_g must be positive");
    if (std::abs(t - t0) > 0.5 * t_g) return 0.0;
    const double x = kTwoPi * (t - t0) / t_g;
    return (a_g / 1.3) * (1.0 + std::cos(x)) * std::sin(x);
}

PulseEnvelope gate_pulse(double a_g, double t_g, double start) {
    PulseEnvelope e;
    e.kind = EnvelopeKind::GateCosSin;
    e.amplitude = a_g;
    e.duration = t_g;
    e.start_time = start;
    e.validate();
    return e;
}

PulseEnvelope half_gaussian_ramp(double a_target, double ramp_time, RampDirection direction, double start) {
    PulseEnvelope e;
    e.kind = direction == RampDirection::On ? EnvelopeKind::HalfGaussianOn : EnvelopeKind::HalfGaussianOff;
    e.amplitude = a_target;
    e.duration = ramp_time;
    e.start_time = start;
    e.validate();
    return e;
}

PulseEnvelope chirp_profile(double a_cdd, double f_start, double f_stop, double chirp_time, double start) {
    PulseEnvelope e;
    e.kind = EnvelopeKind::ChirpRamp;
    e.amplitude = a_cdd;
    e.duration = chirp_time;
    e.start_time = start;
    e.f_start = f_start;
    e.f_stop = f_stop;
    e.validate();
    return e;
}

SampledWaveform sample_envelope(const PulseEnvelope& env, double rate) {
    env.validate();
    if (!(rate > 0)) throw Error(ErrorCode::Validation, "sample_envelope: rate must be positive");
    SampledWaveform w;
    w.rate = rate;
    w.t0 = env.start_time;
    const auto n = static_cast<std::size_t>(std::llround(env.duration * rate));
    w.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        w.values[i] = env(env.start_time + (static_cast<double>(i) + 0.5) / rate);
    }
    return w;
}

void write_two_column(std::ostream& os, const SampledWaveform& w) {
    os << std::setprecision(17);
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        os << w.bin_start(i) << ' ' << w.values[i] << '\n';
    }
}

}  // namespace cdpq
