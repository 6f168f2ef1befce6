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

#ifndef CDPQ_PULSE_ENVELOPE_HPP
#define CDPQ_PULSE_ENVELOPE_HPP

#include <iosfwd>
#include <vector>

namespace cdpq {

enum class EnvelopeKind { GateCosSin, HalfGaussianOn, HalfGaussianOff, Flat, ChirpRamp };

/// Descriptor of one drive waveform. Times are absolute; evaluation outside
/// [start_time, start_time + duration] returns the value the waveform holds
/// there (0 for pulses, the endpoint level for ramps and chirps).
struct PulseEnvelope {
    EnvelopeKind kind = EnvelopeKind::Flat;
    double amplitude = 0.0;   // rad/s
    double duration = 0.0;    // s
    double start_time = 0.0;  // s
    // ChirpRamp only: sweep endpoints in Hz.
    double f_start = 0.0;
    double f_stop = 0.0;

    void validate() const;
    double end_time() const { return start_time + duration; }

    /// Amplitude in rad/s (detuning in rad/s for ChirpRamp).
    double operator()(double t) const;
};

/// (A_g/1.3)(1 + cos(2pi(t - t0)/t_g)) sin(2pi(t - t0)/t_g) for |t - t0| <= t_g/2.
double gate_envelope(double a_g, double t_g, double t0, double t);

/// Gate pulse occupying [start, start + t_g]; its midpoint is t0 of gate_envelope.
PulseEnvelope gate_pulse(double a_g, double t_g, double start = 0.0);

enum class RampDirection { On, Off };

/// Half-Gaussian with sigma = ramp_time/2.5 truncated at 2.5 sigma. The
/// truncation offset is subtracted and the result rescaled, so the ramp
/// starts at exactly 0 and ends at exactly a_target.
PulseEnvelope half_gaussian_ramp(double a_target, double ramp_time, RampDirection direction,
                                 double start = 0.0);

/// Cosine-shaped detuning sweep f_start -> f_stop (Hz) over chirp_time.
/// Evaluates to the detuning in rad/s. a_cdd is carried as the envelope
/// amplitude for bookkeeping.
PulseEnvelope chirp_profile(double a_cdd, double f_start, double f_stop, double chirp_time,
                            double start = 0.0);

/// Samples on a uniform grid. values[i] is the envelope at the midpoint of
/// bin i, i.e. at t0 + (i + 0.5)/rate.
struct SampledWaveform {
    double rate = 0.0;  // samples per second
    double t0 = 0.0;
    std::vector<double> values;

    double dt() const { return 1.0 / rate; }
    double bin_start(std::size_t i) const { return t0 + static_cast<double>(i) / rate; }
    double span() const { return static_cast<double>(values.size()) / rate; }
};

/// round(duration * rate) midpoint samples of env starting at env.start_time.
SampledWaveform sample_envelope(const PulseEnvelope& env, double rate);

/// Two-column text: time_s amplitude_rad_per_s, one bin per line.
void write_two_column(std::ostream& os, const SampledWaveform& w);

}  // namespace cdpq

#endif  // CDPQ_PULSE_ENVELOPE_HPP
