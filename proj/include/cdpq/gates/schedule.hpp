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

#ifndef CDPQ_GATES_SCHEDULE_HPP
#define CDPQ_GATES_SCHEDULE_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdpq/calibration/result.hpp"
#include "cdpq/pulse/envelope.hpp"

namespace cdpq {

enum class SegmentKind { Wait, XzPulse, YzDetuningPulse };

std::string_view to_string(SegmentKind kind);

/// Pulse payloads are stored with start_time 0; the schedule position gives
/// the absolute placement.
struct Segment {
    SegmentKind kind = SegmentKind::Wait;
    double duration = 0.0;  // s
    std::optional<PulseEnvelope> envelope;

    void validate() const;
};

/// Gapless, time-ordered segment list. Segment k starts where k-1 ends; the
/// first segment acts first, so the unitary is U_last ... U_1.
struct PulseSchedule {
    std::vector<Segment> segments;
    std::optional<CalibrationResult> calib;

    double duration() const;
    std::vector<double> start_times() const;
    PulseSchedule& append(const PulseSchedule& other);
    PulseSchedule& append(const Segment& seg);
    void validate() const;
};

enum class GateName { I, X2, MinusX2, Y2, MinusY2, Z, Z2, MinusZ2, Rz, U };

/// Rz carries phase1; U carries (gamma', gamma'') in (phase1, phase2). Phases
/// are reduced to [0, 2pi) on construction through make().
struct GateSpec {
    GateName name = GateName::I;
    double phase1 = 0.0;
    double phase2 = 0.0;

    static GateSpec make(GateName name, double phase1 = 0.0, double phase2 = 0.0);
    /// Accepts I, X/2, -X/2, Y/2, -Y/2, Z, Z/2, -Z/2, Rz(phi), U(g1,g2).
    static GateSpec parse(std::string_view text);
    std::string label() const;
};

double wrap_phase(double phase);

/// Wait of gamma/rate, or (2pi - |gamma|)/rate for negative gamma.
Segment rz_wait(double gamma, double rate);

/// Calibrated xz pulse of length t_g. Throws MissingCalibration.
Segment rxz_pulse(const CalibrationResult& calib);

/// R_xz . R_z(gamma') . R_xz . R_z(gamma'') with the rightmost factor first:
/// wait(gamma''), pulse, wait(gamma'), pulse.
PulseSchedule compose_universal(double gamma_prime, double gamma_double_prime, const CalibrationResult& calib);

/// Y/2 = pulse + closing wait. X/2, -Y/2, -X/2 prepend one, two, three
/// quarter periods and take the same amount off the closing wait, so all four
/// last t_g + calib.closing_wait(). Z-type gates are waits at the dressed
/// splitting; I is empty.
PulseSchedule standard_gate(const GateSpec& spec, const CalibrationResult& calib);

PulseSchedule compile_sequence(std::span<const GateSpec> gates, const CalibrationResult& calib);

/// Snap segment boundaries to the sample grid. Pulses keep their length
/// (which must already be an integer number of samples); rounding residue of
/// each boundary is carried into the following wait.
PulseSchedule quantize(const PulseSchedule& sched, double sample_rate);

struct ScheduleWaveforms {
    SampledWaveform amplitude;  // A(t), rad/s
    SampledWaveform detuning;   // extra detuning from yz pulses, rad/s
};

/// Render round(duration * rate) midpoint samples. Throws Resolution when
/// the rate is below 10x the widest pulse bandwidth (3/t for a pulse of length t).
ScheduleWaveforms schedule_to_waveforms(const PulseSchedule& sched, double sample_rate);

/// One segment per line: kind start_s duration_s amplitude_rad_s.
void write_schedule(std::ostream& os, const PulseSchedule& sched);

}  // namespace cdpq

#endif  // CDPQ_GATES_SCHEDULE_HPP
