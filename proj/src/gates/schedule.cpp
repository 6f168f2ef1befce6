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

#include "cdpq/gates/schedule.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <regex>

#include "cdpq/core/types.hpp"

namespace cdpq {

std::string_view to_string(SegmentKind kind) {
    switch (kind) {
        case SegmentKind::Wait: return "wait";
        case SegmentKind::XzPulse: return "xz_pulse";
        case SegmentKind::YzDetuningPulse: return "yz_detuning_pulse";
    }
    return "unknown";
}

void Segment::validate() const {
    if (!(duration >= 0)) throw Error(ErrorCode::Validation, "Segment: duration must be >= 0");
    if (kind == SegmentKind::Wait && envelope) {
        throw Error(ErrorCode::Validation, "Segment: wait segments carry no envelope");
    }
    if (kind != SegmentKind::Wait && !envelope) {
        throw Error(ErrorCode::Validation, "Segment: pulse segments need an envelope");
    }
}

double PulseSchedule::duration() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration;
    return t;
}

std::vector<double> PulseSchedule::start_times() const {
    std::vector<double> out;
    out.reserve(segments.size());
    double t = 0.0;
    for (const auto& s : segments) {
        out.push_back(t);
        t += s.duration;
    }
    return out;
}

PulseSchedule& PulseSchedule::append(const PulseSchedule& other) {
    segments.insert(segments.end(), other.segments.begin(), other.segments.end());
    if (!calib && other.calib) calib = other.calib;
    return *this;
}

PulseSchedule& PulseSchedule::append(const Segment& seg) {
    segments.push_back(seg);
    return *this;
}

void PulseSchedule::validate() const {
    for (const auto& s : segments) s.validate();
}

double wrap_phase(double phase) {
    double p = std::fmod(phase, kTwoPi);
    if (p < 0) p += kTwoPi;
    if (p >= kTwoPi) p = 0.0;
    return p;
}

GateSpec GateSpec::make(GateName name, double phase1, double phase2) {
    return GateSpec{name, wrap_phase(phase1), wrap_phase(phase2)};
}

GateSpec GateSpec::parse(std::string_view text) {
    const std::string s(text);
    if (s == "I") return make(GateName::I);
    if (s == "X/2") return make(GateName::X2);
    if (s == "-X/2") return make(GateName::MinusX2);
    if (s == "Y/2") return make(GateName::Y2);
    if (s == "-Y/2") return make(GateName::MinusY2);
    if (s == "Z") return make(GateName::Z);
    if (s == "Z/2") return make(GateName::Z2);
    if (s == "-Z/2") return make(GateName::MinusZ2);
    static const std::regex rz(R"(Rz\(\s*([-+0-9.eE]+)\s*\))");
    static const std::regex u(R"(U\(\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*\))");
    std::smatch m;
    if (std::regex_match(s, m, rz)) return make(GateName::Rz, std::stod(m[1]));
    if (std::regex_match(s, m, u)) return make(GateName::U, std::stod(m[1]), std::stod(m[2]));
    throw Error(ErrorCode::UnsupportedGate, "GateSpec: unknown gate '" + s + "'");
}

std::string GateSpec::label() const {
    switch (name) {
        case GateName::I: return "I";
        case GateName::X2: return "X/2";
        case GateName::MinusX2: return "-X/2";
        case GateName::Y2: return "Y/2";
        case GateName::MinusY2: return "-Y/2";
        case GateName::Z: return "Z";
        case GateName::Z2: return "Z/2";
        case GateName::MinusZ2: return "-Z/2";
        case GateName::Rz: return "Rz(" + std::to_string(phase1) + ")";
        case GateName::U: return "U(" + std::to_string(phase1) + "," + std::to_string(phase2) + ")";
    }
    return "?";
}

Segment rz_wait(double gamma, double rate) {
    if (!(rate > 0)) throw Error(ErrorCode::Validation, "rz_wait: rate must be positive");
    Segment s;
    s.kind = SegmentKind::Wait;
    s.duration = gamma >= 0 ? gamma / rate : (kTwoPi - std::abs(gamma)) / rate;
    return s;
}

Segment rxz_pulse(const CalibrationResult& calib) {
    if (!calib.calibrated()) throw Error(ErrorCode::MissingCalibration, "rxz_pulse: calibration missing a_g/t_g");
    Segment s;
    s.kind = SegmentKind::XzPulse;
    s.duration = calib.t_g;
    s.envelope = gate_pulse(calib.a_g, calib.t_g, 0.0);
    return s;
}

PulseSchedule compose_universal(double gamma_prime, double gamma_double_prime, const CalibrationResult& calib) {
    const double rate = calib.splitting;
    PulseSchedule out;
    out.calib = calib;
    const auto pulse = rxz_pulse(calib);
    const auto w2 = rz_wait(wrap_phase(gamma_double_prime), rate);
    const auto w1 = rz_wait(wrap_phase(gamma_prime), rate);
    if (w2.duration > 0) out.append(w2);
    out.append(pulse);
    if (w1.duration > 0) out.append(w1);
    out.append(pulse);
    return out;
}

namespace {

Segment wait_of(double duration) {
    Segment s;
    s.kind = SegmentKind::Wait;
    s.duration = duration;
    return s;
}

PulseSchedule quarter_turn_gate(int quarters, const CalibrationResult& calib) {
    calib.validate();
    const double period = calib.period();
    const double prefix = quarters * period / 4.0;
    const double post = calib.closing_wait() - prefix;
    PulseSchedule out;
    out.calib = calib;
    if (prefix > 0) out.append(wait_of(prefix));
    out.append(rxz_pulse(calib));
    const double pad_periods = std::round(calib.padding / period);
    const double tail = post + pad_periods * period;
    if (tail > 0) out.append(wait_of(tail));
    return out;
}

PulseSchedule z_gate(double gamma, const CalibrationResult& calib) {
    if (!(calib.splitting > 0)) throw Error(ErrorCode::MissingCalibration, "standard_gate: splitting not set");
    PulseSchedule out;
    out.calib = calib;
    const auto w = rz_wait(gamma, calib.splitting);
    if (w.duration > 0) out.append(w);
    return out;
}

}  // namespace

PulseSchedule standard_gate(const GateSpec& spec, const CalibrationResult& calib) {
    switch (spec.name) {
        case GateName::I: {
            PulseSchedule out;
            out.calib = calib;
            return out;
        }
        case GateName::Y2: return quarter_turn_gate(0, calib);
        case GateName::X2: return quarter_turn_gate(1, calib);
        case GateName::MinusY2: return quarter_turn_gate(2, calib);
        case GateName::MinusX2: return quarter_turn_gate(3, calib);
        case GateName::Z: return z_gate(kPi, calib);
        case GateName::Z2: return z_gate(kPi / 2, calib);
        case GateName::MinusZ2: return z_gate(-kPi / 2, calib);
        case GateName::Rz: return z_gate(spec.phase1, calib);
        case GateName::U: return compose_universal(spec.phase1, spec.phase2, calib);
    }
    throw Error(ErrorCode::UnsupportedGate, "standard_gate: unsupported gate");
}

PulseSchedule compile_sequence(std::span<const GateSpec> gates, const CalibrationResult& calib) {
    PulseSchedule out;
    out.calib = calib;
    for (const auto& g : gates) out.append(standard_gate(g, calib));
    return out;
}

PulseSchedule quantize(const PulseSchedule& sched, double sample_rate) {
    if (!(sample_rate > 0)) throw Error(ErrorCode::Validation, "quantize: sample_rate must be positive");
    PulseSchedule out;
    out.calib = sched.calib;
    double ideal_end = 0.0;
    long grid_end = 0;
    for (const auto& seg : sched.segments) {
        ideal_end += seg.duration;
        Segment q = seg;
        if (seg.kind == SegmentKind::Wait) {
            const long target = std::max(grid_end, std::lround(ideal_end * sample_rate));
            q.duration = static_cast<double>(target - grid_end) / sample_rate;
            grid_end = target;
        } else {
            const double samples = seg.duration * sample_rate;
            const long n = std::lround(samples);
            if (std::abs(samples - static_cast<double>(n)) > 1e-6) {
                throw Error(ErrorCode::Resolution, "quantize: pulse length is not a whole number of samples");
            }
            q.duration = static_cast<double>(n) / sample_rate;
            if (q.envelope) q.envelope->duration = q.duration;
            grid_end += n;
        }
        out.segments.push_back(q);
    }
    return out;
}

ScheduleWaveforms schedule_to_waveforms(const PulseSchedule& sched, double sample_rate) {
    if (!(sample_rate > 0)) throw Error(ErrorCode::Validation, "schedule_to_waveforms: sample_rate must be positive");
    for (const auto& seg : sched.segments) {
        if (seg.kind != SegmentKind::Wait && seg.duration > 0) {
            const double bandwidth = 3.0 / seg.duration;
            if (sample_rate < 10.0 * bandwidth) {
                throw Error(ErrorCode::Resolution, "schedule_to_waveforms: sample rate below 10x pulse bandwidth");
            }
        }
    }
    ScheduleWaveforms out;
    out.amplitude.rate = out.detuning.rate = sample_rate;
    const auto n = static_cast<std::size_t>(std::llround(sched.duration() * sample_rate));
    out.amplitude.values.assign(n, 0.0);
    out.detuning.values.assign(n, 0.0);
    const auto starts = sched.start_times();
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (static_cast<double>(i) + 0.5) / sample_rate;
        while (k + 1 < sched.segments.size() && t >= starts[k] + sched.segments[k].duration) ++k;
        const auto& seg = sched.segments[k];
        if (seg.kind == SegmentKind::Wait || !seg.envelope) continue;
        const double v = (*seg.envelope)(t - starts[k]);
        if (seg.kind == SegmentKind::XzPulse) {
            out.amplitude.values[i] = v;
        } else {
            out.detuning.values[i] = v;
        }
    }
    return out;
}

void write_schedule(std::ostream& os, const PulseSchedule& sched) {
    os << "# kind start_s duration_s amplitude_rad_s\n" << std::setprecision(17);
    const auto starts = sched.start_times();
    for (std::size_t i = 0; i < sched.segments.size(); ++i) {
        const auto& s = sched.segments[i];
        os << to_string(s.kind) << ' ' << starts[i] << ' ' << s.duration << ' '
           << (s.envelope ? s.envelope->amplitude : 0.0) << '\n';
    }
}

}  // namespace cdpq
