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

#include "cdpq/gates/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "cdpq/core/propagate.hpp"

namespace cdpq {
namespace {

constexpr std::size_t kMaxCachedPulses = 4096;

}  // namespace

Simulator::Simulator(ModelKind model, const TransmonParams& params, const DriveConfig& drive)
    : model_(model), params_(params), drive_(drive), cache_(std::make_shared<Cache>()) {
    drive_.validate();
    if (model_ == ModelKind::Transmon) {
        params_.validate();
        delta0_ = drive_detuning(params_, drive_);
    } else {
        delta0_ = drive_.detuning_offset;
    }
    if (!(drive_.a_cdd > 0)) throw Error(ErrorCode::Validation, "Simulator: a_cdd must be positive");

    const auto es = eigendecompose(hamiltonian(0.0, 0.0));
    const auto pair = locate_cdpq_pair(es);
    const auto n = es.values.size();
    basis_.resize(n, n);
    basis_.col(0) = es.vectors.col(pair.upper);
    basis_.col(1) = es.vectors.col(pair.lower);
    Eigen::Index c = 2;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (k != pair.upper && k != pair.lower) basis_.col(c++) = es.vectors.col(k);
    }
    splitting_ = es.values(pair.upper) - es.values(pair.lower);
}

Simulator Simulator::ideal(const DriveConfig& drive) {
    TransmonParams p;
    p.n_levels = 2;
    return Simulator(ModelKind::IdealTwoLevel, p, drive);
}

Simulator Simulator::transmon(const TransmonParams& params, const DriveConfig& drive) {
    return Simulator(ModelKind::Transmon, params, drive);
}

StateVector Simulator::dressed_state(DressedLabel label) const {
    StateVector v = StateVector::Zero(dim());
    switch (label) {
        case DressedLabel::Plus: v(0) = 1.0; break;
        case DressedLabel::Minus: v(1) = 1.0; break;
        case DressedLabel::Leak:
            if (dim() < 3) throw Error(ErrorCode::InvalidDimension, "dressed_state: no leakage level in a two-level model");
            v(2) = 1.0;
            break;
    }
    return v;
}

Operator Simulator::hamiltonian(double a_gate, double extra_delta, const Perturbation& p) const {
    const double a_cdd = drive_.a_cdd * (1.0 + p.a_cdd_frac);
    const double delta = delta0_ + p.delta + extra_delta;
    if (model_ == ModelKind::Transmon) return rwa_hamiltonian(params_.n_levels, a_cdd, a_gate, delta, params_);
    DriveConfig d = drive_;
    d.a_cdd = a_cdd;
    return ideal_two_level_hamiltonian(d, a_gate, delta);
}

Operator Simulator::dressed_hamiltonian(double a_gate, double extra_delta, const Perturbation& p) const {
    return basis_.adjoint() * hamiltonian(a_gate, extra_delta, p) * basis_;
}

Operator Simulator::wait_unitary(double t, const Perturbation& p) const {
    if (t < 0) throw Error(ErrorCode::Validation, "wait_unitary: negative duration");
    return expm_hermitian(dressed_hamiltonian(0.0, 0.0, p), t);
}

double Simulator::max_dt_for(double peak_amplitude, const Perturbation& p) const {
    if (max_dt_ > 0) return max_dt_;
    return default_time_step(spectral_scale(hamiltonian(peak_amplitude, 0.0, p)));
}

Operator Simulator::pulse_unitary(const Segment& seg, const Perturbation& p) const {
    if (seg.kind == SegmentKind::Wait || !seg.envelope) {
        throw Error(ErrorCode::Validation, "pulse_unitary: segment is not a pulse");
    }
    const PulseEnvelope& env = *seg.envelope;
    const CacheKey key{static_cast<int>(env.kind) * 4 + static_cast<int>(seg.kind), env.amplitude, seg.duration,
                       env.f_start + env.f_stop * 1e-3, p.delta, p.a_cdd_frac};
    {
        std::lock_guard lock(cache_->mutex);
        const auto it = cache_->pulses.find(key);
        if (it != cache_->pulses.end()) return it->second;
    }
    Operator u;
    const auto n = dim();
    if (seg.kind == SegmentKind::XzPulse) {
        const double dt = max_dt_for(std::abs(env.amplitude), p);
        const Operator h0 = hamiltonian(0.0, 0.0, p);
        const Operator hv = hamiltonian(1.0, 0.0, p) - h0;
        u = evolve_unitary([&](double t) -> Operator { return h0 + env(t) * hv; }, 0.0, seg.duration, dt, n);
    } else {
        const double dt = max_dt_for(0.0, p);
        const Operator h0 = hamiltonian(0.0, 0.0, p);
        const Operator hd = hamiltonian(0.0, 1.0, p) - h0;
        u = evolve_unitary([&](double t) -> Operator { return h0 + env(t) * hd; }, 0.0, seg.duration, dt, n);
    }
    u = basis_.adjoint() * u * basis_;
    {
        std::lock_guard lock(cache_->mutex);
        if (cache_->pulses.size() >= kMaxCachedPulses) cache_->pulses.clear();
        cache_->pulses.emplace(key, u);
    }
    return u;
}

Operator Simulator::segment_unitary(const Segment& seg, const Perturbation& p) const {
    seg.validate();
    if (seg.kind == SegmentKind::Wait) return wait_unitary(seg.duration, p);
    return pulse_unitary(seg, p);
}

Operator Simulator::schedule_unitary(const PulseSchedule& sched, const Perturbation& p) const {
    Operator u = Operator::Identity(dim(), dim());
    for (const auto& seg : sched.segments) u = (segment_unitary(seg, p) * u).eval();
    return u;
}

StateVector Simulator::run(const PulseSchedule& sched, const StateVector& psi, const Perturbation& p) const {
    if (psi.size() != dim()) throw Error(ErrorCode::InvalidDimension, "Simulator::run: state dimension mismatch");
    StateVector out = psi;
    for (const auto& seg : sched.segments) out = (segment_unitary(seg, p) * out).eval();
    return out;
}

Operator Simulator::waveform_unitary(const ScheduleWaveforms& w, const Perturbation& p) const {
    if (w.amplitude.values.size() != w.detuning.values.size()) {
        throw Error(ErrorCode::InvalidDimension, "waveform_unitary: channel length mismatch");
    }
    const Operator h0 = hamiltonian(0.0, 0.0, p);
    const Operator hv = hamiltonian(1.0, 0.0, p) - h0;
    const Operator hd = hamiltonian(0.0, 1.0, p) - h0;
    Operator u = Operator::Identity(dim(), dim());
    const double dt = w.amplitude.dt();
    for (std::size_t i = 0; i < w.amplitude.values.size(); ++i) {
        const Operator h = h0 + w.amplitude.values[i] * hv + w.detuning.values[i] * hd;
        u = (expm_hermitian(h, dt) * u).eval();
    }
    return basis_.adjoint() * u * basis_;
}

void Simulator::clear_cache() const {
    std::lock_guard lock(cache_->mutex);
    cache_->pulses.clear();
}

RealVector dressed_populations(const StateVector& psi) { return psi.cwiseAbs2(); }

}  // namespace cdpq
