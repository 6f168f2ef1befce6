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


#include "cdpq/noise/coherence.hpp"

#include <cmath>

#include "cdpq/core/parallel.hpp"
#include "cdpq/core/propagate.hpp"

namespace cdpq {
namespace {

enum class Sequence { Ramsey, Hahn };

double with_t1(double p, double t, double t1) { return t1 > 0 ? 0.5 + (p - 0.5) * std::exp(-t / t1) : p; }

Operator noisy_wait(const Simulator& sim, const NoiseTrajectory& tr, const Perturbation& base, double t0,
                    double duration, double step) {
    if (tr.tone_freq.empty()) return sim.wait_unitary(duration, base);
    const long n = step_count(duration, step);
    Operator u = Operator::Identity(sim.dim(), sim.dim());
    if (n == 0) return u;
    const double dt = duration / static_cast<double>(n);
    for (long k = 0; k < n; ++k) {
        Perturbation p = base;
        p.delta = tr.delta(t0 + (static_cast<double>(k) + 0.5) * dt);
        u = (expm_hermitian(sim.dressed_hamiltonian(0.0, 0.0, p), dt) * u).eval();
    }
    return u;
}

std::vector<double> bare_shot(Sequence seq, std::span<const double> delays, const NoiseTrajectory& tr) {
    std::vector<double> out(delays.size());
    for (std::size_t i = 0; i < delays.size(); ++i) {
        const double t = delays[i];
        const double phi = seq == Sequence::Ramsey ? tr.phase(0.0, t) : tr.phase(0.0, 0.5 * t) - tr.phase(0.5 * t, t);
        out[i] = 0.5 * (1.0 + std::cos(phi));
    }
    return out;
}

std::vector<double> cdpq_shot(Sequence seq, std::span<const double> delays, const NoiseTrajectory& tr,
                              const CoherenceSetup& setup) {
    const Simulator& sim = *setup.sim;
    const CalibrationResult& calib = *setup.calib;
    const Perturbation stat{tr.delta_static, tr.a_cdd_frac};
    const auto x2 = standard_gate(GateSpec::make(GateName::X2), calib);
    const double tg = x2.duration();
    const Operator g = sim.schedule_unitary(x2, stat);
    const StateVector minus = sim.dressed_state(DressedLabel::Minus);
    std::vector<double> out(delays.size());
    for (std::size_t i = 0; i < delays.size(); ++i) {
        const double t = delays[i];
        StateVector psi = g * minus;
        if (seq == Sequence::Ramsey) {
            psi = noisy_wait(sim, tr, stat, tg, t, setup.noise_step) * psi;
            psi = g * psi;
            out[i] = std::norm(psi(0));
        } else {
            psi = noisy_wait(sim, tr, stat, tg, 0.5 * t, setup.noise_step) * psi;
            psi = g * (g * psi);
            psi = noisy_wait(sim, tr, stat, 3.0 * tg + 0.5 * t, 0.5 * t, setup.noise_step) * psi;
            psi = g * psi;
            out[i] = std::norm(psi(1));
        }
    }
    return out;
}

DecayCurve run_experiment(Sequence seq, std::span<const double> delays, const NoiseModel& model, int n_shots,
                          const CoherenceSetup& setup) {
    model.validate();
    if (n_shots < 1) throw Error(ErrorCode::Validation, "coherence: n_shots must be >= 1");
    if (delays.empty()) throw Error(ErrorCode::Validation, "coherence: no delays");
    for (std::size_t i = 1; i < delays.size(); ++i) {
        if (!(delays[i] > delays[i - 1])) throw Error(ErrorCode::Validation, "coherence: delays must increase");
    }
    if (setup.system == SystemKind::Cdpq && (!setup.sim || !setup.calib)) {
        throw Error(ErrorCode::MissingCalibration, "coherence: CDPQ experiments need a simulator and calibration");
    }
    const double horizon = delays.back() + 1e-6;
    std::vector<std::vector<double>> shots(static_cast<std::size_t>(n_shots));
    parallel_for(shots.size(), setup.workers, [&](std::size_t s) {
        RngStream rng = make_stream(model.seed, StreamTag::Coherence, s);
        const NoiseTrajectory tr = sample_noise_trajectory(model, horizon, rng);
        shots[s] = setup.system == SystemKind::Bare ? bare_shot(seq, delays, tr) : cdpq_shot(seq, delays, tr, setup);
    });

    DecayCurve curve;
    curve.delays.assign(delays.begin(), delays.end());
    const double n = static_cast<double>(n_shots);
    for (std::size_t i = 0; i < delays.size(); ++i) {
        double sum = 0.0, sum2 = 0.0;
        for (const auto& row : shots) {
            sum += row[i];
            sum2 += row[i] * row[i];
        }
        const double mean = sum / n;
        const double var = n > 1 ? std::max(sum2 / n - mean * mean, 0.0) * n / (n - 1) : 0.0;
        curve.survival.push_back(with_t1(mean, delays[i], model.t1));
        curve.stderr.push_back(std::sqrt(var / n));
    }
    try {
        curve.fit = fit_decay(curve.delays, curve.survival, setup.fit_model);
    } catch (const Error&) {
        curve.fit.reset();
    }
    return curve;
}

}  // namespace

DecayCurve ramsey_experiment(std::span<const double> delays, const NoiseModel& model, int n_shots,
                             const CoherenceSetup& setup) {
    return run_experiment(Sequence::Ramsey, delays, model, n_shots, setup);
}

DecayCurve hahn_experiment(std::span<const double> delays, const NoiseModel& model, int n_shots,
                           const CoherenceSetup& setup) {
    return run_experiment(Sequence::Hahn, delays, model, n_shots, setup);
}

std::vector<double> period_aligned_delays(double period, double max_delay, std::size_t n) {
    if (!(period > 0) || n < 2) throw Error(ErrorCode::Validation, "period_aligned_delays: bad arguments");
    const double periods = std::max(1.0, std::round(max_delay / static_cast<double>(n - 1) / period));
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<double>(k) * periods * period;
    return out;
}

}  // namespace cdpq
