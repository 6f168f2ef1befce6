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

#include "cdpq/noise/noise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cdpq/core/fit.hpp"
#include "cdpq/core/types.hpp"
#include "cdpq/error.hpp"

namespace cdpq {

void NoiseModel::validate() const {
    if (sigma_quasistatic < 0 || one_over_f_amp < 0 || a_cdd_frac_noise < 0 || t1 < 0) {
        throw Error(ErrorCode::Validation, "NoiseModel: magnitudes must be >= 0");
    }
    if (one_over_f_amp > 0) {
        if (!(f_low > 0) || !(f_high > f_low)) {
            throw Error(ErrorCode::Validation, "NoiseModel: need 0 < f_low < f_high");
        }
        if (tones_per_decade < 1) throw Error(ErrorCode::Validation, "NoiseModel: tones_per_decade must be >= 1");
    }
}

double NoiseTrajectory::delta(double t) const {
    double d = delta_static;
    for (std::size_t k = 0; k < tone_freq.size(); ++k) {
        d += tone_amp[k] * std::cos(kTwoPi * tone_freq[k] * t + tone_phase[k]);
    }
    return d;
}

double NoiseTrajectory::phase(double t0, double t1) const {
    double p = delta_static * (t1 - t0);
    for (std::size_t k = 0; k < tone_freq.size(); ++k) {
        const double w = kTwoPi * tone_freq[k];
        p += tone_amp[k] / w * (std::sin(w * t1 + tone_phase[k]) - std::sin(w * t0 + tone_phase[k]));
    }
    return p;
}

std::vector<double> NoiseTrajectory::sample(double rate) const {
    const auto n = static_cast<std::size_t>(std::llround(duration * rate));
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = delta((static_cast<double>(i) + 0.5) / rate);
    return out;
}

NoiseTrajectory sample_noise_trajectory(const NoiseModel& model, double duration, RngStream& rng) {
    model.validate();
    if (!(duration > 0)) throw Error(ErrorCode::Validation, "sample_noise_trajectory: duration must be positive");
    NoiseTrajectory tr;
    tr.duration = duration;
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
    // Fixed draw order keeps a shot's static terms independent of which
    // channels are enabled.
    const double z_delta = normal(rng);
    const double z_amp = normal(rng);
    tr.delta_static = model.sigma_quasistatic * z_delta;
    tr.a_cdd_frac = model.a_cdd_frac_noise * z_amp;
    if (model.one_over_f_amp > 0) {
        const double decades = std::log10(model.f_high / model.f_low);
        const auto n = static_cast<int>(std::ceil(decades * model.tones_per_decade - 1e-9)) + 1;
        const double a = model.one_over_f_amp * std::sqrt(2.0 / model.tones_per_decade);
        for (int k = 0; k < n; ++k) {
            const double f = model.f_low * std::pow(10.0, std::min(decades, static_cast<double>(k) / model.tones_per_decade));
            tr.tone_freq.push_back(f);
            tr.tone_amp.push_back(a);
            tr.tone_phase.push_back(uniform(rng));
        }
    }
    return tr;
}

DecayFit fit_decay(std::span<const double> delays, std::span<const double> survival, DecayModel model) {
    if (delays.size() != survival.size() || delays.size() < 5) {
        throw Error(ErrorCode::FitFailed, "fit_decay: need >= 5 matching points");
    }
    const auto [lo, hi] = std::minmax_element(survival.begin(), survival.end());
    if (*hi - *lo < 1e-6) throw Error(ErrorCode::FitFailed, "fit_decay: curve shows no decay");

    const double c0 = survival.back();
    const double a0 = survival.front() - c0;
    double t0 = delays.back() / 2.0;
    for (std::size_t i = 0; i < survival.size(); ++i) {
        if (std::abs(survival[i] - c0) <= std::abs(a0) / std::exp(1.0)) {
            t0 = std::max(delays[i], 1e-3 * delays.back());
            break;
        }
    }
    const bool gaussian = model == DecayModel::Gaussian;
    const ModelFn fn = [gaussian](const Eigen::VectorXd& p, double t) {
        const double u = t / p(2);
        return p(0) * std::exp(gaussian ? -u * u : -u) + p(1);
    };
    Eigen::VectorXd init(3);
    init << a0, c0, t0;
    const CurveFit fit = least_squares(fn, delays, survival, init);
    DecayFit out;
    out.model = model;
    out.amplitude = fit.params(0);
    out.offset = fit.params(1);
    out.t2 = std::abs(fit.params(2));
    out.t2_err = fit.stderr(2);
    out.rss = fit.rss;
    if (!std::isfinite(out.t2) || !(out.t2 > 0) || !fit.converged) {
        throw Error(ErrorCode::FitFailed, "fit_decay: fit did not converge",
                    {"rss = " + std::to_string(fit.rss), "t2 = " + std::to_string(out.t2)});
    }
    return out;
}

}  // namespace cdpq
