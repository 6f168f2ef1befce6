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


#include <gtest/gtest.h>

#include <cmath>

#include "cdpq/calibration/calibrate.hpp"
#include "cdpq/noise/coherence.hpp"
#include "cdpq/noise/noise.hpp"

using namespace cdpq;

TEST(NoiseModel, Validation) {
    NoiseModel m;
    EXPECT_TRUE(m.silent());
    m.sigma_quasistatic = -1.0;
    EXPECT_THROW(m.validate(), Error);
    m.sigma_quasistatic = 0.0;
    m.one_over_f_amp = 1.0;
    m.f_high = m.f_low;
    EXPECT_THROW(m.validate(), Error);
}

TEST(Trajectory, ToneLadderAndAnalyticPhase) {
    NoiseModel m;
    m.one_over_f_amp = angular(50e3);
    m.f_low = 1e3;
    m.f_high = 1e6;
    m.tones_per_decade = 10;
    m.sigma_quasistatic = angular(20e3);
    auto rng = make_stream(5, StreamTag::Noise, 0);
    const auto tr = sample_noise_trajectory(m, 10e-6, rng);
    ASSERT_EQ(tr.tone_freq.size(), 31u);
    EXPECT_NEAR(tr.tone_freq.front(), 1e3, 1e-9);
    EXPECT_NEAR(tr.tone_freq.back(), 1e6, 1e-6);
    EXPECT_NEAR(tr.tone_amp.front(), m.one_over_f_amp * std::sqrt(0.2), 1e-9);
    // Trapezoid integral of delta(t) as the oracle for phase().
    const int n = 200000;
    const double t1 = 7e-6, dt = t1 / n;
    double acc = 0.5 * (tr.delta(0.0) + tr.delta(t1));
    for (int i = 1; i < n; ++i) acc += tr.delta(i * dt);
    EXPECT_NEAR(tr.phase(0.0, t1), acc * dt, 1e-6);
    EXPECT_EQ(tr.sample(1e9).size(), 10000u);
}

TEST(Trajectory, StaticDrawIndependentOfToneChannel) {
    NoiseModel a;
    a.sigma_quasistatic = 1.0;
    NoiseModel b = a;
    b.one_over_f_amp = 1.0;
    auto r1 = make_stream(9, StreamTag::Noise, 3);
    auto r2 = make_stream(9, StreamTag::Noise, 3);
    EXPECT_EQ(sample_noise_trajectory(a, 1e-6, r1).delta_static, sample_noise_trajectory(b, 1e-6, r2).delta_static);
}

TEST(FitDecay, RecoversBothModels) {
    std::vector<double> t, ye, yg;
    for (int i = 0; i < 40; ++i) {
        t.push_back(i * 0.1e-6);
        ye.push_back(0.5 * std::exp(-t.back() / 1.3e-6) + 0.5);
        yg.push_back(0.5 * std::exp(-std::pow(t.back() / 1.3e-6, 2)) + 0.5);
    }
    const auto fe = fit_decay(t, ye, DecayModel::Exponential);
    const auto fg = fit_decay(t, yg, DecayModel::Gaussian);
    EXPECT_NEAR(fe.t2, 1.3e-6, 1e-12);
    EXPECT_NEAR(fg.t2, 1.3e-6, 1e-12);
    // Wrong model still fits, with a larger residual.
    const auto cross = fit_decay(t, yg, DecayModel::Exponential);
    EXPECT_GT(cross.rss, 100.0 * fg.rss + 1e-12);
    const std::vector<double> flat(40, 1.0);
    EXPECT_THROW(fit_decay(t, flat, DecayModel::Gaussian), Error);
    EXPECT_THROW(fit_decay(std::vector<double>{0, 1}, std::vector<double>{1, 0.5}, DecayModel::Gaussian), Error);
}

TEST(Coherence, BareRamseyMatchesGaussianAverage) {
    // <(1 + cos(d t)) / 2> over d ~ N(0, s^2) is (1 + exp(-s^2 t^2 / 2)) / 2.
    NoiseModel m;
    m.sigma_quasistatic = angular(0.5e6);
    m.seed = 17;
    CoherenceSetup s;
    s.system = SystemKind::Bare;
    const auto delays = linspace(0.0, 1.5e-6, 31);
    const auto curve = ramsey_experiment(delays, m, 4000, s);
    for (std::size_t i = 0; i < delays.size(); ++i) {
        const double x = m.sigma_quasistatic * delays[i];
        EXPECT_NEAR(curve.survival[i], 0.5 * (1 + std::exp(-x * x / 2)), 5 * curve.stderr[i] + 1e-12);
    }
    ASSERT_TRUE(curve.fit.has_value());
    EXPECT_NEAR(curve.fit->t2 * m.sigma_quasistatic / std::sqrt(2.0), 1.0, 0.05);
}

TEST(Coherence, BareHahnRefocusesStaticNoise) {
    NoiseModel m;
    m.sigma_quasistatic = angular(0.5e6);
    CoherenceSetup s;
    const auto delays = linspace(0.0, 2e-6, 11);
    const auto curve = hahn_experiment(delays, m, 200, s);
    for (double v : curve.survival) EXPECT_NEAR(v, 1.0, 1e-12);
    EXPECT_FALSE(curve.fit.has_value());
}

TEST(Coherence, SilentModelIsFlatAndDeterministic) {
    NoiseModel m;
    m.seed = 3;
    CoherenceSetup s;
    const auto delays = linspace(0.0, 1e-6, 6);
    const auto a = ramsey_experiment(delays, m, 10, s);
    for (double v : a.survival) EXPECT_NEAR(v, 1.0, 1e-12);
    m.sigma_quasistatic = angular(1e6);
    s.workers = 1;
    const auto r1 = ramsey_experiment(delays, m, 50, s);
    s.workers = 4;
    const auto r4 = ramsey_experiment(delays, m, 50, s);
    EXPECT_EQ(r1.survival, r4.survival);
}

TEST(Coherence, CdpqNeedsCalibration) {
    NoiseModel m;
    CoherenceSetup s;
    s.system = SystemKind::Cdpq;
    const auto delays = linspace(0.0, 1e-6, 6);
    EXPECT_THROW(ramsey_experiment(delays, m, 10, s), Error);
}

TEST(Coherence, PeriodAlignedDelays) {
    const double period = 43.5e-9;
    const auto d = period_aligned_delays(period, 10e-6, 11);
    ASSERT_EQ(d.size(), 11u);
    EXPECT_EQ(d.front(), 0.0);
    for (double v : d) EXPECT_NEAR(std::remainder(v / period, 1.0), 0.0, 1e-9);
    EXPECT_NEAR(d.back(), 10e-6, 0.1 * 10e-6);
    EXPECT_THROW(period_aligned_delays(0.0, 1.0, 3), Error);
}
