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

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "cdpq/gates/schedule.hpp"
#include "cdpq/gates/simulator.hpp"

using namespace cdpq;

namespace {

CalibrationResult toy_calibration(double splitting) {
    CalibrationResult c;
    c.a_cdd = splitting;
    c.splitting = splitting;
    c.a_g = angular(20e6);
    c.t_g = 40e-9;
    c.t_close = 0.3 * kTwoPi / splitting;
    return c;
}

// Fixed-step RK4 on i dU/dt = H U; independent of the simulator's midpoint rule.
Operator rk4_unitary(const std::function<Operator(double)>& h, double t0, double dur, int steps) {
    const cplx mi(0, -1);
    const auto n = h(t0).rows();
    Operator u = Operator::Identity(n, n);
    const double dt = dur / steps;
    for (int k = 0; k < steps; ++k) {
        const double t = t0 + k * dt;
        const Operator k1 = mi * h(t) * u;
        const Operator k2 = mi * h(t + dt / 2) * (u + dt / 2 * k1);
        const Operator k3 = mi * h(t + dt / 2) * (u + dt / 2 * k2);
        const Operator k4 = mi * h(t + dt) * (u + dt * k3);
        u += dt / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return u;
}

}  // namespace

TEST(GateSpec, ParseAndLabelRoundTrip) {
    for (const char* s : {"I", "X/2", "-X/2", "Y/2", "-Y/2", "Z", "Z/2", "-Z/2"}) {
        EXPECT_EQ(GateSpec::parse(s).label(), s);
    }
    const auto rz = GateSpec::parse("Rz(1.5)");
    EXPECT_EQ(rz.name, GateName::Rz);
    EXPECT_DOUBLE_EQ(rz.phase1, 1.5);
    const auto u = GateSpec::parse("U(-0.5, 7)");
    EXPECT_NEAR(u.phase1, kTwoPi - 0.5, 1e-15);
    EXPECT_NEAR(u.phase2, 7 - kTwoPi, 1e-15);
    try {
        GateSpec::parse("H");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedGate);
    }
}

TEST(Schedule, WaitDurationsFromPhase) {
    const double rate = angular(23e6);
    EXPECT_NEAR(rz_wait(kPi, rate).duration, kPi / rate, 1e-18);
    EXPECT_NEAR(rz_wait(-kPi / 2, rate).duration, 1.5 * kPi / rate, 1e-18);
    EXPECT_THROW(rz_wait(1.0, 0.0), Error);
    EXPECT_NEAR(wrap_phase(-0.25), kTwoPi - 0.25, 1e-15);
}

TEST(Schedule, StandardGateDurations) {
    const auto c = toy_calibration(angular(23e6));
    const double period = c.period();
    EXPECT_NEAR(standard_gate(GateSpec::make(GateName::Z), c).duration(), period / 2, 1e-18);
    EXPECT_NEAR(standard_gate(GateSpec::make(GateName::Z2), c).duration(), period / 4, 1e-18);
    EXPECT_NEAR(standard_gate(GateSpec::make(GateName::MinusZ2), c).duration(), 3 * period / 4, 1e-18);
    EXPECT_EQ(standard_gate(GateSpec::make(GateName::I), c).segments.size(), 0u);
    // Every quarter-turn gate lasts t_g plus the closing wait.
    for (auto g : {GateName::X2, GateName::MinusX2, GateName::Y2, GateName::MinusY2}) {
        EXPECT_NEAR(standard_gate(GateSpec::make(g), c).duration(), c.t_g + c.closing_wait(), 1e-18);
    }
    const auto x2 = standard_gate(GateSpec::make(GateName::X2), c);
    ASSERT_EQ(x2.segments.size(), 3u);
    EXPECT_NEAR(x2.segments[0].duration, period / 4, 1e-18);
    EXPECT_EQ(x2.segments[1].kind, SegmentKind::XzPulse);
    CalibrationResult missing;
    EXPECT_THROW(rxz_pulse(missing), Error);
    EXPECT_THROW(standard_gate(GateSpec::make(GateName::X2), missing), Error);
}

TEST(Schedule, ComposeUniversalOrder) {
    const auto c = toy_calibration(angular(23e6));
    const auto u = compose_universal(0.5, 1.0, c);
    ASSERT_EQ(u.segments.size(), 4u);
    EXPECT_EQ(u.segments[0].kind, SegmentKind::Wait);
    EXPECT_NEAR(u.segments[0].duration, 1.0 / c.splitting, 1e-18);
    EXPECT_EQ(u.segments[1].kind, SegmentKind::XzPulse);
    EXPECT_NEAR(u.segments[2].duration, 0.5 / c.splitting, 1e-18);
    EXPECT_EQ(u.segments[3].kind, SegmentKind::XzPulse);
    std::ostringstream os;
    write_schedule(os, u);
    EXPECT_NE(os.str().find("xz_pulse"), std::string::npos);
}

TEST(Schedule, QuantizeKeepsGridAndRejectsFractionalPulses) {
    const auto c = toy_calibration(angular(23e6));
    const GateSpec seq[] = {GateSpec::make(GateName::X2), GateSpec::make(GateName::Z2), GateSpec::make(GateName::Y2)};
    const auto s = compile_sequence(seq, c);
    const double rate = 2e9;
    const auto q = quantize(s, rate);
    ASSERT_EQ(q.segments.size(), s.segments.size());
    for (const auto& seg : q.segments) {
        const double n = seg.duration * rate;
        EXPECT_NEAR(n, std::round(n), 1e-6);
    }
    EXPECT_NEAR(q.duration(), std::round(s.duration() * rate) / rate, 1e-15);
    auto bad = c;
    bad.t_g = 40.2e-9;
    EXPECT_THROW(quantize(standard_gate(GateSpec::make(GateName::X2), bad), 1e9), Error);
}

TEST(Schedule, WaveformRenderingRespectsBandwidth) {
    const auto c = toy_calibration(angular(23e6));
    const auto s = standard_gate(GateSpec::make(GateName::Y2), c);
    try {
        schedule_to_waveforms(s, 0.5e9);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Resolution);
    }
    const auto w = schedule_to_waveforms(s, 10e9);
    EXPECT_EQ(w.amplitude.values.size(), static_cast<std::size_t>(std::llround(s.duration() * 10e9)));
    EXPECT_GT(*std::max_element(w.amplitude.values.begin(), w.amplitude.values.end()), 0.9 * c.a_g);
}

TEST(Simulator, IdealWaitIsZRotationAtSplitting) {
    DriveConfig d;
    d.a_cdd = angular(23e6);
    const auto sim = Simulator::ideal(d);
    EXPECT_EQ(sim.dim(), 2);
    EXPECT_NEAR(sim.splitting(), d.a_cdd, 1e-6);
    const double t = 13e-9;
    const Operator u = sim.wait_unitary(t);
    EXPECT_NEAR(std::abs(u(0, 1)), 0.0, 1e-12);
    // |+> gains exp(-i s t / 2), |-> gains exp(+i s t / 2).
    const cplx rel = u(0, 0) / u(1, 1);
    EXPECT_NEAR(std::arg(rel), std::remainder(-d.a_cdd * t, kTwoPi), 1e-9);
    EXPECT_THROW(sim.dressed_state(DressedLabel::Leak), Error);
}

TEST(Simulator, IdealPulseMatchesRk4Oracle) {
    DriveConfig d;
    d.a_cdd = angular(23e6);
    const auto sim = Simulator::ideal(d);
    const auto c = toy_calibration(sim.splitting());
    const Segment seg = rxz_pulse(c);
    const Operator b = sim.dressed_basis();
    const auto env = *seg.envelope;
    const Operator bare = rk4_unitary([&](double t) { return sim.hamiltonian(env(t), 0.0); }, 0.0, c.t_g, 20000);
    const Operator expect = b.adjoint() * bare * b;
    EXPECT_LT(phase_invariant_distance(sim.pulse_unitary(seg), expect), 1e-5);
}

TEST(Simulator, TransmonPulseMatchesRk4OracleAndCaches) {
    const auto p = TransmonParams::reference();
    const auto d = DriveConfig::reference();
    const auto sim = Simulator::transmon(p, d);
    EXPECT_EQ(sim.dim(), 3);
    auto c = toy_calibration(sim.splitting());
    c.a_g = angular(29.12e6);
    const Segment seg = rxz_pulse(c);
    const auto env = *seg.envelope;
    const Operator b = sim.dressed_basis();
    const Operator bare = rk4_unitary([&](double t) { return sim.hamiltonian(env(t), 0.0); }, 0.0, c.t_g, 40000);
    const Operator u1 = sim.pulse_unitary(seg);
    EXPECT_LT(phase_invariant_distance(u1, b.adjoint() * bare * b), 1e-5);
    const Operator u2 = sim.pulse_unitary(seg);
    EXPECT_EQ((u1 - u2).norm(), 0.0);
    EXPECT_LT((u1.adjoint() * u1 - Operator::Identity(3, 3)).norm(), 1e-10);
}

TEST(Simulator, DressedBasisDiagonalizesNominalHamiltonian) {
    const auto sim = Simulator::transmon(TransmonParams::reference(), DriveConfig::reference());
    const Operator h = sim.dressed_hamiltonian(0.0, 0.0);
    EXPECT_LT((h - Operator(h.diagonal().asDiagonal())).norm(), 1e-3);
    EXPECT_NEAR((h(0, 0) - h(1, 1)).real(), sim.splitting(), 1e-3);
    const auto pops = dressed_populations(sim.run(PulseSchedule{}, sim.dressed_state(DressedLabel::Minus)));
    EXPECT_NEAR(pops(1), 1.0, 1e-15);
}

TEST(Simulator, WaveformPropagationConvergesToSegmentPropagation) {
    const auto sim = Simulator::transmon(TransmonParams::reference(), DriveConfig::reference());
    auto c = toy_calibration(sim.splitting());
    const GateSpec seq[] = {GateSpec::make(GateName::X2), GateSpec::make(GateName::Y2)};
    const auto sched = quantize(compile_sequence(seq, c), 20e9);
    const Operator exact = sim.schedule_unitary(sched);
    const Operator sampled = sim.waveform_unitary(schedule_to_waveforms(sched, 20e9));
    EXPECT_LT(phase_invariant_distance(exact, sampled), 1e-3);
}
