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
#include "cdpq/rb/benchmark.hpp"
#include "cdpq/rb/clifford.hpp"

using namespace cdpq;

namespace {

// Independent rotation oracle: cos(t/2) I - i sin(t/2) sigma.
Operator rot(const Operator& sigma, double t) {
    const cplx i(0, 1);
    return std::cos(t / 2) * Operator::Identity(2, 2) - i * std::sin(t / 2) * sigma;
}

double phase_distance(const Operator& a, const Operator& b) { return phase_invariant_distance(a, b); }

}  // namespace

TEST(Clifford, PrimitivesAreHalfAngleRotations) {
    EXPECT_LT(phase_distance(ideal_primitive(GateName::X2), rot(sigma_x(), kPi / 2)), 1e-14);
    EXPECT_LT(phase_distance(ideal_primitive(GateName::MinusY2), rot(sigma_y(), -kPi / 2)), 1e-14);
    EXPECT_LT(phase_distance(ideal_primitive(GateName::Z), rot(sigma_z(), kPi)), 1e-14);
    EXPECT_LT(phase_distance(ideal_primitive(GateName::I), Operator::Identity(2, 2)), 1e-14);
}

TEST(Clifford, TableRowsMatchKnownElements) {
    const auto& t = clifford_table();
    ASSERT_EQ(t.size(), 24u);
    EXPECT_LT(phase_distance(t[0].unitary, Operator::Identity(2, 2)), 1e-12);
    // Clifford 2 is an X rotation by pi: |0> -> |1>.
    EXPECT_LT(phase_distance(t[1].unitary, rot(sigma_x(), kPi)), 1e-12);
    EXPECT_NEAR(std::abs(t[1].unitary(1, 0)), 1.0, 1e-12);
    EXPECT_LT(phase_distance(t[3].unitary, rot(sigma_z(), kPi)), 1e-12);
    EXPECT_LT(phase_distance(t[13].unitary * t[12].unitary, Operator::Identity(2, 2)), 1e-12);
    for (std::size_t k = 0; k < t.size(); ++k) EXPECT_EQ(t[k].id, static_cast<int>(k) + 1);
}

TEST(Clifford, ClosedAndDistinct) {
    const auto& t = clifford_table();
    for (const auto& a : t) {
        for (const auto& b : t) {
            const int id = find_clifford(b.unitary * a.unitary, 1e-10);
            EXPECT_LT(phase_distance(t[static_cast<std::size_t>(id - 1)].unitary, b.unitary * a.unitary), 1e-10);
        }
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = i + 1; j < t.size(); ++j) EXPECT_GT(phase_distance(t[i].unitary, t[j].unitary), 0.1);
    }
    EXPECT_THROW(find_clifford(rot(sigma_x(), 0.3)), Error);
}

TEST(Clifford, RecoveryExamples) {
    EXPECT_EQ(recovery_for({4}), 4);
    EXPECT_EQ(recovery_for({13, 14}), 1);
    auto rng = make_stream(1, StreamTag::RbSequence, 0);
    for (int k = 0; k < 1000; ++k) {
        const int m = 1 + k % 50;
        const auto seq = rb_sequence(m, rng);
        ASSERT_EQ(static_cast<int>(seq.ids.size()), m);
        Operator u = Operator::Identity(2, 2);
        for (int id : seq.ids) u = (clifford_table()[static_cast<std::size_t>(id - 1)].unitary * u).eval();
        u = (clifford_table()[static_cast<std::size_t>(seq.recovery - 1)].unitary * u).eval();
        ASSERT_LT(phase_distance(u, Operator::Identity(2, 2)), 1e-9);
        ASSERT_LT(phase_distance(sequence_unitary(seq), Operator::Identity(2, 2)), 1e-9);
    }
}

TEST(Clifford, ExpandListsPrimitivesInTimeOrder) {
    RbSequence s;
    s.ids = {2};
    s.recovery = 2;
    const auto g = expand(s);
    ASSERT_EQ(g.size(), clifford_table()[1].primitives.size() * 2);
    EXPECT_EQ(g.front().name, clifford_table()[1].primitives.front());
}

TEST(Rb, DepolarizingMockRecoversP) {
    const DepolarizingExecutor mock(0.99, 0.002, 11);
    const std::vector<int> lengths{1, 5, 10, 25, 50, 100, 200};
    const auto r = run_rb(lengths, 40, mock, 3);
    EXPECT_NEAR(r.fit.p, 0.99, 0.002);
    EXPECT_NEAR(r.fit.fidelity, 1 - (1 - r.fit.p) / 2, 1e-15);
    for (std::size_t i = 1; i < r.survival_mean.size(); ++i) EXPECT_LE(r.survival_mean[i], r.survival_mean[i - 1] + 1e-3);
    EXPECT_EQ(r.raw.size(), lengths.size());
    EXPECT_EQ(r.raw.front().size(), 40u);
}

TEST(Rb, ResultIndependentOfWorkers) {
    const DepolarizingExecutor mock(0.98, 0.01, 2);
    const std::vector<int> lengths{1, 4, 16, 64};
    const auto a = run_rb(lengths, 20, mock, 9, 1);
    const auto b = run_rb(lengths, 20, mock, 9, 3);
    EXPECT_EQ(a.raw, b.raw);
    EXPECT_EQ(a.fit.p, b.fit.p);
}

TEST(Rb, StandardErrorShrinksWithSequences) {
    const std::vector<int> lengths{1, 5, 10, 25, 50, 100};
    double e1 = 0.0, e2 = 0.0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const DepolarizingExecutor mock(0.98, 0.02, seed);
        e1 += run_rb(lengths, 50, mock, seed).fit.fidelity_err;
        e2 += run_rb(lengths, 100, mock, seed + 1000).fit.fidelity_err;
    }
    EXPECT_NEAR(e1 / e2, std::sqrt(2.0), 0.2 * std::sqrt(2.0));
}

TEST(Rb, FitFallsBackToPinnedAsymptote) {
    const std::vector<int> m{2, 8, 32, 64, 128, 256};
    std::vector<double> s;
    for (int k : m) s.push_back(0.5 + 0.5 * std::pow(0.99999, k) + (k == 128 ? 2e-5 : 0.0));
    const auto f = fit_rb(m, s);
    EXPECT_GE(f.b, 0.0);
    EXPECT_LE(f.b, 1.0);
    EXPECT_NEAR(f.p, 0.99999, 5e-6);
    try {
        fit_rb(std::vector<int>{1, 2}, std::vector<double>{1.0, 0.9});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BenchmarkFailed);
    }
}

TEST(Rb, AverageCliffordTime) {
    const double a = angular(23e6);
    EXPECT_NEAR(avg_clifford_time(40e-9, 36.4e-9, a) * 1e9, 92.7, 0.05);
    EXPECT_NEAR(avg_clifford_time(40e-9, 0.0, 1e30), 40e-9, 1e-18);
    EXPECT_THROW(avg_clifford_time(-1.0, 0.0, a), Error);
    EXPECT_EQ(default_rb_lengths().front(), 2);
    EXPECT_EQ(default_rb_lengths().back(), 256);
}

TEST(Rb, CalibratedIdealGateSetIsNearPerfect) {
    DriveConfig d;
    d.a_cdd = angular(23e6);
    CalibrationOptions o;
    o.select_ratio = false;
    const auto calib = calibrate(TransmonParams::reference(), d, ModelKind::IdealTwoLevel, o);
    const auto sim = Simulator::ideal(d);
    const PulseExecutor exec(sim, calib);
    const std::vector<int> lengths{2, 4, 8, 16, 32};
    const auto r = run_rb(lengths, 10, exec, 4);
    EXPECT_GT(r.fit.fidelity, 0.999);
    NoiseModel noise;
    noise.sigma_quasistatic = angular(3e6);
    noise.seed = 8;
    const PulseExecutor noisy(sim, calib, noise);
    const auto rn = run_rb(lengths, 10, noisy, 4);
    EXPECT_LT(rn.survival_mean.back(), r.survival_mean.back());
}
