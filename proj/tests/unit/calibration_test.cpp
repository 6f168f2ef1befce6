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

using namespace cdpq;

namespace {

DriveConfig ideal_drive(double offset_hz = 0.0) {
    DriveConfig d;
    d.a_cdd = angular(23e6);
    d.detuning_offset = angular(offset_hz);
    return d;
}

}  // namespace

TEST(SelectAcdd, PicksNearestIntegerRatio) {
    const auto p = TransmonParams::reference();
    EXPECT_NEAR(hertz(select_acdd(p, angular(23e6))), 137e6 / 6.0, 1e-3);
    EXPECT_NEAR(hertz(select_acdd(p, angular(30e6))), 137e6 / 5.0, 1e-3);
    try {
        select_acdd(p, angular(100e6));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoCandidate);
    }
}

TEST(CalibrationResult, ClosingWaitAndValidation) {
    CalibrationResult c;
    EXPECT_THROW(c.validate(), Error);
    c.a_g = 1.0;
    c.t_g = 40e-9;
    c.splitting = angular(25e6);
    c.t_close = 5e-9;
    EXPECT_NEAR(c.closing_wait(), 45e-9, 1e-18);
    c.t_close = 35e-9;
    EXPECT_NEAR(c.closing_wait(), 35e-9, 1e-18);
    c.t_close = 40e-9;
    EXPECT_THROW(c.validate(), Error);
}

TEST(Linspace, Endpoints) {
    const auto v = linspace(1.0, 2.0, 5);
    ASSERT_EQ(v.size(), 5u);
    EXPECT_DOUBLE_EQ(v.front(), 1.0);
    EXPECT_DOUBLE_EQ(v.back(), 2.0);
    EXPECT_DOUBLE_EQ(v[2], 1.5);
}

class CoarseScanRate : public ::testing::TestWithParam<double> {};

TEST_P(CoarseScanRate, FollowsHyperbolicLaw) {
    const double offset = GetParam();
    const auto sim = Simulator::ideal(ideal_drive(offset));
    const double period = kTwoPi / sim.splitting();
    const auto a = linspace(0.0, angular(60e6), 13);
    const auto t = linspace(0.0, 4.0 * period, 81);
    const auto cs = coarse_scan(a, t, 40e-9, sim);
    const double expect = std::hypot(angular(23e6), angular(offset));
    EXPECT_NEAR(cs.rate / expect, 1.0, 0.01);
    EXPECT_NEAR(hertz(cs.delta_estimate), std::abs(offset), 1e6);
    EXPECT_GT(cs.contrast, 0.1);
    EXPECT_EQ(cs.map.values.rows(), 13);
    EXPECT_EQ(cs.map.values.cols(), 81);
}

INSTANTIATE_TEST_SUITE_P(Offsets, CoarseScanRate, ::testing::Values(0.0, 5e6, -10e6));

TEST(CoarseScan, FailsWithoutContrast) {
    const auto sim = Simulator::ideal(ideal_drive());
    const auto a = linspace(0.0, 0.0, 3);
    const auto t = linspace(0.0, 100e-9, 40);
    try {
        coarse_scan(a, t, 40e-9, sim);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CalibrationFailed);
    }
}

TEST(Calibrate, IdealModelConvergesToIdentityTrains) {
    CalibrationOptions o;
    o.select_ratio = false;
    const auto drive = ideal_drive();
    const auto c = calibrate(TransmonParams::reference(), drive, ModelKind::IdealTwoLevel, o);
    const auto sim = Simulator::ideal(drive);
    EXPECT_TRUE(c.calibrated());
    EXPECT_LT(train_infidelity(c, 4, sim).identity, 1e-4);
    EXPECT_LT(train_infidelity(c, 4, sim).flip, 1e-3);
    EXPECT_FALSE(c.log.empty());
    EXPECT_LT(train_error_signal(c, 4, sim), 1e-2);
}

TEST(Refine, RecoversFromPerturbedStart) {
    CalibrationOptions o;
    o.select_ratio = false;
    const auto drive = ideal_drive();
    const auto sim = Simulator::ideal(drive);
    const auto good = calibrate(TransmonParams::reference(), drive, ModelKind::IdealTwoLevel, o);
    CalibrationResult start = good;
    start.a_g *= 1.05;
    const double before = train_infidelity(start, 4, sim).identity;
    const auto refined = refine_with_trains(start, sim);
    EXPECT_LT(train_infidelity(refined, 4, sim).identity, before);
    EXPECT_LT(train_infidelity(refined, 4, sim).identity, 1e-4);
    RefineOptions bad;
    bad.max_train = 2;
    EXPECT_THROW(refine_with_trains(start, sim, bad), Error);
}

TEST(Sweeps, PopulationMapShapeAndZeroDrive) {
    const auto sim = Simulator::ideal(ideal_drive());
    const auto a = linspace(0.0, angular(60e6), 7);
    const auto t = linspace(10e-9, 60e-9, 6);
    const DressedLabel inits[] = {DressedLabel::Minus};
    const auto maps = population_sweep(a, t, inits, sim);
    ASSERT_EQ(maps.size(), 1u);
    const auto& pop = maps[0].population;
    EXPECT_EQ(pop.values.rows(), 6);
    EXPECT_EQ(pop.values.cols(), 7);
    for (Eigen::Index i = 0; i < pop.values.rows(); ++i) EXPECT_NEAR(pop.values(i, 0), 0.0, 1e-12);
    EXPECT_EQ(pop.init_state, "-");
    EXPECT_THROW(leakage_sweep(a, t, inits, sim), Error);
}

TEST(Sweeps, LeakageMapOnTransmon) {
    const auto sim = Simulator::transmon(TransmonParams::reference(), DriveConfig::reference());
    const auto a = linspace(angular(10e6), angular(40e6), 4);
    const auto t = linspace(30e-9, 50e-9, 3);
    const auto m = leakage_sweep(a, t, DressedLabel::Plus, sim);
    EXPECT_LE(m.leakage.values.maxCoeff(), 0.0);
    EXPECT_GE(m.leakage.values.minCoeff(), -16.0);
    EXPECT_EQ(m.population.init_state, "+");
}

TEST(SpeedLimit, ReadsSmallestBalancedDuration) {
    SweepMap m;
    m.x = {"A_g", "rad/s", {1.0, 2.0, 3.0}};
    m.y = {"t_g", "s", {10e-9, 20e-9, 30e-9}};
    m.values.resize(3, 3);
    m.values << 0.1, 0.2, 0.3,
                0.2, 0.49, 0.8,
                0.5, 0.9, 0.1;
    EXPECT_DOUBLE_EQ(speed_limit(1.0, m), 20e-9);
    m.values.setZero();
    EXPECT_THROW(speed_limit(1.0, m), Error);
}
