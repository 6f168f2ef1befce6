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
#include <fstream>
#include <sstream>

#include "cdpq/engine/commands.hpp"
#include "cdpq/rb/benchmark.hpp"

using namespace cdpq;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("cdpq_engine_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunContext small_context(const std::string& name) {
    RunContext ctx;
    ctx.config = ExperimentConfig::reference();
    ctx.config.seed = 5;
    ctx.config.sweep.delta_points = 41;
    ctx.config.sweep.a_g_points = 5;
    ctx.config.sweep.t_g_points = 4;
    ctx.config.sweep.t_g_min = 20e-9;
    ctx.config.sweep.t_g_max = 50e-9;
    ctx.config.rb.lengths = {2, 4, 8, 16};
    ctx.config.rb.sequences = 4;
    ctx.out_dir = scratch(name);
    return ctx;
}

}  // namespace

TEST(Config, ParsesUnitsAndDefaults) {
    const auto c = parse_config(
        "[device]\nqubit_freq_uss_hz = 4.64e9\ne_c_over_h_hz = 137e6\n"
        "[drive]\na_cdd_hz = 23e6\nphi = 0.367\n"
        "[rb]\nlengths = 2 4 8 16 32\nnoisy = true\n"
        "[run]\nseed = 12\n");
    EXPECT_NEAR(hertz(c.device.omega0), 4.64e9 + 137e6, 1e-3);
    EXPECT_NEAR(hertz(c.drive.a_cdd), 23e6, 1e-6);
    EXPECT_EQ(c.rb.lengths.size(), 5u);
    EXPECT_TRUE(c.rb.noisy);
    EXPECT_EQ(c.seed, 12u);
    EXPECT_EQ(c.coherence.shots, ExperimentConfig::reference().coherence.shots);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    auto code = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Io;
    };
    EXPECT_EQ(code("[device]\nfoo = 1\n"), ErrorCode::Config);
    EXPECT_EQ(code("[nope]\nx = 1\n"), ErrorCode::Config);
    EXPECT_EQ(code("[drive]\nphi = abc\n"), ErrorCode::Config);
    EXPECT_EQ(code("[drive]\nphi = 0.5\n"), ErrorCode::OutOfRangeFlux);
    EXPECT_EQ(code("[rb]\nlengths = 2 4\n"), ErrorCode::Config);
}

TEST(Config, CanonicalRoundTripAndHashScope) {
    auto c = ExperimentConfig::reference();
    c.noise.sigma_quasistatic = angular(0.3e6);
    const auto text = canonical_ini(c);
    EXPECT_EQ(canonical_ini(parse_config(text)), text);
    const auto h = config_hash(c);
    EXPECT_EQ(h.size(), 64u);
    auto d = c;
    d.seed = 99;
    d.output_dir = "elsewhere";
    EXPECT_EQ(config_hash(d), h);
    d.drive.phi = 0.3;
    EXPECT_NE(config_hash(d), h);
    // Known SHA-256 vector.
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Config, ShippedConfigLoads) {
    const auto c = load_config(fs::path(CDPQ_SOURCE_DIR) / "configs" / "reference_device.ini");
    EXPECT_NEAR(hertz(c.drive.a_cdd), 23e6, 1e-6);
    EXPECT_EQ(c.device.n_levels, 3);
}

TEST(Records, MatrixAndKeyValueRoundTrip) {
    const auto dir = scratch("records");
    MatrixText m;
    m.header = {{"config_hash", "abc"}, {"seed", "1"}};
    m.columns = {"x", "y"};
    m.data.resize(2, 2);
    m.data << 0.1, 1e-17, -3.25, 1.0 / 3.0;
    write_matrix(dir / "m.dat", m);
    const auto back = read_matrix(dir / "m.dat");
    EXPECT_EQ(back.data, m.data);
    EXPECT_EQ(back.columns, m.columns);
    EXPECT_TRUE(verify_file(dir / "m.dat", "abc").ok());
    EXPECT_FALSE(verify_file(dir / "m.dat", "abd").ok());

    KeyValueRecord r;
    r.set("config_hash", "abc");
    r.set("value", 0.125);
    write_record(dir / "r.rec", r);
    EXPECT_DOUBLE_EQ(read_record(dir / "r.rec").number("value"), 0.125);
    EXPECT_TRUE(verify_file(dir / "r.rec", "abc").ok());

    // Tampering with a payload is detected.
    auto text = slurp(dir / "m.dat");
    text.replace(text.rfind("-3.25"), 5, "-3.26");
    std::ofstream(dir / "m.dat", std::ios::binary) << text;
    EXPECT_FALSE(verify_file(dir / "m.dat", "abc").payload_matches);
}

TEST(Engine, SpectrumFindsSweetSpotAndGap) {
    auto ctx = small_context("spectrum");
    const auto res = cmd_spectrum(ctx);
    EXPECT_NEAR(res.summary.number("min_pair_splitting_offset_hz"), 0.0, 1.6e6);
    EXPECT_NEAR(res.summary.number("min_pair_splitting_hz") / 23e6, 1.0, 0.05);
    const auto levels = read_matrix(ctx.out_dir / "spectrum_levels.dat");
    EXPECT_EQ(levels.data.rows(), 41);
    EXPECT_TRUE(cmd_verify(ctx).ok);
}

TEST(Engine, SpectrumWithoutDriveCrossesLinearly) {
    auto ctx = small_context("spectrum0");
    ctx.config.drive.a_cdd = 0.0;
    cmd_spectrum(ctx);
    const auto levels = read_matrix(ctx.out_dir / "spectrum_levels.dat");
    const auto& s = levels.data;
    const Eigen::Index last = s.cols() - 1;
    // Pair splitting equals |delta| when uncoupled.
    for (Eigen::Index i = 0; i < s.rows(); ++i) EXPECT_NEAR(s(i, last), std::abs(s(i, 1)), 1.0);
}

TEST(Engine, SweepIsDeterministicAcrossWorkers) {
    auto a = small_context("sweep1");
    auto b = small_context("sweep2");
    a.workers = 1;
    b.workers = 2;
    cmd_sweep_leakage(a);
    cmd_sweep_leakage(b);
    for (const char* f : {"population_plus.dat", "leakage_minus.dat", "sweep_leakage.rec"}) {
        EXPECT_EQ(slurp(a.out_dir / f), slurp(b.out_dir / f)) << f;
    }
    EXPECT_TRUE(fs::exists(a.out_dir / "sweep_leakage.run"));
}

TEST(Engine, RbRerunIsBitIdenticalAndReusesCalibration) {
    auto ctx = small_context("rb");
    const auto first = cmd_rb(ctx);
    EXPECT_TRUE(fs::exists(ctx.out_dir / "calibration.rec"));
    EXPECT_GT(first.summary.number("fidelity"), 0.999);
    const auto raw = slurp(ctx.out_dir / "rb_raw.dat");
    const auto rec = slurp(ctx.out_dir / "rb.rec");
    cmd_rb(ctx);
    EXPECT_EQ(slurp(ctx.out_dir / "rb_raw.dat"), raw);
    EXPECT_EQ(slurp(ctx.out_dir / "rb.rec"), rec);
    const auto calib = calibration_from_record(read_record(ctx.out_dir / "calibration.rec"));
    EXPECT_NEAR(first.summary.number("avg_clifford_time_s"), avg_clifford_time(calib.t_g, calib.t_close, calib.a_cdd),
                1e-18);
    EXPECT_TRUE(cmd_verify(ctx).ok);
}

TEST(Engine, VerifyFlagsForeignConfig) {
    auto ctx = small_context("verify");
    cmd_spectrum(ctx);
    auto other = ctx;
    other.config.drive.phi = 0.2;
    EXPECT_FALSE(cmd_verify(other).ok);
    auto missing = ctx;
    missing.out_dir = ctx.out_dir / "absent";
    EXPECT_THROW(cmd_verify(missing), Error);
}
