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


#ifndef CDPQ_IO_CONFIG_HPP
#define CDPQ_IO_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cdpq/device/transmon.hpp"
#include "cdpq/noise/noise.hpp"

namespace cdpq {

struct SweepBlock {
    double a_g_min = 0.0;           // rad/s
    double a_g_max = 0.0;           // rad/s
    int a_g_points = 41;
    double t_g_min = 5e-9;          // s
    double t_g_max = 100e-9;        // s
    int t_g_points = 39;
    double delta_span = 0.0;        // rad/s, spectrum half-width
    int delta_points = 201;
    double mark_a_g = 0.0;          // rad/s, operating point marked in sweep output
};

struct CalibrationBlock {
    double target_a_cdd = 0.0;  // rad/s, 0 keeps drive.a_cdd
    bool select_ratio = false;
    double t_g = 40e-9;
    int max_passes = 8;
    int max_train = 16;
    double tolerance = 1e-4;
};

struct CoherenceBlock {
    double bare_max_delay = 2e-6;
    double cdpq_max_delay = 40e-6;
    int points = 41;
    int shots = 400;
    double noise_step = 2e-9;
    DecayModel fit_model = DecayModel::Gaussian;
};

struct RbBlock {
    std::vector<int> lengths;
    int sequences = 100;
    bool noisy = false;
};

/// Everything a command needs. Values are SI internally (rad/s for
/// angular rates); the file carries Hz and seconds in the key names.
struct ExperimentConfig {
    TransmonParams device;
    DriveConfig drive;
    NoiseModel noise;
    SweepBlock sweep;
    CalibrationBlock calibration;
    CoherenceBlock coherence;
    RbBlock rb;
    std::uint64_t seed = 0;
    std::string output_dir = "out";

    void validate() const;

    /// Reference device at A_CDD/2pi = 23 MHz with sweep and benchmark defaults.
    static ExperimentConfig reference();
};

/// INI text with sections device, drive, noise, calibration, sweep,
/// coherence, rb and run. Missing keys keep reference() values; unknown
/// sections or keys raise a Config error.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical INI rendering: fixed key order, shortest round-trip numbers.
std::string canonical_ini(const ExperimentConfig& config);

/// SHA-256 of canonical_ini with seed and output_dir removed.
std::string config_hash(const ExperimentConfig& config);

std::string sha256_hex(const std::string& bytes);

/// Shortest text that reads back to the same double.
std::string format_double(double v);

}  // namespace cdpq

#endif  // CDPQ_IO_CONFIG_HPP
