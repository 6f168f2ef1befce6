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


#ifndef CDPQ_ENGINE_COMMANDS_HPP
#define CDPQ_ENGINE_COMMANDS_HPP

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "cdpq/calibration/result.hpp"
#include "cdpq/io/config.hpp"
#include "cdpq/io/records.hpp"

namespace cdpq {

struct RunContext {
    ExperimentConfig config;
    std::filesystem::path out_dir;
    int workers = 1;
    std::ostream* log = nullptr;  // progress lines when verbose
};

struct CommandResult {
    KeyValueRecord summary;
    std::vector<std::filesystem::path> files;
    bool ok = true;
};

/// Three lowest rotating-frame levels against detuning, plus the gate
/// envelope spectrum and its nodes.
CommandResult cmd_spectrum(const RunContext& ctx);

/// select -> coarse scan -> train refinement. Writes calibration.rec and
/// coarse_scan.dat; the log is persisted even when refinement fails.
CommandResult cmd_calibrate(const RunContext& ctx);

/// Population and leakage maps for both dressed initial states.
CommandResult cmd_sweep_leakage(const RunContext& ctx);

/// Ramsey and Hahn curves for the bare and CDPQ systems.
CommandResult cmd_coherence(const RunContext& ctx);

/// Randomized benchmarking with the calibrated gate set.
CommandResult cmd_rb(const RunContext& ctx);

/// Re-hash every .dat/.rec file in out_dir against the config.
CommandResult cmd_verify(const RunContext& ctx);

/// Reuses out_dir/calibration.rec when it matches the config hash,
/// otherwise runs cmd_calibrate.
CalibrationResult obtain_calibration(const RunContext& ctx);

CalibrationResult calibration_from_record(const KeyValueRecord& r);

}  // namespace cdpq

#endif  // CDPQ_ENGINE_COMMANDS_HPP
