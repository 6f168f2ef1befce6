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

#ifndef CDPQ_CALIBRATION_RESULT_HPP
#define CDPQ_CALIBRATION_RESULT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cdpq/core/types.hpp"
#include "cdpq/error.hpp"

namespace cdpq {

/// Tuned gate parameters. t_close is the wait that closes an R_xz pulse
/// into a Y/2 gate; it is distinct from the negative-phase R_z wait.
struct CalibrationResult {
    double a_cdd = 0.0;         // rad/s
    double splitting = 0.0;     // rad/s, dressed-pair splitting that times R_z waits
    double a_g = 0.0;           // rad/s
    double t_g = 0.0;           // s
    double t_close = 0.0;       // s
    double delta_offset = 0.0;  // rad/s, detuning estimate from the coarse scan
    // Trailing wait appended to each +-X/2, +-Y/2; rounded to whole dressed
    // periods so the gate action is unchanged.
    double padding = 0.0;  // s
    std::uint64_t seed = 0;
    std::vector<std::string> log;

    bool calibrated() const { return a_g > 0 && t_g > 0 && splitting > 0; }
    double period() const { return kTwoPi / splitting; }

    /// Closing wait used by the +-X/2, +-Y/2 constructions: t_close, plus one
    /// period when t_close is shorter than three quarter periods, so every
    /// quarter-turn gate has the same length t_g + closing_wait().
    double closing_wait() const { return t_close < 0.75 * period() ? t_close + period() : t_close; }

    void validate() const {
        if (!calibrated()) throw Error(ErrorCode::MissingCalibration, "CalibrationResult: a_g, t_g and splitting must be set");
        if (t_close < 0 || t_close >= period()) {
            throw Error(ErrorCode::Validation, "CalibrationResult: t_close must lie in [0, 2pi/splitting)");
        }
    }
};

}  // namespace cdpq

#endif  // CDPQ_CALIBRATION_RESULT_HPP
