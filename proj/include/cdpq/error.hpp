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

#ifndef CDPQ_ERROR_HPP
#define CDPQ_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdpq {

enum class ErrorCode {
    InvalidDimension,
    Validation,
    OutOfRangeFlux,
    Resolution,
    Range,
    MissingCalibration,
    UnsupportedGate,
    CalibrationFailed,
    NoCandidate,
    FitFailed,
    TableIntegrity,
    BenchmarkFailed,
    Config,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the category instead of the message.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    /// Attach diagnostic lines (iteration logs, residual reports).
    Error(ErrorCode code, const std::string& what, std::vector<std::string> details)
        : std::runtime_error(what), code_(code), details_(std::move(details)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::vector<std::string>& details() const noexcept { return details_; }

   private:
    ErrorCode code_;
    std::vector<std::string> details_;
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidDimension: return "invalid-dimension";
        case ErrorCode::Validation: return "validation";
        case ErrorCode::OutOfRangeFlux: return "out-of-range-flux";
        case ErrorCode::Resolution: return "resolution";
        case ErrorCode::Range: return "range";
        case ErrorCode::MissingCalibration: return "missing-calibration";
        case ErrorCode::UnsupportedGate: return "unsupported-gate";
        case ErrorCode::CalibrationFailed: return "calibration-failed";
        case ErrorCode::NoCandidate: return "no-candidate";
        case ErrorCode::FitFailed: return "fit-failed";
        case ErrorCode::TableIntegrity: return "table-integrity";
        case ErrorCode::BenchmarkFailed: return "benchmark-failed";
        case ErrorCode::Config: return "config";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

}  // namespace cdpq

#endif  // CDPQ_ERROR_HPP
