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


#ifndef CDPQ_RB_BENCHMARK_HPP
#define CDPQ_RB_BENCHMARK_HPP

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "cdpq/calibration/result.hpp"
#include "cdpq/gates/simulator.hpp"
#include "cdpq/noise/noise.hpp"
#include "cdpq/rb/clifford.hpp"

namespace cdpq {

/// Survival probability of one random sequence. `index` is the global
/// sequence index; implementations draw any randomness from it so results
/// do not depend on scheduling.
class SequenceExecutor {
   public:
    virtual ~SequenceExecutor() = default;
    virtual double survival(const RbSequence& seq, std::uint64_t index) const = 0;
};

/// Compiles each Clifford into pulse schedules and runs them on the
/// simulator. With a noise model each sequence gets one static detuning and
/// A_CDD error drawn from the RbNoise substream.
class PulseExecutor final : public SequenceExecutor {
   public:
    PulseExecutor(const Simulator& sim, CalibrationResult calib, std::optional<NoiseModel> noise = std::nullopt,
                  DressedLabel prepared = DressedLabel::Minus);
    double survival(const RbSequence& seq, std::uint64_t index) const override;

    /// Dressed-frame unitaries of the 24 Cliffords under a perturbation.
    std::array<Operator, 24> clifford_unitaries(const Perturbation& p) const;

   private:
    const Simulator& sim_;
    CalibrationResult calib_;
    std::optional<NoiseModel> noise_;
    DressedLabel prepared_;
    std::array<Operator, 24> nominal_;
};

/// Reference model: survival = 1/2 + 1/2 p^m plus Gaussian jitter drawn
/// from the Mock substream.
class DepolarizingExecutor final : public SequenceExecutor {
   public:
    DepolarizingExecutor(double p, double jitter, std::uint64_t seed) : p_(p), jitter_(jitter), seed_(seed) {}
    double survival(const RbSequence& seq, std::uint64_t index) const override;

   private:
    double p_;
    double jitter_;
    std::uint64_t seed_;
};

struct RbFit {
    double a = 0.0;
    double b = 0.0;
    double p = 0.0;
    double p_err = 0.0;
    double fidelity = 0.0;
    double fidelity_err = 0.0;
    bool b_pinned = false;  // free fit unresolved (B outside [1/4, 3/4]); refit with B = 1/2
};

struct RbResult {
    std::vector<int> lengths;
    std::vector<double> survival_mean;
    std::vector<double> survival_std;
    std::vector<std::vector<double>> raw;  // [length][sequence]
    RbFit fit;
};

/// A p^m + B with A, B free; F = 1 - (1 - p)/2. Falls back to B = 1/2
/// when the free fit is unresolved: B outside [1/4, 3/4] or a singular
/// covariance. Throws BenchmarkFailed with the per-length means in
/// details() when the fit fails.
RbFit fit_rb(std::span<const int> lengths, std::span<const double> survival_mean);

RbResult run_rb(std::span<const int> lengths, int n_random, const SequenceExecutor& executor, std::uint64_t seed,
                int workers = 1);

/// (24 (t_g + t_close) + 9 (2 pi / A_CDD)) / 24.
double avg_clifford_time(double t_g, double t_close, double a_cdd);

std::vector<int> default_rb_lengths();

}  // namespace cdpq

#endif  // CDPQ_RB_BENCHMARK_HPP
