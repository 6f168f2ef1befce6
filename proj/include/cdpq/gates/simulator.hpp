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

#ifndef CDPQ_GATES_SIMULATOR_HPP
#define CDPQ_GATES_SIMULATOR_HPP

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "cdpq/device/transmon.hpp"
#include "cdpq/gates/schedule.hpp"

namespace cdpq {

enum class ModelKind { IdealTwoLevel, Transmon };

/// Static errors applied on top of the nominal drive: an extra detuning and
/// a fractional A_CDD error.
struct Perturbation {
    double delta = 0.0;       // rad/s
    double a_cdd_frac = 0.0;  // dimensionless

    auto operator<=>(const Perturbation&) const = default;
};

enum class DressedLabel { Plus, Minus, Leak };

/// Segment-wise simulator in the dressed frame. The dressed basis is fixed by
/// the nominal drive (A = 0, no perturbation) and ordered |+>, |->, then the
/// leakage states by ascending energy. Every unitary it returns is expressed
/// in that basis; waits are exact, pulses use midpoint stepping.
class Simulator {
   public:
    static Simulator ideal(const DriveConfig& drive);
    static Simulator transmon(const TransmonParams& params, const DriveConfig& drive);

    ModelKind model() const { return model_; }
    const TransmonParams& params() const { return params_; }
    const DriveConfig& drive() const { return drive_; }
    Eigen::Index dim() const { return basis_.rows(); }

    /// Nominal detuning of the rotating-frame model.
    double operating_detuning() const { return delta0_; }
    /// Nominal dressed-pair splitting (R_z rate of a wait).
    double splitting() const { return splitting_; }
    /// Columns are dressed states in the bare rotating basis.
    const Operator& dressed_basis() const { return basis_; }
    StateVector dressed_state(DressedLabel label) const;

    /// Rotating-frame Hamiltonian (bare basis) with gate amplitude a_gate and
    /// an extra detuning on top of the perturbed operating point.
    Operator hamiltonian(double a_gate, double extra_delta, const Perturbation& p = {}) const;
    /// Same in the dressed basis.
    Operator dressed_hamiltonian(double a_gate, double extra_delta, const Perturbation& p = {}) const;

    Operator wait_unitary(double t, const Perturbation& p = {}) const;
    /// Unitary of one pulse segment (pulses are cached per perturbation).
    Operator pulse_unitary(const Segment& seg, const Perturbation& p = {}) const;
    Operator segment_unitary(const Segment& seg, const Perturbation& p = {}) const;
    Operator schedule_unitary(const PulseSchedule& sched, const Perturbation& p = {}) const;
    StateVector run(const PulseSchedule& sched, const StateVector& psi, const Perturbation& p = {}) const;

    /// Piecewise-constant propagation of rendered waveforms, one exact
    /// exponential per sample bin.
    Operator waveform_unitary(const ScheduleWaveforms& w, const Perturbation& p = {}) const;

    /// Step bound for pulse propagation; 0 selects 1/(200 x spectral scale).
    void set_max_dt(double dt) {
        max_dt_ = dt;
        cache_ = std::make_shared<Cache>();
    }
    double max_dt_for(double peak_amplitude, const Perturbation& p = {}) const;

    void clear_cache() const;

   private:
    Simulator(ModelKind model, const TransmonParams& params, const DriveConfig& drive);

    using CacheKey = std::tuple<int, double, double, double, double, double>;
    struct Cache {
        std::mutex mutex;
        std::map<CacheKey, Operator> pulses;
    };

    ModelKind model_;
    TransmonParams params_;
    DriveConfig drive_;
    double delta0_ = 0.0;
    double splitting_ = 0.0;
    double max_dt_ = 0.0;
    Operator basis_;
    std::shared_ptr<Cache> cache_;
};

/// Dressed-frame populations (|+>, |->, leak...) of a dressed-basis state.
RealVector dressed_populations(const StateVector& psi);

}  // namespace cdpq

#endif  // CDPQ_GATES_SIMULATOR_HPP
