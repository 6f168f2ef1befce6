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

#ifndef CDPQ_CALIBRATION_CALIBRATE_HPP
#define CDPQ_CALIBRATION_CALIBRATE_HPP

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cdpq/calibration/result.hpp"
#include "cdpq/core/fit.hpp"
#include "cdpq/gates/simulator.hpp"

namespace cdpq {

struct SweepAxis {
    std::string name;
    std::string unit;
    std::vector<double> values;
};

/// values(i, j) belongs to y.values[i], x.values[j].
struct SweepMap {
    SweepAxis x;
    SweepAxis y;
    Eigen::MatrixXd values;
    std::string quantity;    // e.g. "P(+)", "log10 P_f"
    std::string init_state;  // "+" or "-"
};

std::string label(DressedLabel s);

/// Integer ratio E_C/(hbar A_CDD) in [4, 12] nearest the target; ties go to
/// the larger A_CDD. Throws NoCandidate when the best candidate is more than
/// 30% from the target.
double select_acdd(const TransmonParams& params, double target);

struct CoarseScan {
    SweepMap map;  // x: t_c, y: A_g, values: P(+) after pulse - wait - pulse from |->
    std::vector<SinusoidFit> row_fits;
    std::size_t best_row = 0;
    double a_g = 0.0;
    double t_close = 0.0;     // first maximum of the fitted flip probability
    double rate = 0.0;        // fitted oscillation rate, rad/s
    double rate_err = 0.0;
    double contrast = 0.0;
    double delta_estimate = 0.0;  // sqrt(max(rate^2 - A_CDD^2, 0))
};

/// Ramsey-type scan from dressed |->. Rows whose fit fails get zero contrast;
/// a best contrast below 0.1 raises CalibrationFailed.
CoarseScan coarse_scan(std::span<const double> a_g_grid, std::span<const double> t_c_grid, double t_g,
                       const Simulator& sim, const Perturbation& p = {}, int workers = 1);

/// Infidelities of X/2 trains from dressed |->: 1 - P(|->) after n gates
/// and 1 - P(|+>) after n - 2 gates.
struct TrainInfidelity {
    double identity = 0.0;
    double flip = 0.0;
    double total() const { return identity + flip; }
};
TrainInfidelity train_infidelity(const CalibrationResult& calib, int n, const Simulator& sim,
                                 const Perturbation& p = {});

/// sqrt of the n-gate identity infidelity; grows linearly with n for small
/// amplitude errors.
double train_error_signal(const CalibrationResult& calib, int n, const Simulator& sim);

struct RefineOptions {
    int max_train = 16;
    int max_passes = 8;
    double tolerance = 1e-4;     // on the 4-gate identity infidelity
    double a_g_window = 0.0;     // rad/s, initial half-width; 0 -> 10% of a_g
    double t_close_window = 0.0; // s, initial half-width; 0 -> 2% of a period
    int points = 9;
};

/// Alternating A_g / t_close line searches over trains n = 4, 8, ...,
/// max_train. Each pass halves both search windows; a candidate is kept only
/// if it does not raise the 4-gate identity infidelity.
CalibrationResult refine_with_trains(const CalibrationResult& initial, const Simulator& sim,
                                     const RefineOptions& options = {});

struct LeakageMaps {
    SweepMap population;  // probability of the opposite dressed state
    SweepMap leakage;     // log10 of the population outside the pair
};

/// One gate pulse per (A_g, t_g) cell from each requested initial state, for
/// any model size (the leakage map is the 1e-16 floor for two levels).
std::vector<LeakageMaps> population_sweep(std::span<const double> a_g_grid, std::span<const double> t_g_grid,
                                          std::span<const DressedLabel> inits, const Simulator& sim,
                                          int workers = 1);

/// population_sweep restricted to models with a leakage level.
std::vector<LeakageMaps> leakage_sweep(std::span<const double> a_g_grid, std::span<const double> t_g_grid,
                                       std::span<const DressedLabel> inits, const Simulator& sim,
                                       int workers = 1);
LeakageMaps leakage_sweep(std::span<const double> a_g_grid, std::span<const double> t_g_grid,
                          DressedLabel init, const Simulator& sim, int workers = 1);

/// Smallest t_g among cells whose transfer probability is 0.5 +- tol.
/// Throws Range when no cell qualifies.
double speed_limit(double a_cdd, const SweepMap& population, double tol = 0.02);

std::vector<double> linspace(double lo, double hi, std::size_t n);

struct CalibrationOptions {
    double target_a_cdd = 0.0;  // rad/s; 0 keeps drive.a_cdd
    bool select_ratio = true;
    double t_g = 40e-9;
    std::vector<double> a_g_grid;  // rad/s; empty -> 0..80 MHz, 81 points
    std::vector<double> t_c_grid;  // s; empty -> 0..4 periods, 121 points
    RefineOptions refine;
    int workers = 1;
    std::uint64_t seed = 0;
};

/// select_acdd -> coarse_scan -> refine_with_trains.
CalibrationResult calibrate(const TransmonParams& params, DriveConfig drive, ModelKind model,
                            const CalibrationOptions& options);

}  // namespace cdpq

#endif  // CDPQ_CALIBRATION_CALIBRATE_HPP
