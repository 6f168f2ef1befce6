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

#include "cdpq/calibration/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cdpq/core/parallel.hpp"

namespace cdpq {
namespace {

std::string format(const char* fmt, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, a, b, c, d);
    return buf;
}

Operator matrix_power(const Operator& g, int n) {
    Operator u = Operator::Identity(g.rows(), g.cols());
    for (int k = 0; k < n; ++k) u = (g * u).eval();
    return u;
}

struct LineSearch {
    double x = 0.0;
    double f = 0.0;
};

// Grid scan over [c - w, c + w] followed by a parabolic step through the best
// grid point and its neighbours.
template <typename F>
LineSearch line_search(F&& f, double c, double w, int points, double lower) {
    std::vector<double> xs(static_cast<std::size_t>(points));
    std::vector<double> fs(xs.size());
    for (int i = 0; i < points; ++i) {
        xs[i] = std::max(lower, c - w + 2.0 * w * i / (points - 1));
        fs[i] = f(xs[i]);
    }
    const auto best = static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());
    LineSearch out{xs[best], fs[best]};
    if (best > 0 && best + 1 < xs.size()) {
        const double x0 = xs[best - 1], x1 = xs[best], x2 = xs[best + 1];
        const double f0 = fs[best - 1], f1 = fs[best], f2 = fs[best + 1];
        const double denom = (x1 - x0) * (f1 - f2) - (x1 - x2) * (f1 - f0);
        if (std::abs(denom) > 0) {
            const double num = (x1 - x0) * (x1 - x0) * (f1 - f2) - (x1 - x2) * (x1 - x2) * (f1 - f0);
            const double xv = x1 - 0.5 * num / denom;
            if (xv > x0 && xv < x2 && xv >= lower) {
                const double fv = f(xv);
                if (fv < out.f) out = {xv, fv};
            }
        }
    }
    return out;
}

}  // namespace

std::string label(DressedLabel s) {
    switch (s) {
        case DressedLabel::Plus: return "+";
        case DressedLabel::Minus: return "-";
        case DressedLabel::Leak: return "f";
    }
    return "?";
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

double select_acdd(const TransmonParams& params, double target) {
    if (!(target > 0)) throw Error(ErrorCode::Validation, "select_acdd: target must be positive");
    params.validate();
    double best = 0.0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int ratio = 4; ratio <= 12; ++ratio) {
        const double a = params.e_c() / ratio;
        const double gap = std::abs(a - target);
        if (gap < best_gap - 1e-9 * target || (std::abs(gap - best_gap) <= 1e-9 * target && a > best)) {
            best = a;
            best_gap = gap;
        }
    }
    if (best_gap > 0.3 * target) {
        throw Error(ErrorCode::NoCandidate, format("select_acdd: no integer ratio E_C/A_CDD in [4, 12] within 30%% "
                                                   "of %.6g Hz",
                                                   hertz(target)));
    }
    return best;
}

CoarseScan coarse_scan(std::span<const double> a_g_grid, std::span<const double> t_c_grid, double t_g,
                       const Simulator& sim, const Perturbation& p, int workers) {
    if (a_g_grid.empty() || t_c_grid.empty()) throw Error(ErrorCode::Validation, "coarse_scan: empty grid");
    const auto ny = a_g_grid.size();
    const auto nx = t_c_grid.size();
    CoarseScan out;
    out.map.x = {"t_c", "s", {t_c_grid.begin(), t_c_grid.end()}};
    out.map.y = {"A_g", "rad/s", {a_g_grid.begin(), a_g_grid.end()}};
    out.map.quantity = "P(+)";
    out.map.init_state = "-";
    out.map.values.resize(static_cast<Eigen::Index>(ny), static_cast<Eigen::Index>(nx));
    out.row_fits.resize(ny);
    std::vector<double> contrast(ny, 0.0);

    const StateVector minus = sim.dressed_state(DressedLabel::Minus);
    const double a_cdd = sim.drive().a_cdd;
    parallel_for(ny, workers, [&](std::size_t i) {
        Segment pulse;
        pulse.kind = SegmentKind::XzPulse;
        pulse.duration = t_g;
        pulse.envelope = gate_pulse(a_g_grid[i], t_g);
        const Operator up = sim.pulse_unitary(pulse, p);
        const StateVector first = up * minus;
        std::vector<double> row(nx);
        for (std::size_t j = 0; j < nx; ++j) {
            const StateVector psi = up * (sim.wait_unitary(t_c_grid[j], p) * first);
            row[j] = std::norm(psi(0));
            out.map.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
        }
        try {
            out.row_fits[i] = fit_sinusoid(t_c_grid, row, 0.5 * a_cdd, 2.0 * a_cdd);
            contrast[i] = out.row_fits[i].contrast();
        } catch (const Error&) {
            contrast[i] = 0.0;
        }
    });

    out.best_row = static_cast<std::size_t>(std::max_element(contrast.begin(), contrast.end()) - contrast.begin());
    out.contrast = contrast[out.best_row];
    if (!(out.contrast >= 0.1)) {
        throw Error(ErrorCode::CalibrationFailed,
                    format("coarse_scan: best contrast %.3g below 0.1", out.contrast));
    }
    const auto& fit = out.row_fits[out.best_row];
    out.a_g = a_g_grid[out.best_row];
    out.rate = fit.omega;
    out.rate_err = fit.omega_err;
    out.t_close = wrap_phase(-fit.phase) / fit.omega;
    out.delta_estimate = std::sqrt(std::max(fit.omega * fit.omega - a_cdd * a_cdd, 0.0));
    return out;
}

TrainInfidelity train_infidelity(const CalibrationResult& calib, int n, const Simulator& sim, const Perturbation& p) {
    if (n < 2) throw Error(ErrorCode::Validation, "train_infidelity: n must be >= 2");
    const Operator g = sim.schedule_unitary(standard_gate(GateSpec::make(GateName::X2), calib), p);
    const StateVector minus = sim.dressed_state(DressedLabel::Minus);
    const Operator g2 = g * g;
    const Operator flip = matrix_power(g, n - 2);
    const Operator ident = g2 * flip;
    TrainInfidelity out;
    out.identity = 1.0 - std::norm((ident * minus)(1));
    out.flip = 1.0 - std::norm((flip * minus)(0));
    return out;
}

double train_error_signal(const CalibrationResult& calib, int n, const Simulator& sim) {
    return std::sqrt(std::max(train_infidelity(calib, n, sim).identity, 0.0));
}

CalibrationResult refine_with_trains(const CalibrationResult& initial, const Simulator& sim,
                                     const RefineOptions& options) {
    if (options.max_train < 4) throw Error(ErrorCode::Validation, "refine_with_trains: max_train must be >= 4");
    initial.validate();
    CalibrationResult cur = initial;
    double wa = options.a_g_window > 0 ? options.a_g_window : 0.15 * cur.a_g;
    double wt = options.t_close_window > 0 ? options.t_close_window : 0.05 * cur.period();
    const int points = std::max(3, options.points | 1);

    auto with = [&](double a_g, double t_close) {
        CalibrationResult c = cur;
        c.a_g = a_g;
        c.t_close = std::fmod(t_close, c.period());
        if (c.t_close < 0) c.t_close += c.period();
        return c;
    };
    double guard = train_infidelity(cur, 4, sim).identity;
    cur.log.push_back(format("refine start a_g=%.9g Hz t_close=%.9g s identity4=%.3e", hertz(cur.a_g), cur.t_close,
                             guard));

    for (int pass = 0; pass < options.max_passes; ++pass) {
        for (int n = 4; n <= options.max_train; n *= 2) {
            auto objective = [&](const CalibrationResult& c) { return train_infidelity(c, n, sim).total(); };
            const double f0 = objective(cur);

            const auto sa = line_search([&](double a) { return objective(with(a, cur.t_close)); }, cur.a_g, wa,
                                        points, 1e-3 * cur.a_g);
            if (sa.f < f0) {
                const auto cand = with(sa.x, cur.t_close);
                const double g = train_infidelity(cand, 4, sim).identity;
                if (g <= guard) {
                    cur = cand;
                    guard = g;
                }
            }
            const double f1 = objective(cur);
            const auto st = line_search([&](double t) { return objective(with(cur.a_g, t)); }, cur.t_close, wt,
                                        points, -std::numeric_limits<double>::infinity());
            if (st.f < f1) {
                const auto cand = with(cur.a_g, st.x);
                const double g = train_infidelity(cand, 4, sim).identity;
                if (g <= guard) {
                    cur = cand;
                    guard = g;
                }
            }
        }
        wa *= 0.5;
        wt *= 0.5;
        cur.log.push_back(format("pass %.0f a_g=%.9g Hz t_close=%.9g s identity4=%.3e", pass, hertz(cur.a_g),
                                 cur.t_close, guard));
    }
    if (!(guard < options.tolerance)) {
        throw Error(ErrorCode::CalibrationFailed,
                    format("refine_with_trains: 4-gate identity infidelity %.3e above tolerance %.3e", guard,
                           options.tolerance),
                    cur.log);
    }
    return cur;
}

std::vector<LeakageMaps> population_sweep(std::span<const double> a_g_grid, std::span<const double> t_g_grid,
                                          std::span<const DressedLabel> inits, const Simulator& sim, int workers) {
    if (a_g_grid.empty() || t_g_grid.empty()) throw Error(ErrorCode::Validation, "population_sweep: empty grid");
    const auto nx = a_g_grid.size();
    const auto ny = t_g_grid.size();
    std::vector<LeakageMaps> out(inits.size());
    for (std::size_t k = 0; k < inits.size(); ++k) {
        if (inits[k] == DressedLabel::Leak) throw Error(ErrorCode::Validation, "population_sweep: init must be + or -");
        for (auto* m : {&out[k].population, &out[k].leakage}) {
            m->x = {"A_g", "rad/s", {a_g_grid.begin(), a_g_grid.end()}};
            m->y = {"t_g", "s", {t_g_grid.begin(), t_g_grid.end()}};
            m->init_state = label(inits[k]);
            m->values.resize(static_cast<Eigen::Index>(ny), static_cast<Eigen::Index>(nx));
        }
        out[k].population.quantity = inits[k] == DressedLabel::Plus ? "P(-)" : "P(+)";
        out[k].leakage.quantity = "log10 P_f";
    }
    parallel_for(nx * ny, workers, [&](std::size_t cell) {
        const auto i = cell / nx;
        const auto j = cell % nx;
        Segment pulse;
        pulse.kind = SegmentKind::XzPulse;
        pulse.duration = t_g_grid[i];
        pulse.envelope = gate_pulse(a_g_grid[j], t_g_grid[i]);
        const Operator u = sim.pulse_unitary(pulse);
        for (std::size_t k = 0; k < inits.size(); ++k) {
            const StateVector psi = u * sim.dressed_state(inits[k]);
            const double p_plus = std::norm(psi(0));
            const double p_minus = std::norm(psi(1));
            const double leak = std::max(1.0 - p_plus - p_minus, 0.0);
            const auto r = static_cast<Eigen::Index>(i);
            const auto c = static_cast<Eigen::Index>(j);
            out[k].population.values(r, c) = inits[k] == DressedLabel::Plus ? p_minus : p_plus;
            out[k].leakage.values(r, c) = std::log10(std::max(leak, 1e-16));
        }
    });
    return out;
}

std::vector<LeakageMaps> leakage_sweep(std::span<const double> a_g_grid, std::span<const double> t_g_grid,
                                       std::span<const DressedLabel> inits, const Simulator& sim, int workers) {
    if (sim.dim() < 3) throw Error(ErrorCode::InvalidDimension, "leakage_sweep: needs a model with a leakage level");
    return population_sweep(a_g_grid, t_g_grid, inits, sim, workers);
}

LeakageMaps leakage_sweep(std::span<const double> a_g_grid, std::span<const double> t_g_grid, DressedLabel init,
                          const Simulator& sim, int workers) {
    const DressedLabel inits[] = {init};
    return leakage_sweep(a_g_grid, t_g_grid, inits, sim, workers).front();
}

double speed_limit(double a_cdd, const SweepMap& population, double tol) {
    if (!(a_cdd > 0)) throw Error(ErrorCode::Validation, "speed_limit: a_cdd must be positive");
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < population.values.rows(); ++i) {
        for (Eigen::Index j = 0; j < population.values.cols(); ++j) {
            if (std::abs(population.values(i, j) - 0.5) <= tol) {
                best = std::min(best, population.y.values[static_cast<std::size_t>(i)]);
            }
        }
    }
    if (!std::isfinite(best)) throw Error(ErrorCode::Range, "speed_limit: no 50:50 contour inside the sweep");
    return best;
}

CalibrationResult calibrate(const TransmonParams& params, DriveConfig drive, ModelKind model,
                            const CalibrationOptions& options) {
    if (options.target_a_cdd > 0) {
        drive.a_cdd = options.select_ratio ? select_acdd(params, options.target_a_cdd) : options.target_a_cdd;
    }
    const Simulator sim = model == ModelKind::Transmon ? Simulator::transmon(params, drive) : Simulator::ideal(drive);
    const double period = kTwoPi / sim.splitting();
    const auto a_g_grid = options.a_g_grid.empty() ? linspace(0.0, angular(80e6), 81) : options.a_g_grid;
    const auto t_c_grid = options.t_c_grid.empty() ? linspace(0.0, 4.0 * period, 121) : options.t_c_grid;

    const auto cs = coarse_scan(a_g_grid, t_c_grid, options.t_g, sim, {}, options.workers);
    CalibrationResult c;
    c.a_cdd = drive.a_cdd;
    c.splitting = sim.splitting();
    c.a_g = cs.a_g;
    c.t_g = options.t_g;
    c.t_close = std::fmod(cs.t_close, period);
    c.delta_offset = cs.delta_estimate;
    c.seed = options.seed;
    c.log.push_back(format("select a_cdd=%.9g Hz splitting=%.9g Hz", hertz(c.a_cdd), hertz(c.splitting)));
    c.log.push_back(format("coarse a_g=%.9g Hz t_close=%.9g s rate=%.9g Hz contrast=%.4f", hertz(cs.a_g), c.t_close,
                           hertz(cs.rate), cs.contrast));
    c.log.push_back(format("coarse delta_estimate=%.9g Hz", hertz(cs.delta_estimate)));
    return refine_with_trains(c, sim, options.refine);
}

}  // namespace cdpq
