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


#include "cdpq/engine/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <ostream>

#include "cdpq/calibration/calibrate.hpp"
#include "cdpq/noise/coherence.hpp"
#include "cdpq/pulse/envelope.hpp"
#include "cdpq/pulse/spectrum.hpp"
#include "cdpq/rb/benchmark.hpp"

namespace cdpq {
namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void say(const RunContext& ctx, const std::string& line) {
    if (ctx.log) *ctx.log << line << '\n';
}

Header base_header(const RunContext& ctx, const std::string& kind) {
    return {{"kind", kind}, {"config_hash", config_hash(ctx.config)}, {"seed", std::to_string(ctx.config.seed)}};
}

KeyValueRecord base_record(const RunContext& ctx, const std::string& kind) {
    KeyValueRecord r;
    for (const auto& [k, v] : base_header(ctx, kind)) r.set(k, v);
    return r;
}

// Timestamps live beside the payloads so the payloads stay reproducible.
class RunLog {
   public:
    RunLog(const RunContext& ctx, std::string kind) : ctx_(ctx), kind_(std::move(kind)), started_(utc_now()) {}
    void finish(CommandResult& res) const {
        KeyValueRecord r;
        r.set("kind", kind_);
        r.set("config_hash", config_hash(ctx_.config));
        r.set("seed", std::to_string(ctx_.config.seed));
        r.set("workers", std::to_string(ctx_.workers));
        r.set("started_utc", started_);
        r.set("finished_utc", utc_now());
        for (std::size_t i = 0; i < res.files.size(); ++i) {
            r.set("payload_" + std::to_string(i), res.files[i].filename().string());
        }
        write_record(ctx_.out_dir / (kind_ + ".run"), r);
    }

   private:
    const RunContext& ctx_;
    std::string kind_;
    std::string started_;
};

void emit(CommandResult& res, const std::filesystem::path& path, const MatrixText& m) {
    write_matrix(path, m);
    res.files.push_back(path);
}

void emit(CommandResult& res, const std::filesystem::path& path, const KeyValueRecord& r) {
    write_record(path, r);
    res.files.push_back(path);
}

MatrixText map_text(const RunContext& ctx, const std::string& kind, const SweepMap& map) {
    MatrixText m;
    m.header = base_header(ctx, kind);
    m.header.emplace_back("quantity", map.quantity);
    m.header.emplace_back("init_state", map.init_state);
    m.header.emplace_back("axes", "rows=" + map.y.name + " cols=" + map.x.name);
    m.header.emplace_back("units", map.y.name + "[" + map.y.unit + "] " + map.x.name + "[" + map.x.unit + "]");
    m.columns = {map.y.name, map.x.name, "value"};
    const auto ny = static_cast<Eigen::Index>(map.y.values.size());
    const auto nx = static_cast<Eigen::Index>(map.x.values.size());
    m.data.resize(ny * nx, 3);
    for (Eigen::Index i = 0; i < ny; ++i) {
        for (Eigen::Index j = 0; j < nx; ++j) {
            m.data(i * nx + j, 0) = map.y.values[static_cast<std::size_t>(i)];
            m.data(i * nx + j, 1) = map.x.values[static_cast<std::size_t>(j)];
            m.data(i * nx + j, 2) = map.values(i, j);
        }
    }
    return m;
}

MatrixText curve_text(const RunContext& ctx, const std::string& kind, const DecayCurve& c) {
    MatrixText m;
    m.header = base_header(ctx, kind);
    m.header.emplace_back("units", "delay[s] survival[1] stderr[1]");
    m.columns = {"delay_s", "survival", "stderr"};
    m.data.resize(static_cast<Eigen::Index>(c.delays.size()), 3);
    for (std::size_t i = 0; i < c.delays.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        m.data(r, 0) = c.delays[i];
        m.data(r, 1) = c.survival[i];
        m.data(r, 2) = c.stderr[i];
    }
    return m;
}

void put_fit(KeyValueRecord& r, const std::string& prefix, const DecayCurve& c) {
    if (!c.fit) {
        r.set(prefix + "_fit", "none");
        return;
    }
    r.set(prefix + "_t2_s", c.fit->t2);
    r.set(prefix + "_t2_err_s", c.fit->t2_err);
    r.set(prefix + "_amplitude", c.fit->amplitude);
    r.set(prefix + "_offset", c.fit->offset);
    r.set(prefix + "_rss", c.fit->rss);
}

DriveConfig drive_for(const ExperimentConfig& c, const CalibrationResult& calib) {
    DriveConfig d = c.drive;
    d.a_cdd = calib.a_cdd;
    return d;
}

KeyValueRecord calibration_record(const RunContext& ctx, const CalibrationResult& c) {
    KeyValueRecord r = base_record(ctx, "calibration");
    r.set("a_cdd_hz", hertz(c.a_cdd));
    r.set("splitting_hz", hertz(c.splitting));
    r.set("a_g_hz", hertz(c.a_g));
    r.set("t_g_s", c.t_g);
    r.set("t_close_s", c.t_close);
    r.set("delta_offset_hz", hertz(c.delta_offset));
    r.set("padding_s", c.padding);
    r.set("calibration_seed", std::to_string(c.seed));
    for (std::size_t i = 0; i < c.log.size(); ++i) {
        char key[32];
        std::snprintf(key, sizeof key, "log_%03zu", i);
        r.set(key, c.log[i]);
    }
    return r;
}

}  // namespace

CalibrationResult calibration_from_record(const KeyValueRecord& r) {
    CalibrationResult c;
    c.a_cdd = angular(r.number("a_cdd_hz"));
    c.splitting = angular(r.number("splitting_hz"));
    c.a_g = angular(r.number("a_g_hz"));
    c.t_g = r.number("t_g_s");
    c.t_close = r.number("t_close_s");
    c.delta_offset = angular(r.number("delta_offset_hz"));
    c.padding = r.number("padding_s");
    c.seed = std::stoull(r.get("calibration_seed"));
    for (const auto& [k, v] : r.entries) {
        if (k.rfind("log_", 0) == 0) c.log.push_back(v);
    }
    c.validate();
    return c;
}

CommandResult cmd_spectrum(const RunContext& ctx) {
    const auto& cfg = ctx.config;
    cfg.validate();
    RunLog run(ctx, "spectrum");
    CommandResult res;
    const int n = cfg.device.n_levels;
    const double d0 = drive_detuning(cfg.device, cfg.drive);
    const auto offsets = linspace(-cfg.sweep.delta_span, cfg.sweep.delta_span,
                                  static_cast<std::size_t>(cfg.sweep.delta_points));

    MatrixText levels;
    levels.header = base_header(ctx, "spectrum");
    levels.header.emplace_back("units", "Hz (angular / 2pi)");
    levels.header.emplace_back("operating_detuning_hz", format_double(hertz(d0)));
    levels.columns = {"offset_hz", "delta_hz"};
    for (int k = 0; k < n; ++k) levels.columns.push_back("e" + std::to_string(k) + "_hz");
    levels.columns.push_back("pair_splitting_hz");
    levels.data.resize(static_cast<Eigen::Index>(offsets.size()), n + 3);

    double min_split = std::numeric_limits<double>::infinity();
    double min_at = 0.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        const double delta = d0 + offsets[i];
        const auto es = eigendecompose(rwa_hamiltonian(n, cfg.drive.a_cdd, 0.0, delta, cfg.device));
        const auto pair = locate_cdpq_pair(es);
        const double split = es.values(pair.upper) - es.values(pair.lower);
        const auto r = static_cast<Eigen::Index>(i);
        levels.data(r, 0) = hertz(offsets[i]);
        levels.data(r, 1) = hertz(delta);
        for (int k = 0; k < n; ++k) levels.data(r, 2 + k) = hertz(es.values(k));
        levels.data(r, n + 2) = hertz(split);
        if (split < min_split) {
            min_split = split;
            min_at = offsets[i];
        }
    }
    emit(res, ctx.out_dir / "spectrum_levels.dat", levels);

    // Gate envelope FFT against the pair-to-leakage transitions.
    const double rate = 20e9;
    const auto env = sample_envelope(gate_pulse(1.0, cfg.calibration.t_g), rate);
    const auto spec = envelope_spectrum(env, 16);
    MatrixText fft;
    fft.header = base_header(ctx, "envelope_spectrum");
    fft.header.emplace_back("units", "frequency[Hz] magnitude[rad per rad/s] normalized[1]");
    fft.header.emplace_back("t_g_s", format_double(cfg.calibration.t_g));
    fft.columns = {"frequency_hz", "magnitude", "normalized"};
    const double peak = spec.peak();
    fft.data.resize(static_cast<Eigen::Index>(spec.frequencies.size()), 3);
    for (std::size_t i = 0; i < spec.frequencies.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        fft.data(r, 0) = spec.frequencies[i];
        fft.data(r, 1) = spec.magnitude[i];
        fft.data(r, 2) = spec.magnitude[i] / peak;
    }
    emit(res, ctx.out_dir / "envelope_spectrum.dat", fft);

    KeyValueRecord r = base_record(ctx, "spectrum");
    r.set("operating_detuning_hz", hertz(d0));
    r.set("min_pair_splitting_hz", hertz(min_split));
    r.set("min_pair_splitting_offset_hz", hertz(min_at));
    r.set("a_cdd_hz", hertz(cfg.drive.a_cdd));
    r.set("beta", beta(cfg.device, cfg.drive));
    if (n >= 3) {
        const auto es = eigendecompose(rwa_hamiltonian(n, cfg.drive.a_cdd, 0.0, d0, cfg.device));
        const auto pair = locate_cdpq_pair(es);
        std::vector<double> transitions;
        for (Eigen::Index k = 0; k < es.values.size(); ++k) {
            if (k == pair.upper || k == pair.lower) continue;
            transitions.push_back(std::abs(hertz(es.values(pair.upper) - es.values(k))));
            transitions.push_back(std::abs(hertz(es.values(pair.lower) - es.values(k))));
        }
        std::string tl;
        for (double f : transitions) tl += (tl.empty() ? "" : " ") + format_double(f);
        r.set("leakage_transitions_hz", tl);
        r.set("leakage_overlap_score", leakage_overlap_score(spec, transitions));
    }
    std::string nodes;
    for (double f : spec.node_frequencies) {
        if (f > 400e6) break;
        nodes += (nodes.empty() ? "" : " ") + format_double(f);
    }
    r.set("envelope_nodes_hz", nodes);
    emit(res, ctx.out_dir / "spectrum.rec", r);
    res.summary = r;
    run.finish(res);
    return res;
}

CommandResult cmd_calibrate(const RunContext& ctx) {
    const auto& cfg = ctx.config;
    cfg.validate();
    RunLog run(ctx, "calibrate");
    CommandResult res;
    DriveConfig drive = cfg.drive;
    if (cfg.calibration.target_a_cdd > 0) {
        drive.a_cdd = cfg.calibration.select_ratio ? select_acdd(cfg.device, cfg.calibration.target_a_cdd)
                                                   : cfg.calibration.target_a_cdd;
    }
    const Simulator sim = Simulator::transmon(cfg.device, drive);
    const double period = kTwoPi / sim.splitting();
    say(ctx, "calibrate: a_cdd=" + format_double(hertz(drive.a_cdd)) + " Hz, period=" + format_double(period) + " s");

    const auto a_grid = linspace(0.0, angular(80e6), 81);
    const auto t_grid = linspace(0.0, 4.0 * period, 121);
    const auto cs = coarse_scan(a_grid, t_grid, cfg.calibration.t_g, sim, {}, ctx.workers);
    emit(res, ctx.out_dir / "coarse_scan.dat", map_text(ctx, "coarse_scan", cs.map));

    CalibrationResult c;
    c.a_cdd = drive.a_cdd;
    c.splitting = sim.splitting();
    c.a_g = cs.a_g;
    c.t_g = cfg.calibration.t_g;
    c.t_close = std::fmod(cs.t_close, period);
    c.delta_offset = cs.delta_estimate;
    c.seed = cfg.seed;
    c.log.push_back("coarse a_g_hz=" + format_double(hertz(cs.a_g)) + " t_close_s=" + format_double(c.t_close) +
                    " rate_hz=" + format_double(hertz(cs.rate)) + " contrast=" + format_double(cs.contrast));
    say(ctx, c.log.back());

    RefineOptions ro;
    ro.max_passes = cfg.calibration.max_passes;
    ro.max_train = cfg.calibration.max_train;
    ro.tolerance = cfg.calibration.tolerance;
    try {
        c = refine_with_trains(c, sim, ro);
    } catch (const Error& e) {
        KeyValueRecord failed = base_record(ctx, "calibration_failed");
        failed.set("error", e.what());
        for (std::size_t i = 0; i < e.details().size(); ++i) failed.set("log_" + std::to_string(i), e.details()[i]);
        emit(res, ctx.out_dir / "calibration_failed.rec", failed);
        run.finish(res);
        throw;
    }
    const auto inf = train_infidelity(c, 4, sim);
    KeyValueRecord r = calibration_record(ctx, c);
    r.set("identity4_infidelity", inf.identity);
    r.set("rate_hz", hertz(cs.rate));
    r.set("rate_err_hz", hertz(cs.rate_err));
    r.set("expected_rate_hz", hertz(cdpq_splitting(drive.a_cdd, cfg.drive.detuning_offset)));
    r.set("avg_clifford_time_s", avg_clifford_time(c.t_g, c.t_close, c.a_cdd));
    emit(res, ctx.out_dir / "calibration.rec", r);
    for (const auto& line : c.log) say(ctx, line);
    res.summary = r;
    run.finish(res);
    return res;
}

CalibrationResult obtain_calibration(const RunContext& ctx) {
    const auto path = ctx.out_dir / "calibration.rec";
    if (std::filesystem::exists(path)) {
        const auto check = verify_file(path, config_hash(ctx.config));
        if (check.ok()) {
            say(ctx, "reusing " + path.string());
            return calibration_from_record(read_record(path));
        }
    }
    return calibration_from_record(cmd_calibrate(ctx).summary);
}

CommandResult cmd_sweep_leakage(const RunContext& ctx) {
    const auto& cfg = ctx.config;
    cfg.validate();
    RunLog run(ctx, "sweep_leakage");
    CommandResult res;
    const Simulator sim = Simulator::transmon(cfg.device, cfg.drive);
    const auto a_grid = linspace(cfg.sweep.a_g_min, cfg.sweep.a_g_max, static_cast<std::size_t>(cfg.sweep.a_g_points));
    const auto t_grid = linspace(cfg.sweep.t_g_min, cfg.sweep.t_g_max, static_cast<std::size_t>(cfg.sweep.t_g_points));
    const std::vector<DressedLabel> inits{DressedLabel::Plus, DressedLabel::Minus};
    const auto maps = sim.dim() >= 3 ? leakage_sweep(a_grid, t_grid, inits, sim, ctx.workers)
                                     : population_sweep(a_grid, t_grid, inits, sim, ctx.workers);
    KeyValueRecord r = base_record(ctx, "sweep_leakage");
    r.set("mark_a_g_hz", hertz(cfg.sweep.mark_a_g));
    r.set("mark_t_g_s", cfg.calibration.t_g);
    for (std::size_t k = 0; k < inits.size(); ++k) {
        const std::string tag = inits[k] == DressedLabel::Plus ? "plus" : "minus";
        auto pop = map_text(ctx, "population", maps[k].population);
        auto leak = map_text(ctx, "leakage", maps[k].leakage);
        for (auto* m : {&pop, &leak}) {
            m->header.emplace_back("mark_a_g_hz", format_double(hertz(cfg.sweep.mark_a_g)));
            m->header.emplace_back("mark_t_g_s", format_double(cfg.calibration.t_g));
        }
        emit(res, ctx.out_dir / ("population_" + tag + ".dat"), pop);
        emit(res, ctx.out_dir / ("leakage_" + tag + ".dat"), leak);
        try {
            r.set("speed_limit_" + tag + "_s", speed_limit(cfg.drive.a_cdd, maps[k].population));
        } catch (const Error&) {
            r.set("speed_limit_" + tag + "_s", "none");
        }
        r.set("max_log10_leakage_" + tag, maps[k].leakage.values.maxCoeff());
    }
    r.set("reference_2pi_over_a_cdd_s", kTwoPi / cfg.drive.a_cdd);
    emit(res, ctx.out_dir / "sweep_leakage.rec", r);
    res.summary = r;
    run.finish(res);
    return res;
}

CommandResult cmd_coherence(const RunContext& ctx) {
    const auto& cfg = ctx.config;
    cfg.validate();
    const CalibrationResult calib = obtain_calibration(ctx);
    RunLog run(ctx, "coherence");
    CommandResult res;
    const Simulator sim = Simulator::transmon(cfg.device, drive_for(cfg, calib));
    NoiseModel noise = cfg.noise;
    noise.seed = cfg.seed;

    const auto bare_delays = linspace(0.0, cfg.coherence.bare_max_delay, static_cast<std::size_t>(cfg.coherence.points));
    const auto cdpq_delays =
        period_aligned_delays(calib.period(), cfg.coherence.cdpq_max_delay, static_cast<std::size_t>(cfg.coherence.points));

    CoherenceSetup bare;
    bare.system = SystemKind::Bare;
    bare.fit_model = cfg.coherence.fit_model;
    bare.noise_step = cfg.coherence.noise_step;
    bare.workers = ctx.workers;
    CoherenceSetup cdpq = bare;
    cdpq.system = SystemKind::Cdpq;
    cdpq.sim = &sim;
    cdpq.calib = calib;

    KeyValueRecord r = base_record(ctx, "coherence");
    const int shots = cfg.coherence.shots;
    struct Job {
        const char* name;
        bool hahn;
        const CoherenceSetup* setup;
        const std::vector<double>* delays;
    };
    const Job jobs[] = {{"ramsey_bare", false, &bare, &bare_delays},
                        {"hahn_bare", true, &bare, &bare_delays},
                        {"ramsey_cdpq", false, &cdpq, &cdpq_delays},
                        {"hahn_cdpq", true, &cdpq, &cdpq_delays}};
    std::optional<double> ramsey_bare, ramsey_cdpq;
    for (const auto& job : jobs) {
        say(ctx, std::string("coherence: ") + job.name);
        const DecayCurve curve = job.hahn ? hahn_experiment(*job.delays, noise, shots, *job.setup)
                                          : ramsey_experiment(*job.delays, noise, shots, *job.setup);
        emit(res, ctx.out_dir / (std::string(job.name) + ".dat"), curve_text(ctx, job.name, curve));
        put_fit(r, job.name, curve);
        if (curve.fit && std::string(job.name) == "ramsey_bare") ramsey_bare = curve.fit->t2;
        if (curve.fit && std::string(job.name) == "ramsey_cdpq") ramsey_cdpq = curve.fit->t2;
    }
    if (ramsey_bare && ramsey_cdpq) r.set("ramsey_t2_ratio", *ramsey_cdpq / *ramsey_bare);
    emit(res, ctx.out_dir / "coherence.rec", r);
    res.summary = r;
    run.finish(res);
    return res;
}

CommandResult cmd_rb(const RunContext& ctx) {
    const auto& cfg = ctx.config;
    cfg.validate();
    const CalibrationResult calib = obtain_calibration(ctx);
    RunLog run(ctx, "rb");
    CommandResult res;
    const Simulator sim = Simulator::transmon(cfg.device, drive_for(cfg, calib));
    std::optional<NoiseModel> noise;
    if (cfg.rb.noisy) {
        noise = cfg.noise;
        noise->seed = cfg.seed;
    }
    const PulseExecutor exec(sim, calib, noise);
    say(ctx, "rb: " + std::to_string(cfg.rb.sequences) + " sequences x " + std::to_string(cfg.rb.lengths.size()) +
                 " lengths");
    const RbResult rb = run_rb(cfg.rb.lengths, cfg.rb.sequences, exec, cfg.seed, ctx.workers);

    MatrixText raw;
    raw.header = base_header(ctx, "rb_raw");
    raw.header.emplace_back("units", "length[1] sequence[1] survival[1]");
    raw.header.emplace_back("prepared_state", "-");
    raw.columns = {"length", "sequence", "survival"};
    const auto nr = static_cast<Eigen::Index>(cfg.rb.sequences);
    raw.data.resize(static_cast<Eigen::Index>(rb.lengths.size()) * nr, 3);
    for (std::size_t li = 0; li < rb.lengths.size(); ++li) {
        for (Eigen::Index s = 0; s < nr; ++s) {
            const auto row = static_cast<Eigen::Index>(li) * nr + s;
            raw.data(row, 0) = rb.lengths[li];
            raw.data(row, 1) = static_cast<double>(s);
            raw.data(row, 2) = rb.raw[li][static_cast<std::size_t>(s)];
        }
    }
    emit(res, ctx.out_dir / "rb_raw.dat", raw);

    MatrixText decay;
    decay.header = base_header(ctx, "rb_decay");
    decay.header.emplace_back("units", "length[1] mean[1] std[1]");
    decay.columns = {"length", "survival_mean", "survival_std"};
    decay.data.resize(static_cast<Eigen::Index>(rb.lengths.size()), 3);
    for (std::size_t li = 0; li < rb.lengths.size(); ++li) {
        const auto r = static_cast<Eigen::Index>(li);
        decay.data(r, 0) = rb.lengths[li];
        decay.data(r, 1) = rb.survival_mean[li];
        decay.data(r, 2) = rb.survival_std[li];
    }
    emit(res, ctx.out_dir / "rb_decay.dat", decay);

    KeyValueRecord r = base_record(ctx, "rb");
    r.set("noisy", cfg.rb.noisy ? "true" : "false");
    r.set("sequences", std::to_string(cfg.rb.sequences));
    r.set("fit_a", rb.fit.a);
    r.set("fit_b", rb.fit.b);
    r.set("fit_b_pinned", rb.fit.b_pinned ? "true" : "false");
    r.set("fit_p", rb.fit.p);
    r.set("fit_p_err", rb.fit.p_err);
    r.set("fidelity", rb.fit.fidelity);
    r.set("fidelity_err", rb.fit.fidelity_err);
    r.set("avg_clifford_time_s", avg_clifford_time(calib.t_g, calib.t_close, calib.a_cdd));
    emit(res, ctx.out_dir / "rb.rec", r);
    res.summary = r;
    run.finish(res);
    return res;
}

CommandResult cmd_verify(const RunContext& ctx) {
    CommandResult res;
    const std::string expected = config_hash(ctx.config);
    KeyValueRecord r;
    r.set("config_hash", expected);
    int checked = 0, failed = 0;
    if (!std::filesystem::is_directory(ctx.out_dir)) {
        throw Error(ErrorCode::Io, "verify: no output directory " + ctx.out_dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(ctx.out_dir)) {
        const auto ext = e.path().extension();
        if (e.is_regular_file() && (ext == ".dat" || ext == ".rec")) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        const auto check = verify_file(f, expected);
        ++checked;
        if (!check.ok()) ++failed;
        r.set(f.filename().string(), check.ok() ? "ok" : "FAIL " + check.detail);
        say(ctx, f.filename().string() + (check.ok() ? ": ok" : ": FAIL " + check.detail));
    }
    r.set("checked", std::to_string(checked));
    r.set("failed", std::to_string(failed));
    res.ok = failed == 0 && checked > 0;
    res.summary = r;
    return res;
}

}  // namespace cdpq
