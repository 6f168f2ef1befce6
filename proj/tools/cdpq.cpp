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


#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cdpq/core/parallel.hpp"
#include "cdpq/engine/commands.hpp"

namespace {

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    int workers = 0;
    std::string out;
    bool verbose = false;
};

cdpq::RunContext context(const Flags& f) {
    cdpq::RunContext ctx;
    ctx.config = f.config.empty() ? cdpq::ExperimentConfig::reference() : cdpq::load_config(f.config);
    if (f.seed) ctx.config.seed = *f.seed;
    if (!f.out.empty()) ctx.config.output_dir = f.out;
    ctx.config.validate();
    ctx.out_dir = ctx.config.output_dir;
    ctx.workers = f.workers > 0 ? f.workers : cdpq::default_workers();
    if (f.verbose) ctx.log = &std::cerr;
    return ctx;
}

void print(const cdpq::CommandResult& r) {
    for (const auto& [k, v] : r.summary.entries) std::cout << k << " = " << v << '\n';
    for (const auto& f : r.files) std::cout << "wrote " << f.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pulse-level simulator for CDD-protected transmon qubits"};
    app.require_subcommand(1);
    Flags flags;
    app.add_option("--config", flags.config, "INI experiment config")->check(CLI::ExistingFile);
    app.add_option("--seed", flags.seed, "override run.seed");
    app.add_option("--workers", flags.workers, "worker threads (default: hardware concurrency)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--out", flags.out, "output directory (overrides run.output_dir)");
    app.add_flag("--verbose,-v", flags.verbose, "progress on stderr");

    using Cmd = cdpq::CommandResult (*)(const cdpq::RunContext&);
    const std::pair<const char*, Cmd> table[] = {
        {"spectrum", cdpq::cmd_spectrum},
        {"calibrate", cdpq::cmd_calibrate},
        {"sweep-leakage", cdpq::cmd_sweep_leakage},
        {"coherence", cdpq::cmd_coherence},
        {"rb", cdpq::cmd_rb},
        {"verify", cdpq::cmd_verify},
    };
    const char* help[] = {
        "rotating-frame levels vs detuning and gate envelope spectrum",
        "coarse scan and train refinement of the quarter-turn gate",
        "population and leakage maps over (A_g, t_g)",
        "Ramsey and Hahn decay, bare vs CDPQ",
        "randomized benchmarking with the calibrated gate set",
        "re-hash output files against the config",
    };
    std::vector<std::pair<CLI::App*, Cmd>> subs;
    for (std::size_t i = 0; i < std::size(table); ++i) {
        auto* sub = app.add_subcommand(table[i].first, help[i]);
        sub->fallthrough();
        subs.emplace_back(sub, table[i].second);
    }

    CLI11_PARSE(app, argc, argv);
    try {
        const auto ctx = context(flags);
        for (const auto& [sub, cmd] : subs) {
            if (!sub->parsed()) continue;
            const auto res = cmd(ctx);
            print(res);
            return res.ok ? 0 : 1;
        }
    } catch (const cdpq::Error& e) {
        std::cerr << "error [" << cdpq::to_string(e.code()) << "]: " << e.what() << '\n';
        for (const auto& d : e.details()) std::cerr << "  " << d << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
