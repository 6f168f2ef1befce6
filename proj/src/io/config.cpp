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


#include "cdpq/io/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <openssl/evp.h>

#include "cdpq/error.hpp"

namespace cdpq {
namespace {

namespace pt = boost::property_tree;

struct Key {
    const char* section;
    const char* name;
    std::function<std::string(const ExperimentConfig&)> get;
    std::function<void(ExperimentConfig&, const std::string&)> set;
};

double to_double(const std::string& s, const std::string& key) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw Error(ErrorCode::Config, "config: '" + key + "' is not a number: " + s);
    return v;
}

long long to_int(const std::string& s, const std::string& key) {
    long long v = 0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw Error(ErrorCode::Config, "config: '" + key + "' is not an integer: " + s);
    return v;
}

bool to_bool(const std::string& s, const std::string& key) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw Error(ErrorCode::Config, "config: '" + key + "' is not a boolean: " + s);
}


template <typename Get, typename Set>
Key make(const char* sec, const char* name, Get g, Set s) {
    return Key{sec, name, g, s};
}

const std::vector<Key>& keys() {
    using C = ExperimentConfig;
    static const std::vector<Key> table = [] {
        std::vector<Key> k;
        auto hz = [](double w) { return format_double(hertz(w)); };
        auto num = [](double v) { return format_double(v); };
        // device
        k.push_back(make("device", "qubit_freq_uss_hz",
                         [=](const C& c) { return hz(c.device.omega0 - c.device.e_c()); },
                         [](C& c, const std::string& v) { c.device.omega0 = angular(to_double(v, "qubit_freq_uss_hz")); }));
        k.push_back(make("device", "e_c_over_h_hz", [=](const C& c) { return num(c.device.e_c_over_h); },
                         [](C& c, const std::string& v) { c.device.e_c_over_h = to_double(v, "e_c_over_h_hz"); }));
        k.push_back(make("device", "n_levels", [](const C& c) { return std::to_string(c.device.n_levels); },
                         [](C& c, const std::string& v) { c.device.n_levels = static_cast<int>(to_int(v, "n_levels")); }));
        // drive
        k.push_back(make("drive", "a_cdd_hz", [=](const C& c) { return hz(c.drive.a_cdd); },
                         [](C& c, const std::string& v) { c.drive.a_cdd = angular(to_double(v, "a_cdd_hz")); }));
        k.push_back(make("drive", "drive_freq_hz", [=](const C& c) { return hz(c.drive.omega_drive); },
                         [](C& c, const std::string& v) { c.drive.omega_drive = angular(to_double(v, "drive_freq_hz")); }));
        k.push_back(make("drive", "phi", [=](const C& c) { return num(c.drive.phi); },
                         [](C& c, const std::string& v) { c.drive.phi = to_double(v, "phi"); }));
        k.push_back(make("drive", "detuning_offset_hz", [=](const C& c) { return hz(c.drive.detuning_offset); },
                         [](C& c, const std::string& v) {
                             c.drive.detuning_offset = angular(to_double(v, "detuning_offset_hz"));
                         }));
        // noise
        k.push_back(make("noise", "sigma_quasistatic_hz", [=](const C& c) { return hz(c.noise.sigma_quasistatic); },
                         [](C& c, const std::string& v) {
                             c.noise.sigma_quasistatic = angular(to_double(v, "sigma_quasistatic_hz"));
                         }));
        k.push_back(make("noise", "one_over_f_amp_hz", [=](const C& c) { return hz(c.noise.one_over_f_amp); },
                         [](C& c, const std::string& v) {
                             c.noise.one_over_f_amp = angular(to_double(v, "one_over_f_amp_hz"));
                         }));
        k.push_back(make("noise", "f_low_hz", [=](const C& c) { return num(c.noise.f_low); },
                         [](C& c, const std::string& v) { c.noise.f_low = to_double(v, "f_low_hz"); }));
        k.push_back(make("noise", "f_high_hz", [=](const C& c) { return num(c.noise.f_high); },
                         [](C& c, const std::string& v) { c.noise.f_high = to_double(v, "f_high_hz"); }));
        k.push_back(make("noise", "tones_per_decade", [](const C& c) { return std::to_string(c.noise.tones_per_decade); },
                         [](C& c, const std::string& v) {
                             c.noise.tones_per_decade = static_cast<int>(to_int(v, "tones_per_decade"));
                         }));
        k.push_back(make("noise", "a_cdd_frac_noise", [=](const C& c) { return num(c.noise.a_cdd_frac_noise); },
                         [](C& c, const std::string& v) { c.noise.a_cdd_frac_noise = to_double(v, "a_cdd_frac_noise"); }));
        k.push_back(make("noise", "t1_s", [=](const C& c) { return num(c.noise.t1); },
                         [](C& c, const std::string& v) { c.noise.t1 = to_double(v, "t1_s"); }));
        // calibration
        k.push_back(make("calibration", "target_a_cdd_hz", [=](const C& c) { return hz(c.calibration.target_a_cdd); },
                         [](C& c, const std::string& v) {
                             c.calibration.target_a_cdd = angular(to_double(v, "target_a_cdd_hz"));
                         }));
        k.push_back(make("calibration", "select_ratio",
                         [](const C& c) { return std::string(c.calibration.select_ratio ? "true" : "false"); },
                         [](C& c, const std::string& v) { c.calibration.select_ratio = to_bool(v, "select_ratio"); }));
        k.push_back(make("calibration", "t_g_s", [=](const C& c) { return num(c.calibration.t_g); },
                         [](C& c, const std::string& v) { c.calibration.t_g = to_double(v, "t_g_s"); }));
        k.push_back(make("calibration", "max_passes", [](const C& c) { return std::to_string(c.calibration.max_passes); },
                         [](C& c, const std::string& v) {
                             c.calibration.max_passes = static_cast<int>(to_int(v, "max_passes"));
                         }));
        k.push_back(make("calibration", "max_train", [](const C& c) { return std::to_string(c.calibration.max_train); },
                         [](C& c, const std::string& v) {
                             c.calibration.max_train = static_cast<int>(to_int(v, "max_train"));
                         }));
        k.push_back(make("calibration", "tolerance", [=](const C& c) { return num(c.calibration.tolerance); },
                         [](C& c, const std::string& v) { c.calibration.tolerance = to_double(v, "tolerance"); }));
        // sweep
        k.push_back(make("sweep", "a_g_min_hz", [=](const C& c) { return hz(c.sweep.a_g_min); },
                         [](C& c, const std::string& v) { c.sweep.a_g_min = angular(to_double(v, "a_g_min_hz")); }));
        k.push_back(make("sweep", "a_g_max_hz", [=](const C& c) { return hz(c.sweep.a_g_max); },
                         [](C& c, const std::string& v) { c.sweep.a_g_max = angular(to_double(v, "a_g_max_hz")); }));
        k.push_back(make("sweep", "a_g_points", [](const C& c) { return std::to_string(c.sweep.a_g_points); },
                         [](C& c, const std::string& v) { c.sweep.a_g_points = static_cast<int>(to_int(v, "a_g_points")); }));
        k.push_back(make("sweep", "t_g_min_s", [=](const C& c) { return num(c.sweep.t_g_min); },
                         [](C& c, const std::string& v) { c.sweep.t_g_min = to_double(v, "t_g_min_s"); }));
        k.push_back(make("sweep", "t_g_max_s", [=](const C& c) { return num(c.sweep.t_g_max); },
                         [](C& c, const std::string& v) { c.sweep.t_g_max = to_double(v, "t_g_max_s"); }));
        k.push_back(make("sweep", "t_g_points", [](const C& c) { return std::to_string(c.sweep.t_g_points); },
                         [](C& c, const std::string& v) { c.sweep.t_g_points = static_cast<int>(to_int(v, "t_g_points")); }));
        k.push_back(make("sweep", "delta_span_hz", [=](const C& c) { return hz(c.sweep.delta_span); },
                         [](C& c, const std::string& v) { c.sweep.delta_span = angular(to_double(v, "delta_span_hz")); }));
        k.push_back(make("sweep", "delta_points", [](const C& c) { return std::to_string(c.sweep.delta_points); },
                         [](C& c, const std::string& v) {
                             c.sweep.delta_points = static_cast<int>(to_int(v, "delta_points"));
                         }));
        k.push_back(make("sweep", "mark_a_g_hz", [=](const C& c) { return hz(c.sweep.mark_a_g); },
                         [](C& c, const std::string& v) { c.sweep.mark_a_g = angular(to_double(v, "mark_a_g_hz")); }));
        // coherence
        k.push_back(make("coherence", "bare_max_delay_s", [=](const C& c) { return num(c.coherence.bare_max_delay); },
                         [](C& c, const std::string& v) { c.coherence.bare_max_delay = to_double(v, "bare_max_delay_s"); }));
        k.push_back(make("coherence", "cdpq_max_delay_s", [=](const C& c) { return num(c.coherence.cdpq_max_delay); },
                         [](C& c, const std::string& v) { c.coherence.cdpq_max_delay = to_double(v, "cdpq_max_delay_s"); }));
        k.push_back(make("coherence", "points", [](const C& c) { return std::to_string(c.coherence.points); },
                         [](C& c, const std::string& v) { c.coherence.points = static_cast<int>(to_int(v, "points")); }));
        k.push_back(make("coherence", "shots", [](const C& c) { return std::to_string(c.coherence.shots); },
                         [](C& c, const std::string& v) { c.coherence.shots = static_cast<int>(to_int(v, "shots")); }));
        k.push_back(make("coherence", "noise_step_s", [=](const C& c) { return num(c.coherence.noise_step); },
                         [](C& c, const std::string& v) { c.coherence.noise_step = to_double(v, "noise_step_s"); }));
        k.push_back(make("coherence", "fit_model",
                         [](const C& c) {
                             return std::string(c.coherence.fit_model == DecayModel::Gaussian ? "gaussian" : "exponential");
                         },
                         [](C& c, const std::string& v) {
                             if (v == "gaussian") c.coherence.fit_model = DecayModel::Gaussian;
                             else if (v == "exponential") c.coherence.fit_model = DecayModel::Exponential;
                             else throw Error(ErrorCode::Config, "config: fit_model must be gaussian or exponential");
                         }));
        // rb
        k.push_back(make("rb", "lengths",
                         [](const C& c) {
                             std::string out;
                             for (std::size_t i = 0; i < c.rb.lengths.size(); ++i) {
                                 if (i) out += ' ';
                                 out += std::to_string(c.rb.lengths[i]);
                             }
                             return out;
                         },
                         [](C& c, const std::string& v) {
                             std::istringstream is(v);
                             std::string tok;
                             c.rb.lengths.clear();
                             while (is >> tok) c.rb.lengths.push_back(static_cast<int>(to_int(tok, "lengths")));
                         }));
        k.push_back(make("rb", "sequences", [](const C& c) { return std::to_string(c.rb.sequences); },
                         [](C& c, const std::string& v) { c.rb.sequences = static_cast<int>(to_int(v, "sequences")); }));
        k.push_back(make("rb", "noisy", [](const C& c) { return std::string(c.rb.noisy ? "true" : "false"); },
                         [](C& c, const std::string& v) { c.rb.noisy = to_bool(v, "noisy"); }));
        // run
        k.push_back(make("run", "seed", [](const C& c) { return std::to_string(c.seed); },
                         [](C& c, const std::string& v) { c.seed = static_cast<std::uint64_t>(to_int(v, "seed")); }));
        k.push_back(make("run", "output_dir", [](const C& c) { return c.output_dir; },
                         [](C& c, const std::string& v) { c.output_dir = v; }));
        return k;
    }();
    return table;
}

std::string render(const ExperimentConfig& c, bool with_run) {
    std::ostringstream os;
    std::string section;
    for (const auto& k : keys()) {
        if (!with_run && std::string(k.section) == "run") continue;
        if (section != k.section) {
            if (!section.empty()) os << '\n';
            section = k.section;
            os << '[' << section << "]\n";
        }
        os << k.name << " = " << k.get(c) << '\n';
    }
    return os.str();
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw Error(ErrorCode::Io, "format_double: conversion failed");
    return std::string(buf, ptr);
}

void ExperimentConfig::validate() const {
    device.validate();
    drive.validate();
    noise.validate();
    auto fail = [](const std::string& m) { throw Error(ErrorCode::Config, "config: " + m); };
    if (sweep.a_g_points < 2 || sweep.t_g_points < 2 || sweep.delta_points < 2) fail("sweep grids need >= 2 points");
    if (!(sweep.a_g_max > sweep.a_g_min) || !(sweep.t_g_max > sweep.t_g_min) || !(sweep.t_g_min > 0)) {
        fail("sweep ranges must be increasing with t_g_min > 0");
    }
    if (!(calibration.t_g > 0)) fail("calibration.t_g_s must be positive");
    if (calibration.max_train < 4) fail("calibration.max_train must be >= 4");
    if (coherence.points < 5 || coherence.shots < 1) fail("coherence needs >= 5 points and >= 1 shot");
    if (!(coherence.noise_step > 0)) fail("coherence.noise_step_s must be positive");
    if (rb.lengths.size() < 4) fail("rb.lengths needs >= 4 entries");
    for (int m : rb.lengths) {
        if (m < 1) fail("rb.lengths must be positive");
    }
    if (rb.sequences < 1) fail("rb.sequences must be >= 1");
}

ExperimentConfig ExperimentConfig::reference() {
    ExperimentConfig c;
    c.device = TransmonParams::reference();
    c.drive = DriveConfig::reference();
    c.sweep.a_g_min = 0.0;
    c.sweep.a_g_max = angular(80e6);
    c.sweep.delta_span = angular(30e6);
    c.sweep.mark_a_g = angular(29.12e6);
    c.rb.lengths = {2, 4, 8, 16, 32, 64, 128, 256};
    return c;
}

ExperimentConfig parse_config(const std::string& text) {
    pt::ptree tree;
    std::istringstream is(text);
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(ErrorCode::Config, std::string("config: ") + e.what());
    }
    std::map<std::string, std::map<std::string, const Key*>> index;
    for (const auto& k : keys()) index[k.section][k.name] = &k;

    // omega0 holds the upper-sweet-spot frequency until E_C is known.
    ExperimentConfig c = ExperimentConfig::reference();
    c.device.omega0 -= c.device.e_c();
    for (const auto& [section, body] : tree) {
        const auto sec = index.find(section);
        if (sec == index.end()) throw Error(ErrorCode::Config, "config: unknown section [" + section + "]");
        for (const auto& [name, node] : body) {
            const auto key = sec->second.find(name);
            if (key == sec->second.end()) {
                throw Error(ErrorCode::Config, "config: unknown key " + section + "." + name);
            }
            key->second->set(c, node.get_value<std::string>());
        }
    }
    c.device.omega0 += c.device.e_c();
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "config: cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string canonical_ini(const ExperimentConfig& config) { return render(config, true); }

std::string config_hash(const ExperimentConfig& config) { return sha256_hex(render(config, false)); }

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorCode::Io, "sha256: digest failed");
    }
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(md[i]);
    return os.str();
}

}  // namespace cdpq
