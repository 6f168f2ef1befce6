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

#include "cdpq/pulse/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <unsupported/Eigen/FFT>

#include "cdpq/error.hpp"

namespace cdpq {

double EnvelopeSpectrum::peak() const {
    if (magnitude.empty()) return 0.0;
    return *std::max_element(magnitude.begin(), magnitude.end());
}

double EnvelopeSpectrum::normalized_at(double f) const {
    if (frequencies.size() < 2) throw Error(ErrorCode::Range, "EnvelopeSpectrum: empty spectrum");
    if (!(f >= 0.0) || f > frequencies.back()) {
        throw Error(ErrorCode::Range, "EnvelopeSpectrum: frequency " + std::to_string(f) + " Hz outside spectrum");
    }
    const double df = frequencies[1] - frequencies[0];
    const auto i = std::min(static_cast<std::size_t>(f / df), frequencies.size() - 2);
    const double w = (f - frequencies[i]) / df;
    return ((1.0 - w) * magnitude[i] + w * magnitude[i + 1]) / peak();
}

EnvelopeSpectrum envelope_spectrum(const SampledWaveform& env, int zero_pad_factor) {
    if (env.values.size() < 64) {
        throw Error(ErrorCode::Resolution, "envelope_spectrum: need >= 64 samples, got " +
                                               std::to_string(env.values.size()));
    }
    if (zero_pad_factor < 1) throw Error(ErrorCode::Validation, "envelope_spectrum: zero_pad_factor must be >= 1");

    const std::size_t n = env.values.size() * static_cast<std::size_t>(zero_pad_factor);
    std::vector<double> padded(n, 0.0);
    std::copy(env.values.begin(), env.values.end(), padded.begin());
    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
    std::vector<std::complex<double>> bins;
    fft.fwd(bins, padded);

    EnvelopeSpectrum out;
    const double df = env.rate / static_cast<double>(n);
    const std::size_t half = n / 2 + 1;
    out.frequencies.resize(half);
    out.magnitude.resize(half);
    for (std::size_t k = 0; k < half; ++k) {
        out.frequencies[k] = static_cast<double>(k) * df;
        out.magnitude[k] = std::abs(bins[k]) * env.dt();
    }
    const double floor = 0.01 * out.peak();
    for (std::size_t k = 1; k + 1 < half; ++k) {
        const double m = out.magnitude[k];
        if (m < floor && m <= out.magnitude[k - 1] && m < out.magnitude[k + 1]) {
            out.node_frequencies.push_back(out.frequencies[k]);
        }
    }
    return out;
}

double leakage_overlap_score(const EnvelopeSpectrum& spectrum, std::span<const double> transition_freqs) {
    double score = 0.0;
    for (double f : transition_freqs) {
        if (!(f > 0)) throw Error(ErrorCode::Range, "leakage_overlap_score: transition frequency must be positive");
        score += spectrum.normalized_at(f);
    }
    return score;
}

}  // namespace cdpq
