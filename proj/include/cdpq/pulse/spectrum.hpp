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

#ifndef CDPQ_PULSE_SPECTRUM_HPP
#define CDPQ_PULSE_SPECTRUM_HPP

#include <span>
#include <vector>

#include "cdpq/pulse/envelope.hpp"

namespace cdpq {

/// One-sided Fourier magnitude of a sampled envelope.
struct EnvelopeSpectrum {
    std::vector<double> frequencies;       // Hz
    std::vector<double> magnitude;         // |FT| in rad (amplitude x time)
    std::vector<double> node_frequencies;  // Hz

    double peak() const;
    /// Linear interpolation of magnitude/peak at f (Hz).
    double normalized_at(double f) const;
};

/// Zero-padded FFT on a grid of spacing 1/(span * zero_pad_factor). Nodes are
/// local minima below 1% of the peak. Throws Resolution for < 64 samples.
EnvelopeSpectrum envelope_spectrum(const SampledWaveform& env, int zero_pad_factor);

/// Sum of the peak-normalized magnitude at each transition frequency (Hz).
/// Throws Range for a frequency outside (0, f_max].
double leakage_overlap_score(const EnvelopeSpectrum& spectrum, std::span<const double> transition_freqs);

}  // namespace cdpq

#endif  // CDPQ_PULSE_SPECTRUM_HPP
