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

#ifndef CDPQ_CORE_RANDOM_HPP
#define CDPQ_CORE_RANDOM_HPP

#include <cstdint>
#include <random>

namespace cdpq {

using RngStream = std::mt19937_64;

/// Stream tags keep substreams of different experiments disjoint even when
/// they share a seed and an index.
enum class StreamTag : std::uint32_t {
    Noise = 1,
    RbSequence = 2,
    RbNoise = 3,
    Coherence = 4,
    Mock = 5,
};

/// Independent generator for work unit `index` of experiment `tag`. Derived
/// only from (seed, tag, index), so results do not depend on which worker
/// runs the unit.
inline RngStream make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return RngStream(seq);
}

}  // namespace cdpq

#endif  // CDPQ_CORE_RANDOM_HPP
