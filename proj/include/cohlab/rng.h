// Copyright 2026 The cohlab Authors
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

#ifndef COHLAB_RNG_H
#define COHLAB_RNG_H

#include <cstdint>
#include <random>

namespace cohlab {

using Rng = std::mt19937_64;

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-based seed derivation: independent of evaluation order.
inline uint64_t child_seed(uint64_t master, uint64_t index, uint64_t stream = 0) {
    return splitmix64(splitmix64(master ^ splitmix64(stream)) + index);
}

inline bool coin(Rng &rng) {
    return rng() >> 63;
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng &rng) {
    return (rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection (n > 0).
inline uint64_t uniform_below(Rng &rng, uint64_t n) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

}  // namespace cohlab

#endif
