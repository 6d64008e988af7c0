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

#ifndef COHLAB_CHANNELS_H
#define COHLAB_CHANNELS_H

#include <string>
#include <string_view>
#include <vector>

#include "cohlab/stabilizer.h"

namespace cohlab {

/// Single-site channels that reset a qubit to the +X eigenstate.
enum class EraserKind : uint8_t {
    COHERENCE_MAINTAINING,  // measure Z, measure X, flip
    COHERENCE_DESTROYING,   // measure X, flip
    FORGOTTEN,              // reset with the outcome discarded
};

const char *eraser_name(EraserKind kind);
EraserKind parse_eraser(std::string_view name);

struct EraserRecord {
    /// Measurements performed, in order (empty for FORGOTTEN).
    std::vector<MeasurementRecord> measurements;
    bool flipped = false;
};

EraserRecord apply_eraser(StabilizerTableau &state, size_t site, EraserKind kind, Rng &rng);

/// System qubits 0..L-1, ancillas L..L+A-1; ancilla j pairs with system j.
/// Generators X_{a_j} X_{s_j} for j < A and +X on the other system qubits.
StabilizerTableau init_classical_register(size_t L, size_t ancilla_count);
/// Bell pairs (X_a X_s, Z_a Z_s) for j < A and +X on the other system qubits.
StabilizerTableau init_quantum_register(size_t L, size_t ancilla_count);

}  // namespace cohlab

#endif
