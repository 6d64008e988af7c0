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

#include "cohlab/channels.h"

namespace cohlab {

const char *eraser_name(EraserKind kind) {
    switch (kind) {
        case EraserKind::COHERENCE_MAINTAINING:
            return "maintaining";
        case EraserKind::COHERENCE_DESTROYING:
            return "destroying";
        case EraserKind::FORGOTTEN:
            return "forgotten";
    }
    return "?";
}

EraserKind parse_eraser(std::string_view name) {
    if (name == "maintaining" || name == "coherence_maintaining") {
        return EraserKind::COHERENCE_MAINTAINING;
    }
    if (name == "destroying" || name == "coherence_destroying") {
        return EraserKind::COHERENCE_DESTROYING;
    }
    if (name == "forgotten") {
        return EraserKind::FORGOTTEN;
    }
    throw std::invalid_argument("unknown eraser kind '" + std::string(name) + "'");
}

EraserRecord apply_eraser(StabilizerTableau &state, size_t site, EraserKind kind, Rng &rng) {
    size_t n = state.num_qubits();
    if (site >= n) {
        throw std::out_of_range("apply_eraser: site " + std::to_string(site) + " out of range");
    }
    EraserRecord rec;
    PauliString x = PauliString::single(n, site, Axis::X);
    switch (kind) {
        case EraserKind::COHERENCE_MAINTAINING:
            rec.measurements.push_back(state.measure(PauliString::single(n, site, Axis::Z), MeasurePolicy::random(rng)));
            [[fallthrough]];
        case EraserKind::COHERENCE_DESTROYING: {
            rec.measurements.push_back(state.measure(x, MeasurePolicy::random(rng)));
            if (rec.measurements.back().outcome) {
                state.apply_pauli(PauliString::single(n, site, Axis::Z));
                rec.flipped = true;
            }
            break;
        }
        case EraserKind::FORGOTTEN:
            // Kraus pair |0><0|, |0><1| (X basis) is a reset: fully dephase
            // the site, then prepare +X.
            state.dephase(x);
            state.dephase(PauliString::single(n, site, Axis::Z));
            state.measure(x, MeasurePolicy::postselect(false));
            break;
    }
    return rec;
}

namespace {

StabilizerTableau init_register(size_t L, size_t ancilla_count, char paired_system_site) {
    if (ancilla_count > L) {
        throw std::invalid_argument("register init: ancilla_count exceeds L");
    }
    std::string sites(L + ancilla_count, 'X');
    for (size_t j = 0; j < ancilla_count; j++) {
        sites[j] = paired_system_site;
    }
    StabilizerTableau t = StabilizerTableau::product_state(sites);
    for (size_t j = 0; j < ancilla_count; j++) {
        t.cnot(L + j, j);
    }
    return t;
}

}  // namespace

StabilizerTableau init_classical_register(size_t L, size_t ancilla_count) {
    // +X_a with a mixed system qubit; CNOT(a -> s) gives X_a X_s.
    return init_register(L, ancilla_count, '.');
}

StabilizerTableau init_quantum_register(size_t L, size_t ancilla_count) {
    // +X_a with +Z_s; CNOT(a -> s) gives the Bell pair X_a X_s, Z_a Z_s.
    return init_register(L, ancilla_count, 'Z');
}

}  // namespace cohlab
