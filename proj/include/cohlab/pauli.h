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

#ifndef COHLAB_PAULI_H
#define COHLAB_PAULI_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cohlab/f2linalg.h"

namespace cohlab {

enum class Axis : uint8_t { X = 0, Y = 1, Z = 2 };

char axis_char(Axis a);
Axis parse_axis(char c);

/// A Hermitian Pauli product +-P_0 P_1 ... P_{n-1}.
///
/// Site j holds X^{x_j} Z^{z_j} with Y encoded as x=z=1 (Y = iXZ), so the
/// string is always Hermitian and only a sign bit is tracked.
struct PauliString {
    bool sign = false;  // true means a -1 prefactor
    BitVec xs;
    BitVec zs;

    PauliString() = default;
    explicit PauliString(size_t num_qubits);

    static PauliString single(size_t num_qubits, size_t site, Axis axis, bool negative = false);
    /// Text form "+XIZY", "-ZZ" or "XX" (sign optional, '_' accepted for I).
    static PauliString parse(std::string_view text);

    size_t size() const {
        return xs.size();
    }
    /// One of 'I', 'X', 'Y', 'Z'.
    char at(size_t site) const;
    void set(size_t site, char pauli);
    bool is_identity() const;

    std::string str() const;

    bool operator==(const PauliString &other) const = default;
};

/// A choice of diagonal Pauli axis per site.
struct LocalPauliBasis {
    std::vector<Axis> axes;

    static LocalPauliBasis uniform(size_t n, Axis axis);
    /// Text form like "XXZY".
    static LocalPauliBasis parse(std::string_view text);
    size_t size() const {
        return axes.size();
    }
    std::string str() const;
    bool operator==(const LocalPauliBasis &other) const = default;
};

bool commute(const PauliString &p, const PauliString &q);

/// Sign-exact product of commuting Paulis; throws std::invalid_argument if p
/// and q anticommute.
PauliString multiply(const PauliString &p, const PauliString &q);

/// Product p*q = i^log_i * result, for arbitrary inputs. result.sign absorbs
/// the real part of the phase; log_i is 0 or 1.
struct PhasedPauli {
    PauliString pauli;
    uint8_t log_i;
};
PhasedPauli multiply_with_phase(const PauliString &p, const PauliString &q);

size_t weight(const PauliString &p);

struct Gate {
    enum class Kind : uint8_t { CNOT, PHASE };
    Kind kind;
    size_t a;  // control (CNOT) or site (PHASE)
    size_t b;  // target (CNOT), unused otherwise

    static Gate cnot(size_t control, size_t target) {
        return {Kind::CNOT, control, target};
    }
    static Gate phase(size_t site) {
        return {Kind::PHASE, site, 0};
    }
    bool operator==(const Gate &other) const = default;
};

/// U p U^dagger. CNOT: X_c -> X_c X_t, Z_t -> Z_c Z_t. PHASE: X -> Y -> -X.
PauliString conjugate_by_gate(const PauliString &p, const Gate &gate);

/// Phase exponent (mod 4) from multiplying single-qubit Paulis (x1,z1)*(x2,z2)
/// in the Y=iXZ encoding, word-parallel: sum over bits of +1/-1 contributions.
inline int pauli_product_log_i(uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2, int acc = 0) {
    uint64_t plus = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
    uint64_t minus = (x1 & ~z1 & ~x2 & z2) | (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2);
    return acc + __builtin_popcountll(plus) - __builtin_popcountll(minus);
}

}  // namespace cohlab

#endif
