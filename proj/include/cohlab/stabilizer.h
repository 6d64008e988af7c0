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

#ifndef COHLAB_STABILIZER_H
#define COHLAB_STABILIZER_H

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohlab/f2linalg.h"
#include "cohlab/pauli.h"
#include "cohlab/rng.h"

namespace cohlab {

enum class MeasureCase : uint8_t {
    NO_EFFECT,         // +-P already in the group; outcome deterministic
    ENTROPY_REDUCING,  // P commutes with the group but is not in it
    STATE_CHANGING,    // P anticommutes with some generator
};

const char *measure_case_name(MeasureCase c);

struct MeasurementRecord {
    PauliString op;
    bool outcome;  // eigenvalue (-1)^outcome of op
    MeasureCase kind;

    bool deterministic() const {
        return kind == MeasureCase::NO_EFFECT;
    }
};

/// How to choose outcomes that are not fixed by the state.
struct MeasurePolicy {
    enum class Kind : uint8_t { RANDOM, POSTSELECT, FORCED };
    Kind kind;
    bool bit;
    Rng *rng;

    static MeasurePolicy random(Rng &rng) {
        return {Kind::RANDOM, false, &rng};
    }
    /// Fails with PostselectionError if the outcome is fixed to the other value.
    static MeasurePolicy postselect(bool bit) {
        return {Kind::POSTSELECT, bit, nullptr};
    }
    /// Uses `bit` for undetermined outcomes, records fixed outcomes as they are.
    static MeasurePolicy forced(bool bit = false) {
        return {Kind::FORCED, bit, nullptr};
    }
};

struct PostselectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A mixed stabilizer state on n qubits.
///
/// Stored as a full symplectic frame of 2n Pauli rows grouped into n pairs
/// (a_k, b_k) with a_k anticommuting with b_k and commuting with every other
/// row. For stabilized pairs b_k is a generator of the stabilizer group and
/// a_k its destabilizer; unstabilized pairs span the logical operators, whose
/// count is the entropy. Storage is column-major: for each qubit a bitset over
/// rows of X bits and of Z bits, so gates touch a couple of columns and
/// measurements update all rows word-parallel.
class StabilizerTableau {
   public:
    /// Maximally mixed state (no generators).
    explicit StabilizerTableau(size_t num_qubits = 0);

    /// Product state; per site 'X','Y','Z' (+1 eigenstate), 'x','y','z'
    /// (-1 eigenstate), or '.' for a maximally mixed qubit.
    static StabilizerTableau product_state(std::string_view sites);
    /// State stabilized by the given commuting, independent generators.
    /// Throws std::invalid_argument otherwise (including -I in the group).
    static StabilizerTableau from_generators(size_t num_qubits, const std::vector<PauliString> &gens);

    size_t num_qubits() const {
        return n_;
    }
    size_t num_stabilizers() const {
        return num_stab_;
    }
    size_t entropy() const {
        return n_ - num_stab_;
    }
    bool is_pure() const {
        return num_stab_ == n_;
    }

    /// Generators ordered by frame pair index.
    std::vector<PauliString> generators() const;
    /// Unstabilized frame pairs: a symplectic basis of the logical operators.
    std::vector<std::pair<PauliString, PauliString>> logical_pairs() const;
    /// Unique representative of the stabilizer group (signed RREF).
    std::vector<PauliString> canonical_generators() const;
    bool same_state(const StabilizerTableau &other) const;

    void apply(const Gate &gate);
    void cnot(size_t control, size_t target);
    void phase(size_t q);
    /// Conjugation by a Pauli: flips signs of generators anticommuting with p.
    void apply_pauli(const PauliString &p);

    MeasurementRecord measure(const PauliString &p, const MeasurePolicy &policy);
    MeasurementRecord measure(size_t q, Axis axis, const MeasurePolicy &policy);
    /// rho -> (rho + p rho p)/2. Returns true if the state changed.
    bool dephase(const PauliString &p);

    /// Is +-p in the stabilizer group? Returns the sign bit of the member.
    bool group_contains(const PauliString &p, bool *sign_out = nullptr) const;

    /// Snapshot text: header "n N_s" then one canonical generator per line.
    std::string to_snapshot() const;
    static StabilizerTableau from_snapshot(std::string_view text);

    /// Column views for rank computations: bits over stabilizer generators
    /// (one bit per frame pair, zero for unstabilized pairs).
    void stab_column(size_t q, bool z_part, std::span<uint64_t> out) const;
    size_t stab_column_words() const {
        return hw_;
    }

    /// Checks frame invariants (symplectic pairing, independent generators).
    void check_invariants() const;

   private:
    size_t row_a(size_t k) const {
        return k;
    }
    size_t row_b(size_t k) const {
        return hw_ * 64 + k;
    }
    uint64_t *xcol(size_t q) {
        return xs_.data() + q * w_;
    }
    uint64_t *zcol(size_t q) {
        return zs_.data() + q * w_;
    }
    const uint64_t *xcol(size_t q) const {
        return xs_.data() + q * w_;
    }
    const uint64_t *zcol(size_t q) const {
        return zs_.data() + q * w_;
    }
    bool bit(const uint64_t *col, size_t r) const {
        return (col[r >> 6] >> (r & 63)) & 1;
    }
    bool is_stab_pair(size_t k) const {
        return (stab_[k >> 6] >> (k & 63)) & 1;
    }
    void set_stab_pair(size_t k, bool v);

    PauliString row_pauli(size_t r) const;
    void write_row(size_t r, const PauliString &p);
    void copy_row(size_t src, size_t dst);
    void anticommuting_rows(const PauliString &p, std::vector<uint64_t> &out) const;
    /// row r <- row r * row pivot for every r in mask (rows must commute with pivot).
    void multiply_rows_by(const std::vector<uint64_t> &mask, size_t pivot);
    /// Sign bit of the ordered product of the rows in mask (b-half only).
    bool product_sign(const std::vector<uint64_t> &mask) const;
    void check_site(size_t q) const;

    size_t n_ = 0;
    size_t hw_ = 0;  // words per half (a-rows or b-rows)
    size_t w_ = 0;   // words per column
    size_t num_stab_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    std::vector<uint64_t> signs_;
    std::vector<uint64_t> stab_;  // hw_ words, bit k set if pair k is stabilized
    mutable std::vector<uint64_t> anti_;
    mutable std::vector<uint64_t> scratch_;
};

/// Block form of the generators relative to a local basis: generators split into
/// pure-diagonal (n_x), pure-conjugate (n_z) and mixed (n_y) blocks, where
/// "diagonal" means the basis axis at each site and "conjugate" the axis
/// paired with it by the per-site relabeling X<-A.
struct CssGauge {
    size_t n_x = 0;
    size_t n_z = 0;
    size_t n_y = 0;
    /// Generators in original Pauli labels, ordered pure-X block, pure-Z block,
    /// mixed block.
    std::vector<PauliString> generators;
};

/// Per-site relabeling of Pauli exponents making axis A play the role of X.
void relabel_to_x(const LocalPauliBasis &basis, size_t q, bool &x, bool &z);
PauliString relabel_to_x(const LocalPauliBasis &basis, const PauliString &p);

CssGauge css_gauge(const StabilizerTableau &state, const LocalPauliBasis &basis);

/// Relative entropy of coherence in the local basis, in bits.
size_t coherence(const StabilizerTableau &state, const LocalPauliBasis &basis);
size_t coherence(const StabilizerTableau &state, Axis uniform_axis);

/// Counts undetermined outcomes of sequential basis measurements on a copy.
size_t coherence_oracle(const StabilizerTableau &state, const LocalPauliBasis &basis, Rng &rng);

size_t subsystem_entropy(const StabilizerTableau &state, std::span<const size_t> region);
size_t subsystem_entropy(const StabilizerTableau &state, size_t begin, size_t end);
/// S of the first x entries of `order`, for x = 0..order.size().
std::vector<size_t> prefix_entropies(const StabilizerTableau &state, std::span<const size_t> order);
/// Largest S(R) over contiguous (periodically wrapped) regions of sites [0, L).
size_t max_contiguous_entropy(const StabilizerTableau &state, size_t L);

/// S(system) - S(system u ancilla).
long coherent_information(
    const StabilizerTableau &state, std::span<const size_t> system, std::span<const size_t> ancilla);

}  // namespace cohlab

#endif
