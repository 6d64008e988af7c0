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

#ifndef COHLAB_CODES_H
#define COHLAB_CODES_H

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohlab/f2linalg.h"
#include "cohlab/stabilizer.h"

namespace cohlab {

/// [[n, k]] stabilizer code: n - k checks and k logical pairs (X~_j, Z~_j).
struct CodeSpec {
    std::string name;
    size_t n = 0;
    size_t k = 0;
    std::vector<PauliString> checks;
    std::vector<std::pair<PauliString, PauliString>> logicals;

    /// Checks commute and are independent; logicals commute with the checks
    /// and form symplectic pairs. Throws std::invalid_argument.
    void validate() const;
};

CodeSpec repetition_code(size_t L);
CodeSpec steane_code();
CodeSpec shor_code();
CodeSpec five_qubit_code();
/// X-type checks from rows of hx, Z-type checks from rows of hz (dependent
/// rows dropped); logicals completed by symplectic Gram-Schmidt.
CodeSpec css_code(const BitMatrix &hx, const BitMatrix &hz);
/// "repetition" (with L), "steane", "shor", "five_qubit".
CodeSpec build_named_code(std::string_view name, size_t param = 0);

struct CodeParseError : std::runtime_error {
    size_t line;
    CodeParseError(const std::string &what, size_t l)
        : std::runtime_error("line " + std::to_string(l) + ": " + what), line(l) {
    }
};

/// Code file: header "n k", n-k check lines, then k lines "X~ Z~".
/// CSS form: a line "css", rows of hx, a line "--", rows of hz.
/// '#' starts a comment.
CodeSpec parse_code(std::string_view text);
std::string format_code(const CodeSpec &code);

struct BudgetExceeded : std::runtime_error {
    /// All weights up to this were searched without finding a logical error.
    size_t searched_weight;
    BudgetExceeded(const std::string &what, size_t w) : std::runtime_error(what), searched_weight(w) {
    }
};

/// Minimum weight of a Pauli in C(S) \ S, by increasing-weight enumeration.
size_t brute_force_distance(const CodeSpec &code, uint64_t max_candidates = 200000000);
/// Same, restricted to errors built from the basis operators A_i only;
/// nullopt if no such error is a logical operator.
std::optional<size_t> dephasing_distance(const CodeSpec &code, const LocalPauliBasis &basis, uint64_t max_candidates = 200000000);

/// Stabilizer states of the code space: checks plus a maximal commuting
/// signed subgroup of the logical Paulis.
std::vector<StabilizerTableau> enumerate_code_states(const CodeSpec &code, bool all_signs = true);

struct CodeStateMax {
    StabilizerTableau state;
    size_t coherence;
    size_t states_checked;
};
CodeStateMax max_coherent_code_state(const CodeSpec &code, const LocalPauliBasis &basis);

/// Best bound from two-dimensional sub-codes: the minimum, over sub-codes
/// spanned by two stabilizer basis states, of the largest coherence of a
/// stabilizer state in the sub-code.
size_t tight_bound(const CodeSpec &code, const LocalPauliBasis &basis);

struct BoundRow {
    LocalPauliBasis basis;
    size_t distance;
    /// Smallest logical error made of basis operators only, if any.
    std::optional<size_t> dephasing_distance;
    size_t c_pd;
    size_t tight;
    bool ok() const {
        return distance <= tight && tight <= c_pd;
    }
};

struct BoundReport {
    std::string code;
    std::vector<BoundRow> rows;
    bool ok() const;
    std::string str() const;
};

/// Checks d <= tight_bound <= C_PD in every basis given.
BoundReport verify_coherence_bound(const CodeSpec &code, const std::vector<LocalPauliBasis> &bases);

/// Uniform X, Y, Z bases plus `random_count` bases drawn uniformly per site.
std::vector<LocalPauliBasis> standard_bases(size_t n, size_t random_count, Rng &rng);

/// Single-site basis measurements (sites; axis from the basis) of length m
/// that lower the entropy of a mixed state by min(m - C, S): first undo the
/// coherence C at the pivot sites of the conjugate block, then measure sites
/// with undetermined outcomes. Requires m > C and S > 0.
std::vector<size_t> attack_sequence(const StabilizerTableau &state, const LocalPauliBasis &basis, size_t m);

/// Sites whose basis measurement is undetermined when measuring in order;
/// measuring just these turns a pure state into a basis product state.
std::vector<size_t> reduce_to_product(const StabilizerTableau &state, const LocalPauliBasis &basis);

/// Random CSS code on n qubits with hx of rank rx and k in [k_min, k_max].
CodeSpec random_css_code(size_t n, size_t rx, size_t k_min, size_t k_max, Rng &rng);

}  // namespace cohlab

#endif
