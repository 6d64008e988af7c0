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

#ifndef COHLAB_CIRCUITS_H
#define COHLAB_CIRCUITS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cohlab/channels.h"
#include "cohlab/f2linalg.h"
#include "cohlab/stabilizer.h"

namespace cohlab {

enum class Boundary : uint8_t { PERIODIC, OPEN };
enum class InitKind : uint8_t { PURE_PRODUCT, CLASSICAL_REGISTER, QUANTUM_REGISTER };

const char *boundary_name(Boundary b);
Boundary parse_boundary(std::string_view name);
const char *init_name(InitKind k);
InitKind parse_init(std::string_view name);

/// Random hybrid circuit on L system qubits (plus untouched ancillas).
/// Time is measured in units of L steps.
struct CircuitConfig {
    size_t L = 64;
    size_t ancillas = 0;
    double p_u = 1.0;  // CNOT
    double p_m = 0.0;  // single-site measurement
    double p_R = 0.0;  // phase gate
    double p_e = 0.0;  // bit eraser
    double p_x = 1.0;  // measurement axis distribution
    double p_y = 0.0;
    double p_z = 0.0;
    uint64_t steps = 0;
    /// The first warmup_steps steps sample only CNOTs.
    uint64_t warmup_steps = 0;
    Boundary boundary = Boundary::PERIODIC;
    uint64_t seed = 0;
    EraserKind eraser = EraserKind::COHERENCE_MAINTAINING;
    InitKind init = InitKind::PURE_PRODUCT;
    /// Site polarizations for PURE_PRODUCT; must sum to L. Defaults to all X.
    size_t init_nx = 0;
    size_t init_ny = 0;
    size_t init_nz = 0;

    /// Throws std::invalid_argument describing the first problem found.
    void validate() const;
    double delta_x() const;
    /// p_x, p_z from (delta_x, p_y) with delta_x = (p_x - p_z) / (1 - p_y).
    void set_delta_x(double delta_x, double p_y);
    double time() const {
        return static_cast<double>(steps) / static_cast<double>(L);
    }
    bool operator==(const CircuitConfig &other) const = default;
};

/// Site polarizations for a pure product state: nz Z sites and then ny Y
/// sites spread evenly, X elsewhere.
std::string product_layout(size_t L, size_t nx, size_t ny, size_t nz);
StabilizerTableau initial_state(const CircuitConfig &config);

struct StepEvents {
    std::optional<Gate> cnot;
    std::optional<std::pair<size_t, Axis>> measurement;
    std::optional<size_t> phase;
    std::optional<size_t> eraser;
};

/// Draws one step's events (CNOT, measurement, phase, eraser) from the
/// event stream. Never consumes randomness for outcomes.
StepEvents sample_step(const CircuitConfig &config, Rng &events, bool warmup);

struct StepLog {
    StepEvents events;
    std::optional<MeasurementRecord> measurement;
    std::optional<EraserRecord> eraser;
};

/// Applies one step; measurement outcomes come from `outcomes`.
StepLog step(StabilizerTableau &state, const CircuitConfig &config, Rng &events, Rng &outcomes, bool warmup = false);

enum class Quantifier : uint8_t {
    ENTROPY_PROFILE,  // S of [0, x) for x = 0..L, as probes "S[x]"
    CX,
    CZ,
    I2,
    I3,
    COHERENT_INFO,
    IX,
    SYSTEM_ENTROPY,
    BOUND_SLACK,  // min(C_x, C_z) - max contiguous S (pure states only)
};

const char *quantifier_name(Quantifier q);
Quantifier parse_quantifier(std::string_view name);

struct ProbeSchedule {
    std::vector<double> times;
    std::vector<Quantifier> quantifiers;

    /// Sorted times 0 <= t <= steps/L.
    void validate(const CircuitConfig &config) const;
};

struct ProbeRecord {
    std::string probe;
    double t;
    double value;
};

struct RunResult {
    CircuitConfig config;
    uint64_t realization = 0;
    std::vector<ProbeRecord> records;

    std::vector<double> series(const std::string &probe) const;
};

/// One realization; index selects independent event/outcome streams.
RunResult run(const CircuitConfig &config, const ProbeSchedule &schedule, uint64_t realization = 0);

struct EnsembleRecord {
    std::string probe;
    double t;
    double mean;
    double stderr_;
    size_t n;
};

struct EnsembleResult {
    CircuitConfig config;
    size_t realizations = 0;
    std::vector<EnsembleRecord> records;

    const EnsembleRecord &at(const std::string &probe, double t) const;
    std::vector<double> means(const std::string &probe) const;
};

/// Worker count from COHLAB_WORKERS, else hardware concurrency.
size_t default_workers();

/// Realizations 0..R-1 fanned out to a thread pool, aggregated in index order.
EnsembleResult run_ensemble(
    const CircuitConfig &config, const ProbeSchedule &schedule, size_t realizations, size_t workers = 0);
/// Same, also returning every realization's raw result.
EnsembleResult run_ensemble(
    const CircuitConfig &config,
    const ProbeSchedule &schedule,
    size_t realizations,
    size_t workers,
    std::vector<RunResult> *raw);

/// Replays a realization's event stream (CNOTs and erasers only) as the
/// affine map on X-basis bit strings.
AffineMapF2 classical_shadow_run(const CircuitConfig &config, uint64_t realization = 0);
/// Applies one step's events to an affine map; throws on coherent events.
void apply_events(AffineMapF2 &map, const StepEvents &events);

/// Seeds for realization streams.
uint64_t event_seed(const CircuitConfig &config, uint64_t realization);
uint64_t outcome_seed(const CircuitConfig &config, uint64_t realization);

}  // namespace cohlab

#endif
