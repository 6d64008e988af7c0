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

#ifndef COHLAB_MARKOV_H
#define COHLAB_MARKOV_H

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cohlab/rng.h"

namespace cohlab {

/// Bits known about the X and Z bases of an L-qubit state.
struct WalkerState {
    long n_x = 0;
    long n_z = 0;
    long L = 0;

    /// Throws std::logic_error unless 0 <= n_x, 0 <= n_z, n_x + n_z <= L.
    void check() const;
    bool operator==(const WalkerState &other) const = default;
};

/// Measurement axis probabilities.
struct RatePoint {
    double p_x = 1.0;
    double p_y = 0.0;
    double p_z = 0.0;

    void validate() const;
    static RatePoint from_delta(double delta_x, double p_y);
};

/// Single-site measurements on a product state (no gates): N_y = L - N_x - N_z
/// sites are Y-polarized.
WalkerState step_measurement_only(const WalkerState &w, const RatePoint &rates, Rng &rng);

/// Rare measurements on a scrambled state: bulk moves (+1,-1) w.p. p_x,
/// (-1,+1) w.p. p_z, (-1,-1) w.p. p_y, with edge rules on N_z = 0 / N_x = 0
/// and clamping at the triangle's boundary.
WalkerState step_weak_limit(const WalkerState &w, const RatePoint &rates, Rng &rng);

enum class RateModel : uint8_t { MEASUREMENT_ONLY, WEAK_LIMIT };

struct RateTrajectory {
    std::vector<double> n_x;  // index m = measurement count
    std::vector<double> n_z;
};

/// Explicit Euler with one measurement per step.
RateTrajectory integrate_rate_eq(
    RateModel model, const RatePoint &rates, double n_x0, double n_z0, double L, size_t steps);

struct XiSteady {
    double n_x;
    double n_z;
    double residual;
    size_t iterations;
};

struct NonConvergence : std::runtime_error {
    double residual;
    NonConvergence(const std::string &what, double r) : std::runtime_error(what), residual(r) {
    }
};

/// Steady state of the finite-xi rate equation and its x<->z mirror on the
/// triangle n_x, n_z >= 0, n_x + n_z <= L, by projected damped iteration from
/// (n_x0, n_z0). Defaults start from the pure-state line at (L/2, L/2).
XiSteady solve_xi_steady(const RatePoint &rates, double xi, double L, double n_x0 = -1, double n_z0 = -1,
                         double tolerance = 1e-10, size_t max_iterations = 10000);

/// Rate of change (per measurement) of (n_x, n_z) in the finite-xi model.
void xi_rates(const RatePoint &rates, double xi, double L, double n_x, double n_z, double &d_x, double &d_z);

struct PhaseBalance {
    double critical_p_R;
    /// p_R above the line: phase gates win and coherence K is sustained.
    bool above;
};

/// Compares p_R with p_x [1 - (1 - K/L)^xi].
PhaseBalance phase_gate_rate_balance(double p_R, double p_x, double xi, double L, double K);

}  // namespace cohlab

#endif
