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

#include "cohlab/markov.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace cohlab {

void WalkerState::check() const {
    if (n_x < 0 || n_z < 0 || n_x + n_z > L) {
        throw std::logic_error("walker left the triangle: (" + std::to_string(n_x) + ", " + std::to_string(n_z) +
                               ") with L=" + std::to_string(L));
    }
}

void RatePoint::validate() const {
    if (!(p_x >= 0 && p_y >= 0 && p_z >= 0) || std::abs(p_x + p_y + p_z - 1.0) > 1e-9) {
        throw std::invalid_argument("rates must be non-negative and sum to 1");
    }
}

RatePoint RatePoint::from_delta(double delta_x, double p_y) {
    RatePoint r;
    r.p_y = p_y;
    r.p_x = (1.0 - p_y) * (1.0 + delta_x) / 2.0;
    r.p_z = (1.0 - p_y) * (1.0 - delta_x) / 2.0;
    r.validate();
    return r;
}

namespace {

enum class Pick { X, Y, Z };

Pick pick_axis(const RatePoint &rates, Rng &rng) {
    double r = uniform01(rng);
    if (r < rates.p_x) {
        return Pick::X;
    }
    return r < rates.p_x + rates.p_y ? Pick::Y : Pick::Z;
}

}  // namespace

WalkerState step_measurement_only(const WalkerState &w, const RatePoint &rates, Rng &rng) {
    w.check();
    WalkerState out = w;
    Pick axis = pick_axis(rates, rng);
    // Polarization of the measured site: X, Z, or Y (the rest).
    long site = static_cast<long>(uniform_below(rng, static_cast<uint64_t>(w.L)));
    Pick pol = site < w.n_x ? Pick::X : site < w.n_x + w.n_z ? Pick::Z : Pick::Y;
    if (axis == pol) {
        return out;
    }
    switch (axis) {
        case Pick::X:
            out.n_x++;
            if (pol == Pick::Z) {
                out.n_z--;
            }
            break;
        case Pick::Z:
            out.n_z++;
            if (pol == Pick::X) {
                out.n_x--;
            }
            break;
        case Pick::Y:
            if (pol == Pick::X) {
                out.n_x--;
            } else {
                out.n_z--;
            }
            break;
    }
    out.check();
    return out;
}

WalkerState step_weak_limit(const WalkerState &w, const RatePoint &rates, Rng &rng) {
    w.check();
    long dx = 0, dz = 0;
    switch (pick_axis(rates, rng)) {
        case Pick::X:
            dx = 1;
            dz = w.n_x == 0 || w.n_z > 0 ? -1 : 0;
            break;
        case Pick::Z:
            dz = 1;
            dx = w.n_z == 0 || w.n_x > 0 ? -1 : 0;
            break;
        case Pick::Y:
            dx = -1;
            dz = -1;
            if (w.n_z == 0 && w.n_x > 0) {
                dz = 0;
            } else if (w.n_x == 0 && w.n_z > 0) {
                dx = 0;
            }
            break;
    }
    WalkerState out = w;
    out.n_x = std::clamp(w.n_x + dx, 0L, w.L);
    out.n_z = std::clamp(w.n_z + dz, 0L, w.L);
    if (out.n_x + out.n_z > w.L) {
        // Only reachable by an X (Z) move on the N_z = 0 (N_x = 0) edge at the corner.
        out = w;
    }
    out.check();
    return out;
}

RateTrajectory integrate_rate_eq(
    RateModel model, const RatePoint &rates, double n_x0, double n_z0, double L, size_t steps) {
    rates.validate();
    RateTrajectory tr;
    double nx = n_x0, nz = n_z0;
    tr.n_x.push_back(nx);
    tr.n_z.push_back(nz);
    for (size_t m = 0; m < steps; m++) {
        double dx, dz;
        if (model == RateModel::MEASUREMENT_ONLY) {
            dx = rates.p_x * (L - nx) / L - (rates.p_z + rates.p_y) * nx / L;
            dz = rates.p_z * (L - nz) / L - (rates.p_x + rates.p_y) * nz / L;
        } else {
            dx = rates.p_x - rates.p_z - rates.p_y;
            dz = rates.p_z - rates.p_x - rates.p_y;
        }
        nx += dx;
        nz += dz;
        if (model == RateModel::WEAK_LIMIT) {
            nx = std::clamp(nx, 0.0, L);
            nz = std::clamp(nz, 0.0, L - nx);
        }
        tr.n_x.push_back(nx);
        tr.n_z.push_back(nz);
    }
    return tr;
}

void xi_rates(const RatePoint &rates, double xi, double L, double n_x, double n_z, double &d_x, double &d_z) {
    double ux = n_x / L, uz = n_z / L;
    double a = std::clamp(1.0 - ux + uz, 0.0, 1.0);
    double b = std::clamp(1.0 - uz + ux, 0.0, 1.0);
    d_x = rates.p_x * (1 - std::pow(ux, xi)) - rates.p_z * (1 - std::pow(uz, xi)) - rates.p_y * (1 - std::pow(a, xi));
    d_z = rates.p_z * (1 - std::pow(uz, xi)) - rates.p_x * (1 - std::pow(ux, xi)) - rates.p_y * (1 - std::pow(b, xi));
}

namespace {

/// Euclidean projection onto {x >= 0, z >= 0, x + z <= 1}.
void project_triangle(double &x, double &z) {
    if (x >= 0 && z >= 0 && x + z <= 1) {
        return;
    }
    double best_x = 0, best_z = 0, best_d = INFINITY;
    auto consider = [&](double px, double pz) {
        double d = (px - x) * (px - x) + (pz - z) * (pz - z);
        if (d < best_d) {
            best_d = d;
            best_x = px;
            best_z = pz;
        }
    };
    consider(std::clamp(x, 0.0, 1.0), 0.0);
    consider(0.0, std::clamp(z, 0.0, 1.0));
    double t = std::clamp((x - z + 1) / 2, 0.0, 1.0);
    consider(t, 1 - t);
    x = best_x;
    z = best_z;
}

}  // namespace

XiSteady solve_xi_steady(const RatePoint &rates, double xi, double L, double n_x0, double n_z0, double tolerance,
                         size_t max_iterations) {
    rates.validate();
    if (!(xi >= 1)) {
        throw std::invalid_argument("solve_xi_steady: xi must be >= 1");
    }
    if (!(L > 0)) {
        throw std::invalid_argument("solve_xi_steady: L must be positive");
    }
    double ux = n_x0 < 0 ? 0.5 : n_x0 / L;
    double uz = n_z0 < 0 ? 0.5 : n_z0 / L;
    project_triangle(ux, uz);
    // Pseudo-time step: damping 0.5 scaled by 1/xi, since the Jacobian of the
    // rate equation grows like xi.
    double alpha = 0.5 / xi;
    double residual = INFINITY;
    for (size_t it = 1; it <= max_iterations; it++) {
        double dx, dz;
        xi_rates(rates, xi, 1.0, ux, uz, dx, dz);
        double nx = ux + alpha * dx, nz = uz + alpha * dz;
        project_triangle(nx, nz);
        residual = std::max(std::abs(nx - ux), std::abs(nz - uz)) / alpha;
        ux = nx;
        uz = nz;
        if (residual < tolerance) {
            return {ux * L, uz * L, residual, it};
        }
    }
    throw NonConvergence("solve_xi_steady: no convergence after " + std::to_string(max_iterations) +
                             " iterations, residual " + std::to_string(residual),
                         residual);
}

PhaseBalance phase_gate_rate_balance(double p_R, double p_x, double xi, double L, double K) {
    if (!(K >= 0 && K <= L)) {
        throw std::invalid_argument("phase_gate_rate_balance: need 0 <= K <= L");
    }
    double crit = p_x * (1 - std::pow(1 - K / L, xi));
    return {crit, p_R > crit};
}

}  // namespace cohlab
