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

#include "cohlab/circuits.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace cohlab {

const char *boundary_name(Boundary b) {
    return b == Boundary::PERIODIC ? "periodic" : "open";
}

Boundary parse_boundary(std::string_view name) {
    if (name == "periodic") {
        return Boundary::PERIODIC;
    }
    if (name == "open") {
        return Boundary::OPEN;
    }
    throw std::invalid_argument("unknown boundary '" + std::string(name) + "'");
}

const char *init_name(InitKind k) {
    switch (k) {
        case InitKind::PURE_PRODUCT:
            return "pure_product";
        case InitKind::CLASSICAL_REGISTER:
            return "classical_register";
        case InitKind::QUANTUM_REGISTER:
            return "quantum_register";
    }
    return "?";
}

InitKind parse_init(std::string_view name) {
    if (name == "pure_product") {
        return InitKind::PURE_PRODUCT;
    }
    if (name == "classical_register") {
        return InitKind::CLASSICAL_REGISTER;
    }
    if (name == "quantum_register") {
        return InitKind::QUANTUM_REGISTER;
    }
    throw std::invalid_argument("unknown init '" + std::string(name) + "'");
}

void CircuitConfig::validate() const {
    auto prob = [](double p, const char *name) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
        }
    };
    prob(p_u, "p_u");
    prob(p_m, "p_m");
    prob(p_R, "p_R");
    prob(p_e, "p_e");
    prob(p_x, "p_x");
    prob(p_y, "p_y");
    prob(p_z, "p_z");
    if (std::abs(p_x + p_y + p_z - 1.0) > 1e-9) {
        throw std::invalid_argument("p_x + p_y + p_z must equal 1");
    }
    if (L < 2) {
        throw std::invalid_argument("L must be at least 2");
    }
    if (ancillas > L) {
        throw std::invalid_argument("ancillas must not exceed L");
    }
    if (warmup_steps > steps) {
        throw std::invalid_argument("warmup_steps exceeds steps");
    }
    if (init == InitKind::PURE_PRODUCT) {
        if (ancillas != 0) {
            throw std::invalid_argument("pure_product init takes no ancillas");
        }
        size_t total = init_nx + init_ny + init_nz;
        if (total != 0 && total != L) {
            throw std::invalid_argument("init_nx + init_ny + init_nz must equal L");
        }
    }
}

double CircuitConfig::delta_x() const {
    if (p_y >= 1.0) {
        return 0.0;
    }
    return (p_x - p_z) / (1.0 - p_y);
}

void CircuitConfig::set_delta_x(double delta, double py) {
    if (!(delta >= -1.0 && delta <= 1.0) || !(py >= 0.0 && py <= 1.0)) {
        throw std::invalid_argument("delta_x must lie in [-1, 1] and p_y in [0, 1]");
    }
    p_y = py;
    p_x = (1.0 - py) * (1.0 + delta) / 2.0;
    p_z = (1.0 - py) * (1.0 - delta) / 2.0;
}

std::string product_layout(size_t L, size_t nx, size_t ny, size_t nz) {
    if (nx + ny + nz != L) {
        throw std::invalid_argument("product_layout: counts must sum to L");
    }
    std::string s(L, 'X');
    for (size_t j = 0; j < L; j++) {
        if ((j + 1) * nz / L > j * nz / L) {
            s[j] = 'Z';
        }
    }
    size_t free = L - nz;
    size_t seen = 0;
    for (size_t j = 0; j < L && free > 0; j++) {
        if (s[j] == 'Z') {
            continue;
        }
        if ((seen + 1) * ny / free > seen * ny / free) {
            s[j] = 'Y';
        }
        seen++;
    }
    return s;
}

StabilizerTableau initial_state(const CircuitConfig &config) {
    switch (config.init) {
        case InitKind::PURE_PRODUCT: {
            size_t total = config.init_nx + config.init_ny + config.init_nz;
            if (total == 0) {
                return StabilizerTableau::product_state(std::string(config.L, 'X'));
            }
            return StabilizerTableau::product_state(
                product_layout(config.L, config.init_nx, config.init_ny, config.init_nz));
        }
        case InitKind::CLASSICAL_REGISTER:
            return init_classical_register(config.L, config.ancillas);
        case InitKind::QUANTUM_REGISTER:
            return init_quantum_register(config.L, config.ancillas);
    }
    throw std::logic_error("initial_state: bad init");
}

StepEvents sample_step(const CircuitConfig &config, Rng &events, bool warmup) {
    StepEvents ev;
    size_t L = config.L;
    if (uniform01(events) < config.p_u) {
        if (config.boundary == Boundary::PERIODIC) {
            size_t i = uniform_below(events, L);
            size_t j = coin(events) ? (i + 1) % L : (i + L - 1) % L;
            ev.cnot = Gate::cnot(i, j);
        } else {
            size_t b = uniform_below(events, L - 1);
            ev.cnot = coin(events) ? Gate::cnot(b, b + 1) : Gate::cnot(b + 1, b);
        }
    }
    if (warmup) {
        return ev;
    }
    if (uniform01(events) < config.p_m) {
        size_t site = uniform_below(events, L);
        double r = uniform01(events);
        Axis axis = r < config.p_x ? Axis::X : r < config.p_x + config.p_y ? Axis::Y : Axis::Z;
        ev.measurement = std::make_pair(site, axis);
    }
    if (uniform01(events) < config.p_R) {
        ev.phase = uniform_below(events, L);
    }
    if (uniform01(events) < config.p_e) {
        ev.eraser = uniform_below(events, L);
    }
    return ev;
}

StepLog step(StabilizerTableau &state, const CircuitConfig &config, Rng &events, Rng &outcomes, bool warmup) {
    StepLog log;
    log.events = sample_step(config, events, warmup);
    const StepEvents &ev = log.events;
    if (ev.cnot) {
        state.apply(*ev.cnot);
    }
    if (ev.measurement) {
        log.measurement = state.measure(ev.measurement->first, ev.measurement->second, MeasurePolicy::random(outcomes));
    }
    if (ev.phase) {
        state.phase(*ev.phase);
    }
    if (ev.eraser) {
        log.eraser = apply_eraser(state, *ev.eraser, config.eraser, outcomes);
    }
    return log;
}

void apply_events(AffineMapF2 &map, const StepEvents &ev) {
    if (ev.measurement || ev.phase) {
        throw std::invalid_argument("classical shadow: measurements and phase gates are not coherence-free");
    }
    if (ev.cnot) {
        // X_c -> X_c X_t: the control's X bit picks up the target's.
        map.then_xor(ev.cnot->b, ev.cnot->a);
    }
    if (ev.eraser) {
        map.then_erase(*ev.eraser);
    }
}

const char *quantifier_name(Quantifier q) {
    switch (q) {
        case Quantifier::ENTROPY_PROFILE:
            return "S";
        case Quantifier::CX:
            return "C_x";
        case Quantifier::CZ:
            return "C_z";
        case Quantifier::I2:
            return "I_2";
        case Quantifier::I3:
            return "I_3";
        case Quantifier::COHERENT_INFO:
            return "coherent_info";
        case Quantifier::IX:
            return "I_x";
        case Quantifier::SYSTEM_ENTROPY:
            return "S_system";
        case Quantifier::BOUND_SLACK:
            return "bound_slack";
    }
    return "?";
}

Quantifier parse_quantifier(std::string_view name) {
    for (Quantifier q : {Quantifier::ENTROPY_PROFILE, Quantifier::CX, Quantifier::CZ, Quantifier::I2, Quantifier::I3,
                         Quantifier::COHERENT_INFO, Quantifier::IX, Quantifier::SYSTEM_ENTROPY,
                         Quantifier::BOUND_SLACK}) {
        if (name == quantifier_name(q)) {
            return q;
        }
    }
    throw std::invalid_argument("unknown quantifier '" + std::string(name) + "'");
}

void ProbeSchedule::validate(const CircuitConfig &config) const {
    double end = config.time();
    for (size_t k = 0; k < times.size(); k++) {
        if (times[k] < 0 || times[k] > end + 1e-12) {
            throw std::invalid_argument("probe time " + std::to_string(times[k]) + " outside run duration " +
                                        std::to_string(end));
        }
        if (k > 0 && times[k] < times[k - 1]) {
            throw std::invalid_argument("probe times must be sorted");
        }
    }
}

std::vector<double> RunResult::series(const std::string &probe) const {
    std::vector<double> out;
    for (const auto &r : records) {
        if (r.probe == probe) {
            out.push_back(r.value);
        }
    }
    return out;
}

uint64_t event_seed(const CircuitConfig &config, uint64_t realization) {
    return child_seed(config.seed, realization, 1);
}

uint64_t outcome_seed(const CircuitConfig &config, uint64_t realization) {
    return child_seed(config.seed, realization, 2);
}

namespace {

size_t classical_input_dim(const CircuitConfig &config) {
    return config.init == InitKind::PURE_PRODUCT ? config.L : config.ancillas;
}

void probe(const StabilizerTableau &state,
           const CircuitConfig &config,
           const AffineMapF2 *shadow,
           Quantifier q,
           double t,
           std::vector<ProbeRecord> &out) {
    size_t L = config.L;
    auto range = [](size_t a, size_t b) {
        std::vector<size_t> v(b - a);
        std::iota(v.begin(), v.end(), a);
        return v;
    };
    auto S = [&](const std::vector<size_t> &region) { return static_cast<double>(subsystem_entropy(state, region)); };
    auto region = [&](size_t n) { return range((n - 1) * L / 4, n * L / 4); };
    auto join = [](std::vector<size_t> a, const std::vector<size_t> &b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    switch (q) {
        case Quantifier::ENTROPY_PROFILE: {
            auto order = range(0, L);
            auto prof = prefix_entropies(state, order);
            for (size_t x = 0; x <= L; x++) {
                out.push_back({"S[" + std::to_string(x) + "]", t, static_cast<double>(prof[x])});
            }
            return;
        }
        case Quantifier::CX:
            out.push_back({"C_x", t, static_cast<double>(coherence(state, Axis::X))});
            return;
        case Quantifier::CZ:
            out.push_back({"C_z", t, static_cast<double>(coherence(state, Axis::Z))});
            return;
        case Quantifier::I2: {
            auto r1 = region(1), r3 = region(3);
            out.push_back({"I_2", t, S(r1) + S(r3) - S(join(r1, r3))});
            return;
        }
        case Quantifier::I3: {
            auto r1 = region(1), r2 = region(2), r3 = region(3);
            out.push_back({"I_3", t, 4 * S(r1) - 2 * S(join(r1, r2)) - S(join(r1, r3))});
            return;
        }
        case Quantifier::COHERENT_INFO: {
            auto sys = range(0, L);
            auto anc = range(L, L + config.ancillas);
            out.push_back({"coherent_info", t, static_cast<double>(coherent_information(state, sys, anc))});
            return;
        }
        case Quantifier::IX:
            out.push_back({"I_x", t, static_cast<double>(image_entropy(*shadow, classical_input_dim(config)))});
            return;
        case Quantifier::SYSTEM_ENTROPY:
            out.push_back({"S_system", t, S(range(0, L))});
            return;
        case Quantifier::BOUND_SLACK: {
            if (!state.is_pure()) {
                throw std::invalid_argument("bound_slack requires a pure joint state");
            }
            double c = static_cast<double>(std::min(coherence(state, Axis::X), coherence(state, Axis::Z)));
            out.push_back({"bound_slack", t, c - static_cast<double>(max_contiguous_entropy(state, L))});
            return;
        }
    }
}

}  // namespace

RunResult run(const CircuitConfig &config, const ProbeSchedule &schedule, uint64_t realization) {
    config.validate();
    schedule.validate(config);
    bool want_shadow =
        std::find(schedule.quantifiers.begin(), schedule.quantifiers.end(), Quantifier::IX) != schedule.quantifiers.end();
    if (want_shadow && (config.p_m > 0 || config.p_R > 0)) {
        throw std::invalid_argument("I_x probe needs a coherence-free config (p_m = p_R = 0)");
    }
    if (want_shadow && config.p_e > 0 && config.eraser == EraserKind::COHERENCE_DESTROYING) {
        // Measuring X_i conditions the bit string instead of erasing it.
        throw std::invalid_argument("I_x probe is undefined with the destroying eraser");
    }

    RunResult result;
    result.config = config;
    result.realization = realization;
    StabilizerTableau state = initial_state(config);
    AffineMapF2 shadow = AffineMapF2::identity(want_shadow ? config.L : 0);
    Rng events(event_seed(config, realization));
    Rng outcomes(outcome_seed(config, realization));

    size_t next_probe = 0;
    auto do_probes = [&](uint64_t n) {
        while (next_probe < schedule.times.size() &&
               static_cast<uint64_t>(std::llround(schedule.times[next_probe] * config.L)) <= n) {
            for (Quantifier q : schedule.quantifiers) {
                probe(state, config, want_shadow ? &shadow : nullptr, q, schedule.times[next_probe], result.records);
            }
            next_probe++;
        }
    };
    do_probes(0);
    for (uint64_t n = 0; n < config.steps; n++) {
        StepLog log = step(state, config, events, outcomes, n < config.warmup_steps);
        if (want_shadow) {
            apply_events(shadow, log.events);
        }
        do_probes(n + 1);
    }
    return result;
}

const EnsembleRecord &EnsembleResult::at(const std::string &probe, double t) const {
    for (const auto &r : records) {
        if (r.probe == probe && std::abs(r.t - t) < 1e-9) {
            return r;
        }
    }
    throw std::out_of_range("no ensemble record for " + probe + " at t=" + std::to_string(t));
}

std::vector<double> EnsembleResult::means(const std::string &probe) const {
    std::vector<double> out;
    for (const auto &r : records) {
        if (r.probe == probe) {
            out.push_back(r.mean);
        }
    }
    return out;
}

size_t default_workers() {
    if (const char *env = std::getenv("COHLAB_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) {
            return static_cast<size_t>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

EnsembleResult run_ensemble(
    const CircuitConfig &config, const ProbeSchedule &schedule, size_t realizations, size_t workers) {
    return run_ensemble(config, schedule, realizations, workers, nullptr);
}

EnsembleResult run_ensemble(
    const CircuitConfig &config,
    const ProbeSchedule &schedule,
    size_t realizations,
    size_t workers,
    std::vector<RunResult> *raw) {
    if (realizations < 1) {
        throw std::invalid_argument("run_ensemble: need at least one realization");
    }
    config.validate();
    schedule.validate(config);
    if (workers == 0) {
        workers = default_workers();
    }
    workers = std::min(workers, realizations);

    std::vector<RunResult> results(realizations);
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        while (true) {
            size_t k = next.fetch_add(1);
            if (k >= realizations) {
                return;
            }
            try {
                results[k] = run(config, schedule, k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = realizations;
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t w = 0; w < workers; w++) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }

    EnsembleResult out;
    out.config = config;
    out.realizations = realizations;
    const auto &first = results[0].records;
    for (size_t i = 0; i < first.size(); i++) {
        double mean = 0, m2 = 0;
        for (size_t k = 0; k < realizations; k++) {
            double v = results[k].records[i].value;
            double d = v - mean;
            mean += d / static_cast<double>(k + 1);
            m2 += d * (v - mean);
        }
        double se = realizations > 1 ? std::sqrt(m2 / static_cast<double>(realizations - 1) /
                                                 static_cast<double>(realizations))
                                     : 0.0;
        out.records.push_back({first[i].probe, first[i].t, mean, se, realizations});
    }
    if (raw) {
        *raw = std::move(results);
    }
    return out;
}

AffineMapF2 classical_shadow_run(const CircuitConfig &config, uint64_t realization) {
    config.validate();
    if (config.p_m > 0 || config.p_R > 0) {
        throw std::invalid_argument("classical_shadow_run: config has measurements or phase gates");
    }
    if (config.p_e > 0 && config.eraser == EraserKind::COHERENCE_DESTROYING) {
        throw std::invalid_argument("classical_shadow_run: the destroying eraser is not an affine map");
    }
    AffineMapF2 map = AffineMapF2::identity(config.L);
    Rng events(event_seed(config, realization));
    for (uint64_t n = 0; n < config.steps; n++) {
        apply_events(map, sample_step(config, events, n < config.warmup_steps));
    }
    return map;
}

}  // namespace cohlab
