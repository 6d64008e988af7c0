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


#ifndef COHLAB_DRIVER_H
#define COHLAB_DRIVER_H

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cohlab/circuits.h"
#include "json.hpp"

namespace cohlab {

/// Insertion-ordered JSON, so echoed configs are byte-stable.
using Json = nlohmann::ordered_json;

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Circuit config from a JSON object. Keys mirror CircuitConfig fields; also
/// accepted are the derived keys delta_x (with p_y; sets p_x, p_z),
/// r_d with attack_rate (default 0.05; sets p_m = attack_rate r_d and
/// p_e = attack_rate (1 - r_d)), t and warmup_t (times in units of L steps),
/// and init_z_fraction (pure product start with that share of Z sites).
/// Unknown keys and conflicting keys are errors.
CircuitConfig config_from_json(const Json &j);
/// Primary fields only; config_from_json(config_to_json(c)) == c.
Json config_to_json(const CircuitConfig &c);

/// Overlays `patch` on `base`. A derived key in `patch` removes the keys it
/// determines from `base` (e.g. delta_x removes p_x and p_z).
Json overlay_config(Json base, const Json &patch);

/// Parses "key=value" with value as JSON, falling back to a string.
std::pair<std::string, Json> parse_assignment(const std::string &text);

struct SweepSpec {
    Json base = Json::object();
    /// Axes of the Cartesian grid, first axis slowest.
    std::vector<std::pair<std::string, std::vector<Json>>> grid;
    size_t realizations = 1;
    std::vector<Quantifier> quantifiers;
    /// Probe times in units of L steps; empty means the final time only.
    std::vector<double> times;
    std::string format = "csv";  // csv | jsonl

    static SweepSpec from_json(const Json &j);
    Json to_json() const;

    size_t num_points() const;
    /// Grid coordinates of point i as {key: value}.
    Json coords(size_t i) const;
    /// Validated config of point i; errors name the grid coordinates.
    CircuitConfig point_config(size_t i) const;
    ProbeSchedule schedule(const CircuitConfig &config) const;
};

struct SweepPoint {
    size_t index;
    Json coords;
    EnsembleResult result;
};

using Progress = std::function<void(size_t done, size_t total)>;

/// Validates every point first, then runs them in order.
std::vector<SweepPoint> run_sweep(const SweepSpec &spec, size_t workers = 0, const Progress &progress = {});

/// CSV: "# spec: <echo>" line, header, one row per (point, probe, t).
/// JSONL: {"spec": echo} line, then one object per (point, probe, t).
void write_sweep(std::ostream &out, const SweepSpec &spec, const std::vector<SweepPoint> &points);

/// Fixed-precision number formatting shared by all writers.
std::string format_number(double v);

}  // namespace cohlab

#endif
