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


#include "cohlab/driver.h"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

namespace cohlab {

namespace {

const std::set<std::string> kPrimaryKeys = {
    "L",     "ancillas", "p_u",    "p_m",  "p_R",  "p_e",     "p_x",     "p_y",     "p_z",
    "steps", "warmup_steps", "boundary", "seed", "eraser", "init", "init_nx", "init_ny", "init_nz",
};
const std::set<std::string> kDerivedKeys = {"delta_x", "r_d", "attack_rate", "t", "warmup_t", "init_z_fraction"};

// Keys made redundant by each key, both ways round.
const std::vector<std::pair<std::string, std::vector<std::string>>> kShadows = {
    {"delta_x", {"p_x", "p_z"}}, {"p_x", {"delta_x"}},   {"p_z", {"delta_x"}},
    {"r_d", {"p_m", "p_e"}},     {"p_m", {"r_d", "attack_rate"}}, {"p_e", {"r_d", "attack_rate"}},
    {"t", {"steps"}},            {"steps", {"t"}},
    {"warmup_t", {"warmup_steps"}}, {"warmup_steps", {"warmup_t"}},
    {"init_z_fraction", {"init_nx", "init_ny", "init_nz"}},
    {"init_nx", {"init_z_fraction"}}, {"init_ny", {"init_z_fraction"}}, {"init_nz", {"init_z_fraction"}},
};

double get_number(const Json &j, const std::string &key) {
    const Json &v = j.at(key);
    if (!v.is_number()) {
        throw ConfigError("'" + key + "' must be a number");
    }
    return v.get<double>();
}

uint64_t get_count(const Json &j, const std::string &key) {
    const Json &v = j.at(key);
    if (v.is_number_unsigned()) {
        return v.get<uint64_t>();
    }
    if (v.is_number()) {
        double d = v.get<double>();
        if (d >= 0 && d == std::floor(d) && d < 1.8e19) {
            return static_cast<uint64_t>(d);
        }
    }
    throw ConfigError("'" + key + "' must be a non-negative integer");
}

std::string get_string(const Json &j, const std::string &key) {
    const Json &v = j.at(key);
    if (!v.is_string()) {
        throw ConfigError("'" + key + "' must be a string");
    }
    return v.get<std::string>();
}

void forbid_both(const Json &j, const char *a, const char *b) {
    if (j.contains(a) && j.contains(b)) {
        throw ConfigError(std::string("'") + a + "' conflicts with '" + b + "'");
    }
}

}  // namespace

CircuitConfig config_from_json(const Json &j) {
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    for (const auto &[key, value] : j.items()) {
        if (!kPrimaryKeys.count(key) && !kDerivedKeys.count(key)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    forbid_both(j, "delta_x", "p_x");
    forbid_both(j, "delta_x", "p_z");
    forbid_both(j, "r_d", "p_m");
    forbid_both(j, "r_d", "p_e");
    forbid_both(j, "t", "steps");
    forbid_both(j, "warmup_t", "warmup_steps");
    for (const char *k : {"init_nx", "init_ny", "init_nz"}) {
        forbid_both(j, "init_z_fraction", k);
    }
    if (j.contains("attack_rate") && !j.contains("r_d")) {
        throw ConfigError("'attack_rate' requires 'r_d'");
    }

    CircuitConfig c;
    try {
        if (j.contains("L")) c.L = get_count(j, "L");
        if (j.contains("ancillas")) c.ancillas = get_count(j, "ancillas");
        if (j.contains("p_u")) c.p_u = get_number(j, "p_u");
        if (j.contains("p_m")) c.p_m = get_number(j, "p_m");
        if (j.contains("p_R")) c.p_R = get_number(j, "p_R");
        if (j.contains("p_e")) c.p_e = get_number(j, "p_e");
        if (j.contains("p_x")) c.p_x = get_number(j, "p_x");
        if (j.contains("p_y")) c.p_y = get_number(j, "p_y");
        if (j.contains("p_z")) c.p_z = get_number(j, "p_z");
        if (j.contains("steps")) c.steps = get_count(j, "steps");
        if (j.contains("warmup_steps")) c.warmup_steps = get_count(j, "warmup_steps");
        if (j.contains("seed")) c.seed = get_count(j, "seed");
        if (j.contains("init_nx")) c.init_nx = get_count(j, "init_nx");
        if (j.contains("init_ny")) c.init_ny = get_count(j, "init_ny");
        if (j.contains("init_nz")) c.init_nz = get_count(j, "init_nz");
        if (j.contains("boundary")) c.boundary = parse_boundary(get_string(j, "boundary"));
        if (j.contains("eraser")) c.eraser = parse_eraser(get_string(j, "eraser"));
        if (j.contains("init")) c.init = parse_init(get_string(j, "init"));
        if (j.contains("delta_x")) {
            c.set_delta_x(get_number(j, "delta_x"), c.p_y);
        }
        if (j.contains("r_d")) {
            double r = get_number(j, "r_d");
            double rate = j.contains("attack_rate") ? get_number(j, "attack_rate") : 0.05;
            if (!(r >= 0 && r <= 1)) {
                throw ConfigError("'r_d' must lie in [0, 1]");
            }
            c.p_m = rate * r;
            c.p_e = rate * (1 - r);
        }
        auto to_steps = [&](const char *key) {
            double t = get_number(j, key);
            if (!(t >= 0)) {
                throw ConfigError(std::string("'") + key + "' must be non-negative");
            }
            return static_cast<uint64_t>(std::llround(t * static_cast<double>(c.L)));
        };
        if (j.contains("init_z_fraction")) {
            double f = get_number(j, "init_z_fraction");
            if (!(f >= 0 && f <= 1)) {
                throw ConfigError("'init_z_fraction' must lie in [0, 1]");
            }
            c.init_nz = static_cast<size_t>(std::llround(f * static_cast<double>(c.L)));
            c.init_nx = c.L - c.init_nz;
        }
        if (j.contains("t")) c.steps = to_steps("t");
        if (j.contains("warmup_t")) c.warmup_steps = to_steps("warmup_t");
        c.validate();
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError(e.what());
    }
    return c;
}

Json config_to_json(const CircuitConfig &c) {
    Json j;
    j["L"] = c.L;
    j["ancillas"] = c.ancillas;
    j["p_u"] = c.p_u;
    j["p_m"] = c.p_m;
    j["p_R"] = c.p_R;
    j["p_e"] = c.p_e;
    j["p_x"] = c.p_x;
    j["p_y"] = c.p_y;
    j["p_z"] = c.p_z;
    j["steps"] = c.steps;
    j["warmup_steps"] = c.warmup_steps;
    j["boundary"] = boundary_name(c.boundary);
    j["seed"] = c.seed;
    j["eraser"] = eraser_name(c.eraser);
    j["init"] = init_name(c.init);
    j["init_nx"] = c.init_nx;
    j["init_ny"] = c.init_ny;
    j["init_nz"] = c.init_nz;
    return j;
}

Json overlay_config(Json base, const Json &patch) {
    if (!base.is_object() || !patch.is_object()) {
        throw ConfigError("overlay_config: objects expected");
    }
    for (const auto &[key, value] : patch.items()) {
        for (const auto &[k, shadowed] : kShadows) {
            if (k == key) {
                for (const auto &s : shadowed) {
                    base.erase(s);
                }
            }
        }
        base[key] = value;
    }
    return base;
}

std::pair<std::string, Json> parse_assignment(const std::string &text) {
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("expected key=value, got '" + text + "'");
    }
    std::string key = text.substr(0, eq), value = text.substr(eq + 1);
    Json v = Json::parse(value, nullptr, false);
    if (v.is_discarded()) {
        v = value;
    }
    return {key, v};
}

SweepSpec SweepSpec::from_json(const Json &j) {
    if (!j.is_object()) {
        throw ConfigError("sweep spec must be a JSON object");
    }
    SweepSpec s;
    for (const auto &[key, value] : j.items()) {
        if (key == "base") {
            if (!value.is_object()) {
                throw ConfigError("'base' must be an object");
            }
            s.base = value;
        } else if (key == "grid") {
            if (!value.is_object()) {
                throw ConfigError("'grid' must be an object of arrays");
            }
            for (const auto &[axis, vals] : value.items()) {
                if (!vals.is_array() || vals.empty()) {
                    throw ConfigError("grid axis '" + axis + "' must be a non-empty array");
                }
                s.grid.emplace_back(axis, std::vector<Json>(vals.begin(), vals.end()));
            }
        } else if (key == "realizations") {
            s.realizations = get_count(j, key);
            if (s.realizations == 0) {
                throw ConfigError("'realizations' must be positive");
            }
        } else if (key == "probes") {
            if (!value.is_array()) {
                throw ConfigError("'probes' must be an array of names");
            }
            for (const auto &p : value) {
                try {
                    s.quantifiers.push_back(parse_quantifier(p.get<std::string>()));
                } catch (const std::exception &e) {
                    throw ConfigError(e.what());
                }
            }
        } else if (key == "times") {
            if (!value.is_array()) {
                throw ConfigError("'times' must be an array");
            }
            for (const auto &t : value) {
                if (!t.is_number()) {
                    throw ConfigError("'times' entries must be numbers");
                }
                s.times.push_back(t.get<double>());
            }
        } else if (key == "format") {
            s.format = get_string(j, key);
            if (s.format != "csv" && s.format != "jsonl") {
                throw ConfigError("'format' must be csv or jsonl");
            }
        } else {
            throw ConfigError("unknown sweep key '" + key + "'");
        }
    }
    if (s.quantifiers.empty()) {
        throw ConfigError("sweep needs at least one probe");
    }
    return s;
}

Json SweepSpec::to_json() const {
    Json j;
    j["base"] = base;
    Json g = Json::object();
    for (const auto &[axis, vals] : grid) {
        g[axis] = vals;
    }
    j["grid"] = g;
    j["realizations"] = realizations;
    Json probes = Json::array();
    for (auto q : quantifiers) {
        probes.push_back(quantifier_name(q));
    }
    j["probes"] = probes;
    j["times"] = times;
    j["format"] = format;
    return j;
}

size_t SweepSpec::num_points() const {
    size_t n = 1;
    for (const auto &[axis, vals] : grid) {
        n *= vals.size();
    }
    return n;
}

Json SweepSpec::coords(size_t i) const {
    if (i >= num_points()) {
        throw std::out_of_range("sweep point index out of range");
    }
    // Last axis fastest.
    std::vector<size_t> idx(grid.size());
    for (size_t a = grid.size(); a-- > 0;) {
        idx[a] = i % grid[a].second.size();
        i /= grid[a].second.size();
    }
    Json c = Json::object();
    for (size_t a = 0; a < grid.size(); a++) {
        c[grid[a].first] = grid[a].second[idx[a]];
    }
    return c;
}

CircuitConfig SweepSpec::point_config(size_t i) const {
    Json c = coords(i);
    try {
        CircuitConfig cfg = config_from_json(overlay_config(base, c));
        schedule(cfg).validate(cfg);
        return cfg;
    } catch (const std::exception &e) {
        throw ConfigError("grid point " + std::to_string(i) + " " + c.dump() + ": " + e.what());
    }
}

ProbeSchedule SweepSpec::schedule(const CircuitConfig &config) const {
    ProbeSchedule s;
    s.quantifiers = quantifiers;
    s.times = times.empty() ? std::vector<double>{config.time()} : times;
    return s;
}

std::vector<SweepPoint> run_sweep(const SweepSpec &spec, size_t workers, const Progress &progress) {
    size_t n = spec.num_points();
    std::vector<CircuitConfig> configs;
    for (size_t i = 0; i < n; i++) {
        configs.push_back(spec.point_config(i));
    }
    std::vector<SweepPoint> out;
    for (size_t i = 0; i < n; i++) {
        out.push_back({i, spec.coords(i), run_ensemble(configs[i], spec.schedule(configs[i]), spec.realizations, workers)});
        if (progress) {
            progress(i + 1, n);
        }
    }
    return out;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_sweep(std::ostream &out, const SweepSpec &spec, const std::vector<SweepPoint> &points) {
    Json echo = spec.to_json();
    if (spec.format == "jsonl") {
        out << Json{{"spec", echo}}.dump() << "\n";
        for (const auto &p : points) {
            for (const auto &r : p.result.records) {
                Json row;
                row["point"] = p.index;
                row["coords"] = p.coords;
                row["probe"] = r.probe;
                row["t"] = r.t;
                row["mean"] = r.mean;
                row["stderr"] = r.stderr_;
                row["n"] = r.n;
                out << row.dump() << "\n";
            }
        }
        return;
    }
    out << "# spec: " << echo.dump() << "\n";
    out << "point";
    for (const auto &[axis, vals] : spec.grid) {
        out << "," << axis;
    }
    out << ",probe,t,mean,stderr,n\n";
    for (const auto &p : points) {
        for (const auto &r : p.result.records) {
            out << p.index;
            for (const auto &[axis, v] : p.coords.items()) {
                out << "," << (v.is_number() ? format_number(v.get<double>()) : v.is_string() ? v.get<std::string>() : v.dump());
            }
            out << "," << r.probe << "," << format_number(r.t) << "," << format_number(r.mean) << ","
                << format_number(r.stderr_) << "," << r.n << "\n";
        }
    }
}

}  // namespace cohlab
