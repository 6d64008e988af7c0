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


// cohlab: command-line driver for circuit sweeps, purification runs, random
// walkers, code-bound reports and finite-size scaling fits.
//
// Exit codes: 0 success, 1 usage or input error, 2 bound violation or
// failed internal check.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "cohlab/codes.h"
#include "cohlab/driver.h"
#include "cohlab/markov.h"
#include "cohlab/scaling.h"

using namespace cohlab;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Json read_json_file(const std::string &path) {
    Json j = Json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) {
        throw UsageError(path + ": not valid JSON");
    }
    return j;
}

/// Output stream: a file when a path is given, stdout otherwise.
class Output {
   public:
    explicit Output(const std::string &path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw UsageError("cannot write " + path);
            }
        }
    }
    std::ostream &get() {
        return file_ ? *file_ : std::cout;
    }

   private:
    std::unique_ptr<std::ofstream> file_;
};

Json apply_sets(Json base, const std::vector<std::string> &sets) {
    for (const auto &s : sets) {
        auto [k, v] = parse_assignment(s);
        base = overlay_config(base, Json{{k, v}});
    }
    return base;
}

// ---- sweep

struct SweepArgs {
    std::string spec_path, out_path;
    std::vector<std::string> sets;
    size_t workers = 0;
    bool quiet = false;
};

void cmd_sweep(const SweepArgs &a) {
    Json j = read_json_file(a.spec_path);
    if (j.is_object() && j.contains("base")) {
        j["base"] = apply_sets(j["base"], a.sets);
    }
    SweepSpec spec = SweepSpec::from_json(j);
    Progress progress;
    if (!a.quiet) {
        progress = [](size_t done, size_t total) { std::cerr << "point " << done << "/" << total << "\n"; };
    }
    auto points = run_sweep(spec, a.workers, progress);
    Output out(a.out_path);
    write_sweep(out.get(), spec, points);
}

// ---- purify

struct PurifyArgs {
    std::string config_path, out_path;
    std::vector<std::string> sets;
    std::vector<double> times;
    double every = 0;
    size_t realizations = 100;
    size_t workers = 0;
};

void cmd_purify(const PurifyArgs &a) {
    Json j = a.config_path.empty() ? Json::object() : read_json_file(a.config_path);
    j = apply_sets(j, a.sets);
    CircuitConfig config = config_from_json(j);
    if (config.init == InitKind::PURE_PRODUCT) {
        throw ConfigError("purify needs init classical_register or quantum_register");
    }
    if (config.ancillas == 0) {
        throw ConfigError("purify needs ancillas > 0");
    }
    ProbeSchedule sched;
    sched.quantifiers = {Quantifier::COHERENT_INFO, Quantifier::SYSTEM_ENTROPY};
    // The classical oracle exists only for circuits of CNOTs and erasers.
    bool with_ix = config.p_m == 0 && config.p_R == 0 &&
                   (config.eraser != EraserKind::COHERENCE_DESTROYING || config.p_e == 0);
    if (with_ix) {
        sched.quantifiers.push_back(Quantifier::IX);
    }
    if (!a.times.empty()) {
        sched.times = a.times;
    } else {
        double dt = a.every > 0 ? a.every : 1.0;
        for (size_t k = 0; k * dt <= config.time() + 1e-12; k++) {
            sched.times.push_back(k * dt);
        }
    }
    sched.validate(config);
    EnsembleResult res = run_ensemble(config, sched, a.realizations, a.workers);

    Output out(a.out_path);
    auto &o = out.get();
    o << "# config: " << config_to_json(config).dump() << "\n";
    o << "# realizations: " << a.realizations << "\n";
    o << "t,coherent_info,coherent_info_err,S_system,S_system_err";
    if (with_ix) {
        o << ",I_x,I_x_err";
    }
    o << "\n";
    for (double t : sched.times) {
        o << format_number(t);
        for (auto q : sched.quantifiers) {
            const auto &r = res.at(quantifier_name(q), t);
            o << "," << format_number(r.mean) << "," << format_number(r.stderr_);
        }
        o << "\n";
    }
}

// ---- walker

struct WalkerArgs {
    std::string kind = "measurement_only";
    double p_x = NAN, p_y = 0, p_z = NAN, delta_x = NAN;
    long L = 100;
    long start_nx = 0, start_nz = 0;
    size_t steps = 10000;
    size_t trajectories = 100;
    size_t samples = 100;
    uint64_t seed = 1;
    std::string out_path, hist_path, raw_path;
};

RatePoint walker_rates(const WalkerArgs &a) {
    if (!std::isnan(a.delta_x)) {
        if (!std::isnan(a.p_x) || !std::isnan(a.p_z)) {
            throw UsageError("--delta-x conflicts with --p-x/--p-z");
        }
        return RatePoint::from_delta(a.delta_x, a.p_y);
    }
    if (std::isnan(a.p_x) || std::isnan(a.p_z)) {
        throw UsageError("give --p-x and --p-z (with --p-y), or --delta-x and --p-y");
    }
    RatePoint r{a.p_x, a.p_y, a.p_z};
    r.validate();
    return r;
}

void cmd_walker(const WalkerArgs &a) {
    RatePoint rates = walker_rates(a);
    bool weak = a.kind == "weak_limit";
    if (!weak && a.kind != "measurement_only") {
        throw UsageError("--kind must be measurement_only or weak_limit");
    }
    WalkerState start{a.start_nx, a.start_nz, a.L};
    try {
        start.check();
    } catch (const std::logic_error &e) {
        throw UsageError(std::string("bad start state: ") + e.what());
    }
    size_t samples = std::max<size_t>(1, std::min(a.samples, a.steps));
    std::vector<size_t> sample_at;
    for (size_t k = 0; k <= samples; k++) {
        sample_at.push_back(a.steps * k / samples);
    }
    std::vector<double> sx(sample_at.size()), sz(sample_at.size()), sxx(sample_at.size()), szz(sample_at.size());
    std::map<std::pair<long, long>, uint64_t> hist;
    Output raw_out(a.raw_path.empty() ? "" : a.raw_path);
    if (!a.raw_path.empty()) {
        raw_out.get() << "trajectory,m,n_x,n_z\n";
    }
    for (size_t tr = 0; tr < a.trajectories; tr++) {
        Rng rng(child_seed(a.seed, tr));
        WalkerState w = start;
        size_t next = 0;
        for (size_t m = 0; m <= a.steps; m++) {
            if (next < sample_at.size() && sample_at[next] == m) {
                // Several sample slots may share a step when samples > steps.
                while (next < sample_at.size() && sample_at[next] == m) {
                    sx[next] += w.n_x;
                    sz[next] += w.n_z;
                    sxx[next] += double(w.n_x) * w.n_x;
                    szz[next] += double(w.n_z) * w.n_z;
                    next++;
                }
                if (!a.raw_path.empty()) {
                    raw_out.get() << tr << "," << m << "," << w.n_x << "," << w.n_z << "\n";
                }
            }
            if (m >= a.steps / 2) {
                hist[{w.n_x, w.n_z}]++;
            }
            if (m < a.steps) {
                w = weak ? step_weak_limit(w, rates, rng) : step_measurement_only(w, rates, rng);
            }
        }
    }
    Output out(a.out_path);
    auto &o = out.get();
    double n = static_cast<double>(a.trajectories);
    o << "# walker " << a.kind << " L=" << a.L << " p_x=" << format_number(rates.p_x)
      << " p_y=" << format_number(rates.p_y) << " p_z=" << format_number(rates.p_z) << " seed=" << a.seed << "\n";
    o << "m,n_x,n_x_err,n_z,n_z_err\n";
    auto se = [&](double s, double ss) {
        if (n < 2) {
            return 0.0;
        }
        double var = std::max(0.0, (ss - s * s / n) / (n - 1));
        return std::sqrt(var / n);
    };
    for (size_t k = 0; k < sample_at.size(); k++) {
        o << sample_at[k] << "," << format_number(sx[k] / n) << "," << format_number(se(sx[k], sxx[k])) << ","
          << format_number(sz[k] / n) << "," << format_number(se(sz[k], szz[k])) << "\n";
    }
    if (!a.hist_path.empty()) {
        Output h(a.hist_path);
        h.get() << "# stationary histogram over steps [" << a.steps / 2 << ", " << a.steps << "]\n";
        h.get() << "n_x,n_z,count\n";
        for (const auto &[key, count] : hist) {
            h.get() << key.first << "," << key.second << "," << count << "\n";
        }
    }
}

// ---- codes

struct CodesArgs {
    std::vector<std::string> code;  // name [param]
    std::string file;
    std::vector<std::string> bases;
    size_t random_bases = 0;
    uint64_t seed = 1;
    uint64_t max_candidates = 200000000;
};

LocalPauliBasis parse_basis_arg(const std::string &s, size_t n) {
    auto axis = [&](char c) {
        switch (c) {
            case 'X':
            case 'x':
                return Axis::X;
            case 'Y':
            case 'y':
                return Axis::Y;
            case 'Z':
            case 'z':
                return Axis::Z;
        }
        throw UsageError("bad basis '" + s + "': use X, Y, Z or one letter per qubit");
    };
    if (s.size() == 1) {
        return LocalPauliBasis::uniform(n, axis(s[0]));
    }
    if (s.size() != n) {
        throw UsageError("basis '" + s + "' has " + std::to_string(s.size()) + " letters, code has " +
                         std::to_string(n) + " qubits");
    }
    LocalPauliBasis b;
    for (char c : s) {
        b.axes.push_back(axis(c));
    }
    return b;
}

int cmd_codes(const CodesArgs &a) {
    CodeSpec code;
    if (!a.file.empty()) {
        if (!a.code.empty()) {
            throw UsageError("give a code name or --file, not both");
        }
        code = parse_code(read_file(a.file));
        code.name = a.file;
    } else {
        if (a.code.empty() || a.code.size() > 2) {
            throw UsageError("expected: codes <name> [param] or codes --file PATH");
        }
        size_t param = 0;
        if (a.code.size() == 2) {
            try {
                param = std::stoul(a.code[1]);
            } catch (const std::exception &) {
                throw UsageError("code parameter must be an integer");
            }
        }
        code = build_named_code(a.code[0], param);
    }
    std::vector<LocalPauliBasis> bases;
    for (const auto &b : a.bases) {
        bases.push_back(parse_basis_arg(b, code.n));
    }
    Rng rng(a.seed);
    if (bases.empty()) {
        bases = standard_bases(code.n, a.random_bases, rng);
    } else {
        auto extra = standard_bases(code.n, a.random_bases, rng);
        bases.insert(bases.end(), extra.begin() + 3, extra.end());
    }
    BoundReport rep;
    rep.code = code.name;
    size_t d = brute_force_distance(code, a.max_candidates);
    for (const auto &b : bases) {
        rep.rows.push_back({b, d, dephasing_distance(code, b, a.max_candidates),
                            max_coherent_code_state(code, b).coherence, tight_bound(code, b)});
    }
    std::cout << "[[" << code.n << "," << code.k << "," << d << "]]\n" << rep.str();
    if (!rep.ok()) {
        std::cerr << "bound violated\n";
        return kExitViolation;
    }
    return 0;
}

// ---- collapse

struct CollapseArgs {
    std::string data_path;
    std::string form = "I3";
    std::string x_col = "delta_x", L_col = "L", y_col = "mean", err_col = "stderr";
    std::string probe;
    double t = NAN;
    int degree = 4;
    size_t bootstrap = 200;
    uint64_t seed = 1;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    long col(const std::string &name) const {
        auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : it - header.begin();
    }
};

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

Table read_table(const std::string &path) {
    std::istringstream in(read_file(path));
    Table t;
    std::string line;
    size_t no = 0;
    while (std::getline(in, line)) {
        no++;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto cells = split_csv_line(line);
        if (t.header.empty()) {
            t.header = cells;
        } else if (cells.size() != t.header.size()) {
            throw UsageError(path + ":" + std::to_string(no) + ": expected " + std::to_string(t.header.size()) +
                             " columns");
        } else {
            t.rows.push_back(cells);
        }
    }
    if (t.header.empty()) {
        throw UsageError(path + ": no header row");
    }
    return t;
}

double to_double(const std::string &s, const std::string &what) {
    try {
        size_t pos;
        double v = std::stod(s, &pos);
        if (pos == s.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw UsageError("non-numeric " + what + " value '" + s + "'");
}

void cmd_collapse(const CollapseArgs &a) {
    Table tab = read_table(a.data_path);
    long cx = tab.col(a.x_col), cl = tab.col(a.L_col), cy = tab.col(a.y_col), ce = tab.col(a.err_col);
    long cp = tab.col("probe"), ct = tab.col("t");
    if (cx < 0 || cl < 0 || cy < 0) {
        throw UsageError("data needs columns '" + a.L_col + "', '" + a.x_col + "', '" + a.y_col + "'");
    }
    if (cp >= 0 && a.probe.empty()) {
        throw UsageError("data has a probe column; choose one with --probe");
    }
    // Rows selected by probe and time (largest time by default).
    double t_sel = a.t;
    if (ct >= 0 && std::isnan(t_sel)) {
        t_sel = -INFINITY;
        for (const auto &r : tab.rows) {
            if (cp < 0 || r[cp] == a.probe) {
                t_sel = std::max(t_sel, to_double(r[ct], "t"));
            }
        }
    }
    std::map<double, Curve> curves;
    std::vector<CollapsePoint> pts;
    for (const auto &r : tab.rows) {
        if (cp >= 0 && r[cp] != a.probe) {
            continue;
        }
        if (ct >= 0 && std::abs(to_double(r[ct], "t") - t_sel) > 1e-9) {
            continue;
        }
        double L = to_double(r[cl], a.L_col), x = to_double(r[cx], a.x_col), y = to_double(r[cy], a.y_col);
        Curve &c = curves[L];
        c.L = L;
        c.x.push_back(x);
        c.y.push_back(y);
        if (ce >= 0) {
            c.y_err.push_back(to_double(r[ce], a.err_col));
        }
        pts.push_back({L, x, y});
    }
    if (pts.empty()) {
        throw UsageError("no rows selected");
    }
    std::vector<Curve> list;
    for (auto &[L, c] : curves) {
        // Sort each curve by x.
        std::vector<size_t> order(c.x.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t i, size_t j) { return c.x[i] < c.x[j]; });
        Curve s{c.L, {}, {}, {}};
        for (size_t i : order) {
            s.x.push_back(c.x[i]);
            s.y.push_back(c.y[i]);
            if (!c.y_err.empty()) {
                s.y_err.push_back(c.y_err[i]);
            }
        }
        list.push_back(std::move(s));
    }
    Json out;
    out["points"] = pts.size();
    out["sizes"] = list.size();
    if (list.size() >= 2) {
        CrossingResult cr = crossing_detect(list, a.bootstrap, a.seed);
        Json c;
        c["found"] = cr.found;
        if (cr.found) {
            c["estimate"] = cr.estimate;
            c["error"] = cr.error;
            c["pairs"] = cr.pair_crossings;
        }
        out["crossing"] = c;
    }
    if (list.size() >= 3) {
        CollapseOptions opt;
        opt.degree = a.degree;
        CollapseFit fit = collapse_fit(pts, parse_collapse_form(a.form), opt);
        Json f;
        f["form"] = a.form;
        f["x_c"] = fit.x_c;
        f["nu"] = fit.nu;
        if (parse_collapse_form(a.form) == CollapseForm::COHERENT_INFO) {
            f["beta"] = fit.beta;
        }
        f["residual"] = fit.residual;
        f["degree"] = fit.degree;
        f["level_residuals"] = fit.level_residuals;
        out["collapse"] = f;
    }
    std::cout << out.dump(2) << "\n";
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"cohlab: coherence and purification in random Clifford circuits"};
    app.require_subcommand(1);

    SweepArgs sw;
    auto *sweep = app.add_subcommand("sweep", "Run a parameter sweep from a JSON spec");
    sweep->add_option("spec", sw.spec_path, "Sweep spec (JSON)")->required()->check(CLI::ExistingFile);
    sweep->add_option("-o,--out", sw.out_path, "Output file (default stdout)");
    sweep->add_option("--set", sw.sets, "Override a base config key: key=value");
    sweep->add_option("-j,--workers", sw.workers, "Worker threads (default COHLAB_WORKERS or all cores)");
    sweep->add_flag("-q,--quiet", sw.quiet, "No progress on stderr");

    PurifyArgs pu;
    auto *purify = app.add_subcommand("purify", "Coherent information and system entropy over time");
    purify->add_option("-c,--config", pu.config_path, "Circuit config (JSON)")->check(CLI::ExistingFile);
    purify->add_option("--set", pu.sets, "Config key override: key=value");
    purify->add_option("--times", pu.times, "Probe times in units of L steps");
    purify->add_option("--every", pu.every, "Probe spacing when --times is absent (default 1)");
    purify->add_option("-r,--realizations", pu.realizations, "Circuit realizations")->check(CLI::PositiveNumber);
    purify->add_option("-j,--workers", pu.workers, "Worker threads");
    purify->add_option("-o,--out", pu.out_path, "Output file (default stdout)");

    WalkerArgs wa;
    auto *walker = app.add_subcommand("walker", "Random walk of (N_x, N_z)");
    walker->add_option("--kind", wa.kind, "measurement_only or weak_limit");
    walker->add_option("--p-x", wa.p_x, "X measurement probability");
    walker->add_option("--p-y", wa.p_y, "Y measurement probability");
    walker->add_option("--p-z", wa.p_z, "Z measurement probability");
    walker->add_option("--delta-x", wa.delta_x, "Bias (p_x - p_z)/(1 - p_y), with --p-y");
    walker->add_option("-L", wa.L, "Number of qubits")->check(CLI::PositiveNumber);
    walker->add_option("--start-nx", wa.start_nx, "Initial N_x");
    walker->add_option("--start-nz", wa.start_nz, "Initial N_z");
    walker->add_option("--steps", wa.steps, "Measurements per trajectory");
    walker->add_option("--trajectories", wa.trajectories, "Independent trajectories")->check(CLI::PositiveNumber);
    walker->add_option("--samples", wa.samples, "Sampled steps per trajectory");
    walker->add_option("--seed", wa.seed, "Master seed");
    walker->add_option("-o,--out", wa.out_path, "Mean trajectory output (default stdout)");
    walker->add_option("--hist", wa.hist_path, "Stationary histogram output");
    walker->add_option("--raw", wa.raw_path, "Per-trajectory samples output");

    CodesArgs co;
    auto *codes = app.add_subcommand("codes", "Distance and coherence bounds of a stabilizer code");
    codes->add_option("code", co.code, "Named code and optional parameter, e.g. 'repetition 5'");
    codes->add_option("-f,--file", co.file, "Code file")->check(CLI::ExistingFile);
    codes->add_option("--basis", co.bases, "X, Y, Z, or one letter per qubit");
    codes->add_option("--random-bases", co.random_bases, "Extra random local bases");
    codes->add_option("--seed", co.seed, "Seed for random bases");
    codes->add_option("--max-candidates", co.max_candidates, "Distance search budget");

    CollapseArgs ca;
    auto *collapse = app.add_subcommand("collapse", "Crossing point and scaling collapse of sweep data");
    collapse->add_option("data", ca.data_path, "CSV data (sweep output or columns L,x,y)")
        ->required()
        ->check(CLI::ExistingFile);
    collapse->add_option("--form", ca.form, "I3 or coherent_info");
    collapse->add_option("--probe", ca.probe, "Probe to select from sweep output");
    collapse->add_option("--t", ca.t, "Time to select (default: latest)");
    collapse->add_option("--x", ca.x_col, "Column of the tuning parameter");
    collapse->add_option("--L", ca.L_col, "Column of the system size");
    collapse->add_option("--y", ca.y_col, "Column of the observable");
    collapse->add_option("--err", ca.err_col, "Column of the standard error");
    collapse->add_option("--degree", ca.degree, "Polynomial degree")->check(CLI::PositiveNumber);
    collapse->add_option("--bootstrap", ca.bootstrap, "Bootstrap resamples for the crossing error");
    collapse->add_option("--seed", ca.seed, "Bootstrap seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*sweep) {
            cmd_sweep(sw);
        } else if (*purify) {
            cmd_purify(pu);
        } else if (*walker) {
            cmd_walker(wa);
        } else if (*codes) {
            return cmd_codes(co);
        } else if (*collapse) {
            cmd_collapse(ca);
        }
    } catch (const CodeParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExceeded &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error &e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
