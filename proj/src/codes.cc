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

#include "cohlab/codes.h"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace cohlab {

namespace {

constexpr size_t kMaxEnumK = 3;

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

std::vector<std::pair<PauliString, PauliString>> complete_logicals(size_t n, const std::vector<PauliString> &checks) {
    return StabilizerTableau::from_generators(n, checks).logical_pairs();
}

CodeSpec from_checks(std::string name, size_t n, std::vector<PauliString> checks) {
    CodeSpec c;
    c.name = std::move(name);
    c.n = n;
    c.k = n - checks.size();
    c.logicals = complete_logicals(n, checks);
    c.checks = std::move(checks);
    c.validate();
    return c;
}

PauliString from_bits(std::span<const uint64_t> row, size_t n, char pauli) {
    PauliString p(n);
    for (size_t j = 0; j < n; j++) {
        if ((row[j >> 6] >> (j & 63)) & 1) {
            p.set(j, pauli);
        }
    }
    return p;
}

// ---- logical-space helpers: a logical Pauli is a 2k-bit vector, low k bits
// the X~ coefficients, high k bits the Z~ coefficients.

bool omega(uint32_t a, uint32_t b, size_t k) {
    uint32_t mask = (1u << k) - 1;
    uint32_t s = ((a & mask) & (b >> k)) ^ ((a >> k) & (b & mask));
    return __builtin_popcount(s) & 1;
}

/// Reduced row echelon basis, used as a canonical key for a subspace.
std::vector<uint32_t> canonical_basis(std::vector<uint32_t> vs) {
    std::vector<uint32_t> out;
    for (int bit = 31; bit >= 0; bit--) {
        uint32_t m = 1u << bit;
        auto it = std::find_if(vs.begin(), vs.end(), [&](uint32_t v) { return v & m; });
        if (it == vs.end()) {
            continue;
        }
        uint32_t piv = *it;
        vs.erase(it);
        for (auto &v : vs) {
            if (v & m) {
                v ^= piv;
            }
        }
        for (auto &v : out) {
            if (v & m) {
                v ^= piv;
            }
        }
        out.push_back(piv);
    }
    return out;
}

uint64_t span_set(const std::vector<uint32_t> &basis) {
    // Bitset over the 2^{2k} <= 64 vectors.
    uint64_t set = 1;  // zero vector
    for (uint32_t b : basis) {
        uint64_t shifted = 0;
        for (uint32_t v = 0; v < 64; v++) {
            if ((set >> v) & 1) {
                shifted |= 1ULL << (v ^ b);
            }
        }
        set |= shifted;
    }
    return set;
}

/// All isotropic subspaces of dimension j, as canonical bases.
std::vector<std::vector<uint32_t>> isotropic_subspaces(size_t k, size_t j) {
    uint32_t top = 1u << (2 * k);
    std::set<std::vector<uint32_t>> seen;
    std::vector<uint32_t> cur;
    auto rec = [&](auto &&self, uint32_t start) -> void {
        if (cur.size() == j) {
            seen.insert(canonical_basis(cur));
            return;
        }
        for (uint32_t v = start; v < top; v++) {
            bool ok = !((span_set(cur) >> v) & 1);
            for (uint32_t u : cur) {
                ok = ok && !omega(u, v, k);
            }
            if (ok) {
                cur.push_back(v);
                self(self, v + 1);
                cur.pop_back();
            }
        }
    };
    rec(rec, 1);
    return {seen.begin(), seen.end()};
}

PauliString logical_to_physical(const CodeSpec &code, uint32_t v) {
    PauliString p(code.n);
    for (size_t j = 0; j < code.k; j++) {
        if ((v >> j) & 1) {
            p.xs ^= code.logicals[j].first.xs;
            p.zs ^= code.logicals[j].first.zs;
        }
        if ((v >> (j + code.k)) & 1) {
            p.xs ^= code.logicals[j].second.xs;
            p.zs ^= code.logicals[j].second.zs;
        }
    }
    return p;
}

StabilizerTableau code_state(const CodeSpec &code, const std::vector<uint32_t> &lagrangian, uint32_t signs) {
    std::vector<PauliString> gens = code.checks;
    for (size_t i = 0; i < lagrangian.size(); i++) {
        PauliString p = logical_to_physical(code, lagrangian[i]);
        p.sign = (signs >> i) & 1;
        gens.push_back(std::move(p));
    }
    return StabilizerTableau::from_generators(code.n, gens);
}

void require_enumerable(const CodeSpec &code, const char *who) {
    if (code.k > kMaxEnumK) {
        throw std::length_error(std::string(who) + ": k=" + std::to_string(code.k) +
                                " exceeds the enumeration budget (k <= 3)");
    }
}

// ---- distance search

struct PackedCode {
    size_t n;
    std::vector<uint64_t> cx, cz;
    F2Basis group{2};
};

PackedCode pack(const CodeSpec &code) {
    if (code.n > 64) {
        throw std::length_error("distance search supports n <= 64");
    }
    PackedCode pc;
    pc.n = code.n;
    for (const auto &g : code.checks) {
        uint64_t x = g.xs.words().empty() ? 0 : g.xs.words()[0];
        uint64_t z = g.zs.words().empty() ? 0 : g.zs.words()[0];
        pc.cx.push_back(x);
        pc.cz.push_back(z);
        uint64_t v[2] = {x, z};
        pc.group.insert(v);
    }
    return pc;
}

bool is_logical_error(const PackedCode &pc, uint64_t x, uint64_t z) {
    for (size_t i = 0; i < pc.cx.size(); i++) {
        if (__builtin_popcountll((x & pc.cz[i]) ^ (z & pc.cx[i])) & 1) {
            return false;
        }
    }
    uint64_t v[2] = {x, z};
    return !pc.group.contains(v);
}

/// Visits site subsets of size w in lexicographic order; f returns true to stop.
template <typename F>
bool for_each_subset(size_t n, size_t w, F &&f) {
    std::vector<size_t> idx(w);
    for (size_t i = 0; i < w; i++) {
        idx[i] = i;
    }
    while (true) {
        if (f(idx)) {
            return true;
        }
        size_t i = w;
        while (i > 0 && idx[i - 1] == n - w + i - 1) {
            i--;
        }
        if (i == 0) {
            return false;
        }
        idx[i - 1]++;
        for (size_t j = i; j < w; j++) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

uint64_t binomial(size_t n, size_t k) {
    uint64_t r = 1;
    for (size_t i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return r;
}

}  // namespace

void CodeSpec::validate() const {
    require(checks.size() + k == n, "code: need n - k checks");
    require(logicals.size() == k, "code: need k logical pairs");
    for (const auto &g : checks) {
        require(g.size() == n, "code: check length mismatch");
    }
    for (const auto &[lx, lz] : logicals) {
        require(lx.size() == n && lz.size() == n, "code: logical length mismatch");
    }
    // Commutation and independence of the checks.
    StabilizerTableau::from_generators(n, checks);
    for (size_t j = 0; j < k; j++) {
        for (const auto &g : checks) {
            require(commute(g, logicals[j].first) && commute(g, logicals[j].second),
                    "code: logical operator anticommutes with check " + g.str());
        }
        for (size_t i = 0; i < k; i++) {
            require(commute(logicals[i].first, logicals[j].first) &&
                        commute(logicals[i].second, logicals[j].second) &&
                        commute(logicals[i].first, logicals[j].second) == (i != j),
                    "code: logical operators are not symplectic pairs");
        }
    }
    // Logicals must be independent of the checks.
    std::vector<PauliString> all = checks;
    for (const auto &[lx, lz] : logicals) {
        all.push_back(lx);
    }
    StabilizerTableau::from_generators(n, all);
}

CodeSpec repetition_code(size_t L) {
    require(L >= 2, "repetition code needs L >= 2");
    std::vector<PauliString> checks;
    for (size_t i = 0; i + 1 < L; i++) {
        PauliString g(L);
        g.set(i, 'X');
        g.set(i + 1, 'X');
        checks.push_back(g);
    }
    CodeSpec c;
    c.name = "repetition(" + std::to_string(L) + ")";
    c.n = L;
    c.k = 1;
    c.checks = std::move(checks);
    // Code space spanned by |+...+> and |-...->.
    c.logicals = {{PauliString::parse(std::string(L, 'Z')), PauliString::single(L, 0, Axis::X)}};
    c.validate();
    return c;
}

CodeSpec steane_code() {
    BitMatrix h = BitMatrix::from_rows({"0001111", "0110011", "1010101"});
    CodeSpec c = css_code(h, h);
    c.name = "steane";
    c.logicals = {{PauliString::parse("XXXXXXX"), PauliString::parse("ZZZZZZZ")}};
    c.validate();
    return c;
}

CodeSpec shor_code() {
    std::vector<PauliString> checks;
    for (const char *s : {"ZZIIIIIII", "IZZIIIIII", "IIIZZIIII", "IIIIZZIII", "IIIIIIZZI", "IIIIIIIZZ",
                          "XXXXXXIII", "IIIXXXXXX"}) {
        checks.push_back(PauliString::parse(s));
    }
    CodeSpec c;
    c.name = "shor";
    c.n = 9;
    c.k = 1;
    c.checks = std::move(checks);
    c.logicals = {{PauliString::parse("ZZZZZZZZZ"), PauliString::parse("XXXXXXXXX")}};
    c.validate();
    return c;
}

CodeSpec five_qubit_code() {
    std::vector<PauliString> checks;
    for (const char *s : {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}) {
        checks.push_back(PauliString::parse(s));
    }
    CodeSpec c;
    c.name = "five_qubit";
    c.n = 5;
    c.k = 1;
    c.checks = std::move(checks);
    c.logicals = {{PauliString::parse("XXXXX"), PauliString::parse("ZZZZZ")}};
    c.validate();
    return c;
}

CodeSpec css_code(const BitMatrix &hx, const BitMatrix &hz) {
    require(hx.cols() == hz.cols(), "css: H_x and H_z column counts differ");
    size_t n = hx.cols();
    require(n > 0, "css: empty parity-check matrices");
    for (size_t i = 0; i < hx.rows(); i++) {
        for (size_t j = 0; j < hz.rows(); j++) {
            if (hx.row_vec(i).dot(hz.row_vec(j))) {
                throw std::invalid_argument("css: rows " + std::to_string(i) + " of H_x and " + std::to_string(j) +
                                            " of H_z are not orthogonal");
            }
        }
    }
    std::vector<PauliString> checks;
    F2Basis bx(hx.words_per_row()), bz(hz.words_per_row());
    for (size_t i = 0; i < hx.rows(); i++) {
        if (bx.insert(hx.row(i))) {
            checks.push_back(from_bits(hx.row(i), n, 'X'));
        }
    }
    for (size_t i = 0; i < hz.rows(); i++) {
        if (bz.insert(hz.row(i))) {
            checks.push_back(from_bits(hz.row(i), n, 'Z'));
        }
    }
    return from_checks("css", n, std::move(checks));
}

CodeSpec build_named_code(std::string_view name, size_t param) {
    if (name == "repetition") {
        return repetition_code(param == 0 ? 3 : param);
    }
    if (name == "steane") {
        return steane_code();
    }
    if (name == "shor") {
        return shor_code();
    }
    if (name == "five_qubit" || name == "five-qubit") {
        return five_qubit_code();
    }
    throw std::invalid_argument("unknown code '" + std::string(name) + "'");
}

CodeSpec parse_code(std::string_view text) {
    struct Line {
        size_t no;
        std::vector<std::string> tokens;
    };
    std::vector<Line> lines;
    std::istringstream in{std::string(text)};
    std::string raw;
    size_t no = 0;
    while (std::getline(in, raw)) {
        no++;
        if (auto h = raw.find('#'); h != std::string::npos) {
            raw.resize(h);
        }
        std::istringstream ls(raw);
        Line l{no, {}};
        std::string tok;
        while (ls >> tok) {
            l.tokens.push_back(tok);
        }
        if (!l.tokens.empty()) {
            lines.push_back(std::move(l));
        }
    }
    if (lines.empty()) {
        throw CodeParseError("empty code file", no);
    }

    if (lines[0].tokens.size() == 1 && lines[0].tokens[0] == "css") {
        std::vector<std::string> hx, hz;
        bool second = false;
        size_t width = 0;
        for (size_t i = 1; i < lines.size(); i++) {
            const Line &l = lines[i];
            if (l.tokens.size() == 1 && l.tokens[0] == "--") {
                if (second) {
                    throw CodeParseError("second '--' separator", l.no);
                }
                second = true;
                continue;
            }
            std::string row;
            for (const auto &t : l.tokens) {
                row += t;
            }
            if (row.find_first_not_of("01") != std::string::npos) {
                throw CodeParseError("matrix rows must contain only 0 and 1", l.no);
            }
            if (width == 0) {
                width = row.size();
            } else if (row.size() != width) {
                throw CodeParseError("row has " + std::to_string(row.size()) + " columns, expected " +
                                         std::to_string(width),
                                     l.no);
            }
            (second ? hz : hx).push_back(row);
        }
        if (!second) {
            throw CodeParseError("missing '--' between H_x and H_z", lines.back().no);
        }
        auto to_matrix = [&](const std::vector<std::string> &rows) {
            return rows.empty() ? BitMatrix(0, width) : BitMatrix::from_rows(rows);
        };
        try {
            return css_code(to_matrix(hx), to_matrix(hz));
        } catch (const std::invalid_argument &e) {
            throw CodeParseError(e.what(), lines[0].no);
        }
    }

    const Line &head = lines[0];
    size_t n = 0, k = 0;
    try {
        if (head.tokens.size() != 2) {
            throw std::invalid_argument("");
        }
        n = std::stoul(head.tokens[0]);
        k = std::stoul(head.tokens[1]);
    } catch (const std::exception &) {
        throw CodeParseError("expected header 'n k' or 'css'", head.no);
    }
    if (k > n) {
        throw CodeParseError("k exceeds n", head.no);
    }
    size_t m = n - k;
    if (lines.size() != 1 + m && lines.size() != 1 + m + k) {
        throw CodeParseError("expected " + std::to_string(m) + " check lines, optionally followed by " +
                                 std::to_string(k) + " logical pair lines; found " +
                                 std::to_string(lines.size() - 1) + " lines",
                             lines.back().no);
    }
    auto parse_pauli = [&](const std::string &tok, size_t line_no) {
        PauliString p;
        try {
            p = PauliString::parse(tok);
        } catch (const std::exception &e) {
            throw CodeParseError(std::string("bad Pauli string: ") + e.what(), line_no);
        }
        if (p.size() != n) {
            throw CodeParseError("Pauli string has length " + std::to_string(p.size()) + ", expected " +
                                     std::to_string(n),
                                 line_no);
        }
        return p;
    };
    CodeSpec code;
    code.name = "file";
    code.n = n;
    code.k = k;
    for (size_t i = 1; i <= m; i++) {
        if (lines[i].tokens.size() != 1) {
            throw CodeParseError("expected one Pauli string per check line", lines[i].no);
        }
        code.checks.push_back(parse_pauli(lines[i].tokens[0], lines[i].no));
    }
    try {
        if (lines.size() == 1 + m) {
            code.logicals = complete_logicals(n, code.checks);
        } else {
            for (size_t i = 1 + m; i < lines.size(); i++) {
                if (lines[i].tokens.size() != 2) {
                    throw CodeParseError("expected a logical pair 'X~ Z~'", lines[i].no);
                }
                code.logicals.emplace_back(parse_pauli(lines[i].tokens[0], lines[i].no),
                                           parse_pauli(lines[i].tokens[1], lines[i].no));
            }
        }
        code.validate();
    } catch (const std::invalid_argument &e) {
        throw CodeParseError(e.what(), head.no);
    }
    return code;
}

std::string format_code(const CodeSpec &code) {
    std::ostringstream out;
    out << "# " << code.name << "\n" << code.n << " " << code.k << "\n";
    for (const auto &g : code.checks) {
        out << g.str() << "\n";
    }
    for (const auto &[lx, lz] : code.logicals) {
        out << lx.str() << " " << lz.str() << "\n";
    }
    return out.str();
}

size_t brute_force_distance(const CodeSpec &code, uint64_t max_candidates) {
    PackedCode pc = pack(code);
    if (code.k == 0) {
        throw std::invalid_argument("brute_force_distance: k = 0 code has no logical operators");
    }
    uint64_t spent = 0;
    for (size_t w = 1; w <= code.n; w++) {
        uint64_t count = binomial(code.n, w);
        for (size_t i = 0; i < w; i++) {
            count *= 3;
        }
        if (spent + count > max_candidates) {
            throw BudgetExceeded("brute_force_distance: budget exhausted; no logical error of weight <= " +
                                     std::to_string(w - 1),
                                 w - 1);
        }
        spent += count;
        bool found = for_each_subset(code.n, w, [&](const std::vector<size_t> &sites) {
            // Each site takes X (1), Z (2) or Y (3).
            std::vector<uint8_t> op(w, 1);
            while (true) {
                uint64_t x = 0, z = 0;
                for (size_t i = 0; i < w; i++) {
                    x |= uint64_t(op[i] & 1) << sites[i];
                    z |= uint64_t(op[i] >> 1) << sites[i];
                }
                if (is_logical_error(pc, x, z)) {
                    return true;
                }
                size_t i = 0;
                while (i < w && op[i] == 3) {
                    op[i++] = 1;
                }
                if (i == w) {
                    return false;
                }
                op[i]++;
            }
        });
        if (found) {
            return w;
        }
    }
    throw std::logic_error("brute_force_distance: k > 0 but no logical operator found");
}

std::optional<size_t> dephasing_distance(const CodeSpec &code, const LocalPauliBasis &basis,
                                         uint64_t max_candidates) {
    require(basis.size() == code.n, "dephasing_distance: basis length mismatch");
    PackedCode pc = pack(code);
    uint64_t spent = 0;
    for (size_t w = 1; w <= code.n; w++) {
        uint64_t count = binomial(code.n, w);
        if (spent + count > max_candidates) {
            throw BudgetExceeded("dephasing_distance: budget exhausted; no logical error of weight <= " +
                                     std::to_string(w - 1),
                                 w - 1);
        }
        spent += count;
        bool found = for_each_subset(code.n, w, [&](const std::vector<size_t> &sites) {
            uint64_t x = 0, z = 0;
            for (size_t s : sites) {
                Axis a = basis.axes[s];
                x |= uint64_t(a != Axis::Z) << s;
                z |= uint64_t(a != Axis::X) << s;
            }
            return is_logical_error(pc, x, z);
        });
        if (found) {
            return w;
        }
    }
    return std::nullopt;
}

std::vector<StabilizerTableau> enumerate_code_states(const CodeSpec &code, bool all_signs) {
    require_enumerable(code, "enumerate_code_states");
    std::vector<StabilizerTableau> out;
    for (const auto &lag : isotropic_subspaces(code.k, code.k)) {
        uint32_t sign_count = all_signs ? 1u << code.k : 1u;
        for (uint32_t s = 0; s < sign_count; s++) {
            out.push_back(code_state(code, lag, s));
        }
    }
    return out;
}

CodeStateMax max_coherent_code_state(const CodeSpec &code, const LocalPauliBasis &basis) {
    require(basis.size() == code.n, "max_coherent_code_state: basis length mismatch");
    auto states = enumerate_code_states(code, true);
    size_t best = 0;
    for (size_t i = 1; i < states.size(); i++) {
        if (coherence(states[i], basis) > coherence(states[best], basis)) {
            best = i;
        }
    }
    size_t c = coherence(states[best], basis);
    return {std::move(states[best]), c, states.size()};
}

size_t tight_bound(const CodeSpec &code, const LocalPauliBasis &basis) {
    require(basis.size() == code.n, "tight_bound: basis length mismatch");
    require_enumerable(code, "tight_bound");
    if (code.k == 0) {
        return max_coherent_code_state(code, basis).coherence;
    }
    size_t k = code.k;
    uint32_t top = 1u << (2 * k);
    size_t best = std::numeric_limits<size_t>::max();
    for (const auto &m : isotropic_subspaces(k, k - 1)) {
        // M^perp / M is a single logical qubit; pick a symplectic pair in it.
        uint64_t in_m = span_set(m);
        uint32_t v = 0, vp = 0;
        for (uint32_t u = 1; u < top && vp == 0; u++) {
            bool perp = std::all_of(m.begin(), m.end(), [&](uint32_t b) { return !omega(u, b, k); });
            if (!perp || ((in_m >> u) & 1)) {
                continue;
            }
            if (v == 0) {
                v = u;
            } else if (omega(u, v, k)) {
                vp = u;
            }
        }
        if (vp == 0) {
            throw std::logic_error("tight_bound: no symplectic pair in M^perp");
        }
        size_t worst = 0;
        for (uint32_t ext : {v, vp, v ^ vp}) {
            auto lag = m;
            lag.push_back(ext);
            worst = std::max(worst, coherence(code_state(code, lag, 0), basis));
        }
        best = std::min(best, worst);
    }
    return best;
}

bool BoundReport::ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const BoundRow &r) { return r.ok(); });
}

std::string BoundReport::str() const {
    std::ostringstream out;
    out << "code " << code << "\n";
    out << "basis\td\td_deph\tC_PD\ttight\tslack\tstatus\n";
    for (const auto &r : rows) {
        out << r.basis.str() << "\t" << r.distance << "\t"
            << (r.dephasing_distance ? std::to_string(*r.dephasing_distance) : "-") << "\t" << r.c_pd << "\t" << r.tight << "\t"
            << static_cast<long>(r.tight) - static_cast<long>(r.distance) << "\t" << (r.ok() ? "ok" : "VIOLATED")
            << "\n";
    }
    return out.str();
}

BoundReport verify_coherence_bound(const CodeSpec &code, const std::vector<LocalPauliBasis> &bases) {
    BoundReport rep;
    rep.code = code.name;
    size_t d = brute_force_distance(code);
    for (const auto &b : bases) {
        rep.rows.push_back(
            {b, d, dephasing_distance(code, b), max_coherent_code_state(code, b).coherence, tight_bound(code, b)});
    }
    return rep;
}

std::vector<LocalPauliBasis> standard_bases(size_t n, size_t random_count, Rng &rng) {
    std::vector<LocalPauliBasis> out = {LocalPauliBasis::uniform(n, Axis::X), LocalPauliBasis::uniform(n, Axis::Z),
                                        LocalPauliBasis::uniform(n, Axis::Y)};
    for (size_t i = 0; i < random_count; i++) {
        LocalPauliBasis b;
        for (size_t q = 0; q < n; q++) {
            b.axes.push_back(static_cast<Axis>(uniform_below(rng, 3)));
        }
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<size_t> attack_sequence(const StabilizerTableau &state, const LocalPauliBasis &basis, size_t m) {
    size_t n = state.num_qubits();
    require(basis.size() == n, "attack_sequence: basis length mismatch");
    require(!state.is_pure(), "attack_sequence: state must be mixed");
    size_t c = coherence(state, basis);
    if (m <= c) {
        throw std::invalid_argument("attack_sequence: need M > C = " + std::to_string(c) + ", got M = " +
                                    std::to_string(m));
    }
    // Relabeled conjugate parts of the generators, in reduced echelon form:
    // each pivot column meets exactly one row, so measuring the basis axis
    // there swaps that row for a diagonal one.
    auto gens = state.generators();
    BitMatrix zparts(gens.size(), n);
    for (size_t i = 0; i < gens.size(); i++) {
        PauliString r = relabel_to_x(basis, gens[i]);
        for (size_t q = 0; q < n; q++) {
            zparts.set(i, q, r.zs.get(q));
        }
    }
    Elimination e = gaussian_eliminate(zparts);
    std::vector<size_t> seq(e.pivot_cols.begin(), e.pivot_cols.begin() + e.rank);

    StabilizerTableau sim = state;
    auto policy = MeasurePolicy::forced(false);
    for (size_t q : seq) {
        sim.measure(q, basis.axes[q], policy);
    }
    for (size_t q = 0; q < n && seq.size() < m && !sim.is_pure(); q++) {
        if (sim.measure(q, basis.axes[q], policy).kind == MeasureCase::ENTROPY_REDUCING) {
            seq.push_back(q);
        }
    }
    // Further measurements cannot lower the entropy; repeat the last site.
    while (seq.size() < m) {
        seq.push_back(seq.back());
    }
    return seq;
}

std::vector<size_t> reduce_to_product(const StabilizerTableau &state, const LocalPauliBasis &basis) {
    size_t n = state.num_qubits();
    require(basis.size() == n, "reduce_to_product: basis length mismatch");
    require(state.is_pure(), "reduce_to_product: state must be pure");
    StabilizerTableau sim = state;
    auto policy = MeasurePolicy::forced(false);
    std::vector<size_t> seq;
    for (size_t q = 0; q < n; q++) {
        if (!sim.measure(q, basis.axes[q], policy).deterministic()) {
            seq.push_back(q);
        }
    }
    return seq;
}

CodeSpec random_css_code(size_t n, size_t rx, size_t k_min, size_t k_max, Rng &rng) {
    require(n >= 1 && n <= 64, "random_css_code: need 1 <= n <= 64");
    require(rx < n && k_min <= k_max && k_max <= n - rx, "random_css_code: inconsistent sizes");
    for (int attempt = 0; attempt < 10000; attempt++) {
        BitMatrix hx(rx, n);
        F2Basis bx(1);
        for (size_t i = 0; i < rx;) {
            uint64_t v = rng() & (n == 64 ? ~0ULL : (1ULL << n) - 1);
            if (bx.insert(std::span<const uint64_t>(&v, 1))) {
                hx.row(i)[0] = v;
                i++;
            }
        }
        size_t k = k_min + uniform_below(rng, k_max - k_min + 1);
        size_t rz = n - rx - k;
        BitMatrix hz(rz, n);
        F2Basis bz(1);
        size_t tries = 0;
        for (size_t i = 0; i < rz && tries < 100000; tries++) {
            uint64_t v = rng() & (n == 64 ? ~0ULL : (1ULL << n) - 1);
            bool orth = true;
            for (size_t r = 0; r < rx; r++) {
                orth = orth && !(__builtin_popcountll(v & hx.row(r)[0]) & 1);
            }
            if (orth && bz.insert(std::span<const uint64_t>(&v, 1))) {
                hz.row(i)[0] = v;
                i++;
            }
        }
        if (bz.dim() != rz) {
            continue;
        }
        CodeSpec c = css_code(hx, hz);
        c.name = "random_css(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")";
        return c;
    }
    throw std::runtime_error("random_css_code: sampling failed");
}

}  // namespace cohlab
