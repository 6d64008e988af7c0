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

#include "cohlab/stabilizer.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace cohlab {

const char *measure_case_name(MeasureCase c) {
    switch (c) {
        case MeasureCase::NO_EFFECT:
            return "no-effect";
        case MeasureCase::ENTROPY_REDUCING:
            return "entropy-reducing";
        case MeasureCase::STATE_CHANGING:
            return "state-changing";
    }
    return "?";
}

StabilizerTableau::StabilizerTableau(size_t num_qubits)
    : n_(num_qubits),
      hw_(words_for_bits(num_qubits)),
      w_(2 * words_for_bits(num_qubits)),
      num_stab_(0),
      xs_(num_qubits * w_, 0),
      zs_(num_qubits * w_, 0),
      signs_(w_, 0),
      stab_(hw_, 0),
      anti_(w_, 0),
      scratch_(2 * w_, 0) {
    for (size_t k = 0; k < n_; k++) {
        size_t a = row_a(k), b = row_b(k);
        xcol(k)[a >> 6] |= uint64_t{1} << (a & 63);
        zcol(k)[b >> 6] |= uint64_t{1} << (b & 63);
    }
}

void StabilizerTableau::set_stab_pair(size_t k, bool v) {
    uint64_t m = uint64_t{1} << (k & 63);
    if (v) {
        stab_[k >> 6] |= m;
    } else {
        stab_[k >> 6] &= ~m;
    }
}

void StabilizerTableau::check_site(size_t q) const {
    if (q >= n_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(n_) + " qubits");
    }
}

StabilizerTableau StabilizerTableau::product_state(std::string_view sites) {
    StabilizerTableau t(sites.size());
    for (size_t k = 0; k < sites.size(); k++) {
        char c = sites[k];
        if (c == '.') {
            continue;
        }
        bool negative = std::islower(static_cast<unsigned char>(c));
        Axis axis = parse_axis(c);
        PauliString b = PauliString::single(t.n_, k, axis, negative);
        PauliString a = PauliString::single(t.n_, k, axis == Axis::Z ? Axis::X : Axis::Z);
        t.write_row(t.row_a(k), a);
        t.write_row(t.row_b(k), b);
        t.set_stab_pair(k, true);
        t.num_stab_++;
    }
    return t;
}

StabilizerTableau StabilizerTableau::from_generators(size_t num_qubits, const std::vector<PauliString> &gens) {
    for (const auto &g : gens) {
        if (g.size() != num_qubits) {
            throw std::invalid_argument("from_generators: generator length mismatch");
        }
    }
    for (size_t i = 0; i < gens.size(); i++) {
        for (size_t j = i + 1; j < gens.size(); j++) {
            if (!commute(gens[i], gens[j])) {
                throw std::invalid_argument(
                    "from_generators: generators " + gens[i].str() + " and " + gens[j].str() + " anticommute");
            }
        }
    }
    if (gens.size() > num_qubits) {
        throw std::invalid_argument("from_generators: more generators than qubits");
    }

    // Symplectic Gram-Schmidt over [generators..., X_0, Z_0, X_1, Z_1, ...].
    // Generators go first so each one is paired with a destabilizer; the
    // leftover single-qubit vectors complete the frame with logical pairs.
    struct Item {
        PauliString p;
        bool stab;
    };
    std::vector<Item> pool;
    pool.reserve(gens.size() + 2 * num_qubits);
    for (const auto &g : gens) {
        pool.push_back({g, true});
    }
    for (size_t q = 0; q < num_qubits; q++) {
        pool.push_back({PauliString::single(num_qubits, q, Axis::X), false});
        pool.push_back({PauliString::single(num_qubits, q, Axis::Z), false});
    }
    struct Pair {
        PauliString a, b;
        bool stab;
    };
    std::vector<Pair> stab_pairs, logical_pairs;
    size_t head = 0;
    while (head < pool.size()) {
        Item u = std::move(pool[head++]);
        if (u.p.is_identity()) {
            if (u.stab) {
                throw std::invalid_argument("from_generators: generators are not independent");
            }
            continue;
        }
        size_t partner = head;
        while (partner < pool.size() && commute(u.p, pool[partner].p)) {
            partner++;
        }
        if (partner == pool.size()) {
            throw std::logic_error("from_generators: no symplectic partner");
        }
        Item w = std::move(pool[partner]);
        pool.erase(pool.begin() + partner);
        for (size_t i = head; i < pool.size(); i++) {
            Item &v = pool[i];
            bool with_w = !commute(v.p, w.p);
            bool with_u = !commute(v.p, u.p);
            if (v.stab) {
                if (with_w) {
                    v.p = multiply(v.p, u.p);
                }
            } else {
                if (with_w) {
                    v.p = multiply_with_phase(v.p, u.p).pauli;
                }
                if (with_u) {
                    v.p = multiply_with_phase(v.p, w.p).pauli;
                }
                v.p.sign = false;
            }
        }
        if (u.stab) {
            w.p.sign = false;
            stab_pairs.push_back({std::move(w.p), std::move(u.p), true});
        } else {
            u.p.sign = false;
            w.p.sign = false;
            logical_pairs.push_back({std::move(u.p), std::move(w.p), false});
        }
    }
    if (stab_pairs.size() + logical_pairs.size() != num_qubits) {
        throw std::logic_error("from_generators: incomplete frame");
    }

    StabilizerTableau t(num_qubits);
    size_t k = 0;
    for (auto *list : {&stab_pairs, &logical_pairs}) {
        for (const auto &pr : *list) {
            t.write_row(t.row_a(k), pr.a);
            t.write_row(t.row_b(k), pr.b);
            t.set_stab_pair(k, pr.stab);
            k++;
        }
    }
    t.num_stab_ = stab_pairs.size();
    return t;
}

PauliString StabilizerTableau::row_pauli(size_t r) const {
    PauliString p(n_);
    for (size_t q = 0; q < n_; q++) {
        if (bit(xcol(q), r)) {
            p.xs.set(q, true);
        }
        if (bit(zcol(q), r)) {
            p.zs.set(q, true);
        }
    }
    p.sign = bit(signs_.data(), r);
    return p;
}

void StabilizerTableau::write_row(size_t r, const PauliString &p) {
    uint64_t m = uint64_t{1} << (r & 63);
    size_t w = r >> 6;
    for (size_t q = 0; q < n_; q++) {
        xcol(q)[w] = p.xs.get(q) ? (xcol(q)[w] | m) : (xcol(q)[w] & ~m);
        zcol(q)[w] = p.zs.get(q) ? (zcol(q)[w] | m) : (zcol(q)[w] & ~m);
    }
    signs_[w] = p.sign ? (signs_[w] | m) : (signs_[w] & ~m);
}

void StabilizerTableau::copy_row(size_t src, size_t dst) {
    size_t ws = src >> 6, wd = dst >> 6;
    uint64_t ms = uint64_t{1} << (src & 63);
    uint64_t md = uint64_t{1} << (dst & 63);
    auto copy_bit = [&](uint64_t *col) {
        col[wd] = (col[ws] & ms) ? (col[wd] | md) : (col[wd] & ~md);
    };
    for (size_t q = 0; q < n_; q++) {
        copy_bit(xcol(q));
        copy_bit(zcol(q));
    }
    copy_bit(signs_.data());
}

std::vector<PauliString> StabilizerTableau::generators() const {
    std::vector<PauliString> out;
    out.reserve(num_stab_);
    for (size_t k = 0; k < n_; k++) {
        if (is_stab_pair(k)) {
            out.push_back(row_pauli(row_b(k)));
        }
    }
    return out;
}

std::vector<std::pair<PauliString, PauliString>> StabilizerTableau::logical_pairs() const {
    std::vector<std::pair<PauliString, PauliString>> out;
    for (size_t k = 0; k < n_; k++) {
        if (!is_stab_pair(k)) {
            out.emplace_back(row_pauli(row_a(k)), row_pauli(row_b(k)));
        }
    }
    return out;
}

std::vector<PauliString> StabilizerTableau::canonical_generators() const {
    std::vector<PauliString> g = generators();
    size_t next = 0;
    for (size_t col = 0; col < 2 * n_ && next < g.size(); col++) {
        bool zpart = col >= n_;
        size_t q = zpart ? col - n_ : col;
        auto has = [&](const PauliString &p) { return zpart ? p.zs.get(q) : p.xs.get(q); };
        size_t piv = next;
        while (piv < g.size() && !has(g[piv])) {
            piv++;
        }
        if (piv == g.size()) {
            continue;
        }
        std::swap(g[piv], g[next]);
        for (size_t r = 0; r < g.size(); r++) {
            if (r != next && has(g[r])) {
                g[r] = multiply(g[r], g[next]);
            }
        }
        next++;
    }
    return g;
}

bool StabilizerTableau::same_state(const StabilizerTableau &other) const {
    return n_ == other.n_ && canonical_generators() == other.canonical_generators();
}

void StabilizerTableau::apply(const Gate &gate) {
    if (gate.kind == Gate::Kind::CNOT) {
        cnot(gate.a, gate.b);
    } else {
        phase(gate.a);
    }
}

void StabilizerTableau::cnot(size_t control, size_t target) {
    check_site(control);
    check_site(target);
    if (control == target) {
        throw std::invalid_argument("cnot: control equals target");
    }
    uint64_t *xc = xcol(control), *zc = zcol(control);
    uint64_t *xt = xcol(target), *zt = zcol(target);
    uint64_t *s = signs_.data();
    for (size_t w = 0; w < w_; w++) {
        s[w] ^= xc[w] & zt[w] & ~(xt[w] ^ zc[w]);
        xt[w] ^= xc[w];
        zc[w] ^= zt[w];
    }
}

void StabilizerTableau::phase(size_t q) {
    check_site(q);
    uint64_t *x = xcol(q), *z = zcol(q);
    uint64_t *s = signs_.data();
    for (size_t w = 0; w < w_; w++) {
        s[w] ^= x[w] & z[w];
        z[w] ^= x[w];
    }
}

void StabilizerTableau::anticommuting_rows(const PauliString &p, std::vector<uint64_t> &out) const {
    if (p.size() != n_) {
        throw std::invalid_argument("Pauli length " + std::to_string(p.size()) + " does not match " + std::to_string(n_));
    }
    out.assign(w_, 0);
    auto px = p.xs.words();
    auto pz = p.zs.words();
    for (size_t k = 0; k < px.size(); k++) {
        uint64_t support = px[k] | pz[k];
        while (support) {
            size_t q = k * 64 + std::countr_zero(support);
            support &= support - 1;
            bool x = (px[k] >> (q & 63)) & 1;
            bool z = (pz[k] >> (q & 63)) & 1;
            const uint64_t *xc = xcol(q), *zc = zcol(q);
            for (size_t w = 0; w < w_; w++) {
                out[w] ^= (x ? zc[w] : 0) ^ (z ? xc[w] : 0);
            }
        }
    }
}

void StabilizerTableau::apply_pauli(const PauliString &p) {
    anticommuting_rows(p, anti_);
    for (size_t w = 0; w < w_; w++) {
        signs_[w] ^= anti_[w];
    }
}

void StabilizerTableau::multiply_rows_by(const std::vector<uint64_t> &mask, size_t pivot) {
    // Per-row phase exponent mod 4 in two bit-planes (c0 + 2 c1).
    uint64_t *c0 = scratch_.data();
    uint64_t *c1 = scratch_.data() + w_;
    std::fill(scratch_.begin(), scratch_.end(), 0);
    for (size_t q = 0; q < n_; q++) {
        uint64_t *xc = xcol(q), *zc = zcol(q);
        bool px = bit(xc, pivot), pz = bit(zc, pivot);
        if (!px && !pz) {
            continue;
        }
        for (size_t w = 0; w < w_; w++) {
            uint64_t m = mask[w];
            if (!m) {
                continue;
            }
            uint64_t x = xc[w], z = zc[w];
            uint64_t plus, minus;
            if (px && !pz) {
                plus = ~x & z;
                minus = x & z;
            } else if (!px) {
                plus = x & z;
                minus = x & ~z;
            } else {
                plus = x & ~z;
                minus = ~x & z;
            }
            plus &= m;
            minus &= m;
            c1[w] ^= c0[w] & plus;
            c0[w] ^= plus;
            c1[w] ^= ~c0[w] & minus;
            c0[w] ^= minus;
            if (px) {
                xc[w] ^= m;
            }
            if (pz) {
                zc[w] ^= m;
            }
        }
    }
    bool ps = bit(signs_.data(), pivot);
    for (size_t w = 0; w < w_; w++) {
        signs_[w] ^= (c1[w] ^ (ps ? ~uint64_t{0} : 0)) & mask[w];
    }
}

bool StabilizerTableau::product_sign(const std::vector<uint64_t> &mask) const {
    // Ordered product over selected b-rows, column by column: the running
    // product at each row is the prefix parity of earlier rows' bits.
    int log_i = 0;
    for (size_t q = 0; q < n_; q++) {
        const uint64_t *xc = xcol(q) + hw_;
        const uint64_t *zc = zcol(q) + hw_;
        bool carry_x = false, carry_z = false;
        for (size_t w = 0; w < hw_; w++) {
            uint64_t m = mask[hw_ + w];
            uint64_t x = xc[w] & m, z = zc[w] & m;
            uint64_t yx = x, yz = z;
            for (int s = 1; s < 64; s <<= 1) {
                yx ^= yx << s;
                yz ^= yz << s;
            }
            uint64_t ex = (yx << 1) ^ (carry_x ? ~uint64_t{0} : 0);
            uint64_t ez = (yz << 1) ^ (carry_z ? ~uint64_t{0} : 0);
            log_i = pauli_product_log_i(ex, ez, x, z, log_i);
            carry_x ^= yx >> 63;
            carry_z ^= yz >> 63;
        }
    }
    uint64_t sign_par = 0;
    for (size_t w = 0; w < hw_; w++) {
        sign_par ^= signs_[hw_ + w] & mask[hw_ + w];
    }
    log_i &= 3;
    if (log_i & 1) {
        throw std::logic_error("product_sign: generators do not commute");
    }
    return (std::popcount(sign_par) & 1) ^ (log_i >> 1);
}

MeasurementRecord StabilizerTableau::measure(size_t q, Axis axis, const MeasurePolicy &policy) {
    check_site(q);
    return measure(PauliString::single(n_, q, axis), policy);
}

MeasurementRecord StabilizerTableau::measure(const PauliString &p, const MeasurePolicy &policy) {
    anticommuting_rows(p, anti_);
    auto choose = [&]() -> bool {
        if (policy.kind == MeasurePolicy::Kind::RANDOM) {
            return coin(*policy.rng);
        }
        return policy.bit;
    };

    for (size_t w = 0; w < hw_; w++) {
        uint64_t hit = anti_[hw_ + w] & stab_[w];
        if (hit) {
            size_t k = w * 64 + std::countr_zero(hit);
            size_t a = row_a(k), b = row_b(k);
            std::vector<uint64_t> mask = anti_;
            mask[a >> 6] &= ~(uint64_t{1} << (a & 63));
            mask[b >> 6] &= ~(uint64_t{1} << (b & 63));
            multiply_rows_by(mask, b);
            copy_row(b, a);
            bool outcome = choose();
            PauliString signed_p = p;
            signed_p.sign ^= outcome;
            write_row(b, signed_p);
            return {p, outcome, MeasureCase::STATE_CHANGING};
        }
    }

    for (size_t half = 0; half < 2; half++) {
        for (size_t w = 0; w < hw_; w++) {
            uint64_t hit = anti_[half * hw_ + w] & ~stab_[w];
            if (hit) {
                size_t k = w * 64 + std::countr_zero(hit);
                size_t l = half ? row_b(k) : row_a(k);
                size_t lp = half ? row_a(k) : row_b(k);
                std::vector<uint64_t> mask = anti_;
                mask[l >> 6] &= ~(uint64_t{1} << (l & 63));
                mask[lp >> 6] &= ~(uint64_t{1} << (lp & 63));
                multiply_rows_by(mask, l);
                if (half) {
                    copy_row(l, row_a(k));
                }
                bool outcome = choose();
                PauliString signed_p = p;
                signed_p.sign ^= outcome;
                write_row(row_b(k), signed_p);
                set_stab_pair(k, true);
                num_stab_++;
                return {p, outcome, MeasureCase::ENTROPY_REDUCING};
            }
        }
    }

    std::vector<uint64_t> mask(w_, 0);
    for (size_t w = 0; w < hw_; w++) {
        mask[hw_ + w] = anti_[w] & stab_[w];
    }
    bool outcome = product_sign(mask) ^ p.sign;
    if (policy.kind == MeasurePolicy::Kind::POSTSELECT && outcome != policy.bit) {
        throw PostselectionError("postselection on " + p.str() + " impossible: outcome is fixed");
    }
    return {p, outcome, MeasureCase::NO_EFFECT};
}

bool StabilizerTableau::dephase(const PauliString &p) {
    anticommuting_rows(p, anti_);
    for (size_t w = 0; w < hw_; w++) {
        uint64_t hit = anti_[hw_ + w] & stab_[w];
        if (hit) {
            size_t k = w * 64 + std::countr_zero(hit);
            size_t a = row_a(k), b = row_b(k);
            std::vector<uint64_t> mask = anti_;
            mask[a >> 6] &= ~(uint64_t{1} << (a & 63));
            mask[b >> 6] &= ~(uint64_t{1} << (b & 63));
            multiply_rows_by(mask, b);
            // (old b_k, p) becomes a logical pair.
            copy_row(b, a);
            PauliString unsigned_p = p;
            unsigned_p.sign = false;
            write_row(b, unsigned_p);
            set_stab_pair(k, false);
            num_stab_--;
            return true;
        }
    }
    return false;
}

bool StabilizerTableau::group_contains(const PauliString &p, bool *sign_out) const {
    anticommuting_rows(p, anti_);
    for (size_t w = 0; w < hw_; w++) {
        if ((anti_[hw_ + w] & stab_[w]) || ((anti_[w] | anti_[hw_ + w]) & ~stab_[w])) {
            return false;
        }
    }
    std::vector<uint64_t> mask(w_, 0);
    for (size_t w = 0; w < hw_; w++) {
        mask[hw_ + w] = anti_[w] & stab_[w];
    }
    if (sign_out) {
        *sign_out = product_sign(mask);
    }
    return true;
}

void StabilizerTableau::stab_column(size_t q, bool z_part, std::span<uint64_t> out) const {
    check_site(q);
    const uint64_t *c = (z_part ? zcol(q) : xcol(q)) + hw_;
    for (size_t w = 0; w < hw_; w++) {
        out[w] = c[w] & stab_[w];
    }
}

std::string StabilizerTableau::to_snapshot() const {
    std::string s = std::to_string(n_) + " " + std::to_string(num_stab_) + "\n";
    for (const auto &g : canonical_generators()) {
        s += g.str();
        s += '\n';
    }
    return s;
}

StabilizerTableau StabilizerTableau::from_snapshot(std::string_view text) {
    std::istringstream in{std::string(text)};
    size_t n, ns;
    if (!(in >> n >> ns)) {
        throw std::invalid_argument("snapshot: missing header 'n N_s'");
    }
    std::vector<PauliString> gens;
    for (size_t i = 0; i < ns; i++) {
        std::string line;
        if (!(in >> line)) {
            throw std::invalid_argument("snapshot: expected " + std::to_string(ns) + " generators");
        }
        gens.push_back(PauliString::parse(line));
    }
    return from_generators(n, gens);
}

void StabilizerTableau::check_invariants() const {
    std::vector<PauliString> rows;
    for (size_t k = 0; k < n_; k++) {
        rows.push_back(row_pauli(row_a(k)));
    }
    for (size_t k = 0; k < n_; k++) {
        rows.push_back(row_pauli(row_b(k)));
    }
    for (size_t i = 0; i < 2 * n_; i++) {
        for (size_t j = i + 1; j < 2 * n_; j++) {
            bool should_anticommute = j == i + n_;
            if (commute(rows[i], rows[j]) == should_anticommute) {
                throw std::logic_error("frame invariant broken between rows " + std::to_string(i) + " and " +
                                       std::to_string(j));
            }
        }
    }
    size_t count = 0;
    for (size_t k = 0; k < n_; k++) {
        count += is_stab_pair(k);
    }
    if (count != num_stab_) {
        throw std::logic_error("stabilizer count mismatch");
    }
}

void relabel_to_x(const LocalPauliBasis &basis, size_t q, bool &x, bool &z) {
    switch (basis.axes[q]) {
        case Axis::X:
            return;
        case Axis::Z:
            std::swap(x, z);
            return;
        case Axis::Y:
            z ^= x;
            return;
    }
}

PauliString relabel_to_x(const LocalPauliBasis &basis, const PauliString &p) {
    if (basis.size() != p.size()) {
        throw std::invalid_argument("relabel_to_x: basis length mismatch");
    }
    PauliString out = p;
    for (size_t q = 0; q < p.size(); q++) {
        bool x = p.xs.get(q), z = p.zs.get(q);
        relabel_to_x(basis, q, x, z);
        out.xs.set(q, x);
        out.zs.set(q, z);
    }
    return out;
}

namespace {

/// Rank of the relabeled X- or Z-parts of the generators, via columns.
size_t relabeled_part_rank(const StabilizerTableau &state, const LocalPauliBasis &basis, bool z_part) {
    size_t hw = state.stab_column_words();
    std::vector<uint64_t> xv(hw), zv(hw), v(hw);
    F2Basis span(hw);
    for (size_t q = 0; q < state.num_qubits(); q++) {
        state.stab_column(q, false, xv);
        state.stab_column(q, true, zv);
        Axis a = basis.axes[q];
        for (size_t w = 0; w < hw; w++) {
            // Relabeled Z-part: z (X axis), x (Z axis), x^z (Y axis).
            // Relabeled X-part: x (X axis), z (Z axis), x (Y axis).
            if (z_part) {
                v[w] = a == Axis::X ? zv[w] : a == Axis::Z ? xv[w] : (xv[w] ^ zv[w]);
            } else {
                v[w] = a == Axis::Z ? zv[w] : xv[w];
            }
        }
        span.insert(v);
    }
    return span.dim();
}

}  // namespace

CssGauge css_gauge(const StabilizerTableau &state, const LocalPauliBasis &basis) {
    size_t n = state.num_qubits();
    if (basis.size() != n) {
        throw std::invalid_argument("css_gauge: basis length mismatch");
    }
    std::vector<PauliString> g = state.generators();
    std::vector<PauliString> rel;
    rel.reserve(g.size());
    for (const auto &p : g) {
        rel.push_back(relabel_to_x(basis, p));
    }
    auto add = [&](size_t src, size_t dst) {
        g[dst] = multiply(g[dst], g[src]);
        rel[dst].xs ^= rel[src].xs;
        rel[dst].zs ^= rel[src].zs;
    };
    auto swap_rows = [&](size_t i, size_t j) {
        std::swap(g[i], g[j]);
        std::swap(rel[i], rel[j]);
    };
    // Eliminate on one part over rows [lo, hi); returns the number of pivots,
    // which are moved to the front of the range.
    auto eliminate = [&](bool z_part, size_t lo, size_t hi, std::vector<size_t> *pivot_cols) {
        size_t next = lo;
        for (size_t q = 0; q < n && next < hi; q++) {
            auto has = [&](size_t r) { return z_part ? rel[r].zs.get(q) : rel[r].xs.get(q); };
            size_t piv = next;
            while (piv < hi && !has(piv)) {
                piv++;
            }
            if (piv == hi) {
                continue;
            }
            swap_rows(piv, next);
            for (size_t r = lo; r < hi; r++) {
                if (r != next && has(r)) {
                    add(next, r);
                }
            }
            if (pivot_cols) {
                pivot_cols->push_back(q);
            }
            next++;
        }
        return next - lo;
    };

    size_t ns = g.size();
    // Conjugate (Z) columns first: rows without a Z pivot are pure X.
    size_t rz = eliminate(true, 0, ns, nullptr);
    // Canonicalize the pure-X block and clear its pivots from the other rows.
    std::vector<size_t> xpiv;
    size_t nx = eliminate(false, rz, ns, &xpiv);
    for (size_t i = 0; i < nx; i++) {
        for (size_t r = 0; r < rz; r++) {
            if (rel[r].xs.get(xpiv[i])) {
                add(rz + i, r);
            }
        }
    }
    // Diagonal (X) columns among the Z-pivot rows: pivots are mixed rows, the
    // rest have no X part left and form the pure-Z block.
    size_t ny = eliminate(false, 0, rz, nullptr);

    CssGauge out;
    out.n_x = nx;
    out.n_y = ny;
    out.n_z = rz - ny;
    for (size_t r = rz; r < ns; r++) {
        out.generators.push_back(g[r]);
    }
    for (size_t r = ny; r < rz; r++) {
        out.generators.push_back(g[r]);
    }
    for (size_t r = 0; r < ny; r++) {
        out.generators.push_back(g[r]);
    }
    return out;
}

size_t coherence(const StabilizerTableau &state, const LocalPauliBasis &basis) {
    if (basis.size() != state.num_qubits()) {
        throw std::invalid_argument("coherence: basis length mismatch");
    }
    // n_y + n_z of the gauge equals the rank of the relabeled Z-parts.
    return relabeled_part_rank(state, basis, true);
}

size_t coherence(const StabilizerTableau &state, Axis uniform_axis) {
    return coherence(state, LocalPauliBasis::uniform(state.num_qubits(), uniform_axis));
}

size_t coherence_oracle(const StabilizerTableau &state, const LocalPauliBasis &basis, Rng &rng) {
    if (basis.size() != state.num_qubits()) {
        throw std::invalid_argument("coherence_oracle: basis length mismatch");
    }
    StabilizerTableau copy = state;
    size_t uncertain = 0;
    for (size_t q = 0; q < state.num_qubits(); q++) {
        auto rec = copy.measure(q, basis.axes[q], MeasurePolicy::random(rng));
        uncertain += !rec.deterministic();
    }
    return uncertain + state.num_stabilizers() - state.num_qubits();
}

namespace {

void insert_site(const StabilizerTableau &state, size_t q, F2Basis &span, std::vector<uint64_t> &buf) {
    state.stab_column(q, false, buf);
    span.insert(buf);
    state.stab_column(q, true, buf);
    span.insert(buf);
}

}  // namespace

size_t subsystem_entropy(const StabilizerTableau &state, std::span<const size_t> region) {
    size_t n = state.num_qubits();
    std::vector<char> in(n, 0);
    size_t size = 0;
    for (size_t q : region) {
        if (q >= n) {
            throw std::out_of_range("subsystem_entropy: site out of range");
        }
        if (!in[q]) {
            in[q] = 1;
            size++;
        }
    }
    size_t hw = state.stab_column_words();
    std::vector<uint64_t> buf(hw);
    F2Basis span(hw);
    if (state.is_pure() && 2 * size < n) {
        // S(R) = rank(G|_R) - |R| for pure states.
        for (size_t q = 0; q < n; q++) {
            if (in[q]) {
                insert_site(state, q, span, buf);
            }
        }
        return span.dim() - size;
    }
    for (size_t q = 0; q < n; q++) {
        if (!in[q]) {
            insert_site(state, q, span, buf);
        }
    }
    return size + span.dim() - state.num_stabilizers();
}

size_t subsystem_entropy(const StabilizerTableau &state, size_t begin, size_t end) {
    if (begin > end) {
        throw std::invalid_argument("subsystem_entropy: begin > end");
    }
    std::vector<size_t> region;
    for (size_t q = begin; q < end; q++) {
        region.push_back(q);
    }
    return subsystem_entropy(state, region);
}

std::vector<size_t> prefix_entropies(const StabilizerTableau &state, std::span<const size_t> order) {
    size_t n = state.num_qubits();
    std::vector<char> in(n, 0);
    for (size_t q : order) {
        if (q >= n || in[q]) {
            throw std::invalid_argument("prefix_entropies: order must list distinct valid sites");
        }
        in[q] = 1;
    }
    size_t hw = state.stab_column_words();
    std::vector<uint64_t> buf(hw);
    F2Basis span(hw);
    for (size_t q = 0; q < n; q++) {
        if (!in[q]) {
            insert_site(state, q, span, buf);
        }
    }
    size_t len = order.size();
    std::vector<size_t> out(len + 1);
    size_t ns = state.num_stabilizers();
    out[len] = len + span.dim() - ns;
    for (size_t x = len; x-- > 0;) {
        insert_site(state, order[x], span, buf);
        out[x] = x + span.dim() - ns;
    }
    return out;
}

size_t max_contiguous_entropy(const StabilizerTableau &state, size_t L) {
    size_t n = state.num_qubits();
    if (L > n) {
        throw std::invalid_argument("max_contiguous_entropy: L exceeds qubit count");
    }
    size_t best = 0;
    size_t max_len = n > L ? L : L - 1;
    if (state.is_pure()) {
        size_t hw = state.stab_column_words();
        std::vector<uint64_t> buf(hw);
        F2Basis span(hw);
        for (size_t s = 0; s < L; s++) {
            span.clear();
            for (size_t len = 1; len <= max_len; len++) {
                insert_site(state, (s + len - 1) % L, span, buf);
                best = std::max(best, span.dim() - len);
            }
        }
        return best;
    }
    std::vector<size_t> region;
    for (size_t s = 0; s < L; s++) {
        region.clear();
        for (size_t len = 1; len <= max_len; len++) {
            region.push_back((s + len - 1) % L);
            best = std::max(best, subsystem_entropy(state, region));
        }
    }
    return best;
}

long coherent_information(
    const StabilizerTableau &state, std::span<const size_t> system, std::span<const size_t> ancilla) {
    std::vector<size_t> joint(system.begin(), system.end());
    for (size_t a : ancilla) {
        if (std::find(system.begin(), system.end(), a) != system.end()) {
            throw std::invalid_argument("coherent_information: system and ancilla overlap");
        }
        joint.push_back(a);
    }
    return static_cast<long>(subsystem_entropy(state, system)) - static_cast<long>(subsystem_entropy(state, joint));
}

}  // namespace cohlab
