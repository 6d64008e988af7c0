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

#include "cohlab/pauli.h"

#include <bit>
#include <stdexcept>

namespace cohlab {

char axis_char(Axis a) {
    switch (a) {
        case Axis::X:
            return 'X';
        case Axis::Y:
            return 'Y';
        case Axis::Z:
            return 'Z';
    }
    return '?';
}

Axis parse_axis(char c) {
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
    throw std::invalid_argument(std::string("not a Pauli axis: '") + c + "'");
}

PauliString::PauliString(size_t num_qubits) : xs(num_qubits), zs(num_qubits) {
}

PauliString PauliString::single(size_t num_qubits, size_t site, Axis axis, bool negative) {
    PauliString p(num_qubits);
    p.set(site, axis_char(axis));
    p.sign = negative;
    return p;
}

PauliString PauliString::parse(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        negative = text[0] == '-';
        text.remove_prefix(1);
    }
    PauliString p(text.size());
    p.sign = negative;
    for (size_t k = 0; k < text.size(); k++) {
        p.set(k, text[k]);
    }
    return p;
}

char PauliString::at(size_t site) const {
    bool x = xs.get(site);
    bool z = zs.get(site);
    return "IZXY"[(x << 1) | z];
}

void PauliString::set(size_t site, char pauli) {
    switch (pauli) {
        case 'I':
        case '_':
            xs.set(site, false);
            zs.set(site, false);
            return;
        case 'X':
            xs.set(site, true);
            zs.set(site, false);
            return;
        case 'Y':
            xs.set(site, true);
            zs.set(site, true);
            return;
        case 'Z':
            xs.set(site, false);
            zs.set(site, true);
            return;
    }
    throw std::invalid_argument(std::string("not a Pauli: '") + pauli + "'");
}

bool PauliString::is_identity() const {
    return !xs.any() && !zs.any();
}

std::string PauliString::str() const {
    std::string s(1, sign ? '-' : '+');
    for (size_t k = 0; k < size(); k++) {
        s += at(k);
    }
    return s;
}

LocalPauliBasis LocalPauliBasis::uniform(size_t n, Axis axis) {
    return {std::vector<Axis>(n, axis)};
}

LocalPauliBasis LocalPauliBasis::parse(std::string_view text) {
    LocalPauliBasis b;
    for (char c : text) {
        b.axes.push_back(parse_axis(c));
    }
    return b;
}

std::string LocalPauliBasis::str() const {
    std::string s;
    for (Axis a : axes) {
        s += axis_char(a);
    }
    return s;
}

bool commute(const PauliString &p, const PauliString &q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("commute: length mismatch");
    }
    auto px = p.xs.words();
    auto pz = p.zs.words();
    auto qx = q.xs.words();
    auto qz = q.zs.words();
    uint64_t acc = 0;
    for (size_t k = 0; k < px.size(); k++) {
        acc ^= (px[k] & qz[k]) ^ (pz[k] & qx[k]);
    }
    return (std::popcount(acc) & 1) == 0;
}

PhasedPauli multiply_with_phase(const PauliString &p, const PauliString &q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("multiply: length mismatch");
    }
    PhasedPauli out{PauliString(p.size()), 0};
    int log_i = 0;
    auto px = p.xs.words();
    auto pz = p.zs.words();
    auto qx = q.xs.words();
    auto qz = q.zs.words();
    auto ox = out.pauli.xs.words();
    auto oz = out.pauli.zs.words();
    for (size_t k = 0; k < px.size(); k++) {
        log_i = pauli_product_log_i(px[k], pz[k], qx[k], qz[k], log_i);
        ox[k] = px[k] ^ qx[k];
        oz[k] = pz[k] ^ qz[k];
    }
    log_i &= 3;
    out.pauli.sign = p.sign ^ q.sign ^ (log_i >= 2);
    out.log_i = log_i & 1;
    return out;
}

PauliString multiply(const PauliString &p, const PauliString &q) {
    PhasedPauli r = multiply_with_phase(p, q);
    if (r.log_i) {
        throw std::invalid_argument("multiply: anticommuting factors " + p.str() + " and " + q.str());
    }
    return r.pauli;
}

size_t weight(const PauliString &p) {
    size_t n = 0;
    auto x = p.xs.words();
    auto z = p.zs.words();
    for (size_t k = 0; k < x.size(); k++) {
        n += std::popcount(x[k] | z[k]);
    }
    return n;
}

PauliString conjugate_by_gate(const PauliString &p, const Gate &gate) {
    PauliString out = p;
    size_t n = p.size();
    if (gate.kind == Gate::Kind::CNOT) {
        size_t c = gate.a;
        size_t t = gate.b;
        if (c >= n || t >= n || c == t) {
            throw std::out_of_range("conjugate_by_gate: bad CNOT sites");
        }
        bool xc = p.xs.get(c), zc = p.zs.get(c), xt = p.xs.get(t), zt = p.zs.get(t);
        out.sign ^= xc && zt && !(xt ^ zc);
        out.xs.set(t, xt ^ xc);
        out.zs.set(c, zc ^ zt);
    } else {
        size_t q = gate.a;
        if (q >= n) {
            throw std::out_of_range("conjugate_by_gate: bad PHASE site");
        }
        bool x = p.xs.get(q), z = p.zs.get(q);
        out.sign ^= x && z;
        out.zs.set(q, z ^ x);
    }
    return out;
}

}  // namespace cohlab
