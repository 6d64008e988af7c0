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

#include "cohlab/f2linalg.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace cohlab {

BitVec::BitVec(size_t num_bits) : num_bits_(num_bits), words_(words_for_bits(num_bits), 0) {
}

BitVec BitVec::from_string(std::string_view text) {
    BitVec v(text.size());
    for (size_t i = 0; i < text.size(); i++) {
        if (text[i] == '1') {
            v.set(i, true);
        } else if (text[i] != '0') {
            throw std::invalid_argument("BitVec::from_string: expected '0' or '1'");
        }
    }
    return v;
}

bool BitVec::get(size_t i) const {
    if (i >= num_bits_) {
        throw std::out_of_range("BitVec::get index " + std::to_string(i));
    }
    return (words_[i >> 6] >> (i & 63)) & 1;
}

void BitVec::set(size_t i, bool value) {
    if (i >= num_bits_) {
        throw std::out_of_range("BitVec::set index " + std::to_string(i));
    }
    uint64_t m = uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= m;
    } else {
        words_[i >> 6] &= ~m;
    }
}

void BitVec::flip(size_t i) {
    if (i >= num_bits_) {
        throw std::out_of_range("BitVec::flip index " + std::to_string(i));
    }
    words_[i >> 6] ^= uint64_t{1} << (i & 63);
}

void BitVec::clear() {
    std::fill(words_.begin(), words_.end(), 0);
}

bool BitVec::any() const {
    for (uint64_t w : words_) {
        if (w) {
            return true;
        }
    }
    return false;
}

size_t BitVec::popcount() const {
    size_t n = 0;
    for (uint64_t w : words_) {
        n += std::popcount(w);
    }
    return n;
}

bool BitVec::dot(const BitVec &other) const {
    if (other.num_bits_ != num_bits_) {
        throw std::invalid_argument("BitVec::dot length mismatch");
    }
    uint64_t acc = 0;
    for (size_t k = 0; k < words_.size(); k++) {
        acc ^= words_[k] & other.words_[k];
    }
    return std::popcount(acc) & 1;
}

BitVec &BitVec::operator^=(const BitVec &other) {
    if (other.num_bits_ != num_bits_) {
        throw std::invalid_argument("BitVec length mismatch");
    }
    for (size_t k = 0; k < words_.size(); k++) {
        words_[k] ^= other.words_[k];
    }
    return *this;
}

BitVec &BitVec::operator&=(const BitVec &other) {
    if (other.num_bits_ != num_bits_) {
        throw std::invalid_argument("BitVec length mismatch");
    }
    for (size_t k = 0; k < words_.size(); k++) {
        words_[k] &= other.words_[k];
    }
    return *this;
}

BitVec &BitVec::operator|=(const BitVec &other) {
    if (other.num_bits_ != num_bits_) {
        throw std::invalid_argument("BitVec length mismatch");
    }
    for (size_t k = 0; k < words_.size(); k++) {
        words_[k] |= other.words_[k];
    }
    return *this;
}

bool BitVec::operator==(const BitVec &other) const {
    return num_bits_ == other.num_bits_ && words_ == other.words_;
}

std::string BitVec::str() const {
    std::string s(num_bits_, '0');
    for (size_t i = 0; i < num_bits_; i++) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

BitMatrix::BitMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for_bits(cols)), data_(rows * words_for_bits(cols), 0) {
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t k = 0; k < n; k++) {
        m.set(k, k, true);
    }
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string> &rows) {
    size_t cols = rows.empty() ? 0 : rows[0].size();
    BitMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        if (rows[r].size() != cols) {
            throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
        }
        m.set_row(r, BitVec::from_string(rows[r]));
    }
    return m;
}

bool BitMatrix::get(size_t r, size_t c) const {
    if (r >= rows_ || c >= cols_) {
        throw std::out_of_range("BitMatrix::get (" + std::to_string(r) + "," + std::to_string(c) + ")");
    }
    return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1;
}

void BitMatrix::set(size_t r, size_t c, bool value) {
    if (r >= rows_ || c >= cols_) {
        throw std::out_of_range("BitMatrix::set (" + std::to_string(r) + "," + std::to_string(c) + ")");
    }
    uint64_t &w = data_[r * stride_ + (c >> 6)];
    uint64_t m = uint64_t{1} << (c & 63);
    w = value ? (w | m) : (w & ~m);
}

std::span<uint64_t> BitMatrix::row(size_t r) {
    if (r >= rows_) {
        throw std::out_of_range("BitMatrix::row " + std::to_string(r));
    }
    return {data_.data() + r * stride_, stride_};
}

std::span<const uint64_t> BitMatrix::row(size_t r) const {
    if (r >= rows_) {
        throw std::out_of_range("BitMatrix::row " + std::to_string(r));
    }
    return {data_.data() + r * stride_, stride_};
}

BitVec BitMatrix::row_vec(size_t r) const {
    BitVec v(cols_);
    auto src = row(r);
    std::copy(src.begin(), src.end(), v.words().begin());
    return v;
}

void BitMatrix::set_row(size_t r, const BitVec &v) {
    if (v.size() != cols_) {
        throw std::invalid_argument("BitMatrix::set_row length mismatch");
    }
    auto dst = row(r);
    std::copy(v.words().begin(), v.words().end(), dst.begin());
}

void BitMatrix::add_row(size_t src, size_t dst) {
    auto s = std::span<const uint64_t>(row(src));
    auto d = row(dst);
    for (size_t k = 0; k < stride_; k++) {
        d[k] ^= s[k];
    }
}

void BitMatrix::swap_rows(size_t a, size_t b) {
    auto ra = row(a);
    auto rb = row(b);
    std::swap_ranges(ra.begin(), ra.end(), rb.begin());
}

void BitMatrix::zero_row(size_t r) {
    auto d = row(r);
    std::fill(d.begin(), d.end(), 0);
}

BitVec BitMatrix::mul(const BitVec &v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("BitMatrix::mul dimension mismatch");
    }
    BitVec out(rows_);
    for (size_t r = 0; r < rows_; r++) {
        const uint64_t *p = data_.data() + r * stride_;
        uint64_t acc = 0;
        for (size_t k = 0; k < stride_; k++) {
            acc ^= p[k] & v.words()[k];
        }
        if (std::popcount(acc) & 1) {
            out.set(r, true);
        }
    }
    return out;
}

BitMatrix BitMatrix::mul(const BitMatrix &other) const {
    if (other.rows_ != cols_) {
        throw std::invalid_argument("BitMatrix::mul dimension mismatch");
    }
    BitMatrix out(rows_, other.cols_);
    for (size_t r = 0; r < rows_; r++) {
        auto dst = out.row(r);
        for (size_t c = 0; c < cols_; c++) {
            if ((data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1) {
                auto src = other.row(c);
                for (size_t k = 0; k < out.stride_; k++) {
                    dst[k] ^= src[k];
                }
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            if ((data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1) {
                out.data_[c * out.stride_ + (r >> 6)] |= uint64_t{1} << (r & 63);
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::select_cols(std::span<const size_t> cols) const {
    BitMatrix out(rows_, cols.size());
    for (size_t j = 0; j < cols.size(); j++) {
        if (cols[j] >= cols_) {
            throw std::out_of_range("BitMatrix::select_cols");
        }
        for (size_t r = 0; r < rows_; r++) {
            if ((data_[r * stride_ + (cols[j] >> 6)] >> (cols[j] & 63)) & 1) {
                out.data_[r * out.stride_ + (j >> 6)] |= uint64_t{1} << (j & 63);
            }
        }
    }
    return out;
}

bool BitMatrix::operator==(const BitMatrix &other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

std::string BitMatrix::str() const {
    std::string s;
    for (size_t r = 0; r < rows_; r++) {
        s += row_vec(r).str();
        s += '\n';
    }
    return s;
}

Elimination gaussian_eliminate(const BitMatrix &m, std::span<const size_t> column_order) {
    Elimination e;
    e.reduced = m;
    BitMatrix &a = e.reduced;
    size_t next = 0;
    for (size_t c : column_order) {
        if (c >= m.cols()) {
            throw std::out_of_range("gaussian_eliminate: column out of range");
        }
        if (next == a.rows()) {
            break;
        }
        size_t pivot = next;
        while (pivot < a.rows() && !a.get(pivot, c)) {
            pivot++;
        }
        if (pivot == a.rows()) {
            continue;
        }
        if (pivot != next) {
            a.swap_rows(pivot, next);
            e.log.push_back({RowOp::Kind::SWAP, pivot, next});
        }
        for (size_t r = 0; r < a.rows(); r++) {
            if (r != next && a.get(r, c)) {
                a.add_row(next, r);
                e.log.push_back({RowOp::Kind::ADD, next, r});
            }
        }
        e.pivot_cols.push_back(c);
        next++;
    }
    e.rank = next;
    return e;
}

Elimination gaussian_eliminate(const BitMatrix &m) {
    std::vector<size_t> order(m.cols());
    std::iota(order.begin(), order.end(), 0);
    return gaussian_eliminate(m, order);
}

void replay_row_ops(BitMatrix &m, std::span<const RowOp> log) {
    for (const auto &op : log) {
        if (op.kind == RowOp::Kind::SWAP) {
            m.swap_rows(op.src, op.dst);
        } else {
            m.add_row(op.src, op.dst);
        }
    }
}

size_t rank(const BitMatrix &m) {
    F2Basis basis(m.words_per_row());
    for (size_t r = 0; r < m.rows(); r++) {
        basis.insert(m.row(r));
    }
    return basis.dim();
}

void F2Basis::reduce(std::span<uint64_t> v) const {
    // Each stored vector has a zero at the pivots of all earlier ones, so a
    // single pass in insertion order fully reduces v.
    for (size_t k = 0; k < pivots_.size(); k++) {
        size_t p = pivots_[k];
        if ((v[p >> 6] >> (p & 63)) & 1) {
            const uint64_t *b = vecs_.data() + k * num_words_;
            for (size_t w = 0; w < num_words_; w++) {
                v[w] ^= b[w];
            }
        }
    }
}

bool F2Basis::insert(std::span<const uint64_t> v) {
    if (v.size() != num_words_) {
        throw std::invalid_argument("F2Basis::insert word count mismatch");
    }
    scratch_.assign(v.begin(), v.end());
    reduce(scratch_);
    for (size_t w = 0; w < num_words_; w++) {
        if (scratch_[w]) {
            pivots_.push_back(w * 64 + std::countr_zero(scratch_[w]));
            vecs_.insert(vecs_.end(), scratch_.begin(), scratch_.end());
            return true;
        }
    }
    return false;
}

bool F2Basis::contains(std::span<const uint64_t> v) const {
    if (v.size() != num_words_) {
        throw std::invalid_argument("F2Basis::contains word count mismatch");
    }
    scratch_.assign(v.begin(), v.end());
    reduce(scratch_);
    return std::all_of(scratch_.begin(), scratch_.end(), [](uint64_t w) { return w == 0; });
}

void F2Basis::clear() {
    vecs_.clear();
    pivots_.clear();
}

AffineMapF2 AffineMapF2::identity(size_t n) {
    return {BitMatrix::identity(n), BitVec(n)};
}

BitVec AffineMapF2::apply(const BitVec &x) const {
    BitVec y = matrix.mul(x);
    y ^= offset;
    return y;
}

void AffineMapF2::then_xor(size_t src, size_t dst) {
    if (src >= dim() || dst >= dim() || src == dst) {
        throw std::out_of_range("AffineMapF2::then_xor bad indices");
    }
    matrix.add_row(src, dst);
    if (offset.get(src)) {
        offset.flip(dst);
    }
}

void AffineMapF2::then_erase(size_t i) {
    matrix.zero_row(i);
    offset.set(i, false);
}

void AffineMapF2::then_flip(size_t i) {
    offset.flip(i);
}

AffineMapF2 compose(const AffineMapF2 &a, const AffineMapF2 &b) {
    if (a.matrix.cols() != b.matrix.rows() || a.offset.size() != a.matrix.rows() ||
        b.offset.size() != b.matrix.rows()) {
        throw std::invalid_argument("compose: dimension mismatch");
    }
    AffineMapF2 out{a.matrix.mul(b.matrix), a.matrix.mul(b.offset)};
    out.offset ^= a.offset;
    return out;
}

size_t image_entropy(const AffineMapF2 &a) {
    return rank(a.matrix);
}

size_t image_entropy(const AffineMapF2 &a, size_t input_dim) {
    if (input_dim > a.matrix.cols()) {
        throw std::out_of_range("image_entropy: input_dim exceeds map width");
    }
    std::vector<size_t> cols(input_dim);
    std::iota(cols.begin(), cols.end(), 0);
    return rank(a.matrix.select_cols(cols));
}

}  // namespace cohlab
