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

#ifndef COHLAB_F2LINALG_H
#define COHLAB_F2LINALG_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cohlab {

inline size_t words_for_bits(size_t num_bits) {
    return (num_bits + 63) >> 6;
}

/// A fixed-length packed vector over GF(2).
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t num_bits);

    /// Parses a string of '0'/'1' characters (bit 0 first).
    static BitVec from_string(std::string_view text);

    size_t size() const {
        return num_bits_;
    }
    bool get(size_t i) const;
    void set(size_t i, bool value);
    void flip(size_t i);
    void clear();

    bool any() const;
    size_t popcount() const;
    /// Parity of the bitwise AND with another vector.
    bool dot(const BitVec &other) const;

    std::span<uint64_t> words() {
        return words_;
    }
    std::span<const uint64_t> words() const {
        return words_;
    }

    BitVec &operator^=(const BitVec &other);
    BitVec &operator&=(const BitVec &other);
    BitVec &operator|=(const BitVec &other);
    bool operator==(const BitVec &other) const;
    bool operator!=(const BitVec &other) const {
        return !(*this == other);
    }

    std::string str() const;

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// Dense row-major packed matrix over GF(2).
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols);

    static BitMatrix identity(size_t n);
    /// One string of '0'/'1' per row; all rows must have equal length.
    static BitMatrix from_rows(const std::vector<std::string> &rows);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    size_t words_per_row() const {
        return stride_;
    }

    /// Bounds-checked access; throws std::out_of_range.
    bool get(size_t r, size_t c) const;
    void set(size_t r, size_t c, bool value);

    std::span<uint64_t> row(size_t r);
    std::span<const uint64_t> row(size_t r) const;
    BitVec row_vec(size_t r) const;
    void set_row(size_t r, const BitVec &v);

    /// row[dst] ^= row[src].
    void add_row(size_t src, size_t dst);
    void swap_rows(size_t a, size_t b);
    void zero_row(size_t r);

    BitVec mul(const BitVec &v) const;
    BitMatrix mul(const BitMatrix &other) const;
    BitMatrix transposed() const;
    /// Keeps the listed columns, in order.
    BitMatrix select_cols(std::span<const size_t> cols) const;

    bool operator==(const BitMatrix &other) const;
    bool operator!=(const BitMatrix &other) const {
        return !(*this == other);
    }

    std::string str() const;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    size_t stride_ = 0;
    std::vector<uint64_t> data_;
};

struct RowOp {
    enum class Kind : uint8_t { SWAP, ADD };
    Kind kind;
    /// For ADD: row[dst] ^= row[src].
    size_t src;
    size_t dst;

    bool operator==(const RowOp &other) const = default;
};

struct Elimination {
    BitMatrix reduced;
    std::vector<RowOp> log;
    /// pivot_cols[k] is the pivot column of reduced row k, for k < rank.
    std::vector<size_t> pivot_cols;
    size_t rank = 0;
};

/// Reduced row echelon form with pivots searched in the given column order.
/// Columns absent from `column_order` are carried along but never pivoted on.
Elimination gaussian_eliminate(const BitMatrix &m, std::span<const size_t> column_order);
Elimination gaussian_eliminate(const BitMatrix &m);

/// Applies a logged row-operation sequence to a matrix in place.
void replay_row_ops(BitMatrix &m, std::span<const RowOp> log);

size_t rank(const BitMatrix &m);

/// Incrementally built GF(2) span, for rank profiles and membership tests.
/// All inserted vectors must share the same word length.
class F2Basis {
   public:
    explicit F2Basis(size_t num_words) : num_words_(num_words) {
    }

    /// Returns true if the vector was independent of the current span.
    bool insert(std::span<const uint64_t> v);
    bool contains(std::span<const uint64_t> v) const;
    size_t dim() const {
        return pivots_.size();
    }
    void clear();

   private:
    void reduce(std::span<uint64_t> v) const;
    size_t num_words_;
    std::vector<uint64_t> vecs_;
    std::vector<size_t> pivots_;
    mutable std::vector<uint64_t> scratch_;
};

/// x -> M x + b over GF(2).
struct AffineMapF2 {
    BitMatrix matrix;
    BitVec offset;

    static AffineMapF2 identity(size_t n);
    size_t dim() const {
        return matrix.rows();
    }
    BitVec apply(const BitVec &x) const;

    /// In-place left-composition with elementary generators.
    /// x_dst ^= x_src.
    void then_xor(size_t src, size_t dst);
    /// x_i := 0.
    void then_erase(size_t i);
    /// x_i ^= 1.
    void then_flip(size_t i);
};

/// a o b : x -> a(b(x)).
AffineMapF2 compose(const AffineMapF2 &a, const AffineMapF2 &b);

/// Entropy (bits) of the output under uniformly random input.
size_t image_entropy(const AffineMapF2 &a);
/// Same, when only the first `input_dim` inputs are random and the rest are fixed.
size_t image_entropy(const AffineMapF2 &a, size_t input_dim);

}  // namespace cohlab

#endif
