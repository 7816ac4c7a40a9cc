// Copyright 2026 The cssdiag Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cssdiag {

/// Raised for malformed inputs (length mismatches, bad tokens, out of range levels).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when C2 is not a subcode of C1.
struct NestingError : InputError {
    using InputError::InputError;
};

/// A length-n vector over GF(2), packed 64 bits per word.
///
/// Bit i lives in word i / 64 at position i % 64. Bits at positions >= n are always zero,
/// so word-level equality and hashing are exact.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(std::size_t n);

    /// Parses '0'/'1' characters; character 0 is coordinate 1.
    static BitVector from_string(std::string_view bits);
    static BitVector ones(std::size_t n);
    static BitVector unit(std::size_t n, std::size_t index);

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool value = true);
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::size_t weight() const;
    bool is_zero() const;
    /// Index of the first set bit, if any.
    std::optional<std::size_t> leading_index() const;

    BitVector &operator^=(const BitVector &other);
    BitVector &operator&=(const BitVector &other);
    friend BitVector operator^(BitVector a, const BitVector &b) { return a ^= b; }
    friend BitVector operator&(BitVector a, const BitVector &b) { return a &= b; }

    bool operator==(const BitVector &other) const = default;
    /// Lexicographic order on the 0/1 sequence (coordinate 1 most significant).
    bool operator<(const BitVector &other) const;

    std::string str() const;
    std::span<const std::uint64_t> words() const { return words_; }
    std::size_t hash() const;

   private:
    void require_same_length(const BitVector &other) const;

    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitVectorHash {
    std::size_t operator()(const BitVector &v) const { return v.hash(); }
};

/// Componentwise (Schur) product.
BitVector star(const BitVector &u, const BitVector &v);

/// A binary linear code held as a reduced row-echelon basis.
///
/// Pivot columns strictly increase and every pivot column is zero in all other rows, so two
/// codes are equal iff their bases are identical.
class BinaryCode {
   public:
    explicit BinaryCode(std::size_t n = 0) : n_(n) {}

    std::size_t length() const { return n_; }
    std::size_t dimension() const { return basis_.size(); }
    const std::vector<BitVector> &basis() const { return basis_; }
    const std::vector<std::size_t> &pivots() const { return pivots_; }

    /// Clears every pivot coordinate of v using the basis; the result is zero iff v is in the code.
    BitVector reduce(BitVector v) const;
    bool contains(const BitVector &v) const;
    bool contains(const BinaryCode &sub) const;

    /// All 2^k codewords, ordered by the integer whose bit i selects basis row i.
    std::vector<BitVector> codewords() const;

    bool operator==(const BinaryCode &other) const = default;

   private:
    friend BinaryCode rref_basis(std::size_t n, std::span<const BitVector> rows);

    std::size_t n_;
    std::vector<BitVector> basis_;
    std::vector<std::size_t> pivots_;
};

/// Span of the rows, in canonical RREF.
BinaryCode rref_basis(std::size_t n, std::span<const BitVector> rows);
BinaryCode dual_basis(const BinaryCode &code);

/// Products of r distinct elements of the list (r = 0 gives the all-ones vector).
///
/// Subsets are visited in lexicographic index order and repeated products are dropped, keeping
/// the first occurrence.
std::vector<BitVector> star_family(std::span<const BitVector> basis, std::size_t r, std::size_t n);

/// C^r, the span of all r-fold products of codewords. r = 0 gives span{1}.
BinaryCode schur_power(const BinaryCode &code, std::size_t r);

/// A nested pair C2 <= C1 together with aligned bases beta2 <= beta1 = beta2 + beta1_ext.
///
/// beta1_ext = (w_1, ..., w_K) is the logical encoding: the classes of the w_i span C1/C2.
struct NestedCodePair {
    BinaryCode C1;
    BinaryCode C2;
    std::vector<BitVector> beta2;
    std::vector<BitVector> beta1_ext;

    std::size_t length() const { return C1.length(); }
    std::size_t num_logical() const { return beta1_ext.size(); }
    /// beta2 followed by beta1_ext.
    std::vector<BitVector> beta1() const;

    /// Uses the given bases verbatim after checking independence.
    static NestedCodePair from_bases(
        std::size_t n, std::vector<BitVector> beta2, std::vector<BitVector> beta1_ext);
};

/// Canonical alignment: beta2 is C2's RREF basis, beta1_ext the RREF of C1's basis reduced modulo C2.
NestedCodePair aligned_bases(const BinaryCode &C1, const BinaryCode &C2);

}  // namespace cssdiag
