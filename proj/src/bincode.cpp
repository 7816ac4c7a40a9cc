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

#include "cssdiag/bincode.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace cssdiag {

namespace {

std::size_t num_words(std::size_t n) { return (n + 63) / 64; }

}  // namespace

BitVector::BitVector(std::size_t n) : n_(n), words_(num_words(n), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i);
        } else if (bits[i] != '0') {
            throw InputError("bitstring contains a character other than '0' or '1'");
        }
    }
    return v;
}

BitVector BitVector::ones(std::size_t n) {
    BitVector v(n);
    for (auto &w : v.words_) w = ~std::uint64_t{0};
    if (n & 63) v.words_.back() = (std::uint64_t{1} << (n & 63)) - 1;
    return v;
}

BitVector BitVector::unit(std::size_t n, std::size_t index) {
    BitVector v(n);
    v.set(index);
    return v;
}

void BitVector::set(std::size_t i, bool value) {
    auto mask = std::uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= mask;
    } else {
        words_[i >> 6] &= ~mask;
    }
}

std::size_t BitVector::weight() const {
    std::size_t w = 0;
    for (auto word : words_) w += std::popcount(word);
    return w;
}

bool BitVector::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::optional<std::size_t> BitVector::leading_index() const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
        if (words_[k]) return k * 64 + std::countr_zero(words_[k]);
    }
    return std::nullopt;
}

void BitVector::require_same_length(const BitVector &other) const {
    if (n_ != other.n_) {
        throw InputError(
            "bit vector length mismatch: " + std::to_string(n_) + " vs " + std::to_string(other.n_));
    }
}

BitVector &BitVector::operator^=(const BitVector &other) {
    require_same_length(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
    return *this;
}

BitVector &BitVector::operator&=(const BitVector &other) {
    require_same_length(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
}

bool BitVector::operator<(const BitVector &other) const {
    if (n_ != other.n_) return n_ < other.n_;
    for (std::size_t k = 0; k < words_.size(); ++k) {
        auto diff = words_[k] ^ other.words_[k];
        if (diff) {
            // The first differing coordinate decides; a 0 there sorts first.
            auto bit = std::countr_zero(diff);
            return ((words_[k] >> bit) & 1) == 0;
        }
    }
    return false;
}

std::string BitVector::str() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) {
        if (get(i)) s[i] = '1';
    }
    return s;
}

std::size_t BitVector::hash() const {
    std::size_t h = n_ * 0x9E3779B97F4A7C15ULL;
    for (auto w : words_) h = (h ^ w) * 0x100000001B3ULL + (h >> 29);
    return h;
}

BitVector star(const BitVector &u, const BitVector &v) { return u & v; }

BitVector BinaryCode::reduce(BitVector v) const {
    if (v.size() != n_) throw InputError("vector length does not match code length");
    for (std::size_t r = 0; r < basis_.size(); ++r) {
        if (v.get(pivots_[r])) v ^= basis_[r];
    }
    return v;
}

bool BinaryCode::contains(const BitVector &v) const { return reduce(v).is_zero(); }

bool BinaryCode::contains(const BinaryCode &sub) const {
    if (sub.length() != n_) return false;
    return std::all_of(sub.basis_.begin(), sub.basis_.end(), [&](const BitVector &row) { return contains(row); });
}

std::vector<BitVector> BinaryCode::codewords() const {
    if (basis_.size() > 30) throw InputError("code dimension too large to enumerate");
    std::vector<BitVector> words;
    words.reserve(std::size_t{1} << basis_.size());
    words.emplace_back(n_);
    for (std::size_t r = 0; r < basis_.size(); ++r) {
        auto half = words.size();
        for (std::size_t i = 0; i < half; ++i) words.push_back(words[i] ^ basis_[r]);
    }
    return words;
}

BinaryCode rref_basis(std::size_t n, std::span<const BitVector> rows) {
    std::vector<BitVector> work;
    work.reserve(rows.size());
    for (const auto &row : rows) {
        if (row.size() != n) {
            throw InputError(
                "row length " + std::to_string(row.size()) + " does not match code length " + std::to_string(n));
        }
        work.push_back(row);
    }

    BinaryCode code(n);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < work.size(); ++col) {
        std::size_t sel = rank;
        while (sel < work.size() && !work[sel].get(col)) ++sel;
        if (sel == work.size()) continue;
        std::swap(work[rank], work[sel]);
        for (std::size_t r = 0; r < work.size(); ++r) {
            if (r != rank && work[r].get(col)) work[r] ^= work[rank];
        }
        code.pivots_.push_back(col);
        ++rank;
    }
    work.resize(rank);
    code.basis_ = std::move(work);
    return code;
}

BinaryCode dual_basis(const BinaryCode &code) {
    const auto n = code.length();
    std::vector<bool> is_pivot(n, false);
    for (auto p : code.pivots()) is_pivot[p] = true;

    std::vector<BitVector> rows;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        BitVector v(n);
        v.set(free);
        for (std::size_t r = 0; r < code.dimension(); ++r) {
            if (code.basis()[r].get(free)) v.set(code.pivots()[r]);
        }
        rows.push_back(std::move(v));
    }
    return rref_basis(n, rows);
}

std::vector<BitVector> star_family(std::span<const BitVector> basis, std::size_t r, std::size_t n) {
    for (const auto &b : basis) {
        if (b.size() != n) throw InputError("basis vector length mismatch in star_family");
    }
    if (r == 0) return {BitVector::ones(n)};
    if (r > basis.size()) return {};

    std::vector<BitVector> out;
    std::unordered_set<BitVector, BitVectorHash> seen;
    std::vector<std::size_t> idx(r);
    std::vector<BitVector> prefix(r + 1, BitVector::ones(n));

    // Lexicographic r-subsets; prefix[d] holds the product of the first d chosen elements.
    std::size_t depth = 0;
    idx[0] = 0;
    while (true) {
        if (idx[depth] + (r - depth) > basis.size()) {
            if (depth == 0) break;
            --depth;
            ++idx[depth];
            continue;
        }
        prefix[depth + 1] = prefix[depth] & basis[idx[depth]];
        if (depth + 1 == r) {
            if (seen.insert(prefix[r]).second) out.push_back(prefix[r]);
            ++idx[depth];
        } else {
            idx[depth + 1] = idx[depth] + 1;
            ++depth;
        }
    }
    return out;
}

BinaryCode schur_power(const BinaryCode &code, std::size_t r) {
    const auto n = code.length();
    if (r == 0) {
        auto one = BitVector::ones(n);
        return rref_basis(n, std::span<const BitVector>(&one, 1));
    }
    BinaryCode power = code;
    for (std::size_t step = 1; step < r; ++step) {
        std::vector<BitVector> products;
        for (const auto &a : power.basis()) {
            for (const auto &b : code.basis()) products.push_back(a & b);
        }
        auto next = rref_basis(n, products);
        if (next == power) break;
        power = std::move(next);
    }
    return power;
}

std::vector<BitVector> NestedCodePair::beta1() const {
    auto out = beta2;
    out.insert(out.end(), beta1_ext.begin(), beta1_ext.end());
    return out;
}

NestedCodePair NestedCodePair::from_bases(
    std::size_t n, std::vector<BitVector> beta2, std::vector<BitVector> beta1_ext) {
    NestedCodePair pair;
    pair.C2 = rref_basis(n, beta2);
    if (pair.C2.dimension() != beta2.size()) throw InputError("beta2 is not linearly independent");
    std::vector<BitVector> all = beta2;
    all.insert(all.end(), beta1_ext.begin(), beta1_ext.end());
    pair.C1 = rref_basis(n, all);
    if (pair.C1.dimension() != all.size()) throw InputError("beta1 is not linearly independent");
    pair.beta2 = std::move(beta2);
    pair.beta1_ext = std::move(beta1_ext);
    return pair;
}

NestedCodePair aligned_bases(const BinaryCode &C1, const BinaryCode &C2) {
    if (C1.length() != C2.length()) throw InputError("C1 and C2 have different lengths");
    if (!C1.contains(C2)) throw NestingError("C2 is not contained in C1");

    std::vector<BitVector> remainders;
    for (const auto &row : C1.basis()) {
        auto r = C2.reduce(row);
        if (!r.is_zero()) remainders.push_back(std::move(r));
    }
    auto ext = rref_basis(C1.length(), remainders);

    NestedCodePair pair;
    pair.C1 = C1;
    pair.C2 = C2;
    pair.beta2 = C2.basis();
    pair.beta1_ext = ext.basis();
    return pair;
}

}  // namespace cssdiag
