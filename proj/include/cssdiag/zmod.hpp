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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cssdiag/bincode.hpp"

namespace cssdiag {

constexpr int kMaxLevel = 30;

/// Residue arithmetic in Z_N with N = 2^ell. Unsigned wraparound is exact because N divides 2^32.
struct Ring {
    int ell;

    explicit Ring(int level);

    std::uint32_t modulus() const { return std::uint32_t{1} << ell; }
    std::uint32_t mask() const { return modulus() - 1; }
    std::uint32_t reduce(std::uint64_t x) const { return static_cast<std::uint32_t>(x) & mask(); }
    std::uint32_t reduce_signed(std::int64_t x) const { return static_cast<std::uint32_t>(x) & mask(); }
    std::uint32_t neg(std::uint32_t x) const { return (0u - x) & mask(); }
    /// 2-adic valuation of a nonzero residue.
    static int valuation(std::uint32_t x);
    /// Inverse of an odd residue.
    std::uint32_t inverse_odd(std::uint32_t x) const;
};

/// A vector in Z_N^n, entries kept in {0, ..., N-1}.
struct ZVector {
    int ell = 1;
    std::vector<std::uint32_t> entries;

    ZVector() = default;
    ZVector(std::size_t n, int level);
    ZVector(std::vector<std::uint32_t> values, int level);

    /// 0/1 lift of a binary vector (the set map 0 -> 0, 1 -> 1).
    static ZVector lift(const BitVector &bits, int level);
    /// Comma separated decimal residues, e.g. "1,3,0".
    static ZVector parse(std::string_view text, int level);

    std::size_t size() const { return entries.size(); }
    std::uint32_t operator[](std::size_t i) const { return entries[i]; }
    std::uint32_t modulus() const { return std::uint32_t{1} << ell; }
    bool is_zero() const;

    ZVector &operator+=(const ZVector &other);
    ZVector &operator-=(const ZVector &other);
    ZVector scaled(std::uint64_t factor) const;
    friend ZVector operator+(ZVector a, const ZVector &b) { return a += b; }
    friend ZVector operator-(ZVector a, const ZVector &b) { return a -= b; }

    bool operator==(const ZVector &other) const = default;
    auto operator<=>(const ZVector &other) const = default;

    std::string str() const;
};

struct ZVectorHash {
    std::size_t operator()(const ZVector &v) const;
};

/// Dot product mod N.
std::uint32_t dot(const ZVector &a, const ZVector &b);
/// b . lift(bits) mod N.
std::uint32_t dot(const ZVector &b, const BitVector &bits);

/// A submodule of Z_N^n stored as its Howell normal form.
///
/// Each generator has a leading entry 2^a (0 <= a < ell) at a strictly increasing column; entries
/// above a pivot are reduced into [0, 2^a); entries left of a pivot are zero. The Howell property
/// holds: for every generator i, generators i.. span all module elements that vanish on the columns
/// before pivot i. The form is unique, so equality is generator-list equality.
class ZModule {
   public:
    ZModule() = default;
    ZModule(std::size_t n, int ell) : n_(n), ell_(ell) {}

    std::size_t length() const { return n_; }
    int level() const { return ell_; }
    const std::vector<ZVector> &generators() const { return gens_; }
    const std::vector<std::size_t> &pivot_columns() const { return pivot_cols_; }
    /// Exponent a of each pivot 2^a.
    const std::vector<int> &pivot_exponents() const { return pivot_exps_; }

    bool operator==(const ZModule &other) const {
        return n_ == other.n_ && ell_ == other.ell_ && gens_ == other.gens_;
    }

   private:
    friend ZModule howell_form(std::size_t n, int ell, std::span<const ZVector> rows);

    std::size_t n_ = 0;
    int ell_ = 1;
    std::vector<ZVector> gens_;
    std::vector<std::size_t> pivot_cols_;
    std::vector<int> pivot_exps_;
};

ZModule howell_form(std::size_t n, int ell, std::span<const ZVector> rows);

/// Streams rows into a Howell reduction. Rows are buffered and folded into the running canonical
/// form in batches; the final module does not depend on arrival order.
class HowellAccumulator {
   public:
    HowellAccumulator(std::size_t n, int ell);
    void add(ZVector row);
    ZModule finish();
    std::size_t rows_seen() const { return rows_seen_; }

   private:
    void fold();

    std::size_t n_;
    int ell_;
    std::size_t rows_seen_ = 0;
    std::vector<ZVector> pending_;
    ZModule current_;
};

/// The annihilator {b : r . b = 0 mod N for every row r}, in Howell form.
ZModule kernel_perp(std::size_t n, int ell, std::span<const ZVector> rows);
ZModule kernel_perp(const ZModule &module);

/// log2 of the module size: sum over pivots 2^a of (ell - a).
std::size_t module_length(const ZModule &module);
bool contains(const ZModule &module, const ZVector &v);
/// Every generator of `sub` lies in `super`.
bool contains(const ZModule &super, const ZModule &sub);
ZModule module_sum(const ZModule &a, const ZModule &b);
/// Maps a module over Z_{N/2} into Z_N by g -> 2g.
ZModule scale_lift(const ZModule &module);
/// Enumerates every element (size must be at most 2^max_log2).
std::vector<ZVector> module_elements(const ZModule &module, std::size_t max_log2 = 24);

}  // namespace cssdiag
