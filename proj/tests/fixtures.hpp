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

// Shared fixtures, seeded generators and brute-force reference computations for the tests.

#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cssdiag/bincode.hpp"
#include "cssdiag/gates.hpp"
#include "cssdiag/monomial.hpp"
#include "cssdiag/zmod.hpp"

namespace cssdiag {

// Readable failure messages for module comparisons.
inline void PrintTo(const ZModule &module, std::ostream *os) {
    *os << "{";
    for (const auto &g : module.generators()) *os << " (" << g.str() << ")";
    *os << " }";
}

inline void PrintTo(const ZVector &v, std::ostream *os) { *os << "(" << v.str() << ")"; }

}  // namespace cssdiag

namespace cssdiag::fixtures {

inline std::vector<BitVector> bits(const std::vector<std::string> &rows) {
    std::vector<BitVector> out;
    for (const auto &r : rows) out.push_back(BitVector::from_string(r));
    return out;
}

inline ZVector zv(std::vector<std::uint32_t> values, int ell) { return ZVector(std::move(values), ell); }

inline MonomialCodeSpec monomial_spec(int m, const std::vector<std::string> &M1, const std::vector<std::string> &M2) {
    return MonomialCodeSpec::make(m, MonomialSet::parse(M1, m), MonomialSet::parse(M2, m));
}

/// The running worked example: m = 4, M1 = {1, x1, x2, x3, x4, x1x2}, M2 = {1}.
inline MonomialCodeSpec ex1_spec() { return monomial_spec(4, {"1", "x1", "x2", "x3", "x4", "x1x2"}, {"1"}); }

/// RM(0,4) inside RM(1,4).
inline MonomialCodeSpec ex3_spec() { return monomial_spec(4, {"1", "x1", "x2", "x3", "x4"}, {"1"}); }

/// Length 2: C2 = {00, 11}, C1 = F_2^2, with w_1 = 10.
inline CssCode ex2_code() { return build_css(NestedCodePair::from_bases(2, bits({"11"}), bits({"10"}))); }

/// [7,4] Hamming code (columns of the parity check are 1..7 in binary) over its simplex dual.
inline BinaryCode hamming_parity() {
    std::vector<BitVector> rows(3, BitVector(7));
    for (std::size_t j = 0; j < 7; ++j) {
        for (std::size_t r = 0; r < 3; ++r) rows[r].set(j, ((j + 1) >> r) & 1);
    }
    return rref_basis(7, rows);
}

inline CssCode ex4_code() {
    auto simplex = hamming_parity();
    return build_css(dual_basis(simplex), simplex);
}

/// Every vector of Z_N^n, in lexicographic order.
inline std::vector<ZVector> all_vectors(std::size_t n, int ell) {
    std::vector<ZVector> out;
    const std::uint64_t total = std::uint64_t{1} << (n * ell);
    for (std::uint64_t t = 0; t < total; ++t) {
        ZVector v(n, ell);
        for (std::size_t i = 0; i < n; ++i) v.entries[n - 1 - i] = static_cast<std::uint32_t>(t >> (i * ell)) & ((1u << ell) - 1);
        out.push_back(std::move(v));
    }
    return out;
}

/// Closure of {0} under adding generators: the span by breadth-first search, sorted.
inline std::vector<ZVector> brute_span(std::size_t n, int ell, const std::vector<ZVector> &gens) {
    std::set<ZVector> seen{ZVector(n, ell)};
    std::vector<ZVector> frontier{ZVector(n, ell)};
    while (!frontier.empty()) {
        std::vector<ZVector> next;
        for (const auto &v : frontier) {
            for (const auto &g : gens) {
                auto w = v + g;
                if (seen.insert(w).second) next.push_back(std::move(w));
            }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

/// {b : b . r = 0 for every row}, by checking every vector.
inline std::vector<ZVector> brute_annihilator(std::size_t n, int ell, const std::vector<ZVector> &rows) {
    std::vector<ZVector> out;
    for (auto &b : all_vectors(n, ell)) {
        if (std::all_of(rows.begin(), rows.end(), [&](const ZVector &r) { return dot(b, r) == 0; })) out.push_back(std::move(b));
    }
    return out;
}

inline BitVector random_bits(std::mt19937_64 &rng, std::size_t n) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1);
    return v;
}

inline ZVector random_zvector(std::mt19937_64 &rng, std::size_t n, int ell) {
    ZVector v(n, ell);
    for (auto &e : v.entries) e = static_cast<std::uint32_t>(rng()) & ((1u << ell) - 1);
    return v;
}

/// A random nested pair with dim C1 = k1 (exactly) and dim C2 = k2 <= k1.
inline NestedCodePair random_pair(std::mt19937_64 &rng, std::size_t n, std::size_t k1, std::size_t k2) {
    std::vector<BitVector> basis;
    while (basis.size() < k1) {
        auto v = random_bits(rng, n);
        auto trial = basis;
        trial.push_back(v);
        if (rref_basis(n, trial).dimension() == trial.size()) basis = std::move(trial);
    }
    // C2 is spanned by k2 independent combinations of the C1 basis.
    std::vector<BitVector> sub;
    while (sub.size() < k2) {
        BitVector v(n);
        for (const auto &b : basis) {
            if (rng() & 1) v ^= b;
        }
        auto trial = sub;
        trial.push_back(v);
        if (rref_basis(n, trial).dimension() == trial.size()) sub = std::move(trial);
    }
    return aligned_bases(rref_basis(n, basis), rref_basis(n, sub));
}

/// A random decreasing pair M2 <= M1 in m variables; M2 always contains 1.
inline MonomialCodeSpec random_decreasing_spec(std::mt19937_64 &rng, int m) {
    std::vector<Monomial> seeds1, seeds2;
    const std::uint32_t masks = 1u << m;
    int picks1 = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < picks1; ++i) {
        // Keep the top monomial out so that the sets stay proper.
        seeds1.push_back({static_cast<std::uint32_t>(rng() % (masks - 1))});
    }
    auto M1 = divisibility_closure(MonomialSet(m, seeds1));
    const auto &members = M1.members();
    int picks2 = static_cast<int>(rng() % 2);
    for (int i = 0; i < picks2; ++i) seeds2.push_back(members[rng() % members.size()]);
    seeds2.push_back({0});
    auto M2 = divisibility_closure(MonomialSet(m, seeds2));
    return MonomialCodeSpec::make(m, M1, M2);
}

/// A random invertible K x K matrix over F_2, as rows.
inline std::vector<BitVector> random_invertible(std::mt19937_64 &rng, std::size_t K) {
    while (true) {
        std::vector<BitVector> rows;
        for (std::size_t i = 0; i < K; ++i) rows.push_back(random_bits(rng, K));
        if (rref_basis(K, rows).dimension() == K) return rows;
    }
}

/// A random K x K permutation matrix, as rows.
inline std::vector<BitVector> random_permutation(std::mt19937_64 &rng, std::size_t K) {
    std::vector<std::size_t> perm(K);
    for (std::size_t i = 0; i < K; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<BitVector> rows(K, BitVector(K));
    for (std::size_t i = 0; i < K; ++i) rows[i].set(perm[i], true);
    return rows;
}

/// Another aligned basis of the same pair: beta2 mixed by an invertible matrix, and each new w_j a
/// combination sum_i M[i][j] w_i plus a random element of C2. With `permute_logical`, M is a
/// permutation matrix.
inline NestedCodePair realign(std::mt19937_64 &rng, const NestedCodePair &pair, bool permute_logical = false) {
    const auto n = pair.length();
    const auto k2 = pair.beta2.size();
    const auto K = pair.num_logical();
    auto A = random_invertible(rng, k2);
    std::vector<BitVector> beta2(k2, BitVector(n));
    for (std::size_t j = 0; j < k2; ++j) {
        for (std::size_t i = 0; i < k2; ++i) {
            if (A[i].get(j)) beta2[j] ^= pair.beta2[i];
        }
    }
    auto M = permute_logical ? random_permutation(rng, K) : random_invertible(rng, K);
    std::vector<BitVector> ext(K, BitVector(n));
    for (std::size_t j = 0; j < K; ++j) {
        for (std::size_t i = 0; i < K; ++i) {
            if (M[i].get(j)) ext[j] ^= pair.beta1_ext[i];
        }
        for (const auto &b : pair.beta2) {
            if (rng() & 1) ext[j] ^= b;
        }
    }
    return NestedCodePair::from_bases(n, std::move(beta2), std::move(ext));
}

/// All 2^K logical vectors as bit vectors, index bit i = v_{i+1}.
inline BitVector logical_vector(std::size_t K, std::uint64_t index) {
    BitVector v(K);
    for (std::size_t i = 0; i < K; ++i) v.set(i, (index >> i) & 1);
    return v;
}

}  // namespace cssdiag::fixtures
