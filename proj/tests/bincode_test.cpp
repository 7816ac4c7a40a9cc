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

#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"

namespace cssdiag {
namespace {

using fixtures::bits;

std::vector<std::string> strs(const BinaryCode &code) {
    std::vector<std::string> out;
    for (const auto &b : code.basis()) out.push_back(b.str());
    return out;
}

/// Codewords of span(rows) by brute force, as strings.
std::set<std::string> brute_codewords(const std::vector<BitVector> &rows, std::size_t n) {
    std::set<std::string> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rows.size()); ++mask) {
        BitVector v(n);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if ((mask >> i) & 1) v ^= rows[i];
        }
        out.insert(v.str());
    }
    return out;
}

TEST(BitVector, TrailingBitsStayClear) {
    auto v = BitVector::ones(70);
    EXPECT_EQ(v.weight(), 70u);
    EXPECT_EQ(v, BitVector::from_string(std::string(70, '1')));
    EXPECT_THROW(BitVector::from_string("01a"), InputError);
    EXPECT_THROW(BitVector(3) ^ BitVector(4), InputError);
}

TEST(BitVector, LexicographicOrder) {
    EXPECT_LT(BitVector::from_string("0111"), BitVector::from_string("1000"));
    EXPECT_LT(BitVector::from_string("1000"), BitVector::from_string("1001"));
    EXPECT_FALSE(BitVector::from_string("1001") < BitVector::from_string("1001"));
}

TEST(RrefBasis, DropsDependentRows) {
    auto code = rref_basis(3, bits({"110", "011", "101"}));
    EXPECT_EQ(code.dimension(), 2u);
    EXPECT_EQ(strs(code), (std::vector<std::string>{"101", "011"}));
    EXPECT_EQ(rref_basis(3, {}).dimension(), 0u);
}

TEST(RrefBasis, EvaluationVectorsOfOneAndX1) {
    auto code = rref_basis(4, bits({"1111", "0101"}));
    EXPECT_EQ(strs(code), (std::vector<std::string>{"1010", "0101"}));
}

TEST(RrefBasis, LengthMismatchIsInputError) {
    EXPECT_THROW(rref_basis(3, bits({"110", "01"})), InputError);
}

TEST(RrefBasis, CanonicalAcrossGeneratingSets) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng() % 12;
        std::vector<BitVector> rows;
        for (std::size_t i = 0; i < 1 + rng() % 6; ++i) rows.push_back(fixtures::random_bits(rng, n));
        auto code = rref_basis(n, rows);
        // Add a random combination and shuffle: same code, same basis.
        auto more = rows;
        BitVector extra(n);
        for (const auto &r : rows) {
            if (rng() & 1) extra ^= r;
        }
        more.push_back(extra);
        std::shuffle(more.begin(), more.end(), rng);
        EXPECT_EQ(rref_basis(n, more), code);

        auto words = code.codewords();
        std::set<std::string> got;
        for (const auto &w : words) got.insert(w.str());
        EXPECT_EQ(got, brute_codewords(rows, n));
        EXPECT_EQ(words.size(), std::size_t{1} << code.dimension());
    }
}

TEST(DualBasis, Examples) {
    auto rep = rref_basis(2, bits({"11"}));
    EXPECT_EQ(dual_basis(rep), rep);
    EXPECT_EQ(dual_basis(BinaryCode(3)).dimension(), 3u);

    auto simplex = fixtures::hamming_parity();
    auto hamming = dual_basis(simplex);
    EXPECT_EQ(hamming.dimension(), 4u);
    EXPECT_TRUE(hamming.contains(dual_basis(hamming)));
    EXPECT_EQ(dual_basis(hamming), simplex);
}

TEST(DualBasis, Properties) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng() % 14;
        std::vector<BitVector> rows;
        for (std::size_t i = 0; i < rng() % 8; ++i) rows.push_back(fixtures::random_bits(rng, n));
        auto code = rref_basis(n, rows);
        auto dual = dual_basis(code);
        EXPECT_EQ(code.dimension() + dual.dimension(), n);
        EXPECT_EQ(dual_basis(dual), code);
        for (const auto &a : code.basis()) {
            for (const auto &b : dual.basis()) EXPECT_EQ((a & b).weight() % 2, 0u);
        }
    }
}

TEST(Star, Examples) {
    EXPECT_EQ(star(BitVector::from_string("1010"), BitVector::from_string("1100")).str(), "1000");
    auto v = BitVector::from_string("1011001");
    EXPECT_EQ(star(v, BitVector::ones(7)), v);
    EXPECT_EQ(star(BitVector::from_string("0101"), BitVector::from_string("0011")).str(), "0001");
}

TEST(Star, Algebra) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng() % 100;
        auto u = fixtures::random_bits(rng, n), v = fixtures::random_bits(rng, n), w = fixtures::random_bits(rng, n);
        EXPECT_EQ(star(u, star(v, w)), star(star(u, v), w));
        EXPECT_EQ(star(u, v), star(v, u));
        EXPECT_EQ(star(u, u), u);
    }
}

TEST(StarFamily, Examples) {
    auto basis = bits({"110", "011"});
    auto fam = star_family(basis, 2, 3);
    ASSERT_EQ(fam.size(), 1u);
    EXPECT_EQ(fam[0].str(), "010");
    auto ones = star_family(basis, 0, 3);
    ASSERT_EQ(ones.size(), 1u);
    EXPECT_EQ(ones[0].str(), "111");
    EXPECT_TRUE(star_family(basis, 3, 3).empty());
}

TEST(StarFamily, WorkedExamplePairs) {
    auto spec = fixtures::ex1_spec();
    auto css = to_css_code(spec);
    auto beta1 = css.pair.beta1();
    auto fam = star_family(beta1, 2, 16);
    // 15 pairs but only 12 distinct products: ev(x1x2) alone comes from four pairs.
    EXPECT_EQ(fam.size(), 12u);
    std::set<BitVector> unique(fam.begin(), fam.end());
    EXPECT_EQ(unique.size(), fam.size());
    EXPECT_TRUE(unique.count(evaluate(parse_monomial("x1x2", 4), 4)));
}

TEST(StarFamily, BoundedAndInsideSchurPower) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + rng() % 10;
        std::vector<BitVector> basis;
        for (std::size_t i = 0; i < 1 + rng() % 5; ++i) basis.push_back(fixtures::random_bits(rng, n));
        auto code = rref_basis(n, basis);
        for (std::size_t r = 1; r <= basis.size(); ++r) {
            auto fam = star_family(basis, r, n);
            std::size_t binom = 1;
            for (std::size_t i = 0; i < r; ++i) binom = binom * (basis.size() - i) / (i + 1);
            EXPECT_LE(fam.size(), binom);
            auto power = schur_power(code, r);
            for (const auto &p : fam) EXPECT_TRUE(power.contains(p));
        }
    }
}

TEST(SchurPower, Examples) {
    auto rep = rref_basis(2, bits({"11"}));
    EXPECT_EQ(schur_power(rep, 2), rep);
    auto full = rref_basis(2, bits({"10", "01"}));
    EXPECT_EQ(schur_power(full, 2), full);
    EXPECT_EQ(schur_power(full, 0), rep);

    auto css = to_css_code(fixtures::ex1_spec());
    auto square = schur_power(css.pair.C1, 2);
    auto x123 = evaluate(parse_monomial("x1x2x3", 4), 4);
    EXPECT_EQ(x123.weight(), 2u);
    EXPECT_TRUE(square.contains(x123));
}

TEST(AlignedBases, Examples) {
    auto C1 = rref_basis(2, bits({"10", "01"}));
    auto C2 = rref_basis(2, bits({"11"}));
    auto pair = aligned_bases(C1, C2);
    ASSERT_EQ(pair.beta2.size(), 1u);
    EXPECT_EQ(pair.beta2[0].str(), "11");
    // RREF remainder of C1 modulo C2; its pivot (coordinate 2) is not a pivot of beta2.
    ASSERT_EQ(pair.beta1_ext.size(), 1u);
    EXPECT_EQ(pair.beta1_ext[0].str(), "01");

    auto same = aligned_bases(C2, C2);
    EXPECT_EQ(same.num_logical(), 0u);

    EXPECT_THROW(aligned_bases(C2, C1), NestingError);
}

TEST(AlignedBases, WorkedExampleUsesMonomialRepresentatives) {
    auto spec = fixtures::ex1_spec();
    auto css = to_css_code(spec);
    EXPECT_EQ(css.K(), 5u);
    const char *names[] = {"x1", "x2", "x3", "x4", "x1x2"};
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(css.pair.beta1_ext[i], evaluate(parse_monomial(names[i], 4), 4));
        EXPECT_FALSE(css.pair.C2.contains(css.pair.beta1_ext[i]));
    }
    auto canonical = aligned_bases(css.pair.C1, css.pair.C2);
    EXPECT_EQ(canonical.num_logical(), 5u);
}

TEST(AlignedBases, Properties) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng() % 10;
        std::size_t k1 = 1 + rng() % std::min<std::size_t>(n, 6);
        auto pair = fixtures::random_pair(rng, n, k1, rng() % (k1 + 1));
        EXPECT_EQ(rref_basis(n, pair.beta1()), pair.C1);
        EXPECT_EQ(pair.num_logical(), pair.C1.dimension() - pair.C2.dimension());
        auto again = NestedCodePair::from_bases(n, pair.beta2, pair.beta1_ext);
        EXPECT_EQ(again.C1, pair.C1);
        EXPECT_EQ(again.C2, pair.C2);
    }
}

TEST(NestedCodePair, FromBasesRejectsDependentRows) {
    EXPECT_THROW(NestedCodePair::from_bases(2, bits({"11"}), bits({"11"})), InputError);
    EXPECT_THROW(NestedCodePair::from_bases(2, bits({"11", "11"}), {}), InputError);
}

}  // namespace
}  // namespace cssdiag
