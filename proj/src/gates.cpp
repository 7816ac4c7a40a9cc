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

#include "cssdiag/gates.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <future>
#include <unordered_set>

namespace cssdiag {

namespace {

constexpr std::size_t kMaxProfileLogical = 20;
constexpr std::size_t kMaxWeightScanDim = 24;

BitVector zeros_if_empty(BitVector v, std::size_t n, const char *what) {
    if (v.size() == 0 && n != 0) return BitVector(n);
    if (v.size() != n) {
        throw InputError(std::string(what) + " has length " + std::to_string(v.size()) + ", expected " + std::to_string(n));
    }
    return v;
}

/// Collects 2^shift * lift(bits) rows, skipping zeros and exact repeats.
class RowSink {
   public:
    explicit RowSink(int ell) : ell_(ell) {}

    void add(const BitVector &bits, int shift) {
        if (shift >= ell_ || bits.is_zero()) return;
        auto row = ZVector::lift(bits, ell_).scaled(std::uint64_t{1} << shift);
        if (seen_.insert(row).second) rows_.push_back(std::move(row));
    }

    std::vector<ZVector> take() { return std::move(rows_); }

   private:
    int ell_;
    std::unordered_set<ZVector, ZVectorHash> seen_;
    std::vector<ZVector> rows_;
};

void add_h_rows(RowSink &sink, const NestedCodePair &pair, int ell) {
    const auto beta1 = pair.beta1();
    for (int i = 0; i < ell; ++i) {
        auto family = star_family(beta1, static_cast<std::size_t>(i), pair.length());
        for (const auto &v : pair.beta2) {
            for (const auto &p : family) sink.add(v & p, i);
        }
    }
}

// beta2 and 2^{i-1} beta1^{(i)} for 2 <= i <= ell.
void add_t_rows(RowSink &sink, const NestedCodePair &pair, int ell) {
    for (const auto &v : pair.beta2) sink.add(v, 0);
    const auto beta1 = pair.beta1();
    for (int i = 2; i <= ell; ++i) {
        for (const auto &p : star_family(beta1, static_cast<std::size_t>(i), pair.length())) sink.add(p, i - 1);
    }
}

// Products of r distinct elements of beta1 = beta2 ++ beta1_ext that use at least one element of
// beta1_ext. Factors are tracked by index: w * p only counts when w is not already a factor of p.
void products_touching_ext(const NestedCodePair &pair, std::size_t r, const std::function<void(const BitVector &)> &emit) {
    const auto beta1 = pair.beta1();
    const std::size_t first_ext = pair.beta2.size();
    auto rec = [&](auto &&self, std::size_t start, std::size_t left, const BitVector &acc, bool touched) -> void {
        if (left == 0) {
            if (touched) emit(acc);
            return;
        }
        for (std::size_t j = start; j + left <= beta1.size(); ++j) self(self, j + 1, left - 1, acc & beta1[j], touched || j >= first_ext);
    };
    rec(rec, 0, r, BitVector::ones(pair.length()), false);
}

// (beta1 \ beta2) * 2^i beta1^{(i)} for 1 <= i <= ell - 1, the extra rows of T's second form.
void add_t_extra_rows(RowSink &sink, const NestedCodePair &pair, int ell) {
    for (int i = 1; i < ell; ++i) {
        products_touching_ext(pair, static_cast<std::size_t>(i) + 1, [&](const BitVector &p) { sink.add(p, i); });
    }
}

void add_id_rows(RowSink &sink, const NestedCodePair &pair, int ell) {
    const auto beta1 = pair.beta1();
    for (int i = 1; i <= ell; ++i) {
        for (const auto &p : star_family(beta1, static_cast<std::size_t>(i), pair.length())) sink.add(p, i - 1);
    }
}

ZModule span_of(std::size_t n, int ell, std::vector<ZVector> rows) {
    HowellAccumulator acc(n, ell);
    for (auto &r : rows) acc.add(std::move(r));
    return acc.finish();
}

void check_level(int ell) { Ring{ell}; }

}  // namespace

CssCode build_css(const BinaryCode &C1, const BinaryCode &C2, BitVector y_x, BitVector y_z) {
    return build_css(aligned_bases(C1, C2), std::move(y_x), std::move(y_z));
}

CssCode build_css(NestedCodePair pair, BitVector y_x, BitVector y_z) {
    CssCode css;
    const auto n = pair.length();
    css.y_x = zeros_if_empty(std::move(y_x), n, "y_x");
    css.y_z = zeros_if_empty(std::move(y_z), n, "y_z");
    css.pair = std::move(pair);
    return css;
}

const char *group_name(GroupKind kind) {
    switch (kind) {
        case GroupKind::H:
            return "H";
        case GroupKind::T:
            return "T";
        case GroupKind::Id:
            return "Id";
    }
    return "?";
}

std::vector<ZVector> stabilizer_constraints(const NestedCodePair &pair, int ell) {
    check_level(ell);
    RowSink sink(ell);
    add_h_rows(sink, pair, ell);
    return sink.take();
}

ZModule constraint_span(const NestedCodePair &pair, int ell, GroupKind kind) {
    check_level(ell);
    RowSink sink(ell);
    switch (kind) {
        case GroupKind::H:
            add_h_rows(sink, pair, ell);
            break;
        case GroupKind::T:
            if (pair.num_logical() == 0) {
                add_h_rows(sink, pair, ell);
            } else {
                add_t_rows(sink, pair, ell);
            }
            break;
        case GroupKind::Id:
            add_id_rows(sink, pair, ell);
            break;
    }
    return span_of(pair.length(), ell, sink.take());
}

ZModule compute_H(const CssCode &css, int ell) { return kernel_perp(constraint_span(css.pair, ell, GroupKind::H)); }

ZModule compute_T(const CssCode &css, int ell) {
    const auto &pair = css.pair;
    if (pair.num_logical() == 0) return compute_H(css, ell);
    auto first = kernel_perp(constraint_span(pair, ell, GroupKind::T));

    RowSink sink(ell);
    add_h_rows(sink, pair, ell);
    add_t_extra_rows(sink, pair, ell);
    auto second = kernel_perp(span_of(pair.length(), ell, sink.take()));
    if (!(first == second)) throw ConsistencyError("the two forms of T_N disagree");
    return first;
}

ZModule compute_Id(const CssCode &css, int ell) {
    const auto &pair = css.pair;
    auto first = kernel_perp(constraint_span(pair, ell, GroupKind::Id));

    RowSink sink(ell);
    add_t_rows(sink, pair, ell);
    for (const auto &w : pair.beta1_ext) sink.add(w, 0);
    auto second = kernel_perp(span_of(pair.length(), ell, sink.take()));
    if (!(first == second)) throw ConsistencyError("the two forms of Id_N disagree");
    return first;
}

const ZModule &GateGroups::get(GroupKind kind) const {
    switch (kind) {
        case GroupKind::H:
            return H;
        case GroupKind::T:
            return T;
        case GroupKind::Id:
            break;
    }
    return Id;
}

GateGroups compute_groups(const CssCode &css, int ell, int threads) {
    GateGroups g;
    if (threads > 1) {
        auto t = std::async(std::launch::async, [&] { return compute_T(css, ell); });
        auto id = std::async(std::launch::async, [&] { return compute_Id(css, ell); });
        g.H = compute_H(css, ell);
        g.T = t.get();
        g.Id = id.get();
    } else {
        g.H = compute_H(css, ell);
        g.T = compute_T(css, ell);
        g.Id = compute_Id(css, ell);
    }
    return g;
}

std::uint32_t logical_phase(const CssCode &css, int ell, const ZVector &b, const BitVector &v) {
    if (b.ell != ell || b.size() != css.n()) throw InputError("gate vector does not match the code");
    if (v.size() != css.K()) throw InputError("logical vector must have length K");
    auto word = css.y_z;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v.get(i)) word ^= css.pair.beta1_ext[i];
    }
    return dot(b, word);
}

bool PhaseProfile::is_transversal() const {
    Ring ring(ell);
    for (std::size_t v = 0; v < phases.size(); ++v) {
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < K; ++i) {
            if ((v >> i) & 1) sum += phases[std::size_t{1} << i];
        }
        if (ring.reduce(sum) != phases[v]) return false;
    }
    return true;
}

PhaseProfile phase_profile(const CssCode &css, int ell, const ZVector &b, const ZModule &H) {
    const auto K = css.K();
    if (K > kMaxProfileLogical) throw InputError("phase profile needs K <= " + std::to_string(kMaxProfileLogical));
    if (b.ell != ell || b.size() != css.n()) throw InputError("gate vector does not match the code");
    Ring ring(ell);

    PhaseProfile prof;
    prof.K = K;
    prof.ell = ell;
    prof.phases.assign(std::size_t{1} << K, 0);
    // Gray-code walk: one basis vector toggles per step.
    auto word = css.y_z;
    for (std::size_t t = 0; t < prof.phases.size(); ++t) {
        if (t) word ^= css.pair.beta1_ext[std::countr_zero(t)];
        prof.phases[t ^ (t >> 1)] = dot(b, word);
    }
    prof.global_phase = prof.phases[0];
    for (auto &p : prof.phases) p = ring.reduce(std::uint64_t{p} + ring.neg(prof.global_phase));
    prof.in_H = contains(H, conjugate_by_yz(b, css.y_z).first);
    return prof;
}

PhaseProfile phase_profile(const CssCode &css, int ell, const ZVector &b) {
    return phase_profile(css, ell, b, compute_H(css, ell));
}

std::uint32_t LogicalDecomposition::evaluate(const BitVector &v) const {
    Ring ring(ell);
    std::uint64_t acc = global_phase;
    for (const auto &f : factors) {
        bool on = std::all_of(f.J.begin(), f.J.end(), [&](std::size_t j) { return v.get(j - 1); });
        if (on) acc += f.a;
    }
    return ring.reduce(acc);
}

LogicalDecomposition decompose_action(const CssCode &css, int ell, const ZVector &b, const ZModule &H) {
    if (b.ell != ell || b.size() != css.n()) throw InputError("gate vector does not match the code");
    Ring ring(ell);
    const auto &ext = css.pair.beta1_ext;
    const auto K = ext.size();
    auto [bp, phase] = conjugate_by_yz(b, css.y_z);

    LogicalDecomposition dec;
    dec.ell = ell;
    dec.global_phase = phase;
    dec.in_H = contains(H, bp);

    const auto max_h = std::min<std::size_t>(K, static_cast<std::size_t>(ell));
    std::uint32_t coeff = 1;  // (-2)^{h-1} mod N
    for (std::size_t h = 1; h <= max_h; ++h) {
        if (h > 1) coeff = ring.reduce(std::uint64_t{ring.neg(coeff)} * 2);
        // Lexicographic h-subsets with prefix products.
        std::vector<std::size_t> idx(h);
        std::vector<BitVector> prefix(h + 1, BitVector::ones(css.n()));
        std::size_t depth = 0;
        idx[0] = 0;
        while (true) {
            if (idx[depth] + (h - depth) > K) {
                if (depth == 0) break;
                --depth;
                ++idx[depth];
                continue;
            }
            prefix[depth + 1] = prefix[depth] & ext[idx[depth]];
            if (depth + 1 == h) {
                auto a = ring.reduce(std::uint64_t{coeff} * dot(bp, prefix[h]));
                if (a != 0) {
                    ControlledFactor f;
                    for (auto i : idx) f.J.push_back(i + 1);
                    f.a = a;
                    dec.factors.push_back(std::move(f));
                }
                ++idx[depth];
            } else {
                idx[depth + 1] = idx[depth] + 1;
                ++depth;
            }
        }
    }
    return dec;
}

LogicalDecomposition decompose_action(const CssCode &css, int ell, const ZVector &b) {
    return decompose_action(css, ell, b, compute_H(css, ell));
}

std::pair<ZVector, std::uint32_t> conjugate_by_yz(const ZVector &b, const BitVector &y_z) {
    if (b.size() != y_z.size()) throw InputError("y_z length does not match the gate");
    Ring ring(b.ell);
    ZVector out = b;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (y_z.get(i)) out.entries[i] = ring.neg(b.entries[i]);
    }
    return {std::move(out), dot(b, y_z)};
}

ZVector rebase_action(const ZVector &c, const std::vector<BitVector> &M) {
    const auto K = c.size();
    if (M.size() != K) throw InputError("change of basis must be K x K");
    for (const auto &row : M) {
        if (row.size() != K) throw InputError("change of basis must be K x K");
    }
    if (rref_basis(K, M).dimension() != K) throw InputError("change of basis is singular over F_2");
    Ring ring(c.ell);
    ZVector out(K, c.ell);
    for (std::size_t j = 0; j < K; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < K; ++i) {
            if (M[i].get(j)) acc += c.entries[i];
        }
        out.entries[j] = ring.reduce(acc);
    }
    return out;
}

AllOnesReport allones_report(const CssCode &css, int ell, const GateGroups &groups) {
    const auto n = css.n();
    const auto ones = ZVector::lift(BitVector::ones(n), ell);
    AllOnesReport rep;
    rep.in_H = contains(groups.H, ones);
    rep.in_T = contains(groups.T, ones);
    rep.in_Id = contains(groups.Id, ones);

    auto power = schur_power(css.pair.C1, static_cast<std::size_t>(ell - 1));
    rep.cssT_necessary_ok = dual_basis(power).contains(css.pair.C2);

    const auto beta1 = css.pair.beta1();
    if (beta1.size() <= kMaxWeightScanDim) {
        Ring ring(ell);
        const auto k2 = css.pair.beta2.size();
        std::vector<std::uint32_t> ext_weights;
        for (const auto &w : css.pair.beta1_ext) ext_weights.push_back(ring.reduce(w.weight()));
        bool linear = true;
        bool divisible = true;
        BitVector word(n);
        for (std::uint64_t t = 0; t < (std::uint64_t{1} << beta1.size()); ++t) {
            auto g = t ^ (t >> 1);
            if (t) word ^= beta1[std::countr_zero(t)];
            auto wt = ring.reduce(word.weight());
            if (wt != 0) divisible = false;
            std::uint64_t expected = 0;
            for (std::size_t i = 0; i < ext_weights.size(); ++i) {
                if ((g >> (k2 + i)) & 1) expected += ext_weights[i];
            }
            if (ring.reduce(expected) != wt) linear = false;
        }
        rep.weights_condition = linear;
        rep.divisibility = divisible;
    }

    if (rep.in_H && !rep.cssT_necessary_ok) {
        throw ConsistencyError("all-ones gate fixes the code but C2 is not orthogonal to C1^(ell-1)");
    }
    if (rep.divisibility && *rep.divisibility != rep.in_Id) {
        throw ConsistencyError("all-ones identity membership disagrees with the divisibility scan");
    }
    if (rep.weights_condition && *rep.weights_condition != rep.in_T) {
        throw ConsistencyError("all-ones T membership disagrees with the weight condition");
    }
    return rep;
}

AllOnesReport allones_report(const CssCode &css, int ell) {
    return allones_report(css, ell, compute_groups(css, ell));
}

}  // namespace cssdiag
