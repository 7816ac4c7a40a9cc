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

#include "cssdiag/oracle.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace cssdiag {

namespace {

constexpr std::size_t kMaxCosetDimC2 = 24;
constexpr std::size_t kMaxCosetLogical = 16;
constexpr std::size_t kMaxSearchBits = 22;
constexpr std::size_t kMaxAmplitudeDimC2 = 16;
constexpr std::size_t kMaxAmplitudeLength = 24;

BitVector logical_word(const CssCode &css, std::size_t v) {
    auto w = css.y_z;
    for (std::size_t i = 0; i < css.K(); ++i) {
        if ((v >> i) & 1) w ^= css.pair.beta1_ext[i];
    }
    return w;
}

BitVector logical_bits(std::size_t K, std::size_t v) {
    BitVector bits(K);
    for (std::size_t i = 0; i < K; ++i) bits.set(i, (v >> i) & 1);
    return bits;
}

/// Supports of every word y_z + u + w_v, grouped by v, with u = 0 first in each group.
struct CosetTable {
    std::vector<std::vector<std::vector<std::uint32_t>>> supports;
    std::vector<BitVector> c2_words;

    CosetTable(const CssCode &css) {
        if (css.pair.C2.dimension() > kMaxCosetDimC2 || css.K() > kMaxCosetLogical) {
            throw SizeLimitError("coset enumeration needs dim C2 <= 24 and K <= 16");
        }
        c2_words = css.pair.C2.codewords();
        supports.resize(std::size_t{1} << css.K());
        for (std::size_t v = 0; v < supports.size(); ++v) {
            auto w = logical_word(css, v);
            for (const auto &u : c2_words) {
                auto x = w ^ u;
                std::vector<std::uint32_t> s;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    if (x.get(i)) s.push_back(static_cast<std::uint32_t>(i));
                }
                supports[v].push_back(std::move(s));
            }
        }
    }

    static std::uint32_t phase(const std::vector<std::uint32_t> &b, const std::vector<std::uint32_t> &support, std::uint32_t mask) {
        std::uint32_t acc = 0;
        for (auto i : support) acc += b[i];
        return acc & mask;
    }
};

OracleResult classify(const CssCode &css, int ell, const ZVector &b, const CosetTable &table, GateClass stop_below) {
    Ring ring(ell);
    const auto mask = ring.mask();
    const auto K = css.K();
    OracleResult res;

    std::vector<std::uint32_t> raw(table.supports.size());
    for (std::size_t v = 0; v < table.supports.size(); ++v) {
        const auto &group = table.supports[v];
        auto first = CosetTable::phase(b.entries, group[0], mask);
        for (std::size_t j = 1; j < group.size(); ++j) {
            auto p = CosetTable::phase(b.entries, group[j], mask);
            if (p != first) {
                res.cls = GateClass::NotInH;
                res.witness = Witness{logical_bits(K, v), table.c2_words[j], first, p};
                return res;
            }
        }
        raw[v] = first;
    }
    res.cls = GateClass::InH;

    PhaseProfile prof;
    prof.K = K;
    prof.ell = ell;
    prof.global_phase = raw[0];
    prof.in_H = true;
    prof.phases.resize(raw.size());
    for (std::size_t v = 0; v < raw.size(); ++v) prof.phases[v] = ring.reduce(raw[v] + ring.neg(raw[0]));
    res.profile = prof;
    if (stop_below == GateClass::InH) return res;

    for (std::size_t v = 0; v < raw.size(); ++v) {
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < K; ++i) {
            if ((v >> i) & 1) sum += prof.phases[std::size_t{1} << i];
        }
        if (ring.reduce(sum) != prof.phases[v]) {
            res.witness = Witness{logical_bits(K, v), BitVector(), 0, prof.phases[v]};
            return res;
        }
    }
    res.cls = GateClass::TransversalLogical;
    if (stop_below == GateClass::TransversalLogical) return res;

    for (std::size_t v = 0; v < raw.size(); ++v) {
        if (raw[v] != 0) {
            res.witness = Witness{logical_bits(K, v), BitVector(), 0, raw[v]};
            return res;
        }
    }
    res.cls = GateClass::LogicalIdentity;
    return res;
}

GateClass required_class(GroupKind which) {
    switch (which) {
        case GroupKind::H:
            return GateClass::InH;
        case GroupKind::T:
            return GateClass::TransversalLogical;
        case GroupKind::Id:
            break;
    }
    return GateClass::LogicalIdentity;
}

}  // namespace

const char *class_name(GateClass c) {
    switch (c) {
        case GateClass::NotInH:
            return "NotInH";
        case GateClass::InH:
            return "InH";
        case GateClass::TransversalLogical:
            return "TransversalLogical";
        case GateClass::LogicalIdentity:
            return "LogicalIdentity";
    }
    return "?";
}

OracleResult coset_phase_check(const CssCode &css, int ell, const ZVector &b) {
    if (b.ell != ell || b.size() != css.n()) throw InputError("gate vector does not match the code");
    CosetTable table(css);
    return classify(css, ell, b, table, GateClass::LogicalIdentity);
}

std::vector<ZVector> enumerate_group(const CssCode &css, int ell, GroupKind which, int threads) {
    Ring ring(ell);
    const auto n = css.n();
    const auto bits = n * static_cast<std::size_t>(ell);
    if (bits > kMaxSearchBits) throw SizeLimitError("exhaustive search needs n * ell <= 22");
    CosetTable table(css);
    const auto need = required_class(which);
    const std::uint64_t total = std::uint64_t{1} << bits;

    // Candidate t has coordinate i equal to the i-th base-N digit from the top, so increasing t is
    // lexicographic order with the last coordinate turning fastest.
    auto candidate = [&](std::uint64_t t) {
        ZVector b(n, ell);
        for (std::size_t i = 0; i < n; ++i) {
            b.entries[n - 1 - i] = static_cast<std::uint32_t>(t >> (i * ell)) & ring.mask();
        }
        return b;
    };
    auto scan = [&](std::uint64_t lo, std::uint64_t hi, std::vector<ZVector> &out) {
        for (auto t = lo; t < hi; ++t) {
            auto b = candidate(t);
            if (classify(css, ell, b, table, need).cls >= need) out.push_back(std::move(b));
        }
    };

    const auto workers = static_cast<std::uint64_t>(std::clamp(threads, 1, 64));
    std::vector<std::vector<ZVector>> chunks(workers);
    if (workers == 1) {
        scan(0, total, chunks[0]);
    } else {
        std::vector<std::thread> pool;
        for (std::uint64_t w = 0; w < workers; ++w) {
            pool.emplace_back(scan, total * w / workers, total * (w + 1) / workers, std::ref(chunks[w]));
        }
        for (auto &th : pool) th.join();
    }
    std::vector<ZVector> members;
    for (auto &c : chunks) {
        for (auto &b : c) members.push_back(std::move(b));
    }

    // A set containing 0 is a subgroup iff it holds a generating set G of its span and S + g is in S
    // for every g in G.
    std::unordered_set<ZVector, ZVectorHash> lookup(members.begin(), members.end());
    auto span = howell_form(n, ell, members);
    bool closed = lookup.count(ZVector(n, ell)) == 1;
    for (const auto &g : span.generators()) {
        if (!closed) break;
        closed = lookup.count(g) == 1;
        for (std::size_t i = 0; closed && i < members.size(); ++i) closed = lookup.count(members[i] + g) == 1;
    }
    if (!closed) throw ConsistencyError(std::string("enumerated ") + group_name(which) + " is not closed under addition");
    return members;
}

bool amplitude_fix_check(const CssCode &css, int ell, const ZVector &b) {
    if (b.ell != ell || b.size() != css.n()) throw InputError("gate vector does not match the code");
    const auto &C2 = css.pair.C2;
    if (C2.dimension() > kMaxAmplitudeDimC2 || css.n() > kMaxAmplitudeLength || css.K() > kMaxCosetLogical) {
        throw SizeLimitError("amplitude check needs dim C2 <= 16, n <= 24 and K <= 16");
    }
    Ring ring(ell);
    const std::uint32_t minus_one = ring.modulus() >> 1;
    const auto c2_words = C2.codewords();

    // |v>_L = sum_u (-1)^{y_x . u} |y_z + u + w_v>, stored as basis vector -> exponent of omega.
    using State = std::unordered_map<BitVector, std::uint32_t, BitVectorHash>;
    const std::size_t cosets = std::size_t{1} << css.K();
    std::vector<State> states(cosets);
    std::unordered_map<BitVector, std::size_t, BitVectorHash> decoder;
    for (std::size_t v = 0; v < cosets; ++v) {
        auto w = logical_word(css, v);
        decoder.emplace(C2.reduce(w ^ css.y_z), v);
        for (const auto &u : c2_words) {
            auto sign = (u & css.y_x).weight() & 1;
            states[v].emplace(w ^ u, sign ? minus_one : 0);
        }
    }

    for (std::size_t v = 0; v < cosets; ++v) {
        State image;
        for (const auto &[x, e] : states[v]) image.emplace(x, ring.reduce(std::uint64_t{e} + dot(b, x)));

        const auto &x0 = image.begin()->first;
        auto found = decoder.find(C2.reduce(x0 ^ css.y_z));
        if (found == decoder.end()) return false;
        const auto &target = states[found->second];
        if (target.size() != image.size()) return false;
        std::optional<std::uint32_t> ratio;
        for (const auto &[x, e] : image) {
            auto t = target.find(x);
            if (t == target.end()) return false;
            auto r = ring.reduce(std::uint64_t{e} + ring.neg(t->second));
            if (ratio && *ratio != r) return false;
            ratio = r;
        }
    }
    return true;
}

}  // namespace cssdiag
