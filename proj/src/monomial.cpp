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

#include "cssdiag/monomial.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace cssdiag {

namespace {

// Closed forms materialise 2^m generators of length 2^m.
constexpr int kMaxClosedFormVariables = 14;

void check_variables(int m, int limit = kMaxVariables) {
    if (m < 0 || m > limit) {
        throw InputError("variable count must lie in [0, " + std::to_string(limit) + "], got " + std::to_string(m));
    }
}

std::uint32_t all_masks(int m) { return std::uint32_t{1} << m; }

/// dist[w] = least s with w in start * M^s, capped at `cap` (cap means not reached).
std::vector<int> layer_distances(int m, const MonomialSet &start, int start_dist, const MonomialSet &M, int cap) {
    std::vector<int> dist(all_masks(m), cap);
    std::vector<std::uint32_t> frontier;
    for (auto u : start.members()) {
        if (start_dist < dist[u.mask]) {
            dist[u.mask] = start_dist;
            frontier.push_back(u.mask);
        }
    }
    for (int s = start_dist + 1; s < cap && !frontier.empty(); ++s) {
        std::vector<std::uint32_t> next;
        for (auto w : frontier) {
            for (auto u : M.members()) {
                auto p = w | u.mask;
                if (dist[p] > s) {
                    dist[p] = s;
                    next.push_back(p);
                }
            }
        }
        frontier = std::move(next);
    }
    return dist;
}

ZVector lifted_ev(std::uint32_t mask, int m, int ell, int shift = 0) {
    auto v = ZVector::lift(evaluate(Monomial{mask}, m), ell);
    return shift ? v.scaled(std::uint64_t{1} << shift) : v;
}

/// Level by level: span{ev(x/u) : generates(u, L)} + 2 * (module at L - 1).
ZModule recursive_span(int m, int ell, const std::function<bool(std::uint32_t, int)> &generates) {
    const auto n = std::size_t{1} << m;
    const auto full = full_monomial(m).mask;
    ZModule module;
    for (int level = 1; level <= ell; ++level) {
        std::vector<ZVector> rows;
        for (std::uint32_t u = 0; u < all_masks(m); ++u) {
            if (generates(u, level)) rows.push_back(lifted_ev(full ^ u, m, level));
        }
        if (level > 1) {
            auto tail = scale_lift(module);
            rows.insert(rows.end(), tail.generators().begin(), tail.generators().end());
        }
        module = howell_form(n, level, rows);
    }
    return module;
}

void require_closed_form_size(const MonomialCodeSpec &spec, int ell) {
    check_variables(spec.m, kMaxClosedFormVariables);
    Ring{ell};
}

}  // namespace

int Monomial::degree() const { return std::popcount(mask); }

bool Monomial::operator<(const Monomial &other) const {
    auto d = degree(), e = other.degree();
    return d != e ? d < e : mask < other.mask;
}

Monomial parse_monomial(std::string_view token, int m) {
    if (token == "1") return {};
    if (token.empty()) throw InputError("empty monomial token");
    Monomial u;
    int last = 0;
    std::size_t pos = 0;
    while (pos < token.size()) {
        if (token[pos] != 'x') throw InputError("monomial token '" + std::string(token) + "' must look like 1 or x1x3");
        ++pos;
        auto start = pos;
        while (pos < token.size() && token[pos] >= '0' && token[pos] <= '9') ++pos;
        if (start == pos || pos - start > 2 || token[start] == '0') {
            throw InputError("monomial token '" + std::string(token) + "' has a malformed variable index");
        }
        int k = std::stoi(std::string(token.substr(start, pos - start)));
        if (k > m) throw InputError("monomial token '" + std::string(token) + "' uses x" + std::to_string(k) + " with m = " + std::to_string(m));
        if (k <= last) throw InputError("monomial token '" + std::string(token) + "' must list variables in strictly increasing order");
        last = k;
        u.mask |= std::uint32_t{1} << (k - 1);
    }
    return u;
}

std::string format_monomial(Monomial u) {
    if (u.mask == 0) return "1";
    std::string s;
    for (int k = 0; k < 32; ++k) {
        if ((u.mask >> k) & 1) s += "x" + std::to_string(k + 1);
    }
    return s;
}

Monomial full_monomial(int m) { return {all_masks(m) - 1}; }

MonomialSet::MonomialSet(int m) : m_(m) { check_variables(m); }

MonomialSet::MonomialSet(int m, const std::vector<Monomial> &members) : MonomialSet(m) {
    for (auto u : members) {
        if (u.mask >= all_masks(m_)) throw InputError("monomial " + format_monomial(u) + " uses more than m variables");
    }
    members_ = members;
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

MonomialSet MonomialSet::parse(const std::vector<std::string> &tokens, int m) {
    MonomialSet s(m);
    for (const auto &t : tokens) {
        auto u = parse_monomial(t, m);
        if (s.contains(u)) throw InputError("monomial '" + t + "' is listed twice");
        s.insert(u);
    }
    return s;
}

bool MonomialSet::contains(Monomial u) const { return std::binary_search(members_.begin(), members_.end(), u); }

void MonomialSet::insert(Monomial u) {
    if (u.mask >= all_masks(m_)) throw InputError("monomial " + format_monomial(u) + " uses more than m variables");
    auto it = std::lower_bound(members_.begin(), members_.end(), u);
    if (it == members_.end() || !(*it == u)) members_.insert(it, u);
}

bool MonomialSet::is_subset_of(const MonomialSet &other) const {
    return std::all_of(members_.begin(), members_.end(), [&](Monomial u) { return other.contains(u); });
}

std::vector<std::string> MonomialSet::tokens() const {
    std::vector<std::string> out;
    for (auto u : members_) out.push_back(format_monomial(u));
    return out;
}

MonomialSet set_difference(const MonomialSet &a, const MonomialSet &b) {
    MonomialSet out(a.variables());
    for (auto u : a.members()) {
        if (!b.contains(u)) out.insert(u);
    }
    return out;
}

MonomialCodeSpec MonomialCodeSpec::make(int m, MonomialSet M1, MonomialSet M2) {
    check_variables(m);
    if (M1.variables() != m || M2.variables() != m) throw InputError("monomial sets use a different variable count");
    if (!M2.is_subset_of(M1)) throw NestingError("M2 is not a subset of M1");
    return {m, std::move(M1), std::move(M2)};
}

std::vector<Monomial> MonomialCodeSpec::encoding() const { return set_difference(M1, M2).members(); }

BitVector evaluate(Monomial u, int m) {
    check_variables(m);
    const auto n = std::size_t{1} << m;
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if ((i & u.mask) == u.mask) v.set(i);
    }
    return v;
}

MonomialSet product_set(const MonomialSet &M2, const MonomialSet &M1, int s) {
    if (s < 0) throw InputError("product_set needs s >= 0");
    const int m = M1.variables();
    auto dist = layer_distances(m, M2, 0, M1, s + 1);
    std::vector<Monomial> out;
    for (std::uint32_t w = 0; w < dist.size(); ++w) {
        if (dist[w] <= s) out.push_back({w});
    }
    return MonomialSet(m, out);
}

MonomialSet power_set(const MonomialSet &M, int s) {
    if (s < 0) throw InputError("power_set needs s >= 0");
    const int m = M.variables();
    MonomialSet out(m);
    if (s == 0) {
        out.insert({});
        return out;
    }
    auto dist = layer_distances(m, M, 1, M, s + 1);
    for (std::uint32_t w = 0; w < dist.size(); ++w) {
        if (dist[w] <= s) out.insert({w});
    }
    return out;
}

MonomialSet maximal_elements(const MonomialSet &M) {
    MonomialSet out(M.variables());
    for (auto u : M.members()) {
        bool maximal = std::none_of(M.members().begin(), M.members().end(), [&](Monomial v) { return !(v == u) && u.divides(v); });
        if (maximal) out.insert(u);
    }
    return out;
}

MonomialSet divisibility_closure(const MonomialSet &M) {
    MonomialSet out(M.variables());
    for (auto u : M.members()) {
        // Enumerate every submask of u.
        for (std::uint32_t d = u.mask;; d = (d - 1) & u.mask) {
            out.insert({d});
            if (d == 0) break;
        }
    }
    return out;
}

bool is_decreasing(const MonomialSet &M) { return divisibility_closure(M) == M; }

CssCode to_css_code(const MonomialCodeSpec &spec) {
    const auto n = std::size_t{1} << spec.m;
    std::vector<BitVector> beta2, ext;
    for (auto u : spec.M2.members()) beta2.push_back(evaluate(u, spec.m));
    for (auto u : spec.encoding()) ext.push_back(evaluate(u, spec.m));
    return build_css(NestedCodePair::from_bases(n, std::move(beta2), std::move(ext)));
}

const char *hypothesis_code_name(HypothesisError::Code code) {
    using C = HypothesisError::Code;
    switch (code) {
        case C::FullMonomialReachable:
            return "full_monomial_reachable";
        case C::PowerStabilized:
            return "power_stabilized";
        case C::NotExact:
            return "not_exact";
        case C::NotDecreasing:
            return "not_decreasing";
        case C::NotApplicable:
            return "not_applicable";
        case C::GeneratorOutsideH:
            return "generator_outside_H";
    }
    return "?";
}

std::vector<HypothesisCheck> stated_hypotheses_H(const MonomialCodeSpec &spec, int ell) {
    Ring{ell};
    const auto full = full_monomial(spec.m);
    std::vector<HypothesisCheck> out;
    out.push_back({"x1..xm not in M2 M1^(l-1)", !product_set(spec.M2, spec.M1, ell - 1).contains(full)});
    bool grows = ell == 1 || !(power_set(spec.M1, ell - 1) == power_set(spec.M1, ell - 2));
    out.push_back({"M1^(l-1) != M1^(l-2)", grows});
    return out;
}

std::vector<HypothesisCheck> stated_hypotheses_T_Id(const MonomialCodeSpec &spec, int ell) {
    Ring{ell};
    const auto full = full_monomial(spec.m);
    auto top = power_set(spec.M1, ell);
    bool reached = spec.M2.contains(full) || (top.contains(full) && !spec.M1.contains(full));
    std::vector<HypothesisCheck> out;
    out.push_back({"x1..xm not in M2 or M1^l \\ M1", !reached});
    out.push_back({"M1^l != M1^(l-1)", !(top == power_set(spec.M1, ell - 1))});
    return out;
}

std::vector<int> h_exponents(const MonomialCodeSpec &spec, int ell) {
    Ring{ell};
    return layer_distances(spec.m, spec.M2, 0, spec.M1, ell);
}

std::vector<int> id_exponents(const MonomialCodeSpec &spec, int ell) {
    Ring{ell};
    // t_w - 1 where t_w is the least number of M1 factors.
    auto t = layer_distances(spec.m, spec.M1, 1, spec.M1, ell + 1);
    for (auto &e : t) e -= 1;
    return t;
}

std::vector<int> t_exponents(const MonomialCodeSpec &spec, int ell) {
    auto e = id_exponents(spec, ell);
    for (auto u : spec.M1.members()) {
        if (spec.M2.contains(u)) continue;
        bool proper_divisor = std::any_of(spec.M1.members().begin(), spec.M1.members().end(), [&](Monomial d) { return !(d == u) && d.divides(u); });
        e[u.mask] = proper_divisor ? std::min(1, ell) : ell;
    }
    return e;
}

std::optional<ExactnessViolation> exactness_violation(int m, int ell, const std::vector<int> &exponents) {
    for (std::uint32_t v = 0; v < all_masks(m); ++v) {
        const int ev = std::min(exponents[v], ell);
        if (ev == 0) continue;
        for (std::uint32_t w = 0; w < all_masks(m); ++w) {
            if (exponents[w] >= ell) continue;
            if (ev > exponents[w] + std::popcount(v & ~w)) return ExactnessViolation{{v}, {w}};
        }
    }
    return std::nullopt;
}

ZModule closed_form_H(const MonomialCodeSpec &spec, int ell) {
    require_closed_form_size(spec, ell);
    auto stated = stated_hypotheses_H(spec, ell);
    if (!stated[0].holds) throw HypothesisError(HypothesisError::Code::FullMonomialReachable, "H closed form: x1..xm lies in M2 M1^(l-1)");
    if (!stated[1].holds) throw HypothesisError(HypothesisError::Code::PowerStabilized, "H closed form: M1^(l-1) = M1^(l-2)");
    auto s = h_exponents(spec, ell);
    if (auto bad = exactness_violation(spec.m, ell, s)) {
        throw HypothesisError(HypothesisError::Code::NotExact,
                              "H closed form is not exact: 2^(l-e) ev(x/" + format_monomial(bad->v) + ") is not orthogonal to the constraint on " + format_monomial(bad->w));
    }
    return recursive_span(spec.m, ell, [&](std::uint32_t u, int level) { return s[u] >= level; });
}

std::optional<int> minimal_full_level(const MonomialCodeSpec &spec) {
    const int cap = static_cast<int>(spec.M1.size()) + 1;
    auto dist = layer_distances(spec.m, spec.M2, 0, spec.M1, cap);
    auto s = dist[full_monomial(spec.m).mask];
    if (s >= cap) return std::nullopt;
    return s + 1;
}

GeneralClosedForm closed_form_H_general(const MonomialCodeSpec &spec) {
    check_variables(spec.m, kMaxClosedFormVariables);
    auto level = minimal_full_level(spec);
    if (!level) throw HypothesisError(HypothesisError::Code::NotApplicable, "x1..xm is never reached by M2 M1^s");
    const int ell = *level;
    if (ell > kMaxLevel) throw HypothesisError(HypothesisError::Code::NotApplicable, "level needed for x1..xm exceeds the supported range");
    auto reach = product_set(spec.M2, spec.M1, ell - 1);
    if (reach.size() == all_masks(spec.m)) {
        throw HypothesisError(HypothesisError::Code::NotApplicable, "M2 M1^(l-1) contains every monomial");
    }

    const auto n = std::size_t{1} << spec.m;
    const auto full = full_monomial(spec.m).mask;
    Ring ring(ell);
    auto exps = h_exponents(spec, ell);
    MonomialSet excluded(spec.m);
    for (auto w : reach.members()) {
        if (w.mask != full) excluded.insert({full ^ w.mask});
    }
    const auto ones = lifted_ev(0, spec.m, ell);
    std::vector<ZVector> rows;
    for (std::uint32_t u = 0; u < all_masks(spec.m); ++u) {
        if (excluded.contains({u})) continue;
        auto g = lifted_ev(u, spec.m, ell) - ones;
        for (std::uint32_t w = 0; w < all_masks(spec.m); ++w) {
            if (exps[w] >= ell) continue;
            if (ring.reduce(std::uint64_t{dot(g, evaluate({w}, spec.m))} << exps[w]) != 0) {
                throw HypothesisError(HypothesisError::Code::GeneratorOutsideH,
                                      "ev(" + format_monomial({u}) + ") - ev(1) violates the constraint on " + format_monomial({w}));
            }
        }
        rows.push_back(std::move(g));
    }
    auto css = to_css_code(spec);
    if (ell > 1) {
        auto tail = scale_lift(compute_H(css, ell - 1));
        rows.insert(rows.end(), tail.generators().begin(), tail.generators().end());
    }
    GeneralClosedForm out;
    out.ell = ell;
    out.module = howell_form(n, ell, rows);
    out.exact = module_length(out.module) == module_length(compute_H(css, ell));
    return out;
}

DeltaSets delta_generators(const MonomialCodeSpec &spec, int ell) {
    Ring{ell};
    if (!is_decreasing(spec.M1) || !is_decreasing(spec.M2)) {
        throw HypothesisError(HypothesisError::Code::NotDecreasing, "Delta generators need decreasing monomial sets");
    }
    const auto full = full_monomial(spec.m);
    if (product_set(spec.M2, spec.M1, ell - 1).contains(full)) {
        throw HypothesisError(HypothesisError::Code::FullMonomialReachable, "Delta generators: x1..xm lies in M2 M1^(l-1)");
    }
    DeltaSets d{maximal_elements(spec.M2), maximal_elements(spec.M1), MonomialSet(spec.m), MonomialSet(spec.m), MonomialSet(spec.m)};
    d.products = maximal_elements(product_set(d.B2, d.B1, ell - 1));
    for (auto u : d.products.members()) d.quotients.insert({full.mask ^ u.mask});
    for (std::uint32_t u = 0; u < all_masks(spec.m); ++u) {
        bool multiple = std::any_of(d.quotients.members().begin(), d.quotients.members().end(), [&](Monomial q) { return q.divides({u}); });
        if (!multiple) d.delta.insert({u});
    }
    return d;
}

TIdClosedForm closed_form_T_Id(const MonomialCodeSpec &spec, int ell) {
    require_closed_form_size(spec, ell);
    auto id_e = id_exponents(spec, ell);
    auto t_e = t_exponents(spec, ell);
    if (auto bad = exactness_violation(spec.m, ell, id_e)) {
        throw HypothesisError(HypothesisError::Code::NotExact, "Id closed form is not exact at ev(x/" + format_monomial(bad->v) + ") against " + format_monomial(bad->w));
    }
    if (auto bad = exactness_violation(spec.m, ell, t_e)) {
        throw HypothesisError(HypothesisError::Code::NotExact, "T closed form is not exact at ev(x/" + format_monomial(bad->v) + ") against " + format_monomial(bad->w));
    }

    TIdClosedForm out;
    out.stated = stated_hypotheses_T_Id(spec, ell);
    out.Id = recursive_span(spec.m, ell, [&](std::uint32_t u, int level) { return id_e[u] >= level; });

    const auto full = full_monomial(spec.m).mask;
    std::vector<ZVector> rows = out.Id.generators();
    for (auto u : spec.encoding()) rows.push_back(lifted_ev(full ^ u.mask, spec.m, ell, ell - std::min(t_e[u.mask], ell)));
    out.T = howell_form(std::size_t{1} << spec.m, ell, rows);
    return out;
}

ZModule stated_id_span(const MonomialCodeSpec &spec, int ell) {
    require_closed_form_size(spec, ell);
    auto top = power_set(spec.M1, ell);
    const auto full = full_monomial(spec.m).mask;
    std::vector<ZVector> rows;
    for (std::uint32_t u = 0; u < all_masks(spec.m); ++u) {
        if (!top.contains({u})) rows.push_back(lifted_ev(full ^ u, spec.m, ell));
    }
    return howell_form(std::size_t{1} << spec.m, ell, rows);
}

ZModule stated_t_span(const MonomialCodeSpec &spec, int ell) {
    auto id = stated_id_span(spec, ell);
    const auto full = full_monomial(spec.m).mask;
    std::vector<ZVector> rows = id.generators();
    for (auto u : spec.encoding()) rows.push_back(lifted_ev(full ^ u.mask, spec.m, ell));
    return howell_form(std::size_t{1} << spec.m, ell, rows);
}

MonomialAction monomial_action(const MonomialCodeSpec &spec, int ell, Monomial u, int scale) {
    Ring ring(ell);
    if (scale < 0) throw InputError("scale must be non-negative");
    if (u.mask >= all_masks(spec.m)) throw InputError("monomial uses more than m variables");
    auto css = to_css_code(spec);
    auto groups = compute_groups(css, ell);
    auto enc = spec.encoding();

    MonomialAction act;
    act.c = ZVector(enc.size(), ell);
    for (std::size_t i = 0; i < enc.size(); ++i) {
        int e = scale + spec.m - (u * enc[i]).degree();
        act.c.entries[i] = e >= ell ? 0 : ring.reduce(std::uint64_t{1} << e);
    }
    auto b = scale >= ell ? ZVector(css.n(), ell) : lifted_ev(u.mask, spec.m, ell, scale);
    act.profile = phase_profile(css, ell, b, groups.H);
    act.in_H = contains(groups.H, b);
    act.in_T = contains(groups.T, b);
    return act;
}

std::optional<std::pair<int, int>> reed_muller_orders(const MonomialCodeSpec &spec) {
    auto order = [&](const MonomialSet &M) -> std::optional<int> {
        if (M.size() == 0) return std::nullopt;
        int d = M.members().back().degree();
        std::size_t count = 0;
        for (std::uint32_t u = 0; u < all_masks(spec.m); ++u) {
            if (std::popcount(u) <= d) ++count;
        }
        if (count != M.size()) return std::nullopt;
        return d;
    };
    auto q = order(spec.M2), r = order(spec.M1);
    if (!q || !r) return std::nullopt;
    return std::make_pair(*q, *r);
}

}  // namespace cssdiag
