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

// Square-free monomials in x_1..x_m, their evaluation vectors on F_2^m, and closed forms for the
// gate groups of monomial CSS codes.
//
// Points are ordered LSB first: coordinate i (0-based) is the point whose x_k is bit k-1 of i, so
// the last coordinate is (1, ..., 1).

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cssdiag/bincode.hpp"
#include "cssdiag/gates.hpp"
#include "cssdiag/zmod.hpp"

namespace cssdiag {

constexpr int kMaxVariables = 20;

struct Monomial {
    std::uint32_t mask = 0;

    int degree() const;
    bool divides(Monomial other) const { return (mask & other.mask) == mask; }
    /// Square-free product.
    Monomial operator*(Monomial other) const { return {mask | other.mask}; }

    bool operator==(const Monomial &) const = default;
    /// Degree first, then mask as an integer.
    bool operator<(const Monomial &other) const;
};

/// Parses "1" or "x1x3" (indices strictly increasing, each in 1..m).
Monomial parse_monomial(std::string_view token, int m);
std::string format_monomial(Monomial u);
/// x_1 ... x_m.
Monomial full_monomial(int m);

/// A set of monomials in m variables, members kept sorted by (degree, mask).
class MonomialSet {
   public:
    explicit MonomialSet(int m = 0);
    MonomialSet(int m, const std::vector<Monomial> &members);
    static MonomialSet parse(const std::vector<std::string> &tokens, int m);

    int variables() const { return m_; }
    const std::vector<Monomial> &members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(Monomial u) const;
    void insert(Monomial u);
    bool is_subset_of(const MonomialSet &other) const;
    std::vector<std::string> tokens() const;

    bool operator==(const MonomialSet &) const = default;

   private:
    int m_;
    std::vector<Monomial> members_;
};

MonomialSet set_difference(const MonomialSet &a, const MonomialSet &b);

struct MonomialCodeSpec {
    int m = 0;
    MonomialSet M1;
    MonomialSet M2;

    /// Checks M2 <= M1 and the variable count.
    static MonomialCodeSpec make(int m, MonomialSet M1, MonomialSet M2);
    /// M1 \ M2 in (degree, mask) order: the encoding order of the logical qubits.
    std::vector<Monomial> encoding() const;
};

/// ev(u), length 2^m.
BitVector evaluate(Monomial u, int m);

/// M2 M1^s: products of one element of M2 with at most s elements of M1.
MonomialSet product_set(const MonomialSet &M2, const MonomialSet &M1, int s);
/// Products of between 1 and s elements of M (s = 0 gives {1}).
MonomialSet power_set(const MonomialSet &M, int s);
MonomialSet maximal_elements(const MonomialSet &M);
MonomialSet divisibility_closure(const MonomialSet &M);
bool is_decreasing(const MonomialSet &M);

/// The induced pair: beta2 = ev(M2), beta1_ext = ev(M1 \ M2) in encoding order.
CssCode to_css_code(const MonomialCodeSpec &spec);

struct HypothesisError : InputError {
    enum class Code {
        FullMonomialReachable,
        PowerStabilized,
        NotExact,
        NotDecreasing,
        NotApplicable,
        GeneratorOutsideH,
    };
    Code code;

    HypothesisError(Code c, const std::string &what) : InputError(what), code(c) {}
};

const char *hypothesis_code_name(HypothesisError::Code code);

struct HypothesisCheck {
    std::string name;
    bool holds = false;
};

/// Hypotheses as stated for the H closed form: x_1..x_m not in M2 M1^{ell-1}, and
/// M1^{ell-1} != M1^{ell-2} (taken to hold at ell = 1).
std::vector<HypothesisCheck> stated_hypotheses_H(const MonomialCodeSpec &spec, int ell);
/// Hypotheses as stated for the T/Id closed forms: x_1..x_m not in M2 or M1^ell \ M1, and
/// M1^ell != M1^{ell-1}. These are reported only; exactness below is what decides.
std::vector<HypothesisCheck> stated_hypotheses_T_Id(const MonomialCodeSpec &spec, int ell);

/// For each mask w, the least e such that 2^e ev(w) lies in the constraint span of the group,
/// capped at ell (ell meaning unconstrained).
std::vector<int> h_exponents(const MonomialCodeSpec &spec, int ell);
std::vector<int> t_exponents(const MonomialCodeSpec &spec, int ell);
std::vector<int> id_exponents(const MonomialCodeSpec &spec, int ell);

/// Constraints 2^{e_w} ev(w) have annihilator span{2^{ell - e_v} ev(x/v)} exactly when
/// min(e_v, ell) <= e_w + |v \ w| for every constrained w. Returns a failing (v, w) if any.
struct ExactnessViolation {
    Monomial v;
    Monomial w;
};
std::optional<ExactnessViolation> exactness_violation(int m, int ell, const std::vector<int> &exponents);

/// span{ev(x/u) : u not in M2 M1^{ell-1}} + 2 H_{N/2}, built recursively down to ell = 1.
/// Throws HypothesisError if a stated hypothesis or the exactness condition fails.
ZModule closed_form_H(const MonomialCodeSpec &spec, int ell);

/// Least ell with x_1..x_m in M2 M1^{ell-1}, if the full monomial is reachable at all.
std::optional<int> minimal_full_level(const MonomialCodeSpec &spec);

struct GeneralClosedForm {
    /// Least ell with x_1..x_m in M2 M1^{ell-1}.
    int ell = 0;
    ZModule module;
    /// The module has the same length as H_N, hence equals it.
    bool exact = false;
};

/// span{ev(u) - ev(1) : u not in {x/w : w in M2 M1^{ell-1}, w != x}} + 2 H_{N/2} at the least
/// ell where the full monomial appears. Every generator is checked against the constraints.
GeneralClosedForm closed_form_H_general(const MonomialCodeSpec &spec);

struct DeltaSets {
    MonomialSet B2;
    MonomialSet B1;
    /// Maximal elements of B2 B1^{ell-1}.
    MonomialSet products;
    /// x / u for u in `products`.
    MonomialSet quotients;
    /// Monomials that are not a multiple of any quotient.
    MonomialSet delta;
};

/// Requires decreasing sets and x_1..x_m not in M2 M1^{ell-1}.
DeltaSets delta_generators(const MonomialCodeSpec &spec, int ell);

struct TIdClosedForm {
    ZModule T;
    ZModule Id;
    std::vector<HypothesisCheck> stated;
};

/// Id_N = span{ev(x/u) : u not in M1^ell} + 2 Id_{N/2} and
/// T_N = Id_N + span{2^{ell - e_u} ev(x/u) : u in M1 \ M2}, where e_u = 1 if u has a proper
/// divisor in M1 and ell otherwise. Throws HypothesisError::NotExact if either exponent system
/// fails the exactness condition.
TIdClosedForm closed_form_T_Id(const MonomialCodeSpec &spec, int ell);

/// The single-span displays without tails, kept to measure how far they are from the groups.
ZModule stated_id_span(const MonomialCodeSpec &spec, int ell);
ZModule stated_t_span(const MonomialCodeSpec &spec, int ell);

struct MonomialAction {
    /// c_i = 2^{scale + m - deg(u u_i)} mod N over the encoding order.
    ZVector c;
    PhaseProfile profile;
    bool in_T = false;
    bool in_H = false;
};

/// Action of U(2^scale ev(u)). `c` describes the logical action only when in_T holds.
MonomialAction monomial_action(const MonomialCodeSpec &spec, int ell, Monomial u, int scale = 0);

/// (q, r) when M2 and M1 are the monomials of degree <= q and <= r.
std::optional<std::pair<int, int>> reed_muller_orders(const MonomialCodeSpec &spec);

}  // namespace cssdiag
