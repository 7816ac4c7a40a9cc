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
#include <stdexcept>
#include <utility>
#include <vector>

#include "cssdiag/bincode.hpp"
#include "cssdiag/zmod.hpp"

namespace cssdiag {

/// Two computations that must agree did not. Always a bug, never bad input.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Q(C1, C2, y_x, y_z). Group computations use y_z = 0; y_z enters through conjugate_by_yz.
struct CssCode {
    NestedCodePair pair;
    BitVector y_x;
    BitVector y_z;

    std::size_t n() const { return pair.length(); }
    std::size_t K() const { return pair.num_logical(); }
};

/// Empty character vectors mean all zeros.
CssCode build_css(const BinaryCode &C1, const BinaryCode &C2, BitVector y_x = {}, BitVector y_z = {});
CssCode build_css(NestedCodePair pair, BitVector y_x = {}, BitVector y_z = {});

using DiagonalGate = ZVector;

enum class GroupKind { H, T, Id };
const char *group_name(GroupKind kind);

/// Rows 2^i (v * p) for i = 0..ell-1, v in beta2, p in star_family(beta1, i).
///
/// Ordered by i, then v, then p; exact duplicates and zero rows are dropped.
std::vector<ZVector> stabilizer_constraints(const NestedCodePair &pair, int ell);

/// Span of the constraint rows whose annihilator is the requested group (first displayed form).
ZModule constraint_span(const NestedCodePair &pair, int ell, GroupKind kind);

ZModule compute_H(const CssCode &css, int ell);
/// Both forms are evaluated and compared; K = 0 returns H.
/// Depends on the encoding basis beta1 \ beta2 (up to permutation and shifts by C2) once ell >= 2.
ZModule compute_T(const CssCode &css, int ell);
ZModule compute_Id(const CssCode &css, int ell);

struct GateGroups {
    ZModule H;
    ZModule T;
    ZModule Id;

    const ZModule &get(GroupKind kind) const;
};

/// All three groups; with threads > 1 they are computed concurrently.
GateGroups compute_groups(const CssCode &css, int ell, int threads = 1);

/// b . lift(y_z + sum_i v_i w_i) mod N, v given as a length-K bit vector.
std::uint32_t logical_phase(const CssCode &css, int ell, const ZVector &b, const BitVector &v);

/// phi over all of F_2^K, indexed by the integer whose bit i is v_{i+1}.
struct PhaseProfile {
    std::size_t K = 0;
    int ell = 1;
    std::uint32_t global_phase = 0;
    /// phi(v) - phi(0); phases[0] is always 0.
    std::vector<std::uint32_t> phases;
    /// b lies in H_N; otherwise the values are computed but do not describe a logical action.
    bool in_H = false;

    /// phi(v) = sum v_i phi(e_i) for every v.
    bool is_transversal() const;
};

PhaseProfile phase_profile(const CssCode &css, int ell, const ZVector &b, const ZModule &H);
PhaseProfile phase_profile(const CssCode &css, int ell, const ZVector &b);

/// C_J-U(a): phase omega^a when every logical qubit in J is 1. J is 1-based and ascending.
struct ControlledFactor {
    std::vector<std::size_t> J;
    std::uint32_t a = 0;

    bool operator==(const ControlledFactor &) const = default;
};

struct LogicalDecomposition {
    int ell = 1;
    std::uint32_t global_phase = 0;
    /// Sorted by |J|, then lexicographically.
    std::vector<ControlledFactor> factors;
    bool in_H = false;

    /// global_phase + sum_J (prod_{i in J} v_i) a_J mod N.
    std::uint32_t evaluate(const BitVector &v) const;
};

/// a_J = (-2)^{|J|-1} b' . lift(w_{j1} * ... * w_{jh}) mod N, where b' is b conjugated by y_z.
/// Only |J| <= ell can be nonzero.
LogicalDecomposition decompose_action(const CssCode &css, int ell, const ZVector &b, const ZModule &H);
LogicalDecomposition decompose_action(const CssCode &css, int ell, const ZVector &b);

/// Negates b on the support of y_z; the second value is y_z . b mod N.
std::pair<ZVector, std::uint32_t> conjugate_by_yz(const ZVector &b, const BitVector &y_z);

/// c M with M given as K rows over F_2 (entries lifted to 0/1). Throws InputError if M is singular.
///
/// With w'_j = sum_i M[i][j] w_i, the single-qubit phases of b over the new encoding are cM. The
/// whole action is U(cM) only when b is transversal for the new encoding too: for ell >= 2 the
/// group T itself depends on the logical basis.
ZVector rebase_action(const ZVector &c, const std::vector<BitVector> &M);

struct AllOnesReport {
    bool in_H = false;
    bool in_T = false;
    bool in_Id = false;
    /// C2 is contained in the dual of C1^{ell-1}.
    bool cssT_necessary_ok = false;
    /// wt(w_v) = sum v_i wt(w_i) mod N on every codeword of C1; unset when dim C1 > 24.
    std::optional<bool> weights_condition;
    /// Every weight in C1 is divisible by N; unset when dim C1 > 24.
    std::optional<bool> divisibility;
};

/// Throws ConsistencyError if one of the known implications fails.
AllOnesReport allones_report(const CssCode &css, int ell, const GateGroups &groups);
AllOnesReport allones_report(const CssCode &css, int ell);

}  // namespace cssdiag
