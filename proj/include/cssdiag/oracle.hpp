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

// Brute-force checks straight from the definitions. Nothing here calls compute_H/T/Id; the group
// computations are what these functions are meant to test.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cssdiag/bincode.hpp"
#include "cssdiag/gates.hpp"
#include "cssdiag/zmod.hpp"

namespace cssdiag {

/// An instance is outside the envelope where exhaustive search is allowed.
struct SizeLimitError : InputError {
    using InputError::InputError;
};

/// Ordered: each class implies the ones before it.
enum class GateClass { NotInH = 0, InH = 1, TransversalLogical = 2, LogicalIdentity = 3 };

const char *class_name(GateClass c);

/// Why a gate missed the next class up.
///
/// For NotInH: the phases at u = 0 and u = `u` in coset v differ. Otherwise `u` is empty and
/// `phase` is the offending phi(v) (nonlinear for InH, nonzero for TransversalLogical).
struct Witness {
    BitVector v;
    BitVector u;
    std::uint32_t phase_first = 0;
    std::uint32_t phase = 0;
};

struct OracleResult {
    GateClass cls = GateClass::NotInH;
    /// Filled whenever b fixes the code; in_H is set from the enumeration itself.
    std::optional<PhaseProfile> profile;
    std::optional<Witness> witness;
};

/// Classifies U(b) on Q(C1, C2, y_x, y_z) by enumerating every coset C2 + y_z + w_v.
/// Requires dim C2 <= 24 and K <= 16.
OracleResult coset_phase_check(const CssCode &css, int ell, const ZVector &b);

/// Every b in Z_N^n of at least the requested class, in lexicographic (odometer) order.
///
/// Requires n * ell <= 22. With threads > 1 the candidate range is split into contiguous chunks
/// whose results are concatenated in order, so the output never depends on the thread count.
/// Throws ConsistencyError if the result is not closed under addition.
std::vector<ZVector> enumerate_group(const CssCode &css, int ell, GroupKind which, int threads = 1);

/// Applies U(b) to each logical basis state as a list of (basis vector, amplitude) terms and
/// checks that the image is a scalar multiple of one logical basis state.
///
/// Amplitudes are pairs (sign, exponent of omega) folded into a single exponent mod N, sign -1
/// being N/2. Requires dim C2 <= 16, n <= 24 and K <= 16.
bool amplitude_fix_check(const CssCode &css, int ell, const ZVector &b);

}  // namespace cssdiag
