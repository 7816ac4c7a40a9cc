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

#include "cssdiag/zmod.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>

namespace cssdiag {

Ring::Ring(int level) : ell(level) {
    if (level < 1 || level > kMaxLevel) {
        throw InputError("level must lie in [1, " + std::to_string(kMaxLevel) + "], got " + std::to_string(level));
    }
}

int Ring::valuation(std::uint32_t x) { return std::countr_zero(x); }

std::uint32_t Ring::inverse_odd(std::uint32_t x) const {
    // Newton iteration; each step doubles the number of correct low bits.
    std::uint32_t inv = x;
    for (int i = 0; i < 5; ++i) inv *= 2u - x * inv;
    return inv & mask();
}

ZVector::ZVector(std::size_t n, int level) : ell(level), entries(n, 0) { Ring{level}; }

ZVector::ZVector(std::vector<std::uint32_t> values, int level) : ell(level), entries(std::move(values)) {
    Ring ring(level);
    for (auto &e : entries) {
        if (e >= ring.modulus()) throw InputError("residue " + std::to_string(e) + " out of range for N = 2^" + std::to_string(level));
    }
}

ZVector ZVector::lift(const BitVector &bits, int level) {
    ZVector v(bits.size(), level);
    for (std::size_t i = 0; i < bits.size(); ++i) v.entries[i] = bits.get(i) ? 1 : 0;
    return v;
}

ZVector ZVector::parse(std::string_view text, int level) {
    std::vector<std::uint32_t> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        auto token = text.substr(pos, comma - pos);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        std::uint32_t value = 0;
        auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || end != token.data() + token.size()) {
            throw InputError("malformed residue '" + std::string(token) + "'");
        }
        values.push_back(value);
        pos = comma + 1;
    }
    return ZVector(std::move(values), level);
}

bool ZVector::is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](std::uint32_t e) { return e == 0; });
}

ZVector &ZVector::operator+=(const ZVector &other) {
    if (other.size() != size() || other.ell != ell) throw InputError("ZVector shape mismatch");
    Ring ring(ell);
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = ring.reduce(std::uint64_t{entries[i]} + other.entries[i]);
    return *this;
}

ZVector &ZVector::operator-=(const ZVector &other) {
    if (other.size() != size() || other.ell != ell) throw InputError("ZVector shape mismatch");
    Ring ring(ell);
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = ring.reduce(entries[i] - other.entries[i]);
    return *this;
}

ZVector ZVector::scaled(std::uint64_t factor) const {
    ZVector out = *this;
    Ring ring(ell);
    auto f = ring.reduce(factor);
    for (auto &e : out.entries) e = ring.reduce(std::uint64_t{e} * f);
    return out;
}

std::string ZVector::str() const {
    std::string s;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(entries[i]);
    }
    return s;
}

std::size_t ZVectorHash::operator()(const ZVector &v) const {
    std::size_t h = static_cast<std::size_t>(v.ell) * 0x9E3779B97F4A7C15ULL;
    for (auto e : v.entries) h = (h ^ e) * 0x100000001B3ULL + (h >> 31);
    return h;
}

std::uint32_t dot(const ZVector &a, const ZVector &b) {
    if (a.size() != b.size() || a.ell != b.ell) throw InputError("dot product shape mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::uint64_t{a.entries[i]} * b.entries[i];
    return Ring(a.ell).reduce(acc);
}

std::uint32_t dot(const ZVector &b, const BitVector &bits) {
    if (b.size() != bits.size()) throw InputError("dot product length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (bits.get(i)) acc += b.entries[i];
    }
    return Ring(b.ell).reduce(acc);
}

namespace {

// row -= factor * pivot_row, entrywise mod N.
void subtract_multiple(std::vector<std::uint32_t> &row, const std::vector<std::uint32_t> &pivot_row, std::uint32_t factor, const Ring &ring) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < row.size(); ++j) {
        row[j] = ring.reduce(row[j] - factor * pivot_row[j]);
    }
}

bool all_zero(const std::vector<std::uint32_t> &row) {
    return std::all_of(row.begin(), row.end(), [](std::uint32_t e) { return e == 0; });
}

}  // namespace

ZModule howell_form(std::size_t n, int ell, std::span<const ZVector> rows) {
    Ring ring(ell);
    std::vector<std::vector<std::uint32_t>> cand;
    cand.reserve(rows.size());
    for (const auto &r : rows) {
        if (r.ell != ell) throw InputError("rows mix levels: expected ell = " + std::to_string(ell) + ", got " + std::to_string(r.ell));
        if (r.size() != n) throw InputError("row length " + std::to_string(r.size()) + " does not match n = " + std::to_string(n));
        if (!r.is_zero()) cand.push_back(r.entries);
    }

    ZModule out(n, ell);
    std::vector<std::vector<std::uint32_t>> pivots;
    for (std::size_t col = 0; col < n && !cand.empty(); ++col) {
        std::size_t best = cand.size();
        int best_val = ell;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            auto e = cand[i][col];
            if (e == 0) continue;
            int v = Ring::valuation(e);
            if (v < best_val) {
                best_val = v;
                best = i;
            }
        }
        if (best == cand.size()) continue;

        auto p = std::move(cand[best]);
        cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(best));
        auto unit_inv = ring.inverse_odd(p[col] >> best_val);
        for (auto &e : p) e = ring.reduce(std::uint64_t{e} * unit_inv);

        for (auto &c : cand) subtract_multiple(c, p, c[col] >> best_val, ring);
        if (best_val > 0) {
            // Multiples of p that vanish on this column must stay reachable from later rows.
            auto extra = p;
            for (auto &e : extra) e = ring.reduce(std::uint64_t{e} << (ell - best_val));
            if (!all_zero(extra)) cand.push_back(std::move(extra));
        }
        std::erase_if(cand, all_zero);

        pivots.push_back(std::move(p));
        out.pivot_cols_.push_back(col);
        out.pivot_exps_.push_back(best_val);
    }

    for (std::size_t i = 0; i < pivots.size(); ++i) {
        auto col = out.pivot_cols_[i];
        auto a = out.pivot_exps_[i];
        for (std::size_t j = 0; j < i; ++j) subtract_multiple(pivots[j], pivots[i], pivots[j][col] >> a, ring);
    }
    for (auto &p : pivots) out.gens_.emplace_back(std::move(p), ell);
    return out;
}

HowellAccumulator::HowellAccumulator(std::size_t n, int ell) : n_(n), ell_(ell), current_(n, ell) { Ring{ell}; }

void HowellAccumulator::add(ZVector row) {
    if (row.ell != ell_ || row.size() != n_) throw InputError("row shape does not match accumulator");
    ++rows_seen_;
    if (row.is_zero()) return;
    pending_.push_back(std::move(row));
    if (pending_.size() >= 4 * n_ + 16) fold();
}

void HowellAccumulator::fold() {
    if (pending_.empty()) return;
    pending_.insert(pending_.end(), current_.generators().begin(), current_.generators().end());
    current_ = howell_form(n_, ell_, pending_);
    pending_.clear();
}

ZModule HowellAccumulator::finish() {
    fold();
    return current_;
}

ZModule kernel_perp(const ZModule &module) {
    const auto n = module.length();
    const auto ell = module.level();
    Ring ring(ell);
    const auto &gens = module.generators();
    const std::size_t k = gens.size();

    std::vector<std::vector<std::uint32_t>> a(k);
    for (std::size_t i = 0; i < k; ++i) a[i] = gens[i].entries;
    // q[j] is column j of the accumulated column transform.
    std::vector<std::vector<std::uint32_t>> q(n, std::vector<std::uint32_t>(n, 0));
    for (std::size_t j = 0; j < n; ++j) q[j][j] = 1;

    std::vector<int> diag;
    for (std::size_t t = 0; t < std::min(k, n); ++t) {
        std::size_t bi = k, bj = n;
        int best = ell;
        for (std::size_t i = t; i < k; ++i) {
            for (std::size_t j = t; j < n; ++j) {
                if (a[i][j] == 0) continue;
                int v = Ring::valuation(a[i][j]);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi == k) break;
        std::swap(a[t], a[bi]);
        if (bj != t) {
            for (auto &row : a) std::swap(row[t], row[bj]);
            std::swap(q[t], q[bj]);
        }
        auto unit_inv = ring.inverse_odd(a[t][t] >> best);
        for (auto &e : a[t]) e = ring.reduce(std::uint64_t{e} * unit_inv);

        for (std::size_t i = 0; i < k; ++i) {
            if (i != t) subtract_multiple(a[i], a[t], a[i][t] >> best, ring);
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (j == t || a[t][j] == 0) continue;
            auto f = a[t][j] >> best;
            for (std::size_t i = 0; i < k; ++i) a[i][j] = ring.reduce(a[i][j] - f * a[i][t]);
            subtract_multiple(q[j], q[t], f, ring);
        }
        diag.push_back(best);
    }

    std::vector<ZVector> kernel_gens;
    for (std::size_t t = 0; t < n; ++t) {
        ZVector g(q[t], ell);
        if (t < diag.size()) g = g.scaled(std::uint64_t{1} << (ell - diag[t]));
        if (!g.is_zero()) kernel_gens.push_back(std::move(g));
    }
    return howell_form(n, ell, kernel_gens);
}

ZModule kernel_perp(std::size_t n, int ell, std::span<const ZVector> rows) {
    return kernel_perp(howell_form(n, ell, rows));
}

std::size_t module_length(const ZModule &module) {
    std::size_t len = 0;
    for (auto a : module.pivot_exponents()) len += static_cast<std::size_t>(module.level() - a);
    return len;
}

bool contains(const ZModule &module, const ZVector &v) {
    if (v.size() != module.length() || v.ell != module.level()) throw InputError("vector shape does not match module");
    Ring ring(module.level());
    auto rest = v.entries;
    const auto &gens = module.generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        auto col = module.pivot_columns()[i];
        auto a = module.pivot_exponents()[i];
        for (std::size_t j = (i ? module.pivot_columns()[i - 1] + 1 : 0); j < col; ++j) {
            if (rest[j] != 0) return false;
        }
        auto e = rest[col];
        if (e & ((std::uint32_t{1} << a) - 1)) return false;
        subtract_multiple(rest, gens[i].entries, e >> a, ring);
    }
    return all_zero(rest);
}

bool contains(const ZModule &super, const ZModule &sub) {
    if (super.length() != sub.length() || super.level() != sub.level()) return false;
    return std::all_of(sub.generators().begin(), sub.generators().end(), [&](const ZVector &g) { return contains(super, g); });
}

ZModule module_sum(const ZModule &a, const ZModule &b) {
    if (a.length() != b.length() || a.level() != b.level()) throw InputError("module_sum shape mismatch");
    std::vector<ZVector> rows = a.generators();
    rows.insert(rows.end(), b.generators().begin(), b.generators().end());
    return howell_form(a.length(), a.level(), rows);
}

ZModule scale_lift(const ZModule &module) {
    const int ell = module.level() + 1;
    Ring ring(ell);
    std::vector<ZVector> rows;
    for (const auto &g : module.generators()) {
        ZVector lifted(g.size(), ell);
        for (std::size_t i = 0; i < g.size(); ++i) lifted.entries[i] = ring.reduce(std::uint64_t{g.entries[i]} * 2);
        rows.push_back(std::move(lifted));
    }
    return howell_form(module.length(), ell, rows);
}

std::vector<ZVector> module_elements(const ZModule &module, std::size_t max_log2) {
    if (module_length(module) > max_log2) throw InputError("module too large to enumerate");
    const auto &gens = module.generators();
    std::vector<ZVector> out{ZVector(module.length(), module.level())};
    for (std::size_t i = 0; i < gens.size(); ++i) {
        auto order = std::uint32_t{1} << (module.level() - module.pivot_exponents()[i]);
        auto base = out.size();
        for (std::uint32_t c = 1; c < order; ++c) {
            auto step = gens[i].scaled(c);
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] + step);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cssdiag
