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

#include "cssdiag/job.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "cssdiag/oracle.hpp"

namespace cssdiag {

using nlohmann::json;

namespace {

// Exhaustive enumeration inside verify is skipped above this many candidate bits.
constexpr std::size_t kVerifyEnumerationBits = 16;
// Random group elements drawn per group for the oracle spot checks.
constexpr int kVerifySamples = 8;
constexpr std::size_t kMaxJobLength = 1u << 16;

[[noreturn]] void fail(const std::string &path, const std::string &what) { throw InputError(path + ": " + what); }

std::string index_path(const std::string &path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::int64_t as_int(const json &v, const std::string &path, std::int64_t lo, std::int64_t hi) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) fail(path, "must be at most " + std::to_string(hi));
    const auto x = v.get<std::int64_t>();
    if (x < lo || x > hi) fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
}

std::int64_t get_int(const json &doc, const std::string &key, const std::string &path, std::int64_t lo, std::int64_t hi) {
    return as_int(doc.at(key), path, lo, hi);
}

const json &require(const json &doc, const std::string &key, const std::string &path) {
    if (!doc.contains(key)) fail(path, "missing field");
    return doc.at(key);
}

void reject_unknown(const json &doc, const std::set<std::string> &known, const std::string &prefix) {
    for (const auto &[key, value] : doc.items()) {
        (void)value;
        if (!known.count(key)) fail(prefix + key, "unknown field");
    }
}

BitVector parse_bits(const json &v, std::size_t n, const std::string &path) {
    if (!v.is_string()) fail(path, "expected a bitstring");
    const auto &text = v.get_ref<const std::string &>();
    if (text.size() != n) fail(path, "length " + std::to_string(text.size()) + ", expected " + std::to_string(n));
    if (text.find_first_not_of("01") != std::string::npos) fail(path, "only '0' and '1' are allowed");
    return BitVector::from_string(text);
}

std::vector<BitVector> parse_rows(const json &doc, const std::string &key, std::size_t n, const std::string &path) {
    const auto &v = require(doc, key, path);
    if (!v.is_array()) fail(path, "expected a list of bitstrings");
    std::vector<BitVector> rows;
    for (std::size_t i = 0; i < v.size(); ++i) rows.push_back(parse_bits(v[i], n, index_path(path, i)));
    return rows;
}

MonomialSet parse_tokens(const json &doc, const std::string &key, int m, const std::string &path) {
    const auto &v = require(doc, key, path);
    if (!v.is_array()) fail(path, "expected a list of monomial tokens");
    MonomialSet set(m);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto item = index_path(path, i);
        if (!v[i].is_string()) fail(item, "expected a monomial token");
        Monomial u;
        try {
            u = parse_monomial(v[i].get<std::string>(), m);
        } catch (const InputError &e) {
            fail(item, e.what());
        }
        if (set.contains(u)) fail(item, "duplicate monomial " + format_monomial(u));
        set.insert(u);
    }
    return set;
}

Task parse_task(const json &v, const std::string &path) {
    if (!v.is_string()) fail(path, "expected a task name");
    const auto &name = v.get_ref<const std::string &>();
    for (auto t : {Task::Groups, Task::Action, Task::Verify, Task::ClosedForm, Task::Info}) {
        if (name == task_name(t)) return t;
    }
    fail(path, "unknown task '" + name + "'");
}

bool wants(const JobSpec &job, Task t) { return std::find(job.tasks.begin(), job.tasks.end(), t) != job.tasks.end(); }

json vec_json(const ZVector &v) { return v.entries; }

json module_json(const ZModule &m) {
    json gens = json::array();
    for (const auto &g : m.generators()) gens.push_back(vec_json(g));
    return {{"generators", gens}, {"length", module_length(m)}};
}

json hypotheses_json(const std::vector<HypothesisCheck> &checks) {
    json out = json::array();
    for (const auto &c : checks) out.push_back({{"name", c.name}, {"holds", c.holds}});
    return out;
}

json tokens_json(const MonomialSet &s) { return s.tokens(); }

GateClass expected_class(const GateGroups &g, const ZVector &moved) {
    if (contains(g.Id, moved)) return GateClass::LogicalIdentity;
    if (contains(g.T, moved)) return GateClass::TransversalLogical;
    if (contains(g.H, moved)) return GateClass::InH;
    return GateClass::NotInH;
}

json witness_json(const Witness &w) {
    json out{{"v", w.v.str()}, {"phase", w.phase}};
    if (w.u.size() > 0) {
        out["u"] = w.u.str();
        out["phase_first"] = w.phase_first;
    }
    return out;
}

json groups_section(const CssCode &css, int ell, const GateGroups &g) {
    json out{{"H", module_json(g.H)}, {"T", module_json(g.T)}, {"Id", module_json(g.Id)}};
    auto ones = allones_report(css, ell, g);
    json all{{"in_H", ones.in_H}, {"in_T", ones.in_T}, {"in_Id", ones.in_Id}, {"cssT_necessary_ok", ones.cssT_necessary_ok}};
    if (ones.weights_condition) all["weights_condition"] = *ones.weights_condition;
    if (ones.divisibility) all["divisibility"] = *ones.divisibility;
    out["all_ones"] = all;
    return out;
}

struct NamedGate {
    std::string source;
    ZVector b;
};

// The gate from the job, else the Delta gates of a monomial code, else the generators of H.
std::vector<NamedGate> action_gates(const JobSpec &job, const GateGroups &g) {
    if (job.gate) return {{"gate", *job.gate}};
    std::vector<NamedGate> out;
    if (job.monomial) {
        try {
            auto d = delta_generators(*job.monomial, job.ell);
            for (auto u : d.delta.members()) out.push_back({"ev(" + format_monomial(u) + ")", ZVector::lift(evaluate(u, job.monomial->m), job.ell)});
            return out;
        } catch (const HypothesisError &) {
            out.clear();
        }
    }
    // H is computed for y_z = 0; conjugating moves each generator onto the requested code.
    const auto &gens = g.H.generators();
    for (std::size_t i = 0; i < gens.size(); ++i) out.push_back({"H[" + std::to_string(i) + "]", conjugate_by_yz(gens[i], job.css.y_z).first});
    return out;
}

json action_section(const JobSpec &job, const GateGroups &g) {
    json out = json::array();
    for (const auto &[source, b] : action_gates(job, g)) {
        auto d = decompose_action(job.css, job.ell, b, g.H);
        auto moved = conjugate_by_yz(b, job.css.y_z).first;
        json factors = json::array();
        for (const auto &f : d.factors) factors.push_back({{"J", f.J}, {"a", f.a}});
        out.push_back({{"source", source},
                       {"gate", vec_json(b)},
                       {"in_H", d.in_H},
                       {"in_T", contains(g.T, moved)},
                       {"global_phase", d.global_phase},
                       {"factors", factors}});
    }
    return out;
}

json verify_section(const JobSpec &job, const GateGroups &g, int threads) {
    const auto &css = job.css;
    const int ell = job.ell;
    json out;
    bool performed = false;

    std::vector<NamedGate> gates;
    if (job.gate) {
        gates.push_back({"gate", *job.gate});
    } else {
        // Generators and seeded random elements of each group. The groups describe the code with
        // y_z = 0; conjugating by y_z moves each one onto Q(C1, C2, y_x, y_z).
        std::mt19937_64 rng(job.seed);
        for (auto kind : {GroupKind::H, GroupKind::T, GroupKind::Id}) {
            const auto &gens = g.get(kind).generators();
            for (std::size_t i = 0; i < gens.size(); ++i) gates.push_back({std::string(group_name(kind)) + "[" + std::to_string(i) + "]", gens[i]});
            for (int s = 0; s < kVerifySamples && !gens.empty(); ++s) {
                ZVector b(css.n(), ell);
                for (const auto &x : gens) b += x.scaled(rng());
                gates.push_back({std::string(group_name(kind)) + " sample " + std::to_string(s), b});
            }
        }
        for (auto &gate : gates) gate.b = conjugate_by_yz(gate.b, css.y_z).first;
    }

    json checks = json::array();
    try {
        for (const auto &[source, b] : gates) {
            auto res = coset_phase_check(css, ell, b);
            auto expected = expected_class(g, conjugate_by_yz(b, css.y_z).first);
            json entry{{"source", source},
                       {"gate", vec_json(b)},
                       {"classification", class_name(res.cls)},
                       {"expected", class_name(expected)},
                       {"agrees", res.cls == expected}};
            if (res.witness) entry["witness"] = witness_json(*res.witness);
            if (res.cls != expected) {
                throw ConsistencyError("oracle classifies " + source + " (" + b.str() + ") as " + class_name(res.cls) + " but the computed groups give " +
                                       class_name(expected));
            }
            checks.push_back(entry);
        }
        out["oracle"] = "performed";
        performed = true;
    } catch (const SizeLimitError &e) {
        out["oracle"] = std::string("skipped: ") + e.what();
        checks = json::array();
    }
    out["checks"] = checks;

    const std::size_t bits = css.n() * static_cast<std::size_t>(ell);
    json enumeration;
    if (bits <= kVerifyEnumerationBits) {
        auto plain = build_css(css.pair);
        enumeration["performed"] = true;
        performed = true;
        for (auto kind : {GroupKind::H, GroupKind::T, GroupKind::Id}) {
            bool same = enumerate_group(plain, ell, kind, threads) == module_elements(g.get(kind));
            if (!same) throw ConsistencyError(std::string("exhaustive enumeration of ") + group_name(kind) + " differs from the computed module");
            enumeration[group_name(kind)] = same;
        }
    } else {
        enumeration["performed"] = false;
        enumeration["reason"] = "n * ell = " + std::to_string(bits) + " exceeds " + std::to_string(kVerifyEnumerationBits);
    }
    out["enumeration"] = enumeration;
    // Any disagreement has already thrown; null means nothing could be checked.
    out["agreement"] = performed ? json(true) : json(nullptr);
    return out;
}

json closed_form_section(const JobSpec &job, const GateGroups &g) {
    const auto &spec = *job.monomial;
    const int ell = job.ell;
    json out;

    auto emit = [&](const char *name, const std::optional<ZModule> &closed, const ZModule &generic, const std::string &reason) {
        json entry;
        if (closed) {
            bool same = *closed == generic;
            if (!same) throw ConsistencyError(std::string("closed form of ") + name + " differs from the generic computation");
            entry = module_json(*closed);
            entry["matches_generic"] = true;
            entry["fallback"] = false;
        } else {
            entry = module_json(generic);
            entry["matches_generic"] = true;
            entry["fallback"] = true;
            entry["reason"] = reason;
        }
        out[name] = entry;
    };

    bool h_applies = true;
    try {
        emit("H", closed_form_H(spec, ell), g.H, "");
    } catch (const HypothesisError &e) {
        h_applies = false;
        emit("H", std::nullopt, g.H, hypothesis_code_name(e.code));
    }
    try {
        auto cf = closed_form_T_Id(spec, ell);
        emit("T", cf.T, g.T, "");
        emit("Id", cf.Id, g.Id, "");
    } catch (const HypothesisError &e) {
        emit("T", std::nullopt, g.T, hypothesis_code_name(e.code));
        emit("Id", std::nullopt, g.Id, hypothesis_code_name(e.code));
    }
    out["hypotheses"] = {{"H", hypotheses_json(stated_hypotheses_H(spec, ell))}, {"T_Id", hypotheses_json(stated_hypotheses_T_Id(spec, ell))}};

    json delta;
    try {
        auto d = delta_generators(spec, ell);
        std::vector<ZVector> rows;
        for (auto u : d.delta.members()) rows.push_back(ZVector::lift(evaluate(u, spec.m), ell));
        auto span = howell_form(job.css.n(), ell, rows);
        bool inside = module_sum(g.H, span) == g.H;
        // Containment follows from the H closed form; without it the span can leave H.
        if (!inside && h_applies) throw ConsistencyError("the span of ev(Delta) is not contained in H");
        delta = {{"applicable", true},
                 {"monomials", tokens_json(d.delta)},
                 {"quotients", tokens_json(d.quotients)},
                 {"contained_in_H", inside},
                 {"equals_H", span == g.H}};
        for (const auto &x : g.H.generators()) {
            if (!contains(span, x)) {
                delta["witness"] = vec_json(x);
                break;
            }
        }
    } catch (const HypothesisError &e) {
        delta = {{"applicable", false}, {"reason", hypothesis_code_name(e.code)}};
    }
    out["delta"] = delta;

    json general;
    try {
        auto gen = closed_form_H_general(spec);
        general = {{"applicable", true}, {"ell", gen.ell}, {"exact", gen.exact}, {"module", module_json(gen.module)}};
    } catch (const HypothesisError &e) {
        general = {{"applicable", false}, {"reason", hypothesis_code_name(e.code)}};
    }
    out["general"] = general;
    return out;
}

json info_section(const JobSpec &job) {
    const auto &css = job.css;
    json out{{"n", css.n()},
             {"K", css.K()},
             {"ell", job.ell},
             {"dim_C1", css.pair.C1.dimension()},
             {"dim_C2", css.pair.C2.dimension()}};
    if (!job.monomial) return out;
    const auto &spec = *job.monomial;
    const int ell = job.ell;
    json mono{{"m", spec.m},
              {"M1", tokens_json(spec.M1)},
              {"M2", tokens_json(spec.M2)},
              {"decreasing", is_decreasing(spec.M1) && is_decreasing(spec.M2)}};
    mono["hypotheses"] = {{"H", hypotheses_json(stated_hypotheses_H(spec, ell))}, {"T_Id", hypotheses_json(stated_hypotheses_T_Id(spec, ell))}};
    mono["exact"] = {{"H", !exactness_violation(spec.m, ell, h_exponents(spec, ell)).has_value()},
                     {"T", !exactness_violation(spec.m, ell, t_exponents(spec, ell)).has_value()},
                     {"Id", !exactness_violation(spec.m, ell, id_exponents(spec, ell)).has_value()}};
    auto level = minimal_full_level(spec);
    mono["minimal_full_level"] = level ? json(*level) : json(nullptr);
    if (auto rm = reed_muller_orders(spec)) {
        const auto [q, r] = *rm;
        mono["reed_muller"] = {{"q", q},
                               {"r", r},
                               {"H_corollary", q + (ell - 1) * r <= spec.m - 1},
                               {"H_max_degree", spec.m - q - (ell - 1) * r - 1},
                               {"Id_corollary", ell * r <= spec.m - 1},
                               {"Id_max_degree", spec.m - ell * r - 1}};
    } else {
        mono["reed_muller"] = nullptr;
    }
    out["monomial"] = mono;
    return out;
}

}  // namespace

const char *task_name(Task task) {
    switch (task) {
        case Task::Groups:
            return "groups";
        case Task::Action:
            return "action";
        case Task::Verify:
            return "verify";
        case Task::ClosedForm:
            return "closed-form";
        case Task::Info:
            return "info";
    }
    return "?";
}

JobSpec parse_job(const json &doc) {
    if (!doc.is_object()) fail("job", "expected a JSON object");
    reject_unknown(doc, {"version", "ell", "code", "y_x", "y_z", "tasks", "gate", "seed"}, "");

    JobSpec job;
    if (doc.contains("version")) {
        job.version = static_cast<int>(get_int(doc, "version", "version", kJobVersion, kJobVersion));
    }
    require(doc, "ell", "ell");
    job.ell = static_cast<int>(get_int(doc, "ell", "ell", 1, kMaxLevel));

    const auto &code = require(doc, "code", "code");
    if (!code.is_object()) fail("code", "expected an object");
    const auto &type = require(code, "type", "code.type");
    if (!type.is_string()) fail("code.type", "expected \"matrix\" or \"monomial\"");
    std::size_t n = 0;
    NestedCodePair pair;
    if (type == "matrix") {
        reject_unknown(code, {"type", "n", "C1", "C2"}, "code.");
        require(code, "n", "code.n");
        n = static_cast<std::size_t>(get_int(code, "n", "code.n", 1, kMaxJobLength));
        auto C1 = rref_basis(n, parse_rows(code, "C1", n, "code.C1"));
        auto C2 = rref_basis(n, parse_rows(code, "C2", n, "code.C2"));
        if (!C1.contains(C2)) fail("code.C2", "C2 is not contained in C1");
        pair = aligned_bases(C1, C2);
    } else if (type == "monomial") {
        reject_unknown(code, {"type", "m", "M1", "M2"}, "code.");
        require(code, "m", "code.m");
        int m = static_cast<int>(get_int(code, "m", "code.m", 1, kMaxVariables));
        auto M1 = parse_tokens(code, "M1", m, "code.M1");
        auto M2 = parse_tokens(code, "M2", m, "code.M2");
        if (!M2.is_subset_of(M1)) fail("code.M2", "M2 is not contained in M1");
        job.monomial = MonomialCodeSpec::make(m, std::move(M1), std::move(M2));
        pair = to_css_code(*job.monomial).pair;
        n = pair.length();
    } else {
        fail("code.type", "expected \"matrix\" or \"monomial\"");
    }

    BitVector y_x(n), y_z(n);
    if (doc.contains("y_x")) y_x = parse_bits(doc.at("y_x"), n, "y_x");
    if (doc.contains("y_z")) y_z = parse_bits(doc.at("y_z"), n, "y_z");
    job.css = build_css(std::move(pair), std::move(y_x), std::move(y_z));

    if (doc.contains("tasks")) {
        const auto &tasks = doc.at("tasks");
        if (!tasks.is_array()) fail("tasks", "expected a list of task names");
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            auto t = parse_task(tasks[i], index_path("tasks", i));
            if (wants(job, t)) fail(index_path("tasks", i), std::string("duplicate task '") + task_name(t) + "'");
            job.tasks.push_back(t);
        }
    } else {
        job.tasks = {Task::Groups};
    }
    std::sort(job.tasks.begin(), job.tasks.end());
    if (wants(job, Task::ClosedForm) && !job.monomial) fail("tasks", "closed-form needs a monomial code");

    if (doc.contains("gate")) {
        const auto &gate = doc.at("gate");
        if (!gate.is_array()) fail("gate", "expected a list of residues");
        if (gate.size() != n) fail("gate", "length " + std::to_string(gate.size()) + ", expected " + std::to_string(n));
        ZVector b(n, job.ell);
        const std::int64_t top = (std::int64_t{1} << job.ell) - 1;
        for (std::size_t i = 0; i < n; ++i) b.entries[i] = static_cast<std::uint32_t>(as_int(gate[i], index_path("gate", i), 0, top));
        job.gate = std::move(b);
    }
    if (doc.contains("seed")) job.seed = static_cast<std::uint64_t>(get_int(doc, "seed", "seed", 0, std::numeric_limits<std::int64_t>::max()));
    return job;
}

JobSpec parse_job_text(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        fail("input", std::string("not valid JSON (") + e.what() + ")");
    }
    return parse_job(doc);
}

json run_job(const JobSpec &job, const RunOptions &options) {
    const auto &css = job.css;
    const int ell = job.ell;
    json report;
    report["version"] = kJobVersion;
    report["ell"] = ell;
    report["params"] = {{"n", css.n()}, {"K", css.K()}};
    report["seed"] = job.seed;
    json tasks = json::array();
    for (auto t : job.tasks) tasks.push_back(task_name(t));
    report["tasks"] = tasks;
    if (job.monomial) {
        json encoding = json::array();
        for (auto u : job.monomial->encoding()) encoding.push_back(format_monomial(u));
        report["encoding"] = encoding;
    }

    const bool needs_groups = wants(job, Task::Groups) || wants(job, Task::Action) || wants(job, Task::Verify) || wants(job, Task::ClosedForm);
    GateGroups groups;
    if (needs_groups) groups = compute_groups(css, ell, std::max(1, options.threads));

    if (wants(job, Task::Groups)) report["groups"] = groups_section(css, ell, groups);
    if (wants(job, Task::Action)) report["logical_actions"] = action_section(job, groups);
    if (wants(job, Task::Verify)) report["verify"] = verify_section(job, groups, std::max(1, options.threads));
    if (wants(job, Task::ClosedForm)) report["closed_form"] = closed_form_section(job, groups);
    if (wants(job, Task::Info)) report["info"] = info_section(job);
    return report;
}

std::string render_report(const json &report) { return report.dump(2) + "\n"; }

int run_job_text(const std::string &input, const RunOptions &options, std::string &out, std::string &err) {
    out.clear();
    err.clear();
    try {
        out = render_report(run_job(parse_job_text(input), options));
        return 0;
    } catch (const InputError &e) {
        err = e.what();
        return 1;
    } catch (const json::exception &e) {
        err = std::string("input: ") + e.what();
        return 1;
    } catch (const ConsistencyError &e) {
        err = std::string("internal consistency failure: ") + e.what();
        return 2;
    }
}

}  // namespace cssdiag
