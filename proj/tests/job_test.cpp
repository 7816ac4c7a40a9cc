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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"

namespace cssdiag {
namespace {

using nlohmann::json;

std::string read_file(const std::string &name) {
    std::ifstream in(std::string(CSSDIAG_TEST_DATA) + "/" + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json load(const std::string &name) { return json::parse(read_file(name)); }

json run_doc(const json &doc, int threads = 1) { return run_job(parse_job(doc), RunOptions{threads}); }

/// Exit code and message of a job given as JSON.
std::pair<int, std::string> outcome(const json &doc) {
    std::string out, err;
    int code = run_job_text(doc.dump(), RunOptions{}, out, err);
    return {code, err};
}

ZModule module_from(const json &section, std::size_t n, int ell) {
    std::vector<ZVector> rows;
    for (const auto &g : section.at("generators")) rows.push_back(ZVector(g.get<std::vector<std::uint32_t>>(), ell));
    return howell_form(n, ell, rows);
}

TEST(Job, WorkedExampleGroupsAndAction) {
    auto report = run_doc(load("ex1.json"));
    EXPECT_EQ(report["params"], (json{{"n", 16}, {"K", 5}}));
    auto H = module_from(report["groups"]["H"], 16, 3);
    for (const char *t : {"1", "x1", "x2"}) EXPECT_TRUE(contains(H, ZVector::lift(evaluate(parse_monomial(t, 4), 4), 3))) << t;

    const json *ev1 = nullptr;
    for (const auto &a : report["logical_actions"]) {
        if (a["source"] == "ev(1)") ev1 = &a;
    }
    ASSERT_NE(ev1, nullptr);
    EXPECT_EQ((*ev1)["factors"], json::parse(R"([{"J":[5],"a":4},{"J":[3,5],"a":4},{"J":[4,5],"a":4},{"J":[3,4,5],"a":4}])"));
    EXPECT_TRUE((*ev1)["in_H"].get<bool>());
    EXPECT_FALSE((*ev1)["in_T"].get<bool>());
    EXPECT_EQ(report["logical_actions"].size(), 3u);
}

TEST(Job, SmallPairGroupsAndVerify) {
    auto report = run_doc(load("ex2.json"));
    EXPECT_EQ(report["groups"]["H"]["generators"], json::parse("[[2,2]]"));
    EXPECT_EQ(report["groups"]["Id"]["generators"], json::array());
    EXPECT_EQ(report["verify"]["agreement"], true);
    EXPECT_EQ(report["verify"]["enumeration"]["performed"], true);
}

TEST(Job, VerifyGateReportsWitness) {
    auto doc = load("ex2.json");
    doc["gate"] = {1, 3};
    auto report = run_doc(doc);
    const auto &checks = report["verify"]["checks"];
    ASSERT_EQ(checks.size(), 1u);
    EXPECT_EQ(checks[0]["classification"], "NotInH");
    EXPECT_EQ(checks[0]["expected"], "NotInH");
    EXPECT_EQ(checks[0]["witness"]["v"], "1");
    EXPECT_EQ(checks[0]["witness"]["u"], "11");
}

TEST(Job, ReedMullerInfo) {
    auto report = run_doc(load("ex3.json"));
    const auto &rm = report["info"]["monomial"]["reed_muller"];
    EXPECT_EQ(rm["q"], 0);
    EXPECT_EQ(rm["r"], 1);
    EXPECT_EQ(rm["H_corollary"], true);
    EXPECT_EQ(rm["H_max_degree"], 0);
    EXPECT_EQ(report["info"]["K"], 4);
}

TEST(Job, SteaneTypeAllOnes) {
    auto report = run_doc(load("ex4.json"));
    EXPECT_EQ(report["groups"]["all_ones"]["in_H"], true);
    EXPECT_EQ(report["groups"]["all_ones"]["in_T"], true);
    const auto &action = report["logical_actions"][0];
    ASSERT_EQ(action["factors"].size(), 1u);
    EXPECT_EQ(action["factors"][0]["J"], json::parse("[1]"));
    EXPECT_EQ(action["factors"][0]["a"].get<int>() % 2, 1);
    EXPECT_EQ(report["verify"]["checks"][0]["classification"], "TransversalLogical");
}

TEST(Job, ClosedFormMatchesOrFallsBack) {
    auto doc = load("ex1.json");
    doc["tasks"] = {"closed-form"};
    auto report = run_doc(doc);
    for (const char *g : {"H", "T", "Id"}) {
        EXPECT_EQ(report["closed_form"][g]["fallback"], false) << g;
        EXPECT_EQ(report["closed_form"][g]["matches_generic"], true) << g;
    }
    EXPECT_EQ(report["closed_form"]["delta"]["monomials"], json::parse(R"(["1","x1","x2"])"));
    EXPECT_TRUE(report["closed_form"]["delta"].contains("witness"));
    EXPECT_EQ(report["closed_form"]["general"]["applicable"], false);

    json bad{{"ell", 2}, {"code", {{"type", "monomial"}, {"m", 2}, {"M1", {"1", "x1"}}, {"M2", {"1"}}}}, {"tasks", {"closed-form"}}};
    auto fallback = run_doc(bad);
    EXPECT_EQ(fallback["closed_form"]["H"]["fallback"], true);
    EXPECT_EQ(fallback["closed_form"]["H"]["reason"], "not_exact");
    // Delta = {1, x1} here, and ev(x1) is not in H.
    EXPECT_EQ(fallback["closed_form"]["delta"]["contained_in_H"], false);
}

TEST(Job, RoundTripReproducesModules) {
    for (const char *name : {"ex1.json", "ex2.json", "ex4.json"}) {
        auto job = parse_job(load(name));
        auto report = run_job(job);
        auto groups = compute_groups(job.css, job.ell);
        for (auto kind : {GroupKind::H, GroupKind::T, GroupKind::Id}) {
            const auto &section = report["groups"][group_name(kind)];
            auto again = module_from(section, job.css.n(), job.ell);
            EXPECT_EQ(again, groups.get(kind)) << name << " " << group_name(kind);
            EXPECT_EQ(section["length"], module_length(again));
        }
    }
}

TEST(Job, OutputIsDeterministicAcrossThreads) {
    for (const char *name : {"ex1.json", "ex2.json", "ex4.json"}) {
        auto doc = load(name);
        doc["tasks"] = {"groups", "action", "verify", "info"};
        doc["seed"] = 7;
        auto one = render_report(run_doc(doc, 1));
        EXPECT_EQ(render_report(run_doc(doc, 1)), one) << name;
        EXPECT_EQ(render_report(run_doc(doc, 4)), one) << name;
    }
}

TEST(Job, CharacterVectorIsHonoured) {
    auto doc = load("ex2.json");
    doc["y_z"] = "10";
    auto report = run_doc(doc);
    EXPECT_EQ(report["verify"]["agreement"], true);
    EXPECT_GT(report["verify"]["checks"].size(), 0u);
}

TEST(Job, MalformedInputNamesTheField) {
    auto base = load("ex2.json");
    auto expect_field = [](const json &doc, const std::string &field) {
        auto [code, err] = outcome(doc);
        EXPECT_EQ(code, 1) << doc.dump();
        EXPECT_EQ(err.rfind(field + ":", 0), 0u) << err;
    };
    auto doc = base;
    doc["code"]["C1"][0] = "110";
    expect_field(doc, "code.C1[0]");
    doc = base;
    doc["code"]["C2"] = {"01"};
    doc["code"]["C1"] = {"11"};
    expect_field(doc, "code.C2");
    doc = base;
    doc.erase("ell");
    expect_field(doc, "ell");
    doc = base;
    doc["ell"] = 0;
    expect_field(doc, "ell");
    doc = base;
    doc["tasks"] = {"groups", "draw"};
    expect_field(doc, "tasks[1]");
    doc = base;
    doc["tasks"] = {"closed-form"};
    expect_field(doc, "tasks");
    doc = base;
    doc["gate"] = {1, 4};
    expect_field(doc, "gate[1]");
    doc = base;
    doc["gate"] = {1};
    expect_field(doc, "gate");
    doc = base;
    doc["y_z"] = "1";
    expect_field(doc, "y_z");
    doc = base;
    doc["version"] = 2;
    expect_field(doc, "version");
    doc = base;
    doc["colour"] = "red";
    expect_field(doc, "colour");
    doc = base;
    doc["code"]["type"] = "graph";
    expect_field(doc, "code.type");

    auto mono = load("ex1.json");
    mono["code"]["M1"][2] = "x2x1";
    expect_field(mono, "code.M1[2]");
    mono = load("ex1.json");
    mono["code"]["M2"] = {"1", "x3x4"};
    expect_field(mono, "code.M2");

    std::string out, err;
    EXPECT_EQ(run_job_text("{\"ell\": ", RunOptions{}, out, err), 1);
    EXPECT_EQ(err.rfind("input:", 0), 0u);
    EXPECT_TRUE(out.empty());
}

int run_cli(const std::string &args) {
    int status = std::system((std::string(CSSDIAG_CLI) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
    const std::string data = CSSDIAG_TEST_DATA;
    EXPECT_EQ(run_cli("groups --input " + data + "/ex1.json"), 0);
    EXPECT_EQ(run_cli("verify --gate 1,3 --input " + data + "/ex2.json"), 0);
    EXPECT_EQ(run_cli("info --input " + data + "/ex3.json"), 0);
    EXPECT_EQ(run_cli("run --threads 2 < " + data + "/ex4.json"), 0);
    EXPECT_EQ(run_cli("verify --gate 1,9 --input " + data + "/ex2.json"), 1);
    EXPECT_EQ(run_cli("closed-form --input " + data + "/ex2.json"), 1);
    EXPECT_EQ(run_cli("groups --input " + data + "/missing.json"), 1);
    EXPECT_EQ(run_cli("frobnicate"), 1);
}

TEST(Cli, OutputFileMatchesLibrary) {
    const std::string data = CSSDIAG_TEST_DATA;
    const std::string path = testing::TempDir() + "cssdiag_ex2_report.json";
    ASSERT_EQ(run_cli("run --seed 3 --output " + path + " --input " + data + "/ex2.json"), 0);
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto doc = load("ex2.json");
    doc["seed"] = 3;
    EXPECT_EQ(buf.str(), render_report(run_doc(doc)));
}

}  // namespace
}  // namespace cssdiag
