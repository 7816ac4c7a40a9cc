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

// cssdiag: diagonal transversal gate groups of CSS codes from JSON job files.
//
// Exit codes: 0 success, 1 malformed input, 2 internal consistency failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cssdiag/job.hpp"
#include "json.hpp"

namespace {

struct Flags {
    std::string input;
    std::string output;
    int threads = 1;
    std::optional<std::int64_t> seed;
    std::vector<std::int64_t> gate;
};

void add_flags(CLI::App *cmd, Flags &flags, bool with_gate) {
    cmd->add_option("-i,--input", flags.input, "job file (default: stdin)");
    cmd->add_option("-o,--output", flags.output, "report file (default: stdout)");
    cmd->add_option("-t,--threads", flags.threads, "worker threads; never changes the output")->check(CLI::Range(1, 256));
    cmd->add_option("--seed", flags.seed, "overrides the job's seed");
    if (with_gate) cmd->add_option("--gate", flags.gate, "gate b as comma separated residues; overrides the job's gate")->delimiter(',');
}

bool read_input(const std::string &path, std::string &text) {
    if (path.empty() || path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
        return true;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    return true;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Diagonal transversal gate groups of CSS codes over Z_{2^ell}"};
    app.require_subcommand(1);

    Flags flags;
    struct Command {
        const char *name;
        const char *help;
        const char *task;
        bool gate;
    };
    const Command commands[] = {
        {"groups", "compute H, T and Id", "groups", false},
        {"action", "decompose logical actions into controlled phase factors", "action", true},
        {"verify", "check against the brute-force oracle", "verify", true},
        {"closed-form", "monomial closed forms with generic fallback", "closed-form", false},
        {"info", "parameters and which monomial results apply", "info", false},
        {"run", "run the tasks listed in the job", nullptr, true},
    };
    std::vector<CLI::App *> subs;
    for (const auto &c : commands) {
        auto *sub = app.add_subcommand(c.name, c.help);
        add_flags(sub, flags, c.gate);
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 1;
    }

    const Command *chosen = nullptr;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (subs[i]->parsed()) chosen = &commands[i];
    }

    std::string text;
    if (!read_input(flags.input, text)) {
        std::cerr << "error: input: cannot read " << flags.input << "\n";
        return 1;
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        std::cerr << "error: input: not valid JSON (" << e.what() << ")\n";
        return 1;
    }
    if (doc.is_object()) {
        if (chosen->task) doc["tasks"] = nlohmann::json::array({chosen->task});
        if (flags.seed) doc["seed"] = *flags.seed;
        if (!flags.gate.empty()) doc["gate"] = flags.gate;
    }

    std::string out, err;
    const int code = cssdiag::run_job_text(doc.dump(), cssdiag::RunOptions{flags.threads}, out, err);
    if (code != 0) {
        std::cerr << "error: " << err << "\n";
        return code;
    }
    if (flags.output.empty() || flags.output == "-") {
        std::cout << out;
    } else {
        std::ofstream file(flags.output, std::ios::binary);
        if (!(file << out)) {
            std::cerr << "error: cannot write " << flags.output << "\n";
            return 1;
        }
    }
    return 0;
}
