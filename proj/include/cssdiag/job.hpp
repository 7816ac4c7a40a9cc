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

// Batch jobs: a JSON job description in, a canonical JSON report out.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cssdiag/gates.hpp"
#include "cssdiag/monomial.hpp"

namespace cssdiag {

constexpr int kJobVersion = 1;

enum class Task { Groups, Action, Verify, ClosedForm, Info };

const char *task_name(Task task);

struct JobSpec {
    int version = kJobVersion;
    int ell = 1;
    CssCode css;
    /// Set for {"type": "monomial"} codes.
    std::optional<MonomialCodeSpec> monomial;
    std::vector<Task> tasks;
    std::optional<ZVector> gate;
    std::uint64_t seed = 0;
};

/// Validates a job document. Errors are InputError with the offending field path first,
/// e.g. "code.C1[0]: length 3, expected 4".
JobSpec parse_job(const nlohmann::json &doc);
/// Parses text first; JSON syntax errors are reported as InputError too.
JobSpec parse_job_text(const std::string &text);

struct RunOptions {
    /// Parallelism hint for the group computations and enumerations. Never changes the output.
    int threads = 1;
};

/// Runs every requested task. Throws InputError for requests that do not fit the code (for
/// example closed-form on a matrix code) and ConsistencyError when two independent computations
/// that must agree do not.
nlohmann::json run_job(const JobSpec &job, const RunOptions &options = {});

/// The report as text: two-space indentation, keys sorted, trailing newline.
std::string render_report(const nlohmann::json &report);

/// Parses, runs and renders; maps failures to the exit codes 0 (success), 1 (malformed input)
/// and 2 (internal consistency failure). On failure `out` is empty and `err` holds the message.
int run_job_text(const std::string &input, const RunOptions &options, std::string &out, std::string &err);

}  // namespace cssdiag
