// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The hwmimo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "run/experiments.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hwmimo {

inline constexpr const char *version_string = HWMIMO_VERSION;

/// One invocation. `command` is an experiment name, "preset" (with `preset`
/// naming it and `config` holding overrides) or "run" (with `config` holding
/// a manifest written by an earlier run).
struct RunRequest
{
    std::string command;
    std::string preset;
    json config = json::object();
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    int threads = 0;
};

struct Resolved
{
    std::string command;
    std::string preset;
    json config;
};

Resolved resolve(const RunRequest &request);

struct RunResult
{
    Resolved resolved;
    Output output;
    json manifest;
};

/// Computes everything; writes nothing.
RunResult execute(const RunRequest &request);

/// execute() followed by writing the tables, extra files and manifest.json
/// into request.out_dir.
RunResult run(const RunRequest &request);

void write_outputs(const RunResult &result, const std::string &out_dir);

json read_json_file(const std::string &path);

/// 0 success, 2 bad input or configuration, 3 numerical failure, 4 I/O.
int exit_code_for(const std::exception &e);

} // namespace hwmimo
