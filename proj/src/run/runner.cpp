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

#include "run/runner.hpp"

#include "core/parallel.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace hwmimo {

namespace {

void write_file(const std::filesystem::path &path, const std::string &contents)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        fail(ErrorCode::Io, "cannot write " + path.string());
    f << contents;
    if (!f)
        fail(ErrorCode::Io, "write failed for " + path.string());
}

bool known_command(const std::string &c)
{
    for (const auto &n : command_names())
        if (n == c)
            return true;
    return false;
}

} // namespace

json read_json_file(const std::string &path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        fail(ErrorCode::Io, "cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error &e) {
        config_error(path + ": " + e.what());
    }
}

Resolved resolve(const RunRequest &request)
{
    Resolved r;
    if (request.command == "preset") {
        r.preset = request.preset;
        r.config = preset(request.preset);
        if (!request.config.is_object())
            config_error("preset overrides must be an object");
        r.config.merge_patch(request.config);
        r.command = need<std::string>(r.config, "experiment");
    } else if (request.command == "run") {
        const json &m = request.config;
        r.command = need<std::string>(m, "command");
        r.preset = m.value("preset", std::string());
        if (!m.contains("config") || !m["config"].is_object())
            config_error("manifest has no 'config' object");
        r.config = m["config"];
    } else {
        r.command = request.command;
        r.config = request.config.is_null() ? json::object() : request.config;
        if (!r.config.is_object())
            config_error("configuration must be a JSON object");
    }
    if (!known_command(r.command))
        config_error("unknown command '" + r.command + "'");
    if (request.seed)
        r.config["seed"] = *request.seed;
    else if (!r.config.contains("seed"))
        r.config["seed"] = 1;
    r.config.erase("experiment");
    return r;
}

RunResult execute(const RunRequest &request)
{
    RunResult out;
    out.resolved = resolve(request);
    const int threads = resolve_threads(request.threads);
    out.output = run_command(out.resolved.command, out.resolved.config, threads);

    json files = json::array();
    for (const Table &t : out.output.tables)
        files.push_back(t.name);
    for (const auto &f : out.output.files)
        files.push_back(f.first);
    out.manifest = json{{"format", "hwmimo-manifest"},
                        {"version", version_string},
                        {"command", out.resolved.command}};
    if (!out.resolved.preset.empty())
        out.manifest["preset"] = out.resolved.preset;
    out.manifest["seed"] = out.resolved.config.at("seed");
    out.manifest["config"] = out.resolved.config;
    out.manifest["files"] = files;
    return out;
}

void write_outputs(const RunResult &result, const std::string &out_dir)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        fail(ErrorCode::Io, "cannot create " + out_dir + ": " + ec.message());
    for (const Table &t : result.output.tables)
        write_file(fs::path(out_dir) / t.name, t.to_csv());
    for (const auto &[name, contents] : result.output.files)
        write_file(fs::path(out_dir) / name, contents);
    write_file(fs::path(out_dir) / "manifest.json", result.manifest.dump(2) + "\n");
}

RunResult run(const RunRequest &request)
{
    RunResult r = execute(request);
    write_outputs(r, request.out_dir);
    return r;
}

int exit_code_for(const std::exception &e)
{
    if (const auto *err = dynamic_cast<const Error *>(&e)) {
        switch (err->code()) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::Config:
            return 2;
        case ErrorCode::Numerical:
            return 3;
        case ErrorCode::Io:
            return 4;
        }
    }
    if (dynamic_cast<const json::exception *>(&e))
        return 2;
    return 1;
}

} // namespace hwmimo
