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

#include "core/rates.hpp"
#include "run/serialize.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hwmimo {

/// Reads obj[key], inserting `fallback` when absent so the object ends up
/// fully resolved.
template <typename T>
T take(json &obj, const char *key, const T &fallback)
{
    if (!obj.is_object())
        config_error(std::string("expected an object around '") + key + "'");
    if (!obj.contains(key))
        obj[key] = fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception &) {
        config_error(std::string("bad value for '") + key + "'");
    }
}

template <typename T>
T need(const json &obj, const char *key)
{
    if (!obj.is_object() || !obj.contains(key))
        config_error(std::string("missing '") + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception &) {
        config_error(std::string("bad value for '") + key + "'");
    }
}

json &section(json &cfg, const char *key);

struct NamedHardware
{
    std::string name;
    HardwareProfile profile;
};

/// {"delta", "kappa" | "kappa2", "xi" | "xi_over_sigma2", "lo"} or {"circuit": {...}};
/// exactly one source.
HardwareProfile parse_hardware(json &j, double sigma2);
CircuitSpec parse_circuit(json &j);
/// "hardware_set": [{"name": ..., ...}] or a single "hardware" block named "default".
std::vector<NamedHardware> parse_hardware_set(json &cfg, double sigma2);

struct PilotSpec
{
    PilotBookKind book = PilotBookKind::Dft;
    PlacementKind placement = PlacementKind::Beginning;
    int length = 0; // 0 means K
};

PilotSpec parse_pilots(json &cfg);
PilotBook make_pilots(const PilotSpec &spec, const Scenario &scenario);

DropConfig parse_generator(json &gen);

struct ScenarioSet
{
    std::vector<Scenario> drops;
    int cell = 0;
};

/// "scenario": {"file": path} | {"generate": {...}} | inline scenario.
ScenarioSet load_scenarios(json &cfg, std::uint64_t seed, int threads);

ScalingExponents parse_scaling(json &j, double sigma2);

std::vector<int> parse_grid(json &obj, const char *key, const std::vector<int> &fallback);

/// Fully specified run configuration for a named preset.
json preset(const std::string &name);
std::vector<std::string> preset_names();

} // namespace hwmimo
