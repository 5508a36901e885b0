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

#include "core/circuits.hpp"
#include "core/model.hpp"
#include "core/montecarlo.hpp"
#include "core/pilots.hpp"
#include "core/scenario_gen.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hwmimo {

using json = nlohmann::ordered_json;

/// Thrown for malformed or inconsistent configuration.
[[noreturn]] void config_error(const std::string &message);

json to_json(const Scenario &s);
Scenario scenario_from_json(const json &j);
/// Accepts a single scenario or {"drops": [...]}.
std::vector<Scenario> scenarios_from_json(const json &j);
json to_json(const std::vector<Scenario> &drops);

json to_json(const HardwareProfile &hw);

LoMode parse_lo_mode(const std::string &s);
std::string to_string(LoMode m);
PilotBookKind parse_book(const std::string &s);
std::string to_string(PilotBookKind k);
PlacementKind parse_placement(const std::string &s);
std::string to_string(PlacementKind k);
Deployment parse_deployment(const std::string &s);
std::string to_string(Deployment d);
ReceiveFilter parse_filter(const std::string &s);
std::string to_string(ReceiveFilter f);
ShadowUnit parse_shadow_unit(const std::string &s);
std::string to_string(ShadowUnit u);

/// Shortest decimal that reads back to the same double; "inf" for +infinity.
std::string format_number(double v);

/// Plain CSV table. Cells are written verbatim.
struct Table
{
    std::string name; // file name
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
    std::string to_csv() const;
};

/// Long-format result rows: experiment, N, T, drop, ue, metric, value, stderr.
class ResultTable
{
public:
    void add(const std::string &experiment, const std::string &N, const std::string &T, const std::string &drop,
             const std::string &ue, const std::string &metric, double value, double stderr_ = 0.0);
    void add_text(const std::string &experiment, const std::string &N, const std::string &T, const std::string &drop,
                  const std::string &ue, const std::string &metric, const std::string &value,
                  const std::string &stderr_ = "");
    const Table &table() const { return table_; }
    Table &table() { return table_; }
    std::size_t size() const { return table_.rows.size(); }

    ResultTable();

private:
    Table table_;
};

} // namespace hwmimo
