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

#include "run/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace hwmimo {

void config_error(const std::string &message)
{
    throw Error(ErrorCode::Config, message);
}

namespace {

template <typename T>
T get(const json &j, const char *key)
{
    if (!j.contains(key))
        config_error(std::string("scenario: missing '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        config_error(std::string("scenario: bad value for '") + key + "'");
    }
}

template <typename E>
E parse_enum(const std::string &s, std::initializer_list<std::pair<const char *, E>> names, const char *what)
{
    for (const auto &[name, value] : names)
        if (s == name)
            return value;
    std::string msg = std::string("unknown ") + what + " '" + s + "' (expected";
    for (const auto &[name, value] : names)
        msg += std::string(" ") + name;
    config_error(msg + ")");
}

} // namespace

json to_json(const Scenario &s)
{
    json j;
    j["format"] = "hwmimo-scenario";
    j["version"] = 1;
    j["cells"] = s.cells();
    j["users"] = s.users();
    j["antennas"] = s.antennas();
    j["subarrays"] = s.subarrays();
    j["block_length"] = s.block_length();
    j["sigma2"] = s.sigma2();
    json powers = json::array();
    for (int l = 0; l < s.cells(); ++l) {
        json row = json::array();
        for (int k = 0; k < s.users(); ++k)
            row.push_back(s.power(l, k));
        powers.push_back(row);
    }
    j["powers"] = powers;
    json gains = json::array();
    for (int jj = 0; jj < s.cells(); ++jj) {
        json per_j = json::array();
        for (int l = 0; l < s.cells(); ++l) {
            json per_l = json::array();
            for (int k = 0; k < s.users(); ++k) {
                auto g = s.gains(jj, l, k);
                per_l.push_back(std::vector<double>(g.begin(), g.end()));
            }
            per_j.push_back(per_l);
        }
        gains.push_back(per_j);
    }
    j["gains"] = gains;
    return j;
}

Scenario scenario_from_json(const json &j)
{
    if (!j.is_object())
        config_error("scenario must be a JSON object");
    Dimensions d;
    d.cells = get<int>(j, "cells");
    d.users = get<int>(j, "users");
    d.antennas = get<int>(j, "antennas");
    d.subarrays = j.contains("subarrays") ? get<int>(j, "subarrays") : d.antennas;
    d.block_length = get<int>(j, "block_length");
    if (d.cells < 1 || d.users < 1 || d.antennas < 1 || d.block_length < 1)
        config_error("scenario: dimensions must be positive");
    if (d.subarrays < 1 || d.subarrays > d.antennas || d.antennas % d.subarrays != 0)
        config_error("scenario: subarrays must divide antennas");
    Scenario s(d, get<double>(j, "sigma2"));

    const auto powers = get<std::vector<std::vector<double>>>(j, "powers");
    if (static_cast<int>(powers.size()) != d.cells)
        config_error("scenario: powers must have one row per cell");
    for (int l = 0; l < d.cells; ++l) {
        if (static_cast<int>(powers[l].size()) != d.users)
            config_error("scenario: powers must have one entry per UE");
        for (int k = 0; k < d.users; ++k)
            s.set_power(l, k, powers[l][k]);
    }

    const auto gains = get<std::vector<std::vector<std::vector<std::vector<double>>>>>(j, "gains");
    if (static_cast<int>(gains.size()) != d.cells)
        config_error("scenario: gains must be indexed [j][l][k][a]");
    for (int jj = 0; jj < d.cells; ++jj) {
        if (static_cast<int>(gains[jj].size()) != d.cells)
            config_error("scenario: gains must be indexed [j][l][k][a]");
        for (int l = 0; l < d.cells; ++l) {
            if (static_cast<int>(gains[jj][l].size()) != d.users)
                config_error("scenario: gains must be indexed [j][l][k][a]");
            for (int k = 0; k < d.users; ++k) {
                const auto &g = gains[jj][l][k];
                if (static_cast<int>(g.size()) != d.subarrays)
                    config_error("scenario: each link needs one gain per subarray");
                s.set_gains(jj, l, k, g);
            }
        }
    }
    return s;
}

std::vector<Scenario> scenarios_from_json(const json &j)
{
    std::vector<Scenario> out;
    if (j.is_object() && j.contains("drops")) {
        if (!j["drops"].is_array() || j["drops"].empty())
            config_error("'drops' must be a nonempty array");
        for (const auto &d : j["drops"])
            out.push_back(scenario_from_json(d));
    } else {
        out.push_back(scenario_from_json(j));
    }
    return out;
}

json to_json(const std::vector<Scenario> &drops)
{
    if (drops.size() == 1)
        return to_json(drops.front());
    json j;
    j["drops"] = json::array();
    for (const auto &s : drops)
        j["drops"].push_back(to_json(s));
    return j;
}

json to_json(const HardwareProfile &hw)
{
    json j;
    j["delta"] = hw.delta;
    j["kappa2"] = hw.kappa2;
    j["xi"] = hw.xi;
    j["lo"] = to_string(hw.lo_mode);
    return j;
}

LoMode parse_lo_mode(const std::string &s)
{
    return parse_enum<LoMode>(s, {{"clo", LoMode::Common}, {"slo", LoMode::Separate}}, "LO mode");
}

std::string to_string(LoMode m)
{
    return m == LoMode::Common ? "clo" : "slo";
}

PilotBookKind parse_book(const std::string &s)
{
    return parse_enum<PilotBookKind>(s, {{"temporal", PilotBookKind::Temporal}, {"dft", PilotBookKind::Dft}},
                                     "pilot book");
}

std::string to_string(PilotBookKind k)
{
    return k == PilotBookKind::Temporal ? "temporal" : "dft";
}

PlacementKind parse_placement(const std::string &s)
{
    return parse_enum<PlacementKind>(s,
                                     {{"beginning", PlacementKind::Beginning},
                                      {"middle", PlacementKind::Middle},
                                      {"uniform", PlacementKind::Uniform},
                                      {"preamble", PlacementKind::PreamblePlusDistributed}},
                                     "pilot placement");
}

std::string to_string(PlacementKind k)
{
    switch (k) {
    case PlacementKind::Beginning:
        return "beginning";
    case PlacementKind::Middle:
        return "middle";
    case PlacementKind::Uniform:
        return "uniform";
    case PlacementKind::PreamblePlusDistributed:
        return "preamble";
    }
    return "beginning";
}

Deployment parse_deployment(const std::string &s)
{
    return parse_enum<Deployment>(s, {{"colocated", Deployment::CoLocated}, {"distributed", Deployment::Distributed}},
                                  "deployment");
}

std::string to_string(Deployment d)
{
    return d == Deployment::CoLocated ? "colocated" : "distributed";
}

ReceiveFilter parse_filter(const std::string &s)
{
    return parse_enum<ReceiveFilter>(s, {{"mrc", ReceiveFilter::Mrc}, {"mmse", ReceiveFilter::Mmse}}, "filter");
}

std::string to_string(ReceiveFilter f)
{
    return f == ReceiveFilter::Mrc ? "mrc" : "mmse";
}

ShadowUnit parse_shadow_unit(const std::string &s)
{
    return parse_enum<ShadowUnit>(s, {{"db", ShadowUnit::Decibel}, {"decade", ShadowUnit::Decade}}, "shadow unit");
}

std::string to_string(ShadowUnit u)
{
    return u == ShadowUnit::Decibel ? "db" : "decade";
}

std::string format_number(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (std::isnan(v))
        return "nan";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void Table::add(std::vector<std::string> row)
{
    if (row.size() != columns.size())
        fail(ErrorCode::InvalidArgument, "row width does not match table " + name);
    rows.push_back(std::move(row));
}

std::string Table::to_csv() const
{
    std::ostringstream os;
    auto line = [&os](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            os << (i ? "," : "") << cells[i];
        os << '\n';
    };
    line(columns);
    for (const auto &r : rows)
        line(r);
    return os.str();
}

ResultTable::ResultTable()
{
    table_.name = "results.csv";
    table_.columns = {"experiment", "N", "T", "drop", "ue", "metric", "value", "stderr"};
}

void ResultTable::add(const std::string &experiment, const std::string &N, const std::string &T,
                      const std::string &drop, const std::string &ue, const std::string &metric, double value,
                      double stderr_)
{
    table_.add({experiment, N, T, drop, ue, metric, format_number(value), format_number(stderr_)});
}

void ResultTable::add_text(const std::string &experiment, const std::string &N, const std::string &T,
                           const std::string &drop, const std::string &ue, const std::string &metric,
                           const std::string &value, const std::string &stderr_)
{
    table_.add({experiment, N, T, drop, ue, metric, value, stderr_});
}

} // namespace hwmimo
