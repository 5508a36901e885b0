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
#include "../support/fixtures.hpp"

#include <doctest.h>

#include <filesystem>

using namespace hwmimo;

namespace {

json tiny(const std::string &deployment = "distributed")
{
    json g{{"deployment", deployment}, {"antennas", 8}, {"block_length", 40}, {"drops", 2}};
    return json{{"scenario", {{"generate", g}}}, {"pilots", {{"book", "dft"}, {"length", 8}}}};
}

std::string csv(const RunResult &r, const std::string &name)
{
    for (const Table &t : r.output.tables)
        if (t.name == name)
            return t.to_csv();
    FAIL("missing table " << name);
    return {};
}

} // namespace

TEST_CASE("number formatting")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1e-300) == "1e-300");
    CHECK(format_number(3.0) == "3");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("scenario JSON round trip")
{
    const Scenario s = testing::random_scenario(2, 3, 8, 2, 30, 4);
    CHECK(scenario_from_json(to_json(s)) == s);
    const auto drops = scenarios_from_json(to_json(std::vector<Scenario>{s, s}));
    CHECK(drops.size() == 2);
    json bad = to_json(s);
    bad["gains"][0][0][0] = json::array({1.0});
    CHECK_THROWS_AS(scenario_from_json(bad), Error);
}

TEST_CASE("configuration parsing fills defaults and rejects ambiguity")
{
    json h{{"delta", 1e-4}, {"kappa", 0.1}};
    const HardwareProfile hw = parse_hardware(h, 2.0);
    CHECK(hw.kappa2 == doctest::Approx(0.01));
    CHECK(hw.xi == 2.0);
    CHECK(h.contains("lo"));

    json both{{"delta", 0.0}, {"circuit", json::object()}};
    CHECK_THROWS_AS(parse_hardware(both, 1.0), Error);
    json low{{"xi", 0.5}};
    CHECK_THROWS_AS(parse_hardware(low, 1.0), Error);

    json g{{"antennas", json::array({16, 8})}};
    CHECK_THROWS_AS(parse_grid(g, "antennas", {}), Error);
    json e{{"antennas", json::array()}};
    CHECK_THROWS_AS(parse_grid(e, "antennas", {}), Error);
}

TEST_CASE("circuit block in configuration")
{
    json c{{"adc_bits", 6}, {"noise_figure_db", 2.0}, {"carrier_hz", 2e9}, {"symbol_time_s", 1e-7}, {"zeta", 1e-17}};
    const HardwareProfile hw = circuit_profile(parse_circuit(c), 1.0);
    CHECK(hw.xi == doctest::Approx(1.58).epsilon(0.01));
}

TEST_CASE("presets carry the published parameters")
{
    const json f7 = preset("fig7");
    CHECK(f7["scenario"]["generate"]["block_length"] == 500);
    CHECK(f7["pilots"]["length"] == 8);
    CHECK(f7["scenario"]["generate"]["snr_db"] == 5.0);
    CHECK(f7["hardware_set"][1]["kappa"] == 0.0156);
    CHECK(f7["hardware_set"][1]["xi_over_sigma2"] == 1.58);
    CHECK(f7["hardware_set"][1]["delta"] == 1.58e-4);
    const json f9 = preset("fig9");
    CHECK(f9["scenario"]["generate"]["snr_db"] == 15.0);
    CHECK(f9["variants"][1]["kappa0"] == 0.05);
    CHECK(f9["variants"][1]["xi0_over_sigma2"] == 3.0);
    CHECK(f9["variants"][1]["delta0"] == 7e-5);
    CHECK(preset("fig8")["antennas"].back() == 1000000);
    CHECK_THROWS_AS(preset("fig11"), Error);
}

TEST_CASE("rates-cf run is reproducible and independent of threads")
{
    RunRequest q;
    q.command = "rates-cf";
    q.config = tiny();
    q.config["hardware"] = {{"delta", 1e-4}, {"kappa", 0.05}, {"xi_over_sigma2", 1.5}};
    q.threads = 1;
    const RunResult a = execute(q);
    q.threads = 3;
    const RunResult b = execute(q);
    CHECK(csv(a, "rates_cf.csv") == csv(b, "rates_cf.csv"));
    CHECK(a.manifest == b.manifest);
    CHECK(a.manifest["config"]["scenario"]["generate"].contains("path_loss_exponent"));
    CHECK(a.manifest["config"]["seed"] == 1);

    RunRequest again;
    again.command = "run";
    again.config = a.manifest;
    CHECK(csv(execute(again), "rates_cf.csv") == csv(a, "rates_cf.csv"));

    q.seed = 9;
    CHECK(csv(execute(q), "rates_cf.csv") != csv(a, "rates_cf.csv"));
}

TEST_CASE("sweep over N reports aggregates and losses")
{
    RunRequest q;
    q.command = "sweep-n";
    q.config = tiny("colocated");
    q.config["antennas"] = {8, 64};
    q.config["hardware_set"] = json::array({{{"name", "ideal"}}, {{"name", "clo"}, {"kappa", 0.0156}, {"delta", 1.58e-4}}});
    const RunResult r = execute(q);
    const std::string text = csv(r, "results.csv");
    CHECK(text.rfind("experiment,N,T,drop,ue,metric,value,stderr\n", 0) == 0);
    CHECK(text.find("sweep-n/colocated/dft/clo,64,40,all,all,loss_vs_ideal,") != std::string::npos);
    CHECK(text.find("sweep-n/colocated/dft/ideal,8,40,1,all,rate,") != std::string::npos);
}

TEST_CASE("bad configuration writes nothing")
{
    const auto dir = std::filesystem::temp_directory_path() / "hwmimo_bad_config";
    std::filesystem::remove_all(dir);
    RunRequest q;
    q.command = "rates-cf";
    q.config = tiny();
    q.config["pilots"]["book"] = "hadamard";
    q.out_dir = dir.string();
    try {
        run(q);
        FAIL("expected a configuration error");
    } catch (const std::exception &e) {
        CHECK(exit_code_for(e) == 2);
    }
    CHECK_FALSE(std::filesystem::exists(dir));

    q.command = "nonsense";
    CHECK_THROWS_AS(execute(q), Error);
}

TEST_CASE("circuit command tables")
{
    RunRequest q;
    q.command = "circuit";
    q.config = {{"circuit", {{"adc_bits", 6}, {"noise_figure_db", 2.0}}}, {"antennas", {1, 16}}};
    const RunResult r = execute(q);
    CHECK(csv(r, "circuit.csv").find("kappa,") != std::string::npos);
    CHECK(csv(r, "power.csv").find("\n16,") != std::string::npos);
}

TEST_CASE("asymptotic command prints inf without contamination")
{
    const Scenario s = testing::random_scenario(1, 2, 4, 1, 20, 3);
    RunRequest q;
    q.command = "asymptotic";
    q.config = {{"scenario", to_json(s)}, {"antennas", {4, 400}}};
    const RunResult r = execute(q);
    CHECK(csv(r, "results.csv").find(",sinr_limit,inf,") != std::string::npos);
}
