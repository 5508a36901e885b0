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

#include "run/config.hpp"

#include "core/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace hwmimo {

json &section(json &cfg, const char *key)
{
    if (!cfg.contains(key))
        cfg[key] = json::object();
    if (!cfg[key].is_object())
        config_error(std::string("'") + key + "' must be an object");
    return cfg[key];
}

CircuitSpec parse_circuit(json &j)
{
    CircuitSpec c;
    c.adc.bits = take<double>(j, "adc_bits", 6.0);
    c.lna.noise_factor = std::pow(10.0, take<double>(j, "noise_figure_db", 2.0) / 10.0);
    c.lna.gain = take<double>(j, "lna_gain", 1.0);
    c.lna.fom = take<double>(j, "lna_fom", 1.0);
    c.lo.carrier_hz = take<double>(j, "carrier_hz", 2e9);
    c.lo.symbol_time_s = take<double>(j, "symbol_time_s", 1e-7);
    c.lo.zeta = take<double>(j, "zeta", 1e-17);
    c.lo.fom = take<double>(j, "lo_fom", 1.0);
    c.extra_kappa2 = take<double>(j, "extra_kappa2", 0.0);
    c.lo_mode = parse_lo_mode(take<std::string>(j, "lo", "clo"));
    if (c.adc.bits < 1.0)
        config_error("adc_bits must be at least 1");
    if (c.lna.noise_factor < 1.0)
        config_error("noise_figure_db must be nonnegative");
    return c;
}

HardwareProfile parse_hardware(json &j, double sigma2)
{
    if (!j.is_object())
        config_error("hardware must be an object");
    if (j.contains("circuit")) {
        for (const char *k : {"delta", "kappa", "kappa2", "xi", "xi_over_sigma2"})
            if (j.contains(k))
                config_error("hardware: give either a circuit block or a direct triple, not both");
        return circuit_profile(parse_circuit(j["circuit"]), sigma2);
    }
    if (j.contains("kappa") && j.contains("kappa2"))
        config_error("hardware: give kappa or kappa2, not both");
    if (j.contains("xi") && j.contains("xi_over_sigma2"))
        config_error("hardware: give xi or xi_over_sigma2, not both");
    HardwareProfile hw;
    hw.delta = take<double>(j, "delta", 0.0);
    if (j.contains("kappa")) {
        const double k = need<double>(j, "kappa");
        hw.kappa2 = k * k;
    } else {
        hw.kappa2 = take<double>(j, "kappa2", 0.0);
    }
    if (j.contains("xi"))
        hw.xi = need<double>(j, "xi");
    else
        hw.xi = take<double>(j, "xi_over_sigma2", 1.0) * sigma2;
    hw.lo_mode = parse_lo_mode(take<std::string>(j, "lo", "clo"));
    if (hw.delta < 0.0 || hw.kappa2 < 0.0)
        config_error("hardware: delta and kappa must be nonnegative");
    if (hw.xi < sigma2 * (1.0 - 1e-12))
        config_error("hardware: xi below sigma2");
    return hw;
}

std::vector<NamedHardware> parse_hardware_set(json &cfg, double sigma2)
{
    if (cfg.contains("hardware_set") && cfg.contains("hardware"))
        config_error("give either 'hardware' or 'hardware_set'");
    std::vector<NamedHardware> out;
    if (cfg.contains("hardware_set")) {
        json &set = cfg["hardware_set"];
        if (!set.is_array() || set.empty())
            config_error("'hardware_set' must be a nonempty array");
        for (json &h : set) {
            const std::string name = need<std::string>(h, "name");
            json body = h;
            body.erase("name");
            NamedHardware nh{name, parse_hardware(body, sigma2)};
            for (auto it = body.begin(); it != body.end(); ++it)
                h[it.key()] = it.value();
            for (const auto &o : out)
                if (o.name == name)
                    config_error("duplicate hardware name '" + name + "'");
            out.push_back(nh);
        }
    } else {
        out.push_back({"default", parse_hardware(section(cfg, "hardware"), sigma2)});
    }
    return out;
}

PilotSpec parse_pilots(json &cfg)
{
    json &p = section(cfg, "pilots");
    PilotSpec s;
    s.book = parse_book(take<std::string>(p, "book", "dft"));
    s.placement = parse_placement(take<std::string>(p, "placement", "beginning"));
    s.length = take<int>(p, "length", 0);
    if (s.length < 0)
        config_error("pilot length must be nonnegative");
    return s;
}

PilotBook make_pilots(const PilotSpec &spec, const Scenario &s)
{
    const int B = spec.length > 0 ? spec.length : s.users();
    if (B > s.block_length())
        config_error("pilot length exceeds the block length");
    if (spec.book == PilotBookKind::Temporal && B != s.users())
        config_error("temporal pilots need length K");
    if (spec.book == PilotBookKind::Dft && B < s.users())
        config_error("DFT pilots need length at least K");
    return make_book(spec.book, s.powers(), place(spec.placement, s.block_length(), B));
}

DropConfig parse_generator(json &g)
{
    DropConfig d;
    d.deployment = parse_deployment(take<std::string>(g, "deployment", "distributed"));
    d.antennas = take<int>(g, "antennas", 100);
    d.block_length = take<int>(g, "block_length", 500);
    d.snr_db = take<double>(g, "snr_db", 5.0);
    d.sigma2 = take<double>(g, "sigma2", 1.0);
    d.layout.grid = take<int>(g, "grid", 5);
    d.layout.cell_size = take<double>(g, "cell_size", 250.0);
    d.layout.array_offset = take<double>(g, "array_offset", 62.5);
    d.layout.min_distance = take<double>(g, "min_distance", 25.0);
    d.layout.sectors = take<int>(g, "users", 8);
    d.path_loss.offset = take<double>(g, "path_loss_offset", -1.53);
    d.path_loss.exponent = take<double>(g, "path_loss_exponent", 3.76);
    d.path_loss.shadow_variance = take<double>(g, "shadow_variance", 3.16);
    d.path_loss.shadow_unit = parse_shadow_unit(take<std::string>(g, "shadow_unit", "db"));
    if (d.antennas < 1 || d.block_length < 1 || d.sigma2 <= 0.0)
        config_error("generator: antennas, block_length and sigma2 must be positive");
    if (d.deployment == Deployment::Distributed && d.antennas % 4 != 0)
        config_error("generator: distributed deployment needs antennas divisible by 4");
    if (d.layout.grid < 1 || d.layout.sectors < 1)
        config_error("generator: grid and users must be positive");
    if (d.layout.min_distance >= d.layout.cell_size / 4.0)
        config_error("generator: min_distance too large for the cell");
    if (d.path_loss.shadow_variance < 0.0)
        config_error("generator: shadow_variance negative");
    return d;
}

ScenarioSet load_scenarios(json &cfg, std::uint64_t seed, int threads)
{
    json &sc = section(cfg, "scenario");
    ScenarioSet set;
    if (sc.contains("file") + sc.contains("generate") + sc.contains("cells") != 1)
        config_error("scenario: give exactly one of 'file', 'generate' or an inline scenario");
    if (sc.contains("generate")) {
        json &g = sc["generate"];
        const DropConfig dc = parse_generator(g);
        const int drops = take<int>(g, "drops", 1);
        if (drops < 1)
            config_error("generator: drops must be positive");
        set.drops.resize(drops);
        parallel_for(drops, threads, [&](int d) { set.drops[d] = generate_scenario(dc, seed, d); });
        set.cell = (dc.layout.grid / 2) * dc.layout.grid + dc.layout.grid / 2;
    } else if (sc.contains("file")) {
        const std::string path = need<std::string>(sc, "file");
        std::ifstream in(path);
        if (!in)
            config_error("cannot open scenario file '" + path + "'");
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception &e) {
            config_error("scenario file '" + path + "' is not valid JSON");
        }
        set.drops = scenarios_from_json(j);
    } else {
        set.drops = scenarios_from_json(sc);
    }
    set.cell = take<int>(cfg, "cell", set.cell);
    for (const Scenario &s : set.drops) {
        if (set.cell < 0 || set.cell >= s.cells())
            config_error("cell index out of range");
        const auto v = validate(s, conventional_profile(s.sigma2()));
        if (!v.ok())
            config_error("invalid scenario: " + v.to_string());
        if (!(s.dims() == set.drops.front().dims()))
            config_error("all drops must share dimensions");
    }
    return set;
}

ScalingExponents parse_scaling(json &j, double sigma2)
{
    ScalingExponents e;
    e.z1 = take<double>(j, "z1", 0.0);
    e.z2 = take<double>(j, "z2", 0.0);
    e.z3 = take<double>(j, "z3", 0.0);
    const double k0 = take<double>(j, "kappa0", 0.0);
    e.kappa2_0 = k0 * k0;
    e.xi_0 = take<double>(j, "xi0_over_sigma2", 1.0) * sigma2;
    e.delta_0 = take<double>(j, "delta0", 0.0);
    if (e.z1 < 0.0 || e.z2 < 0.0 || e.z3 < 0.0)
        config_error("scaling exponents must be nonnegative");
    if (e.xi_0 < sigma2 * (1.0 - 1e-12))
        config_error("xi0 below sigma2");
    return e;
}

std::vector<int> parse_grid(json &obj, const char *key, const std::vector<int> &fallback)
{
    auto g = take<std::vector<int>>(obj, key, fallback);
    if (g.empty())
        config_error(std::string("'") + key + "' must be nonempty");
    if (!std::is_sorted(g.begin(), g.end()) || std::adjacent_find(g.begin(), g.end()) != g.end())
        config_error(std::string("'") + key + "' must be strictly increasing");
    if (g.front() < 1)
        config_error(std::string("'") + key + "' entries must be positive");
    return g;
}

namespace {

json hardware_entry(const std::string &name, double kappa, double xi, double delta, const std::string &lo)
{
    json h;
    h["name"] = name;
    h["delta"] = delta;
    h["kappa"] = kappa;
    h["xi_over_sigma2"] = xi;
    h["lo"] = lo;
    return h;
}

json generator(const std::string &deployment, int T, double snr_db, int drops)
{
    json g;
    g["deployment"] = deployment;
    g["antennas"] = 4;
    g["block_length"] = T;
    g["snr_db"] = snr_db;
    g["sigma2"] = 1.0;
    g["drops"] = drops;
    return g;
}

json impaired_set()
{
    return json::array({hardware_entry("ideal", 0.0, 1.0, 0.0, "clo"),
                        hardware_entry("clo", 0.0156, 1.58, 1.58e-4, "clo"),
                        hardware_entry("slo", 0.0156, 1.58, 1.58e-4, "slo")});
}

json scaling_variant(const std::string &name, double z1, double z2, double z3, const std::string &lo)
{
    json v;
    v["name"] = name;
    v["z1"] = z1;
    v["z2"] = z2;
    v["z3"] = z3;
    v["kappa0"] = 0.05;
    v["xi0_over_sigma2"] = 3.0;
    v["delta0"] = 7e-5;
    v["lo"] = lo;
    return v;
}

} // namespace

std::vector<std::string> preset_names()
{
    return {"fig7", "fig8", "fig9", "fig10"};
}

json preset(const std::string &name)
{
    json cfg;
    cfg["name"] = name;
    cfg["seed"] = 1;
    if (name == "fig7") {
        cfg["experiment"] = "rate-vs-n";
        cfg["deployments"] = {"colocated", "distributed"};
        cfg["scenario"] = {{"generate", generator("distributed", 500, 5.0, 100)}};
        cfg["pilots"] = {{"book", "dft"}, {"placement", "beginning"}, {"length", 8}};
        cfg["hardware_set"] = impaired_set();
        cfg["antennas"] = {8, 16, 32, 64, 100, 200, 400, 600, 800, 1000};
    } else if (name == "fig8") {
        cfg["experiment"] = "rate-vs-n";
        cfg["deployments"] = {"distributed"};
        cfg["scenario"] = {{"generate", generator("distributed", 500, 5.0, 100)}};
        cfg["pilots"] = {{"book", "dft"}, {"placement", "beginning"}, {"length", 8}};
        cfg["pilot_books"] = {"temporal", "dft"};
        cfg["hardware_set"] = impaired_set();
        cfg["max_antennas"] = 1000000;
        cfg["antennas"] = {8, 20, 40, 100, 200, 400, 1000, 2000, 4000, 10000, 20000, 40000, 100000, 200000, 400000, 1000000};
        cfg["asymptotic"] = true;
    } else if (name == "fig9") {
        cfg["experiment"] = "scaling-law";
        cfg["scenario"] = {{"generate", generator("distributed", 500, 15.0, 50)}};
        cfg["pilots"] = {{"book", "dft"}, {"placement", "beginning"}, {"length", 8}};
        cfg["antennas"] = {8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384, 32768, 65536};
        // implementer-chosen exponent combinations
        cfg["variants"] = json::array({scaling_variant("ideal", 0, 0, 0, "clo"),
                                       scaling_variant("fixed-clo", 0, 0, 0, "clo"),
                                       scaling_variant("fixed-slo", 0, 0, 0, "slo"),
                                       scaling_variant("law-clo", 0.5, 0.5, 0, "clo"),
                                       scaling_variant("law-slo", 0.4, 0.4, 5, "slo"),
                                       scaling_variant("violate-z1-clo", 0.6, 0, 0, "clo"),
                                       scaling_variant("violate-slo", 1.0, 1.0, 0, "slo")});
        cfg["variants"][0]["kappa0"] = 0.0;
        cfg["variants"][0]["xi0_over_sigma2"] = 1.0;
        cfg["variants"][0]["delta0"] = 0.0;
        cfg["mmse"] = {{"antennas", {16, 32}}, {"trials", 100}, {"drops", 2}, {"instant_stride", 123}};
    } else if (name == "fig10") {
        cfg["experiment"] = "rate-vs-t";
        cfg["scenario"] = {{"generate", generator("distributed", 500, 5.0, 50)}};
        cfg["pilots"] = {{"book", "dft"}, {"placement", "beginning"}, {"length", 8}};
        cfg["placements"] = {"beginning", "middle"};
        cfg["hardware_set"] = impaired_set();
        cfg["antennas"] = 240;
        cfg["block_lengths"] = {50, 75, 100, 150, 200, 250, 300, 400, 500, 600, 800, 1000, 1250, 1500, 1750, 2000};
    } else {
        config_error("unknown preset '" + name + "' (expected fig7 fig8 fig9 fig10)");
    }
    return cfg;
}

} // namespace hwmimo
