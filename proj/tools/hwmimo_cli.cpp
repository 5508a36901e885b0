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

#include "hwmimo/hwmimo.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;

int exit_for(hm_status s)
{
    switch (s) {
    case HM_OK:
        return 0;
    case HM_ERR_INVALID_ARGUMENT:
    case HM_ERR_CONFIG:
        return 2;
    case HM_ERR_NUMERICAL:
        return 3;
    case HM_ERR_IO:
        return 4;
    default:
        return 1;
    }
}

struct Options
{
    std::string config_file;
    std::optional<std::uint64_t> seed;
    std::string out = "out";
    int threads = 0;
    std::vector<std::string> sets;

    std::string scenario_file;
    std::optional<std::string> deployment;
    std::optional<double> snr_db;
    std::optional<int> drops;
    std::optional<int> array_size;
    std::optional<int> block_length;
    std::optional<int> cell;
    std::vector<int> grid;

    std::optional<std::string> pilot_book;
    std::optional<std::string> pilot_place;
    std::optional<int> pilot_length;

    std::optional<std::string> lo;
    std::optional<double> delta;
    std::optional<double> kappa;
    std::optional<double> xi_over_sigma2;

    std::optional<long> trials;
    std::optional<std::string> filter;
    std::optional<int> instant_stride;

    std::string preset;
    std::string manifest;
};

json read_file(const std::string &path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return json::parse(ss.str());
}

// key.sub=value; value is JSON when it parses, a string otherwise.
void apply_set(json &cfg, const std::string &assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::runtime_error("--set expects key=value, got '" + assignment + "'");
    const std::string key = assignment.substr(0, eq), text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded())
        value = text;
    json *node = &cfg;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot - start);
        if (!node->is_object())
            *node = json::object();
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

json build_config(const Options &o, bool generated_default)
{
    json cfg = o.config_file.empty() ? json::object() : read_file(o.config_file);
    if (!cfg.is_object())
        throw std::runtime_error("configuration file must hold a JSON object");

    const bool gen_flags = o.deployment || o.snr_db || o.drops || o.array_size || o.block_length;
    if (!o.scenario_file.empty())
        cfg["scenario"] = json{{"file", o.scenario_file}};
    else if (gen_flags || (generated_default && !cfg.contains("scenario")))
        if (!cfg.contains("scenario") || !cfg["scenario"].contains("generate"))
            cfg["scenario"]["generate"] = json::object();
    if (gen_flags) {
        json &g = cfg["scenario"]["generate"];
        if (o.deployment)
            g["deployment"] = *o.deployment;
        if (o.snr_db)
            g["snr_db"] = *o.snr_db;
        if (o.drops)
            g["drops"] = *o.drops;
        if (o.array_size)
            g["antennas"] = *o.array_size;
        if (o.block_length)
            g["block_length"] = *o.block_length;
    }
    if (o.cell)
        cfg["cell"] = *o.cell;
    if (!o.grid.empty())
        cfg["antennas"] = o.grid;
    if (o.pilot_book)
        cfg["pilots"]["book"] = *o.pilot_book;
    if (o.pilot_place)
        cfg["pilots"]["placement"] = *o.pilot_place;
    if (o.pilot_length)
        cfg["pilots"]["length"] = *o.pilot_length;
    if (o.lo || o.delta || o.kappa || o.xi_over_sigma2) {
        json &h = cfg["hardware"];
        if (o.lo)
            h["lo"] = *o.lo;
        if (o.delta)
            h["delta"] = *o.delta;
        if (o.kappa)
            h["kappa"] = *o.kappa;
        if (o.xi_over_sigma2)
            h["xi_over_sigma2"] = *o.xi_over_sigma2;
    }
    if (o.trials)
        cfg["trials"] = *o.trials;
    if (o.filter)
        cfg["filter"] = *o.filter;
    if (o.instant_stride)
        cfg["instant_stride"] = *o.instant_stride;
    for (const auto &s : o.sets)
        apply_set(cfg, s);
    return cfg;
}

int call_run(const json &request)
{
    char *result = nullptr;
    const hm_status st = hm_run(request.dump().c_str(), &result);
    if (st != HM_OK) {
        std::cerr << "hwmimo: " << hm_last_error() << "\n";
        return exit_for(st);
    }
    const json r = json::parse(result);
    hm_string_free(result);
    const json &m = r.at("manifest");
    const std::string out = request.at("out").get<std::string>();
    for (const auto &f : m.at("files"))
        std::cout << out << "/" << f.get<std::string>() << "\n";
    std::cout << out << "/manifest.json\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Massive MIMO uplink rates under hardware impairments"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(hm_version()));

    Options o;
    app.add_option("--config", o.config_file, "JSON configuration file")->envname("HWMIMO_CONFIG");
    app.add_option("--seed", o.seed, "Master seed")->envname("HWMIMO_SEED");
    app.add_option("--out", o.out, "Output directory")->envname("HWMIMO_OUT");
    app.add_option("--threads", o.threads, "Worker threads, 0 for all cores")
        ->envname("HWMIMO_THREADS")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--set", o.sets, "Configuration override key.sub=value (repeatable)");

    auto add_scenario = [&](CLI::App *c) {
        c->add_option("--scenario", o.scenario_file, "Scenario JSON file");
        c->add_option("--deployment", o.deployment, "colocated | distributed");
        c->add_option("--snr-db", o.snr_db, "Cell-edge SNR for power control");
        c->add_option("--drops", o.drops, "Number of generated drops")->check(CLI::PositiveNumber);
        c->add_option("--array-size", o.array_size, "Antennas per base station when generating")
            ->check(CLI::PositiveNumber);
        c->add_option("--block-length", o.block_length, "Coherence block length T")->check(CLI::PositiveNumber);
        c->add_option("--cell", o.cell, "Index of the served cell");
    };
    auto add_pilots = [&](CLI::App *c) {
        c->add_option("--pilot-book", o.pilot_book, "temporal | dft");
        c->add_option("--pilot-place", o.pilot_place, "beginning | middle | uniform | preamble");
        c->add_option("--pilot-length", o.pilot_length, "Pilot length B, 0 for K")->check(CLI::NonNegativeNumber);
    };
    auto add_hardware = [&](CLI::App *c) {
        c->add_option("--lo", o.lo, "clo | slo");
        c->add_option("--delta", o.delta, "Phase-drift variance per channel use");
        c->add_option("--kappa", o.kappa, "Distortion proportionality");
        c->add_option("--xi-over-sigma2", o.xi_over_sigma2, "Receiver noise amplification");
    };
    auto add_mc = [&](CLI::App *c) {
        c->add_option("--trials", o.trials, "Monte Carlo trials");
        c->add_option("--instant-stride", o.instant_stride, "Evaluate every n-th instant")->check(CLI::PositiveNumber);
    };
    auto add_grid = [&](CLI::App *c) { c->add_option("--n-grid", o.grid, "Antenna counts to evaluate"); };

    struct Sub
    {
        const char *name;
        const char *help;
        bool scenario, pilots, hardware, mc, grid;
    };
    const Sub subs[] = {
        {"scenario-gen", "Generate scenario drops", true, false, false, false, false},
        {"estimate", "Channel estimation error, closed form and simulated", true, true, true, true, false},
        {"rates-cf", "Closed-form MRC SINR and rates", true, true, true, false, true},
        {"rates-mc", "Monte Carlo rates", true, true, true, true, false},
        {"sweep-n", "Rates over a grid of antenna counts", true, true, true, false, true},
        {"rate-vs-n", "Alias of sweep-n", true, true, true, false, true},
        {"rate-vs-t", "Rates over a grid of block lengths", true, true, true, false, false},
        {"asymptotic", "SINR limits as the array grows", true, true, true, false, true},
        {"scaling-law", "Hardware scaling law check and rates", true, true, false, false, true},
        {"circuit", "Circuit parameters to impairments and power", false, false, false, false, true},
    };
    std::vector<std::pair<CLI::App *, std::string>> commands;
    for (const Sub &s : subs) {
        CLI::App *c = app.add_subcommand(s.name, s.help);
        if (s.scenario)
            add_scenario(c);
        if (s.pilots)
            add_pilots(c);
        if (s.hardware)
            add_hardware(c);
        if (s.mc)
            add_mc(c);
        if (s.grid)
            add_grid(c);
        if (std::string(s.name) == "rates-mc")
            c->add_option("--filter", o.filter, "mrc | mmse");
        commands.emplace_back(c, s.name);
    }
    CLI::App *pre = app.add_subcommand("preset", "Run a named preset; --config and --set override it");
    pre->add_option("name", o.preset, "Preset name")->required();
    CLI::App *rerun = app.add_subcommand("run", "Repeat a run from its manifest.json");
    rerun->add_option("manifest", o.manifest, "Manifest file")->required()->check(CLI::ExistingFile);
    CLI::App *list = app.add_subcommand("list", "List commands and presets");
    CLI::App *show = app.add_subcommand("show-preset", "Print a preset configuration");
    std::string show_name;
    show->add_option("name", show_name, "Preset name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        json request{{"out", o.out}, {"threads", o.threads}};
        if (o.seed)
            request["seed"] = *o.seed;
        if (*list) {
            char *r = nullptr;
            if (hm_list(&r) != HM_OK)
                throw std::runtime_error(hm_last_error());
            const json j = json::parse(r);
            hm_string_free(r);
            std::cout << "commands:";
            for (const auto &c : j["commands"])
                std::cout << " " << c.get<std::string>();
            std::cout << "\npresets:";
            for (const auto &c : j["presets"])
                std::cout << " " << c.get<std::string>();
            std::cout << "\n";
            return 0;
        }
        if (*show) {
            char *r = nullptr;
            const hm_status st = hm_preset(show_name.c_str(), &r);
            if (st != HM_OK) {
                std::cerr << "hwmimo: " << hm_last_error() << "\n";
                return exit_for(st);
            }
            std::cout << r << "\n";
            hm_string_free(r);
            return 0;
        }
        if (*pre) {
            request["command"] = "preset";
            request["preset"] = o.preset;
            request["config"] = build_config(o, false);
            return call_run(request);
        }
        if (*rerun) {
            request["command"] = "run";
            request["config"] = read_file(o.manifest);
            return call_run(request);
        }
        for (const auto &[c, name] : commands)
            if (*c) {
                request["command"] = name;
                request["config"] = build_config(o, name != "circuit");
                return call_run(request);
            }
    } catch (const json::exception &e) {
        std::cerr << "hwmimo: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "hwmimo: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
