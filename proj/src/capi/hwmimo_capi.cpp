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

#include "core/parallel.hpp"
#include "run/runner.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>

struct hm_scenario
{
    hwmimo::Scenario s;
};

struct hm_estimator
{
    hwmimo::Scenario scenario;
    std::unique_ptr<hwmimo::EstimatorCache> cache;
};

namespace {

using namespace hwmimo;

thread_local std::string last_error;

hm_status to_status(ErrorCode c)
{
    switch (c) {
    case ErrorCode::InvalidArgument:
        return HM_ERR_INVALID_ARGUMENT;
    case ErrorCode::Config:
        return HM_ERR_CONFIG;
    case ErrorCode::Numerical:
        return HM_ERR_NUMERICAL;
    case ErrorCode::Io:
        return HM_ERR_IO;
    }
    return HM_ERR_INTERNAL;
}

template <typename F>
hm_status guard(F &&f)
{
    try {
        last_error.clear();
        f();
        return HM_OK;
    } catch (const Error &e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const json::exception &e) {
        last_error = e.what();
        return HM_ERR_CONFIG;
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return HM_ERR_INTERNAL;
    } catch (const std::exception &e) {
        last_error = e.what();
        return HM_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return HM_ERR_INTERNAL;
    }
}

void need_ptr(const void *p, const char *what)
{
    require(p != nullptr, std::string(what) + " is null");
}

char *dup_string(const std::string &s)
{
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

HardwareProfile to_profile(const hm_hardware *hw)
{
    need_ptr(hw, "hardware");
    require(hw->lo_mode == HM_LO_COMMON || hw->lo_mode == HM_LO_SEPARATE, "unknown LO mode");
    HardwareProfile p;
    p.delta = hw->delta;
    p.kappa2 = hw->kappa2;
    p.xi = hw->xi;
    p.lo_mode = hw->lo_mode == HM_LO_COMMON ? LoMode::Common : LoMode::Separate;
    return p;
}

void from_profile(const HardwareProfile &p, hm_hardware *out)
{
    out->delta = p.delta;
    out->kappa2 = p.kappa2;
    out->xi = p.xi;
    out->lo_mode = p.lo_mode == LoMode::Common ? HM_LO_COMMON : HM_LO_SEPARATE;
}

LoMode to_lo(int m)
{
    require(m == HM_LO_COMMON || m == HM_LO_SEPARATE, "unknown LO mode");
    return m == HM_LO_COMMON ? LoMode::Common : LoMode::Separate;
}

PilotSpec to_pilots(const hm_pilots *p)
{
    need_ptr(p, "pilots");
    require(p->book == HM_BOOK_TEMPORAL || p->book == HM_BOOK_DFT, "unknown pilot book");
    require(p->placement >= HM_PLACE_BEGINNING && p->placement <= HM_PLACE_PREAMBLE, "unknown placement");
    require(p->length >= 0, "pilot length negative");
    PilotSpec s;
    s.book = p->book == HM_BOOK_TEMPORAL ? PilotBookKind::Temporal : PilotBookKind::Dft;
    static const PlacementKind kinds[] = {PlacementKind::Beginning, PlacementKind::Middle, PlacementKind::Uniform,
                                          PlacementKind::PreamblePlusDistributed};
    s.placement = kinds[p->placement];
    s.length = p->length;
    return s;
}

ScalingExponents to_scaling(const hm_scaling *e)
{
    need_ptr(e, "scaling");
    return {e->z1, e->z2, e->z3, e->kappa2_0, e->xi_0, e->delta_0};
}

json parse_text(const char *text)
{
    need_ptr(text, "json text");
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        config_error(e.what());
    }
}

std::size_t data_index(const EstimatorCache &c, int t)
{
    const auto &d = c.book().data();
    const auto it = std::find(d.begin(), d.end(), t);
    require(it != d.end(), "t is not a data instant");
    return static_cast<std::size_t>(it - d.begin());
}

void copy_instants(const std::vector<int> &v, int *out, size_t capacity, size_t *count)
{
    need_ptr(count, "count");
    *count = v.size();
    require(out != nullptr || capacity == 0, "instants is null");
    for (std::size_t i = 0; i < v.size() && i < capacity; ++i)
        out[i] = v[i];
}

} // namespace

extern "C" {

const char *hm_version(void)
{
    return HWMIMO_VERSION;
}

const char *hm_last_error(void)
{
    return last_error.c_str();
}

void hm_string_free(char *s)
{
    std::free(s);
}

hm_status hm_scenario_create(int cells, int users, int antennas, int subarrays, int block_length, double sigma2,
                             hm_scenario **out)
{
    return guard([&] {
        need_ptr(out, "out");
        *out = nullptr;
        Dimensions d{cells, users, antennas, subarrays, block_length};
        Scenario s(d, sigma2);
        s.set_powers(MatrixR::Ones(cells, users));
        *out = new hm_scenario{std::move(s)};
    });
}

hm_status hm_scenario_from_json(const char *text, hm_scenario **out)
{
    return guard([&] {
        need_ptr(out, "out");
        *out = nullptr;
        *out = new hm_scenario{scenario_from_json(parse_text(text))};
    });
}

hm_status hm_scenario_generate(const char *generator_json, uint64_t seed, uint64_t drop, hm_scenario **out, int *cell)
{
    return guard([&] {
        need_ptr(out, "out");
        *out = nullptr;
        json g = generator_json ? parse_text(generator_json) : json::object();
        const DropConfig dc = parse_generator(g);
        Scenario s = generate_scenario(dc, seed, drop);
        if (cell)
            *cell = (dc.layout.grid / 2) * dc.layout.grid + dc.layout.grid / 2;
        *out = new hm_scenario{std::move(s)};
    });
}

hm_status hm_scenario_to_json(const hm_scenario *s, char **out)
{
    return guard([&] {
        need_ptr(s, "scenario");
        need_ptr(out, "out");
        *out = dup_string(to_json(s->s).dump());
    });
}

hm_status hm_scenario_dims(const hm_scenario *s, int *cells, int *users, int *antennas, int *subarrays,
                           int *block_length)
{
    return guard([&] {
        need_ptr(s, "scenario");
        const Dimensions &d = s->s.dims();
        if (cells)
            *cells = d.cells;
        if (users)
            *users = d.users;
        if (antennas)
            *antennas = d.antennas;
        if (subarrays)
            *subarrays = d.subarrays;
        if (block_length)
            *block_length = d.block_length;
    });
}

hm_status hm_scenario_set_gain(hm_scenario *s, int j, int l, int k, int a, double value)
{
    return guard([&] {
        need_ptr(s, "scenario");
        s->s.set_gain(j, l, k, a, value);
    });
}

hm_status hm_scenario_set_power(hm_scenario *s, int l, int k, double p)
{
    return guard([&] {
        need_ptr(s, "scenario");
        require(l >= 0 && l < s->s.cells() && k >= 0 && k < s->s.users(), "UE index out of range");
        s->s.set_power(l, k, p);
    });
}

hm_status hm_scenario_set_block_length(hm_scenario *s, int block_length)
{
    return guard([&] {
        need_ptr(s, "scenario");
        require(block_length >= 1, "block length must be positive");
        s->s.set_block_length(block_length);
    });
}

hm_status hm_scenario_validate(const hm_scenario *s, const hm_hardware *hw, char **report)
{
    return guard([&] {
        need_ptr(s, "scenario");
        const ValidationReport r = validate(s->s, to_profile(hw));
        if (report)
            *report = dup_string(r.to_string());
        if (!r.ok())
            fail(ErrorCode::InvalidArgument, r.to_string());
    });
}

void hm_scenario_free(hm_scenario *s)
{
    delete s;
}

hm_status hm_estimator_create(const hm_scenario *s, const hm_hardware *hw, const hm_pilots *pilots, int cell,
                              hm_estimator **out)
{
    return guard([&] {
        need_ptr(s, "scenario");
        need_ptr(out, "out");
        *out = nullptr;
        const HardwareProfile p = to_profile(hw);
        const ValidationReport r = validate(s->s, p);
        if (!r.ok())
            fail(ErrorCode::InvalidArgument, r.to_string());
        require(cell >= 0 && cell < s->s.cells(), "cell index out of range");
        auto e = std::make_unique<hm_estimator>();
        e->scenario = s->s;
        e->cache = std::make_unique<EstimatorCache>(s->s, p, make_pilots(to_pilots(pilots), s->s), cell);
        *out = e.release();
    });
}

void hm_estimator_free(hm_estimator *e)
{
    delete e;
}

hm_status hm_estimator_data_instants(const hm_estimator *e, int *instants, size_t capacity, size_t *count)
{
    return guard([&] {
        need_ptr(e, "estimator");
        copy_instants(e->cache->book().data(), instants, capacity, count);
    });
}

hm_status hm_estimator_pilot_instants(const hm_estimator *e, int *instants, size_t capacity, size_t *count)
{
    return guard([&] {
        need_ptr(e, "estimator");
        copy_instants(e->cache->book().tau(), instants, capacity, count);
    });
}

hm_status hm_estimator_mse(const hm_estimator *e, int l, int k, int t, double *mse)
{
    return guard([&] {
        need_ptr(e, "estimator");
        need_ptr(mse, "mse");
        require(l >= 0 && l < e->cache->cells() && k >= 0 && k < e->cache->users(), "UE index out of range");
        require(t >= 1 && t <= e->scenario.block_length(), "t outside the block");
        *mse = error_covariance(*e->cache, l, k, t).mse;
    });
}

hm_status hm_mrc_sinr(const hm_estimator *e, int k, int t, int antennas, double *sinr)
{
    return guard([&] {
        need_ptr(e, "estimator");
        need_ptr(sinr, "sinr");
        const EstimatorCache &c = *e->cache;
        require(k >= 0 && k < c.users(), "UE index out of range");
        data_index(c, t);
        require(antennas >= 1 && antennas % c.groups() == 0, "antennas must be a positive multiple of A");
        const MomentTerms terms = mrc_terms(c, k, t);
        const double mu = static_cast<double>(antennas / c.groups());
        *sinr = hwmimo::sinr(terms.at(mu), e->scenario.powers(), c.cell(), k, c.hardware().xi).sinr;
    });
}

hm_status hm_mrc_rates(const hm_estimator *e, const int *antennas, size_t count, double *rates)
{
    return guard([&] {
        need_ptr(e, "estimator");
        need_ptr(antennas, "antennas");
        need_ptr(rates, "rates");
        const EstimatorCache &c = *e->cache;
        for (size_t i = 0; i < count; ++i)
            require(antennas[i] >= 1 && antennas[i] % c.groups() == 0, "antennas must be positive multiples of A");
        const auto r = mrc_rates(c, std::span<const int>(antennas, count));
        const int K = c.users();
        for (size_t i = 0; i < count; ++i)
            for (int k = 0; k < K; ++k)
                rates[i * K + k] = r[i][k].rate;
    });
}

hm_status hm_asymptotic_sinr(const hm_estimator *e, int k, int t, double *value, int *infinite)
{
    return guard([&] {
        need_ptr(e, "estimator");
        need_ptr(value, "value");
        require(k >= 0 && k < e->cache->users(), "UE index out of range");
        data_index(*e->cache, t);
        const ExtendedReal r = asymptotic_sinr(*e->cache, k, t);
        *value = r.as_double();
        if (infinite)
            *infinite = r.infinite ? 1 : 0;
    });
}

hm_status hm_mc_rates(const hm_scenario *s, const hm_hardware *hw, const hm_pilots *pilots, int cell, long trials,
                      uint64_t seed, int filter, int threads, int instant_stride, double *rates)
{
    return guard([&] {
        need_ptr(s, "scenario");
        need_ptr(rates, "rates");
        require(filter == HM_FILTER_MRC || filter == HM_FILTER_MMSE, "unknown filter");
        require(trials >= 2, "at least two trials");
        require(instant_stride >= 1, "instant stride must be positive");
        require(cell >= 0 && cell < s->s.cells(), "cell index out of range");
        McConfig mc;
        mc.trials = trials;
        mc.seed = seed;
        mc.filter = filter == HM_FILTER_MRC ? ReceiveFilter::Mrc : ReceiveFilter::Mmse;
        mc.threads = resolve_threads(threads);
        const auto r = mc_rate(s->s, to_profile(hw), make_pilots(to_pilots(pilots), s->s), cell, mc, instant_stride);
        for (std::size_t k = 0; k < r.size(); ++k)
            rates[k] = r[k].rate;
    });
}

hm_status hm_scaling_check(const hm_scaling *e, int lo_mode, int t, const int *tau, size_t pilots, int *satisfied,
                           double *margin)
{
    return guard([&] {
        need_ptr(tau, "tau");
        require(pilots >= 1, "need at least one pilot instant");
        const ScalingVerdict v = check_scaling_law(to_scaling(e), to_lo(lo_mode), t, std::span<const int>(tau, pilots));
        if (satisfied)
            *satisfied = v.satisfied ? 1 : 0;
        if (margin)
            *margin = v.margin;
    });
}

hm_status hm_scaled_profile(const hm_scaling *e, int lo_mode, double antennas, double sigma2, hm_hardware *out)
{
    return guard([&] {
        need_ptr(out, "out");
        from_profile(scaled_profile(to_scaling(e), to_lo(lo_mode), antennas, sigma2), out);
    });
}

hm_status hm_circuit_profile(const char *circuit_json, double sigma2, hm_hardware *out)
{
    return guard([&] {
        need_ptr(out, "out");
        require(sigma2 > 0.0, "sigma2 must be positive");
        json c = parse_text(circuit_json);
        from_profile(circuit_profile(parse_circuit(c), sigma2), out);
    });
}

hm_status hm_run(const char *request_json, char **result_json)
{
    return guard([&] {
        need_ptr(result_json, "result");
        *result_json = nullptr;
        const json q = parse_text(request_json);
        if (!q.is_object())
            config_error("request must be an object");
        RunRequest r;
        r.command = need<std::string>(q, "command");
        r.preset = q.value("preset", std::string());
        if (q.contains("config") && !q["config"].is_null())
            r.config = q["config"];
        if (q.contains("seed") && !q["seed"].is_null())
            r.seed = need<std::uint64_t>(q, "seed");
        r.threads = q.value("threads", 0);
        const bool write = q.contains("out") && !q["out"].is_null();
        if (write)
            r.out_dir = need<std::string>(q, "out");
        const RunResult res = write ? run(r) : execute(r);
        json out{{"manifest", res.manifest}};
        if (q.value("tables", false)) {
            json tables = json::object();
            for (const Table &t : res.output.tables)
                tables[t.name] = t.to_csv();
            for (const auto &[name, contents] : res.output.files)
                tables[name] = contents;
            out["tables"] = tables;
        }
        *result_json = dup_string(out.dump());
    });
}

hm_status hm_list(char **result_json)
{
    return guard([&] {
        need_ptr(result_json, "result");
        *result_json = dup_string(json{{"commands", command_names()}, {"presets", preset_names()}}.dump());
    });
}

hm_status hm_preset(const char *name, char **config_json)
{
    return guard([&] {
        need_ptr(name, "name");
        need_ptr(config_json, "result");
        *config_json = dup_string(preset(name).dump(2));
    });
}

} // extern "C"
