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

#include "run/experiments.hpp"

#include "core/channel.hpp"
#include "core/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hwmimo {

namespace {

using Grid = std::vector<int>;

std::string num(double v)
{
    return format_number(v);
}

std::string num(int v)
{
    return std::to_string(v);
}

double mean_of(const std::vector<double> &v)
{
    CompensatedSum s;
    for (double x : v)
        s.add(x);
    return v.empty() ? 0.0 : s.value() / static_cast<double>(v.size());
}

double mean_rate(const std::vector<RateReport> &r)
{
    std::vector<double> v;
    for (const auto &x : r)
        v.push_back(x.rate);
    return mean_of(v);
}

/// Rate with every SINR replaced by its N -> infinity limit; +inf if any limit is.
double limit_rate(const std::vector<SinrPolynomial> &poly, int T)
{
    CompensatedSum s;
    for (const auto &p : poly) {
        const ExtendedReal l = p.limit();
        if (l.infinite)
            return std::numeric_limits<double>::infinity();
        s.add(std::log2(1.0 + l.value));
    }
    return s.value() / T;
}

std::uint64_t seed_of(json &cfg)
{
    return take<std::uint64_t>(cfg, "seed", 1);
}

void resolve_generator(json &cfg)
{
    json &sc = section(cfg, "scenario");
    if (sc.empty())
        sc["generate"] = json::object();
    if (sc.contains("generate")) {
        parse_generator(sc["generate"]);
        take<int>(sc["generate"], "drops", 1);
    }
}

// One row per drop and an aggregate row over drops, for a curve over a grid.
void add_curve(ResultTable &table, const std::string &exp, const std::vector<std::string> &N,
               const std::vector<std::string> &T, const std::vector<std::vector<double>> &per_drop,
               const std::string &metric, std::vector<double> *means = nullptr)
{
    const std::size_t points = N.size();
    for (std::size_t d = 0; d < per_drop.size(); ++d)
        for (std::size_t i = 0; i < points; ++i)
            table.add(exp, N[i], T[i], num(static_cast<int>(d)), "all", metric, per_drop[d][i]);
    for (std::size_t i = 0; i < points; ++i) {
        std::vector<double> col;
        for (const auto &row : per_drop)
            col.push_back(row[i]);
        const auto [m, se] = mean_se(col);
        table.add(exp, N[i], T[i], "all", "all", metric, m, se);
        if (means)
            means->push_back(m);
    }
}

void add_losses(ResultTable &table, const std::string &prefix, const std::vector<std::string> &names,
                const std::map<std::string, std::vector<double>> &means, const std::vector<std::string> &N,
                const std::vector<std::string> &T)
{
    auto ideal = means.find("ideal");
    if (ideal == means.end())
        return;
    for (const auto &name : names) {
        if (name == "ideal")
            continue;
        const auto &m = means.at(name);
        for (std::size_t i = 0; i < m.size(); ++i)
            table.add(prefix + "/" + name, N[i], T[i], "all", "all", "loss_vs_ideal",
                      ideal->second[i] > 0.0 ? 1.0 - m[i] / ideal->second[i] : 0.0);
    }
}

std::string deployment_label(const json &cfg)
{
    const json &sc = cfg.at("scenario");
    return sc.contains("generate") ? sc["generate"]["deployment"].get<std::string>() : std::string("scenario");
}

std::vector<std::string> string_list(json &cfg, const char *key, const std::vector<std::string> &fallback)
{
    auto v = take<std::vector<std::string>>(cfg, key, fallback);
    if (v.empty())
        config_error(std::string("'") + key + "' must be nonempty");
    return v;
}

void check_grid_divisible(const Grid &grid, int A)
{
    for (int N : grid)
        if (N % A != 0)
            config_error("antenna count " + std::to_string(N) + " is not a multiple of A = " + std::to_string(A));
}

// ---- rate-vs-n ----------------------------------------------------------

Output rate_vs_n(json &cfg, int threads, const std::string &command)
{
    const std::uint64_t seed = seed_of(cfg);
    const std::string label = take<std::string>(cfg, "name", command);
    Grid antennas = parse_grid(cfg, "antennas", {16, 32, 64, 128, 256});
    const int cap = take<int>(cfg, "max_antennas", antennas.back());
    antennas.erase(std::remove_if(antennas.begin(), antennas.end(), [cap](int n) { return n > cap; }), antennas.end());
    if (antennas.empty())
        config_error("no antenna counts at or below max_antennas");
    const bool asymptotic = take<bool>(cfg, "asymptotic", false);
    const PilotSpec pilots = parse_pilots(cfg);
    const auto books = string_list(cfg, "pilot_books", {to_string(pilots.book)});
    resolve_generator(cfg);

    std::vector<std::string> deployments{""};
    if (cfg.contains("deployments")) {
        if (!cfg["scenario"].contains("generate"))
            config_error("'deployments' needs a generated scenario");
        deployments = string_list(cfg, "deployments", {});
        for (const auto &d : deployments)
            parse_deployment(d);
    }

    Output out;
    ResultTable table;
    for (const std::string &dep : deployments) {
        json run = cfg;
        if (!dep.empty())
            run["scenario"]["generate"]["deployment"] = dep;
        const ScenarioSet set = load_scenarios(run, seed, threads);
        cfg["cell"] = run["cell"];
        const Scenario &first = set.drops.front();
        check_grid_divisible(antennas, first.subarrays());
        const auto hardware = parse_hardware_set(cfg, first.sigma2());
        const int T = first.block_length();
        const std::string where = !dep.empty() ? dep : deployment_label(cfg);

        for (const std::string &book : books) {
            PilotSpec ps = pilots;
            ps.book = parse_book(book);
            std::map<std::string, std::vector<double>> means;
            std::vector<std::string> names;
            std::vector<std::string> Ncol, Tcol;
            for (int N : antennas) {
                Ncol.push_back(num(N));
                Tcol.push_back(num(T));
            }
            for (const auto &hw : hardware) {
                const std::string exp = label + "/" + where + "/" + book + "/" + hw.name;
                const int D = static_cast<int>(set.drops.size());
                std::vector<std::vector<double>> rate(D), limit(D);
                parallel_for(D, threads, [&](int d) {
                    const Scenario &s = set.drops[d];
                    const EstimatorCache cache(s, hw.profile, make_pilots(ps, s), set.cell);
                    for (const auto &per_n : mrc_rates(cache, antennas))
                        rate[d].push_back(mean_rate(per_n));
                    if (asymptotic) {
                        std::vector<double> lim;
                        for (int k = 0; k < s.users(); ++k)
                            lim.push_back(limit_rate(mrc_sinr_trajectory(cache, k), T));
                        limit[d].push_back(mean_of(lim));
                    }
                });
                add_curve(table, exp, Ncol, Tcol, rate, "rate", &means[hw.name]);
                names.push_back(hw.name);
                if (asymptotic)
                    add_curve(table, exp, {"inf"}, {num(T)}, limit, "rate");
            }
            add_losses(table, label + "/" + where + "/" + book, names, means, Ncol, Tcol);
        }
    }
    out.tables.push_back(table.table());
    return out;
}

// ---- rate-vs-t ----------------------------------------------------------

Output rate_vs_t(json &cfg, int threads)
{
    const std::uint64_t seed = seed_of(cfg);
    const std::string label = take<std::string>(cfg, "name", "rate-vs-t");
    const Grid blocks = parse_grid(cfg, "block_lengths", {50, 100, 200, 500, 1000, 2000});
    const int N = take<int>(cfg, "antennas", 240);
    const PilotSpec pilots = parse_pilots(cfg);
    const auto placements = string_list(cfg, "placements", {to_string(pilots.placement)});
    resolve_generator(cfg);
    const ScenarioSet set = load_scenarios(cfg, seed, threads);
    const Scenario &first = set.drops.front();
    check_grid_divisible({N}, first.subarrays());
    const int B = pilots.length > 0 ? pilots.length : first.users();
    if (blocks.front() <= B)
        config_error("block lengths must exceed the pilot length");
    const auto hardware = parse_hardware_set(cfg, first.sigma2());
    const std::string where = deployment_label(cfg);

    std::vector<std::string> Ncol, Tcol;
    for (int T : blocks) {
        Ncol.push_back(num(N));
        Tcol.push_back(num(T));
    }
    ResultTable table;
    for (const std::string &placement : placements) {
        PilotSpec ps = pilots;
        ps.placement = parse_placement(placement);
        for (const auto &hw : hardware) {
            const std::string exp = label + "/" + where + "/" + placement + "/" + hw.name;
            const int D = static_cast<int>(set.drops.size());
            std::vector<std::vector<double>> rate(D);
            parallel_for(D, threads, [&](int d) {
                Scenario s = set.drops[d];
                for (int T : blocks) {
                    s.set_block_length(T);
                    const EstimatorCache cache(s, hw.profile, make_pilots(ps, s), set.cell);
                    const std::vector<int> n{N};
                    rate[d].push_back(mean_rate(mrc_rates(cache, n).front()));
                }
            });
            std::vector<double> means;
            add_curve(table, exp, Ncol, Tcol, rate, "rate", &means);
            const auto best = std::max_element(means.begin(), means.end()) - means.begin();
            table.add(exp, num(N), num(blocks[best]), "all", "all", "t_opt", blocks[best]);
            table.add(exp, num(N), num(blocks[best]), "all", "all", "rate_max", means[best]);
        }
    }
    Output out;
    out.tables.push_back(table.table());
    return out;
}

// ---- scaling-law ----------------------------------------------------------

int worst_instant(const PilotBook &book)
{
    int best = book.data().front(), dist = -1;
    for (int t : book.data()) {
        int m = std::abs(t - book.tau().front());
        for (int s : book.tau())
            m = std::min(m, std::abs(t - s));
        if (m > dist) {
            dist = m;
            best = t;
        }
    }
    return best;
}

Output scaling_law(json &cfg, int threads)
{
    const std::uint64_t seed = seed_of(cfg);
    const std::string label = take<std::string>(cfg, "name", "scaling-law");
    const Grid antennas = parse_grid(cfg, "antennas", {16, 64, 256, 1024, 4096, 16384});
    const PilotSpec pilots = parse_pilots(cfg);
    resolve_generator(cfg);
    const ScenarioSet set = load_scenarios(cfg, seed, threads);
    const Scenario &first = set.drops.front();
    check_grid_divisible(antennas, first.subarrays());
    const double sigma2 = first.sigma2();
    const int T = first.block_length();
    const PilotBook book0 = make_pilots(pilots, first);
    const int t_check = take<int>(cfg, "t", worst_instant(book0));
    if (t_check < 1 || t_check > T)
        config_error("'t' outside 1..T");

    if (!cfg.contains("variants"))
        cfg["variants"] = json::array({json{{"name", "fixed"}}});
    json &variants = cfg["variants"];
    if (!variants.is_array() || variants.empty())
        config_error("'variants' must be a nonempty array");

    struct Variant
    {
        std::string name;
        ScalingExponents e;
        LoMode lo;
    };
    std::vector<Variant> vs;
    for (json &v : variants) {
        Variant x;
        x.name = need<std::string>(v, "name");
        x.e = parse_scaling(v, sigma2);
        x.lo = parse_lo_mode(take<std::string>(v, "lo", "clo"));
        vs.push_back(x);
    }

    std::vector<std::string> Ncol, Tcol;
    for (int N : antennas) {
        Ncol.push_back(num(N));
        Tcol.push_back(num(T));
    }
    ResultTable table;
    for (const Variant &v : vs) {
        const std::string exp = label + "/" + v.name;
        const ScalingVerdict verdict = check_scaling_law(v.e, v.lo, t_check, book0.tau());
        table.add(exp, "all", num(T), "all", "all", "law_satisfied", verdict.satisfied ? 1.0 : 0.0);
        table.add(exp, "all", num(T), "all", "all", "law_margin", verdict.margin);
        const int D = static_cast<int>(set.drops.size());
        std::vector<std::vector<double>> rate(D), sinr_t(D);
        parallel_for(D, threads, [&](int d) {
            const Scenario &s = set.drops[d];
            const PilotBook book = make_pilots(pilots, s);
            const std::size_t idx =
                std::find(book.data().begin(), book.data().end(), t_check) - book.data().begin();
            for (int N : antennas) {
                const HardwareProfile hw = scaled_profile(v.e, v.lo, N, sigma2);
                const EstimatorCache cache(s, hw, book, set.cell);
                const std::vector<int> n{N};
                const auto r = mrc_rates(cache, n).front();
                rate[d].push_back(mean_rate(r));
                std::vector<double> sv;
                for (const auto &u : r)
                    sv.push_back(idx < u.sinr.size() ? u.sinr[idx] : 0.0);
                sinr_t[d].push_back(mean_of(sv));
            }
        });
        add_curve(table, exp, Ncol, Tcol, rate, "rate");
        add_curve(table, exp, Ncol, Tcol, sinr_t, "sinr_at_t");
    }

    if (cfg.contains("mmse")) {
        json &m = cfg["mmse"];
        const Grid mgrid = parse_grid(m, "antennas", {16, 32});
        check_grid_divisible(mgrid, first.subarrays());
        McConfig mc;
        mc.trials = take<long>(m, "trials", 100);
        mc.seed = seed;
        mc.filter = ReceiveFilter::Mmse;
        mc.threads = threads;
        const int drops = std::min<int>(take<int>(m, "drops", 2), static_cast<int>(set.drops.size()));
        const int stride = take<int>(m, "instant_stride", 1);
        if (mc.trials < 2 || drops < 1 || stride < 1)
            config_error("mmse: trials >= 2, drops >= 1 and instant_stride >= 1 required");
        std::vector<std::string> mN, mT;
        for (int N : mgrid) {
            mN.push_back(num(N));
            mT.push_back(num(T));
        }
        for (const Variant &v : vs) {
            std::vector<std::vector<double>> rate(drops);
            for (int d = 0; d < drops; ++d)
                for (int N : mgrid) {
                    const Scenario s = set.drops[d].with_antennas(N);
                    const HardwareProfile hw = scaled_profile(v.e, v.lo, N, sigma2);
                    rate[d].push_back(mean_rate(mc_rate(s, hw, make_pilots(pilots, s), set.cell, mc, stride)));
                }
            add_curve(table, label + "/mmse/" + v.name, mN, mT, rate, "rate");
        }
    }
    Output out;
    out.tables.push_back(table.table());
    return out;
}

// ---- single-scenario commands -----------------------------------------------

struct Single
{
    ScenarioSet set;
    HardwareProfile hw;
    PilotSpec pilots;
};

Single load_single(json &cfg, int threads)
{
    Single s;
    const std::uint64_t seed = seed_of(cfg);
    resolve_generator(cfg);
    s.set = load_scenarios(cfg, seed, threads);
    s.hw = parse_hardware(section(cfg, "hardware"), s.set.drops.front().sigma2());
    s.pilots = parse_pilots(cfg);
    return s;
}

Output estimate(json &cfg, int threads)
{
    Single in = load_single(cfg, threads);
    const Scenario &s = in.set.drops.front();
    const int j = in.set.cell;
    json &ue = section(cfg, "ue");
    const int l = take<int>(ue, "cell", j);
    const int k = take<int>(ue, "index", 0);
    if (l < 0 || l >= s.cells() || k < 0 || k >= s.users())
        config_error("ue out of range");
    const long trials = take<long>(cfg, "trials", 10000);
    const int stride = take<int>(cfg, "instant_stride", 1);
    if (trials < 0 || stride < 1)
        config_error("trials must be nonnegative and instant_stride positive");
    const PilotBook book = make_pilots(in.pilots, s);
    const EstimatorCache cache(s, in.hw, book, j);

    std::vector<int> instants;
    for (int t = 1; t <= s.block_length(); t += stride)
        instants.push_back(t);
    EstimationCheck sim;
    if (trials >= 2) {
        McConfig mc;
        mc.trials = trials;
        mc.seed = seed_of(cfg);
        mc.threads = threads;
        sim = simulate_estimation(s, in.hw, book, j, l, k, instants, mc);
    }
    Table t{"estimate.csv", {"t", "mse_closed_form", "mse_monte_carlo", "mse_stderr"}, {}};
    for (std::size_t i = 0; i < instants.size(); ++i) {
        const double cf = error_covariance(cache, l, k, instants[i]).mse;
        t.add({num(instants[i]), num(cf), trials >= 2 ? num(sim.mse[i]) : "", trials >= 2 ? num(sim.mse_se[i]) : ""});
    }
    Output out;
    out.tables.push_back(t);
    return out;
}

Output rates_cf(json &cfg, int threads)
{
    Single in = load_single(cfg, threads);
    const Scenario &first = in.set.drops.front();
    const Grid antennas = parse_grid(cfg, "antennas", {first.antennas()});
    check_grid_divisible(antennas, first.subarrays());
    const int j = in.set.cell;
    const int D = static_cast<int>(in.set.drops.size());
    std::vector<std::vector<std::vector<std::string>>> rows(D);
    parallel_for(D, threads, [&](int d) {
        const Scenario &s = in.set.drops[d];
        const EstimatorCache cache(s, in.hw, make_pilots(in.pilots, s), j);
        const auto &data = cache.book().data();
        for (int k = 0; k < s.users(); ++k) {
            const std::vector<MomentTerms> terms = mrc_terms_trajectory(cache, k);
            for (int N : antennas) {
                const double mu = static_cast<double>(N / s.subarrays());
                std::vector<SinrBreakdown> br;
                std::vector<double> sv;
                for (const MomentTerms &m : terms) {
                    br.push_back(sinr(m.at(mu), s.powers(), j, k, in.hw.xi));
                    sv.push_back(br.back().sinr);
                }
                const double rate = ergodic_rate(sv, s.block_length(), cache.pilot_length());
                for (std::size_t i = 0; i < br.size(); ++i) {
                    const SinrBreakdown &b = br[i];
                    rows[d].push_back({num(d), num(N), num(k), num(data[i]), num(b.sinr), num(rate), num(b.signal),
                                       num(b.interference_total() - b.self_subtraction), num(b.distortion),
                                       num(b.noise)});
                }
            }
        }
    });
    Table t{"rates_cf.csv", {"drop", "N", "ue", "t", "sinr", "rate", "signal", "interference", "distortion", "noise"}, {}};
    for (auto &r : rows)
        for (auto &x : r)
            t.add(std::move(x));
    Output out;
    out.tables.push_back(t);
    return out;
}

Output rates_mc(json &cfg, int threads)
{
    Single in = load_single(cfg, threads);
    McConfig mc;
    mc.trials = take<long>(cfg, "trials", 10000);
    mc.seed = seed_of(cfg);
    mc.filter = parse_filter(take<std::string>(cfg, "filter", "mrc"));
    mc.threads = threads;
    const int stride = take<int>(cfg, "instant_stride", 1);
    if (mc.trials < 2 || stride < 1)
        config_error("trials >= 2 and instant_stride >= 1 required");
    const int j = in.set.cell;
    Table t{"rates_mc.csv",
            {"drop", "ue", "t", "norm2", "norm2_se", "gain", "gain_se", "second_own", "second_own_se", "interference",
             "distortion", "distortion_se", "sinr", "rate"},
            {}};
    for (std::size_t d = 0; d < in.set.drops.size(); ++d) {
        const Scenario &s = in.set.drops[d];
        const McRateResult r = mc_rate_detailed(s, in.hw, make_pilots(in.pilots, s), j, mc, stride);
        const int K = s.users();
        for (int k = 0; k < K; ++k)
            for (std::size_t i = 0; i < r.instants.size(); ++i) {
                const McMoments &m = r.moments[k][i];
                const SinrBreakdown b = sinr(m.as_moments(), s.powers(), j, k, in.hw.xi);
                const std::size_t own = static_cast<std::size_t>(j) * K + k;
                t.add({num(static_cast<int>(d)), num(k), num(r.instants[i]), num(m.norm2), num(m.norm2_se),
                       num(m.gain.real()), num(m.gain_se), num(m.second[own]), num(m.second_se[own]),
                       num(b.interference_total() - b.self_subtraction), num(m.distortion), num(m.distortion_se),
                       num(b.sinr), num(r.rates[k].rate)});
            }
    }
    Output out;
    out.tables.push_back(t);
    return out;
}

Output asymptotic(json &cfg, int threads)
{
    Single in = load_single(cfg, threads);
    const Scenario &first = in.set.drops.front();
    const std::string label = take<std::string>(cfg, "name", "asymptotic");
    const Grid antennas = parse_grid(cfg, "antennas", {100, 1000, 10000, 100000, 1000000});
    check_grid_divisible(antennas, first.subarrays());
    const PilotBook book0 = make_pilots(in.pilots, first);
    if (book0.data().empty())
        config_error("no data instants");
    const int t = take<int>(cfg, "t", book0.data().front());
    if (t < 1 || t > first.block_length())
        config_error("'t' outside 1..T");
    const int j = in.set.cell, T = first.block_length();
    const int D = static_cast<int>(in.set.drops.size());
    std::vector<ResultTable> parts(D);
    parallel_for(D, threads, [&](int d) {
        const Scenario &s = in.set.drops[d];
        const EstimatorCache cache(s, in.hw, make_pilots(in.pilots, s), j);
        ResultTable &tab = parts[d];
        for (int k = 0; k < s.users(); ++k) {
            const SinrPolynomial poly = sinr_polynomial(mrc_terms(cache, k, t), s.powers(), j, k, in.hw.xi);
            const ExtendedReal lim = poly.limit();
            tab.add_text(label, "inf", num(T), num(d), num(k), "sinr_limit", lim.to_string(), "0");
            for (int N : antennas) {
                const double v = poly.at(static_cast<double>(N / s.subarrays()));
                tab.add(label, num(N), num(T), num(d), num(k), "sinr", v);
                if (!lim.infinite)
                    tab.add(label, num(N), num(T), num(d), num(k), "deviation", std::abs(v - lim.value));
            }
            const double lr = limit_rate(mrc_sinr_trajectory(cache, k), T);
            tab.add_text(label, "inf", num(T), num(d), num(k), "rate_limit", format_number(lr), "0");
        }
    });
    ResultTable table;
    for (auto &p : parts)
        for (auto &r : p.table().rows)
            table.table().add(std::move(r));
    Output out;
    out.tables.push_back(table.table());
    return out;
}

Output circuit(json &cfg)
{
    const CircuitSpec spec = parse_circuit(section(cfg, "circuit"));
    const double sigma2 = take<double>(cfg, "sigma2", 1.0);
    if (sigma2 <= 0.0)
        config_error("sigma2 must be positive");
    json &sc = section(cfg, "scaling");
    const double z1 = take<double>(sc, "z1", 0.5), z2 = take<double>(sc, "z2", 0.5), z3 = take<double>(sc, "z3", 0.0);
    const Grid antennas = parse_grid(cfg, "antennas", {1, 4, 16, 64, 256, 1024});
    const double adc_power = take<double>(cfg, "adc_power", 1.0);
    if (z1 < 0.0 || z2 < 0.0 || z3 < 0.0)
        config_error("scaling exponents must be nonnegative");

    const HardwareProfile hw = circuit_profile(spec, sigma2);
    Table c{"circuit.csv", {"quantity", "value"}, {}};
    c.add({"kappa", num(std::sqrt(hw.kappa2))});
    c.add({"kappa2", num(hw.kappa2)});
    c.add({"xi", num(hw.xi)});
    c.add({"xi_over_sigma2", num(hw.xi / sigma2)});
    c.add({"delta", num(hw.delta)});
    c.add({"lo", to_string(hw.lo_mode)});

    std::vector<double> grid(antennas.begin(), antennas.end());
    Table p{"power.csv",
            {"N", "adc_bits", "adc_bits_deployable", "adc_power", "adc_total", "lna_noise_figure_db", "lna_power",
             "lna_total", "lo_power", "lo_total"},
            {}};
    double lna_ok = spec.lna.noise_factor > 1.0;
    if (!lna_ok)
        config_error("power report needs noise_figure_db > 0");
    for (const PowerRow &r : power_scaling_report(grid, z1, z2, z3, spec, adc_power))
        p.add({num(r.N), num(r.adc_bits), num(deployable_bits(r.adc_bits)), num(r.adc_power), num(r.adc_total),
               num(r.lna_noise_figure_db), num(r.lna_power), num(r.lna_total), num(r.lo_power), num(r.lo_total)});
    Output out;
    out.tables.push_back(c);
    out.tables.push_back(p);
    return out;
}

Output scenario_gen(json &cfg, int threads)
{
    json &sc = section(cfg, "scenario");
    if (!sc.contains("generate"))
        sc["generate"] = json::object();
    const std::uint64_t seed = seed_of(cfg);
    resolve_generator(cfg);
    const ScenarioSet set = load_scenarios(cfg, seed, threads);
    Table t{"drops.csv", {"drop", "ue", "power", "serving_gain"}, {}};
    for (std::size_t d = 0; d < set.drops.size(); ++d)
        for (int k = 0; k < set.drops[d].users(); ++k)
            t.add({num(static_cast<int>(d)), num(k), num(set.drops[d].power(set.cell, k)),
                   num(set.drops[d].mean_gain(set.cell, set.cell, k))});
    Output out;
    out.tables.push_back(t);
    out.files.emplace_back("scenario.json", to_json(set.drops).dump(1) + "\n");
    return out;
}

} // namespace

std::pair<double, double> mean_se(const std::vector<double> &v)
{
    const double m = mean_of(v);
    if (v.size() < 2)
        return {m, 0.0};
    CompensatedSum ss;
    for (double x : v)
        ss.add((x - m) * (x - m));
    const double n = static_cast<double>(v.size());
    return {m, std::sqrt(ss.value() / (n - 1.0) / n)};
}

std::vector<std::string> command_names()
{
    return {"scenario-gen", "estimate", "rates-cf", "rates-mc", "sweep-n", "rate-vs-n",
            "rate-vs-t",    "asymptotic", "scaling-law", "circuit"};
}

Output run_command(const std::string &command, json &cfg, int threads)
{
    if (!cfg.is_object())
        config_error("configuration must be a JSON object");
    if (command == "scenario-gen")
        return scenario_gen(cfg, threads);
    if (command == "estimate")
        return estimate(cfg, threads);
    if (command == "rates-cf")
        return rates_cf(cfg, threads);
    if (command == "rates-mc")
        return rates_mc(cfg, threads);
    if (command == "sweep-n" || command == "rate-vs-n")
        return rate_vs_n(cfg, threads, command);
    if (command == "rate-vs-t")
        return rate_vs_t(cfg, threads);
    if (command == "asymptotic")
        return asymptotic(cfg, threads);
    if (command == "scaling-law")
        return scaling_law(cfg, threads);
    if (command == "circuit")
        return circuit(cfg);
    config_error("unknown command '" + command + "'");
}

} // namespace hwmimo
