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

#include "core/scenario_gen.hpp"

#include "core/rng.hpp"

#include <cmath>
#include <numbers>

namespace hwmimo {

double distance(const Point &a, const Point &b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

double PathLossModel::shadow_sd() const
{
    require(shadow_variance >= 0.0, "shadow variance negative");
    const double sd = std::sqrt(shadow_variance);
    return shadow_unit == ShadowUnit::Decibel ? sd / 10.0 : sd;
}

NetworkLayout build_layout(Deployment deployment, int N, const LayoutConfig &config)
{
    require(config.grid >= 1, "grid must have at least one cell");
    require(config.cell_size > 0.0, "cell size must be positive");
    require(config.sectors >= 1, "need at least one sector");
    require(N >= 1, "N must be positive");
    if (deployment == Deployment::Distributed) {
        require(N % 4 == 0, "distributed deployment needs 4 | N");
        require(config.array_offset > 0.0 && config.array_offset < config.cell_size / 2.0,
                "arrays must lie inside their cell");
    }

    NetworkLayout layout;
    layout.deployment = deployment;
    layout.antennas = N;
    layout.config = config;
    const double half = (config.grid - 1) / 2.0;
    for (int row = 0; row < config.grid; ++row)
        for (int col = 0; col < config.grid; ++col) {
            Point c{(col - half) * config.cell_size, (row - half) * config.cell_size};
            layout.centers.push_back(c);
            if (deployment == Deployment::CoLocated) {
                layout.arrays.push_back({c});
            } else {
                const double o = config.array_offset;
                layout.arrays.push_back({{c.x + o, c.y + o}, {c.x - o, c.y + o}, {c.x - o, c.y - o}, {c.x + o, c.y - o}});
            }
        }
    return layout;
}

UeDrop drop_users(const NetworkLayout &layout, std::uint64_t seed, std::uint64_t drop_index)
{
    const LayoutConfig &cfg = layout.config;
    const double half = cfg.cell_size / 2.0;
    const double wedge = 2.0 * std::numbers::pi / cfg.sectors;
    UeDrop drop;
    drop.ues.resize(layout.cells());
    for (int c = 0; c < layout.cells(); ++c) {
        Stream stream(seed, stream_id(drop_index, static_cast<std::uint64_t>(c)), StreamPurpose::UserDrop);
        const Point &center = layout.centers[c];
        for (int s = 0; s < cfg.sectors; ++s) {
            for (;;) {
                const double dx = (2.0 * stream.uniform() - 1.0) * half;
                const double dy = (2.0 * stream.uniform() - 1.0) * half;
                double angle = std::atan2(dy, dx);
                if (angle < 0.0)
                    angle += 2.0 * std::numbers::pi;
                if (static_cast<int>(angle / wedge) != s)
                    continue;
                const Point p{center.x + dx, center.y + dy};
                bool far = true;
                for (const Point &a : layout.arrays[c])
                    far = far && distance(p, a) >= cfg.min_distance;
                if (far) {
                    drop.ues[c].push_back(p);
                    break;
                }
            }
        }
    }
    return drop;
}

Scenario link_gains(const NetworkLayout &layout, const UeDrop &drop, std::uint64_t seed, std::uint64_t drop_index,
                    const PathLossModel &model, double sigma2, int block_length)
{
    const int L = layout.cells();
    require(static_cast<int>(drop.ues.size()) == L, "drop does not match layout");
    const int K = static_cast<int>(drop.ues.front().size());
    const int A = layout.subarrays();
    Scenario s(Dimensions{L, K, layout.antennas, A, block_length}, sigma2);
    const double sd = model.shadow_sd();
    for (int j = 0; j < L; ++j)
        for (int l = 0; l < L; ++l) {
            Stream stream(seed, stream_id(drop_index, static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(l)),
                          StreamPurpose::Shadowing);
            for (int k = 0; k < K; ++k)
                for (int a = 0; a < A; ++a) {
                    const double d = distance(layout.arrays[j][a], drop.ues[l][k]);
                    require(d > 0.0, "UE placed on an array");
                    const double shadow = sd * stream.normal();
                    s.set_gain(j, l, k, a, std::pow(10.0, shadow + model.offset) / std::pow(d, model.exponent));
                }
        }
    return s;
}

void power_control(Scenario &s, double rho)
{
    require(rho > 0.0, "rho must be positive");
    for (int l = 0; l < s.cells(); ++l)
        for (int k = 0; k < s.users(); ++k) {
            const double g = s.mean_gain(l, l, k);
            require(g > 0.0, "power control needs a positive serving gain");
            s.set_power(l, k, rho / g);
        }
}

Scenario generate_scenario(const DropConfig &cfg, std::uint64_t seed, std::uint64_t drop_index)
{
    const NetworkLayout layout = build_layout(cfg.deployment, cfg.antennas, cfg.layout);
    const UeDrop drop = drop_users(layout, seed, drop_index);
    Scenario s = link_gains(layout, drop, seed, drop_index, cfg.path_loss, cfg.sigma2, cfg.block_length);
    power_control(s, cfg.sigma2 * std::pow(10.0, cfg.snr_db / 10.0));
    return s;
}

} // namespace hwmimo
