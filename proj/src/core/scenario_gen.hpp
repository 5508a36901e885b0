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

#include "core/model.hpp"

#include <cstdint>
#include <vector>

namespace hwmimo {

enum class Deployment
{
    CoLocated,   // N antennas at the cell center
    Distributed, // 4 arrays of N/4 antennas, one per cell quadrant
};

struct Point
{
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point &a, const Point &b);

struct LayoutConfig
{
    int grid = 5;             // cells per side
    double cell_size = 250.0; // meters
    double array_offset = 62.5;
    int sectors = 8;
    double min_distance = 25.0;
};

struct NetworkLayout
{
    Deployment deployment = Deployment::CoLocated;
    int antennas = 0;
    LayoutConfig config;
    std::vector<Point> centers;             // per cell, row-major over the grid
    std::vector<std::vector<Point>> arrays; // per cell

    int cells() const { return static_cast<int>(centers.size()); }
    int center_cell() const { return (config.grid / 2) * config.grid + config.grid / 2; }
    int subarrays() const { return deployment == Deployment::CoLocated ? 1 : 4; }
};

NetworkLayout build_layout(Deployment deployment, int N, const LayoutConfig &config = {});

/// One UE per sector in every cell; UE k sits in sector k and uses pilot k.
struct UeDrop
{
    std::vector<std::vector<Point>> ues; // [cell][sector]
};

UeDrop drop_users(const NetworkLayout &layout, std::uint64_t seed, std::uint64_t drop_index = 0);

enum class ShadowUnit
{
    Decibel, // 10 s ~ N(0, shadow_variance), variance in dB^2
    Decade,  // s ~ N(0, shadow_variance) directly in the exponent
};

/// lambda = 10^{s + offset} / d^exponent with Gaussian shadowing s.
struct PathLossModel
{
    double offset = -1.53;
    double exponent = 3.76;
    double shadow_variance = 3.16;
    ShadowUnit shadow_unit = ShadowUnit::Decibel;

    /// Standard deviation of s in the exponent.
    double shadow_sd() const;
};

/// Attenuations of every link. Shadowing is shared by co-located antennas
/// and independent across distributed arrays. Powers are left at zero.
Scenario link_gains(const NetworkLayout &layout, const UeDrop &drop, std::uint64_t seed, std::uint64_t drop_index,
                    const PathLossModel &model, double sigma2, int block_length);

/// p_jk = rho / ((1/N) sum_n lambda_jjk^(n)) for every UE.
void power_control(Scenario &scenario, double rho);

struct DropConfig
{
    Deployment deployment = Deployment::CoLocated;
    int antennas = 100;
    int block_length = 500;
    double snr_db = 5.0; // rho / sigma2
    double sigma2 = 1.0;
    LayoutConfig layout;
    PathLossModel path_loss;
};

/// Layout, drop, gains and power control in one call.
Scenario generate_scenario(const DropConfig &config, std::uint64_t seed, std::uint64_t drop_index);

} // namespace hwmimo
