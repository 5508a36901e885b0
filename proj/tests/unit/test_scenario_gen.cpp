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

#include <doctest.h>

#include <cmath>

using namespace hwmimo;

TEST_CASE("layouts")
{
    const NetworkLayout co = build_layout(Deployment::CoLocated, 100);
    CHECK(co.cells() == 25);
    CHECK(co.center_cell() == 12);
    CHECK(co.arrays[12].size() == 1);
    CHECK(distance(co.centers[12], co.arrays[12][0]) == 0.0);
    CHECK(distance(co.centers[0], co.centers[1]) == doctest::Approx(250.0));

    const NetworkLayout di = build_layout(Deployment::Distributed, 100);
    CHECK(di.arrays[7].size() == 4);
    for (const Point &p : di.arrays[7]) {
        CHECK(std::abs(p.x - di.centers[7].x) == doctest::Approx(62.5));
        CHECK(std::abs(p.y - di.centers[7].y) == doctest::Approx(62.5));
    }
    CHECK_THROWS_AS(build_layout(Deployment::Distributed, 10), Error);
}

TEST_CASE("UE drops respect sectors and the minimum distance")
{
    const NetworkLayout di = build_layout(Deployment::Distributed, 8);
    const UeDrop d = drop_users(di, 3, 0);
    REQUIRE(d.ues.size() == 25);
    for (int c = 0; c < 25; ++c) {
        REQUIRE(d.ues[c].size() == 8);
        for (int s = 0; s < 8; ++s) {
            const Point &u = d.ues[c][s];
            for (const Point &a : di.arrays[c])
                CHECK(distance(u, a) >= 25.0);
            CHECK(std::abs(u.x - di.centers[c].x) <= 125.0);
            CHECK(std::abs(u.y - di.centers[c].y) <= 125.0);
            double ang = std::atan2(u.y - di.centers[c].y, u.x - di.centers[c].x);
            if (ang < 0)
                ang += 2 * M_PI;
            CHECK(static_cast<int>(ang / (M_PI / 4)) == s);
        }
    }
    const UeDrop same = drop_users(di, 3, 0), other = drop_users(di, 3, 1);
    CHECK(same.ues[4][2].x == d.ues[4][2].x);
    CHECK(other.ues[4][2].x != d.ues[4][2].x);
}

TEST_CASE("path loss without shadowing")
{
    LayoutConfig cfg;
    const NetworkLayout co = build_layout(Deployment::CoLocated, 4, cfg);
    UeDrop d = drop_users(co, 1, 0);
    d.ues[12][0] = Point{co.centers[12].x + 100.0, co.centers[12].y};
    PathLossModel m;
    m.shadow_variance = 0.0;
    const Scenario s = link_gains(co, d, 1, 0, m, 1.0, 50);
    CHECK(s.gains(12, 12, 0)[0] == doctest::Approx(std::pow(10.0, -1.53) / std::pow(100.0, 3.76)).epsilon(1e-12));
    d.ues[12][0] = Point{co.centers[12].x + 200.0, co.centers[12].y};
    const Scenario s2 = link_gains(co, d, 1, 0, m, 1.0, 50);
    CHECK(s.gains(12, 12, 0)[0] / s2.gains(12, 12, 0)[0] == doctest::Approx(std::pow(2.0, 3.76)));
}

TEST_CASE("shadowing units")
{
    PathLossModel m;
    m.shadow_variance = 4.0;
    m.shadow_unit = ShadowUnit::Decade;
    CHECK(m.shadow_sd() == doctest::Approx(2.0));
    m.shadow_unit = ShadowUnit::Decibel;
    CHECK(m.shadow_sd() == doctest::Approx(0.2));
}

TEST_CASE("shadowing is shared within a co-located array and independent across distributed arrays")
{
    const NetworkLayout di = build_layout(Deployment::Distributed, 8);
    UeDrop d = drop_users(di, 2, 0);
    const Scenario s = link_gains(di, d, 2, 0, PathLossModel{}, 1.0, 50);
    CHECK(s.subarrays() == 4);
    const auto g = s.gains(12, 12, 3);
    CHECK(g[0] != g[1]);
    const NetworkLayout co = build_layout(Deployment::CoLocated, 8);
    CHECK(link_gains(co, drop_users(co, 2, 0), 2, 0, PathLossModel{}, 1.0, 50).subarrays() == 1);
}

TEST_CASE("statistical power control")
{
    Scenario s(Dimensions{1, 2, 4, 2, 10}, 1.0);
    s.set_gain(0, 0, 0, 0, 0.5);
    s.set_gain(0, 0, 0, 1, 0.5);
    s.set_gain(0, 0, 1, 0, 0.2);
    s.set_gain(0, 0, 1, 1, 0.6);
    power_control(s, 0.5);
    CHECK(s.power(0, 0) == doctest::Approx(1.0));
    CHECK(s.power(0, 1) == doctest::Approx(1.25));
    s.set_gain(0, 0, 1, 0, 0.0);
    s.set_gain(0, 0, 1, 1, 0.0);
    CHECK_THROWS_AS(power_control(s, 0.5), Error);
}

TEST_CASE("serving gain dominates and distributed arrays are closer")
{
    DropConfig co, di;
    co.antennas = di.antennas = 8;
    di.deployment = Deployment::Distributed;
    double serve = 0.0, interf = 0.0;
    int closer = 0;
    const int drops = 500;
    for (int d = 0; d < drops; ++d) {
        const Scenario a = generate_scenario(co, 11, d);
        const Scenario b = generate_scenario(di, 11, d);
        serve += a.mean_gain(12, 12, 0);
        interf += a.mean_gain(12, 13, 0);
        double best_co = a.gains(12, 12, 1)[0], best_di = 0.0;
        for (double g : b.gains(12, 12, 1))
            best_di = std::max(best_di, g);
        closer += best_di > best_co;
    }
    CHECK(serve > interf);
    CHECK(closer > drops / 2);
}

TEST_CASE("generated scenario")
{
    DropConfig cfg;
    cfg.antennas = 16;
    cfg.snr_db = 15.0;
    const Scenario s = generate_scenario(cfg, 5, 2);
    CHECK(s.cells() == 25);
    CHECK(s.users() == 8);
    CHECK(s.block_length() == 500);
    for (int k = 0; k < 8; ++k)
        CHECK(s.power(12, k) * s.mean_gain(12, 12, k) == doctest::Approx(std::pow(10.0, 1.5)));
    CHECK(generate_scenario(cfg, 5, 2) == s);
}
