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

#include "core/circuits.hpp"

#include <doctest.h>

#include <cmath>

using namespace hwmimo;

TEST_CASE("ADC quantization impairments")
{
    const AdcImpairments a = adc_to_impairments(AdcSpec{6.0});
    CHECK(std::sqrt(a.kappa2) == doctest::Approx(0.0156).epsilon(0.01));
    CHECK(a.xi_scale == doctest::Approx(1.0 / (1.0 - std::pow(2.0, -12))));
    CHECK(adc_relaxation(1024.0, 0.5) == doctest::Approx(2.5));
    CHECK(deployable_bits(3.2) == 4);
    CHECK(deployable_bits(3.0) == 3);
}

TEST_CASE("circuit parameters map to the reference impairment triple")
{
    CircuitSpec c;
    c.adc.bits = 6;
    c.lna.noise_factor = std::pow(10.0, 0.2);
    c.lo = LoSpec{2e9, 1e-7, 1e-17, 1.0};
    const HardwareProfile hw = circuit_profile(c, 1.0);
    CHECK(std::sqrt(hw.kappa2) == doctest::Approx(0.0156).epsilon(0.01));
    CHECK(hw.xi == doctest::Approx(1.58).epsilon(0.01));
    CHECK(hw.delta == doctest::Approx(1.58e-4).epsilon(0.01));

    c.extra_kappa2 = 1e-3;
    CHECK(circuit_profile(c, 1.0).kappa2 == doctest::Approx(hw.kappa2 + 1e-3));
}

TEST_CASE("LNA power and noise figure relaxation")
{
    LnaSpec l{2.0, 10.0, 5.0};
    CHECK(l.power() == doctest::Approx(2.0));
    CHECK(lna_to_xi(l, 0.5, std::numeric_limits<double>::infinity()) == doctest::Approx(1.0));
    CHECK(noise_figure_relaxation_db(100.0, 0.5) == doctest::Approx(10.0));
}

TEST_CASE("power scaling slopes")
{
    CircuitSpec c;
    c.lna = LnaSpec{1.5, 10.0, 2.0};
    const std::vector<double> grid{1, 4, 16, 64, 256, 1024};
    const double z1 = 0.5, z2 = 0.3;
    const auto rows = power_scaling_report(grid, z1, z2, 0.0, c, 2.0);
    REQUIRE(rows.size() == grid.size());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double dn = std::log(rows[i].N / rows[i - 1].N);
        CHECK(std::log(rows[i].adc_total / rows[i - 1].adc_total) / dn == doctest::Approx(1 - z1).epsilon(1e-9));
        CHECK(std::log(rows[i].lna_total / rows[i - 1].lna_total) / dn == doctest::Approx(1 - z2).epsilon(1e-9));
        CHECK(rows[i].lo_total == doctest::Approx(rows[0].lo_total));
    }
    CHECK(rows[0].adc_power == doctest::Approx(2.0));
}

TEST_CASE("Bussgang rescale")
{
    const HardwareProfile hw{1e-3, 0.04, 2.0, LoMode::Common};
    const HardwareProfile r = bussgang_rescale(hw, cplx(0.0, 2.0));
    CHECK(r.kappa2 == doctest::Approx(0.01));
    CHECK(r.xi == doctest::Approx(0.5));
    CHECK(r.delta == hw.delta);
    const HardwareProfile back = bussgang_rescale(r, cplx(0.0, 0.5));
    CHECK(back.kappa2 == doctest::Approx(hw.kappa2));
    CHECK_THROWS_AS(bussgang_rescale(hw, 0.0), Error);
}
