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

#include "core/model.hpp"

#include <doctest.h>

using namespace hwmimo;

TEST_CASE("expand_covariance repeats each group N/A times")
{
    const std::vector<double> g{1.0, 2.0};
    const VectorR v = expand_covariance(g, 6);
    CHECK(v.size() == 6);
    CHECK(v(0) == 1.0);
    CHECK(v(2) == 1.0);
    CHECK(v(3) == 2.0);
    CHECK(v(5) == 2.0);
    CHECK_THROWS_AS(expand_covariance(g, 5), Error);
}

TEST_CASE("scenario gains round trip and derived views")
{
    Scenario s(Dimensions{2, 2, 8, 4, 20}, 1.0);
    s.set_gain(1, 0, 1, 3, 0.25);
    CHECK(s.gains(1, 0, 1)[3] == 0.25);
    CHECK(s.covariance(1, 0, 1)(7) == 0.25);
    CHECK(s.covariance(1, 0, 1)(5) == 0.0);
    CHECK(s.mean_gain(1, 0, 1) == doctest::Approx(0.0625));

    const Scenario big = s.with_antennas(400);
    CHECK(big.antennas() == 400);
    CHECK(big.gains(1, 0, 1)[3] == 0.25);

    const Scenario flat = s.unfactorized();
    CHECK(flat.subarrays() == 8);
    CHECK(flat.covariance(1, 0, 1) == s.covariance(1, 0, 1));
}

TEST_CASE("validation reports each violated constraint")
{
    Scenario s(Dimensions{1, 2, 6, 4, 10}, 1.0);
    const ValidationReport r = validate(s, conventional_profile(1.0));
    CHECK_FALSE(r.ok());
    CHECK(r.has("A must divide N"));

    Scenario ok(Dimensions{1, 1, 4, 2, 10}, 1.0);
    ok.set_gain(0, 0, 0, 0, 1.0);
    ok.set_gain(0, 0, 0, 1, 1.0);
    CHECK(validate(ok, conventional_profile(1.0)).ok());

    HardwareProfile bad{0.0, 0.0, 0.5, LoMode::Common};
    CHECK(validate(ok, bad).has("xi below sigma2"));
    HardwareProfile neg{-1.0, 0.0, 1.0, LoMode::Common};
    CHECK(validate(ok, neg).has("delta negative"));
}

TEST_CASE("noise figure conversions")
{
    const NoiseFigure f = NoiseFigure::from_db(2.0);
    CHECK(f.factor == doctest::Approx(1.5849).epsilon(1e-4));
    CHECK(f.db() == doctest::Approx(2.0));
    CHECK(f.xi(2.0) == doctest::Approx(2.0 * f.factor));
}
