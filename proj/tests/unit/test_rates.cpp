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

#include "core/rates.hpp"
#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace hwmimo;
using namespace hwmimo::testing;

namespace {

double moment_gap(const MrcMoments &a, const MrcMoments &b)
{
    double e = std::abs(a.norm2 - b.norm2) / b.norm2 + std::abs(a.gain - b.gain) / std::abs(b.gain);
    if (b.distortion > 0.0)
        e += std::abs(a.distortion - b.distortion) / b.distortion;
    for (std::size_t i = 0; i < b.second.size(); ++i)
        e += std::abs(a.second[i] - b.second[i]) / b.second[i];
    return e;
}

} // namespace

TEST_CASE("factorized, co-located and dense MRC moments agree")
{
    for (int lo = 0; lo < 2; ++lo)
        for (int A : {1, 2}) {
            CAPTURE(lo);
            CAPTURE(A);
            const HardwareProfile hw{1e-2, 0.01, 1.3, lo ? LoMode::Separate : LoMode::Common};
            const Small c = small_case(2, 2, 4, A, 20, 3, PilotBookKind::Dft, PlacementKind::Middle, hw, 7 + A);
            const EstimatorCache cache(c.scenario, hw, c.book, 0);
            const DenseEstimator dense(c.scenario, hw, c.book, 0);
            for (int t : {1, 5, 20}) {
                const MrcMoments m = mrc_moments(cache, 1, t);
                CHECK(moment_gap(m, mrc_moments_dense(dense, 1, t)) < 1e-10);
                if (A == 1)
                    CHECK(moment_gap(m, mrc_moments_colocated(cache, 1, t)) < 1e-10);
            }
        }
}

TEST_CASE("damping split reproduces direct evaluation outside the pilot span")
{
    const HardwareProfile hw{1e-2, 0.02, 1.1, LoMode::Separate};
    const Small c = small_case(2, 2, 4, 2, 30, 2, PilotBookKind::Dft, PlacementKind::Middle, hw, 12);
    const EstimatorCache cache(c.scenario, hw, c.book, 1);
    const int edge = c.book.tau().back();
    const DampingSplit split = mrc_terms_split(cache, 0, edge + 1);
    for (int t : {edge + 3, 30}) {
        const double alpha = std::exp(-0.5 * hw.delta * (t - edge - 1));
        const MomentTerms a = split.evaluate(alpha * alpha);
        const MomentTerms b = mrc_terms(cache, 0, t);
        CHECK(moment_gap(a.at(2.0), b.at(2.0)) < 1e-12);
    }
    const auto traj = mrc_terms_trajectory(cache, 0);
    REQUIRE(traj.size() == c.book.data().size());
    CHECK(moment_gap(traj.back().at(1.0), mrc_terms(cache, 0, 30).at(1.0)) < 1e-12);
}

TEST_CASE("moment polynomials match rebuilt scenarios of other sizes")
{
    const HardwareProfile hw{1e-3, 0.03, 1.2, LoMode::Common};
    const Small c = small_case(2, 2, 4, 2, 20, 2, PilotBookKind::Temporal, PlacementKind::Beginning, hw, 2);
    const EstimatorCache cache(c.scenario, hw, c.book, 0);
    const MomentTerms terms = mrc_terms(cache, 1, 9);
    for (int N : {2, 8, 24}) {
        const EstimatorCache other(c.scenario.with_antennas(N), hw, c.book, 0);
        CHECK(moment_gap(terms.at(N / 2.0), mrc_moments(other, 1, 9)) < 1e-10);
    }
}

TEST_CASE("ideal single-cell SINR equals the textbook expression")
{
    Scenario s(Dimensions{1, 3, 16, 1, 30}, 0.5);
    const std::vector<double> p{1.0, 2.0, 0.5}, lam{0.8, 0.3, 1.1};
    for (int k = 0; k < 3; ++k) {
        s.set_power(0, k, p[k]);
        s.set_gain(0, 0, k, 0, lam[k]);
    }
    for (auto kind : {PilotBookKind::Temporal, PilotBookKind::Dft}) {
        const PilotBook book = make_book(kind, s.powers(), place(PlacementKind::Beginning, 30, 3));
        const EstimatorCache cache(s, conventional_profile(0.5), book, 0);
        std::vector<double> energy;
        for (int k = 0; k < 3; ++k)
            energy.push_back(book.sequence(0, k).squaredNorm());
        for (int k = 0; k < 3; ++k) {
            const double got = sinr(mrc_moments(cache, k, 10), s.powers(), 0, k, 0.5).sinr;
            CHECK(got == doctest::Approx(oracle::ideal_mrc_sinr(16, p, lam, energy, k, 0.5)).epsilon(1e-10));
        }
    }
}

TEST_CASE("pilot contamination limit")
{
    Scenario s = random_scenario(3, 2, 10, 1, 20, 31);
    const PilotBook book = temporal_book(s.powers(), place(PlacementKind::Beginning, 20, 2));
    const EstimatorCache cache(s, conventional_profile(1.0), book, 1);
    for (int k = 0; k < 2; ++k) {
        const ExtendedReal lim = asymptotic_sinr(cache, k, 8);
        REQUIRE_FALSE(lim.infinite);
        CHECK(lim.value == doctest::Approx(oracle::contamination_limit(s, 1, k)).epsilon(1e-9));
        const SinrPolynomial poly = sinr_polynomial(mrc_terms(cache, k, 8), s.powers(), 1, k, 1.0);
        CHECK(poly.at(1e12) == doctest::Approx(lim.value).epsilon(1e-9));
    }
}

TEST_CASE("no contamination gives an infinite limit")
{
    Scenario s = random_scenario(1, 2, 4, 1, 20, 4);
    const PilotBook book = dft_book(s.powers(), place(PlacementKind::Beginning, 20, 2));
    const EstimatorCache cache(s, conventional_profile(1.0), book, 0);
    const ExtendedReal lim = asymptotic_sinr(cache, 0, 5);
    CHECK(lim.infinite);
    CHECK(lim.to_string() == "inf");
    CHECK(std::isinf(lim.as_double()));
}

TEST_CASE("LO modes coincide without drift")
{
    const Small c = small_case(2, 2, 4, 2, 20, 2, PilotBookKind::Dft, PlacementKind::Middle,
                               HardwareProfile{0.0, 0.02, 1.2, LoMode::Common}, 14);
    HardwareProfile slo = c.hw;
    slo.lo_mode = LoMode::Separate;
    const EstimatorCache a(c.scenario, c.hw, c.book, 0), b(c.scenario, slo, c.book, 0);
    for (int t : {1, 15})
        CHECK(sinr(mrc_moments(a, 0, t), c.scenario.powers(), 0, 0, 1.2).sinr ==
              doctest::Approx(sinr(mrc_moments(b, 0, t), c.scenario.powers(), 0, 0, 1.2).sinr).epsilon(1e-12));
}

TEST_CASE("rates over an N grid")
{
    const HardwareProfile hw{1e-4, 0.01, 1.2, LoMode::Common};
    const Small c = small_case(2, 2, 4, 2, 50, 2, PilotBookKind::Dft, PlacementKind::Beginning, hw, 6);
    const EstimatorCache cache(c.scenario, hw, c.book, 0);
    const std::vector<int> grid{4, 8, 64};
    const auto r = mrc_rates(cache, grid);
    REQUIRE(r.size() == 3);
    CHECK(r[0][1].rate == doctest::Approx(mrc_rates(cache)[1].rate).epsilon(1e-12));
    CHECK(r[2][0].rate > r[0][0].rate);
    CHECK(r[0][0].sinr.size() == 48);

    const std::vector<double> flat(48, 1.0);
    CHECK(ergodic_rate(flat, 50, 2) == doctest::Approx(48.0 / 50.0));
    CHECK_THROWS_AS(ergodic_rate(flat, 50, 3), Error);
}

TEST_CASE("scaling law verdicts")
{
    const std::vector<int> tau{1, 2};
    ScalingExponents e;
    e.z1 = 0.5;
    e.z2 = 0.5;
    CHECK(check_scaling_law(e, LoMode::Common, 10, tau).satisfied);
    e.z1 = 0.6;
    CHECK_FALSE(check_scaling_law(e, LoMode::Common, 10, tau).satisfied);
    e.z1 = 0.2;
    e.z3 = 0.1;
    CHECK_FALSE(check_scaling_law(e, LoMode::Common, 10, tau).satisfied);
    e.delta_0 = 1e-3;
    e.z3 = 10.0;
    e.z1 = 0.4;
    e.z2 = 0.4;
    CHECK(check_scaling_law(e, LoMode::Separate, 10, tau).satisfied);
    e.z3 = 200.0;
    CHECK_FALSE(check_scaling_law(e, LoMode::Separate, 10, tau).satisfied);

    ScalingExponents s{0.5, 0.25, 1.0, 0.01, 2.0, 1e-4};
    const HardwareProfile hw = scaled_profile(s, LoMode::Separate, 16.0, 1.0);
    CHECK(hw.kappa2 == doctest::Approx(0.04));
    CHECK(hw.xi == doctest::Approx(4.0));
    CHECK(hw.delta == doctest::Approx(1e-4 * (1 + std::log(16.0))));
}
