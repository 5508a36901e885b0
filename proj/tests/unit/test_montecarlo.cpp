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

#include "core/montecarlo.hpp"
#include "../support/fixtures.hpp"

#include <doctest.h>

#include <cmath>

using namespace hwmimo;
using namespace hwmimo::testing;

TEST_CASE("Monte Carlo MRC moments match the closed form")
{
    const HardwareProfile hw{1e-2, 0.01, 1.3, LoMode::Separate};
    const Small c = small_case(2, 2, 4, 2, 20, 3, PilotBookKind::Dft, PlacementKind::Middle, hw, 9);
    const EstimatorCache cache(c.scenario, hw, c.book, 0);
    McConfig mc;
    mc.trials = 20000;
    mc.seed = 4;
    const McMoments m = estimate_moments(c.scenario, hw, c.book, 0, 1, 20, mc);
    const MrcMoments cf = mrc_moments(cache, 1, 20);
    CHECK(std::abs(m.norm2 - cf.norm2) <= std::max(0.03 * cf.norm2, 4 * m.norm2_se));
    CHECK(std::abs(m.gain - cf.gain) <= std::max(0.03 * std::abs(cf.gain), 4 * m.gain_se));
    CHECK(std::abs(m.distortion - cf.distortion) <= std::max(0.03 * cf.distortion, 4 * m.distortion_se));
    for (std::size_t i = 0; i < cf.second.size(); ++i)
        CHECK(std::abs(m.second[i] - cf.second[i]) <= std::max(0.03 * cf.second[i], 4 * m.second_se[i]));
}

TEST_CASE("results do not depend on the thread count")
{
    const HardwareProfile hw{1e-3, 0.02, 1.1, LoMode::Common};
    const Small c = small_case(2, 2, 4, 1, 10, 2, PilotBookKind::Temporal, PlacementKind::Beginning, hw, 1);
    McConfig mc;
    mc.trials = 2000;
    mc.threads = 1;
    const auto a = mc_rate_detailed(c.scenario, hw, c.book, 1, mc);
    mc.threads = 4;
    const auto b = mc_rate_detailed(c.scenario, hw, c.book, 1, mc);
    for (int k = 0; k < 2; ++k) {
        CHECK(a.rates[k].rate == b.rates[k].rate);
        CHECK(a.moments[k].back().second == b.moments[k].back().second);
    }
    mc.seed = 2;
    CHECK(mc_rate_detailed(c.scenario, hw, c.book, 1, mc).rates[0].rate != a.rates[0].rate);
}

TEST_CASE("MMSE filter")
{
    MatrixR p(1, 2);
    p << 1.0, 2.0;
    std::vector<VectorC> h{VectorC::Random(3), VectorC::Random(3)};
    std::vector<VectorR> e{VectorR::Zero(3), VectorR::Zero(3)};
    const HardwareProfile hw{0.0, 0.0, 0.5, LoMode::Common};
    const VectorC v = mmse_filter(h, e, p, hw, 0, 1);
    MatrixC a = 0.5 * MatrixC::Identity(3, 3) + h[0] * h[0].adjoint() + 2.0 * h[1] * h[1].adjoint();
    CHECK((a * v - h[1]).norm() < 1e-12);

    const HardwareProfile imp{0.0, 0.1, 0.5, LoMode::Common};
    e[0].setConstant(0.3);
    const VectorC w = mmse_filter(h, e, p, imp, 0, 0);
    MatrixC g0 = h[0] * h[0].adjoint();
    g0.diagonal().array() += 0.3;
    const MatrixC g1 = h[1] * h[1].adjoint();
    MatrixC b = g0 + 2.0 * g1;
    b.diagonal() += 0.1 * b.diagonal();
    b.diagonal().array() += 0.5;
    CHECK((b * w - h[0]).norm() < 1e-12);
}

TEST_CASE("MMSE beats MRC with strong interference")
{
    const HardwareProfile hw{0.0, 0.0, 1.0, LoMode::Common};
    Small c = small_case(1, 3, 8, 1, 6, 3, PilotBookKind::Dft, PlacementKind::Beginning, hw, 3);
    c.scenario.set_gain(0, 0, 1, 0, 20.0);
    c.scenario.set_gain(0, 0, 2, 0, 20.0);
    McConfig mc;
    mc.trials = 4000;
    const double mrc = mc_rate(c.scenario, hw, c.book, 0, mc)[0].rate;
    mc.filter = ReceiveFilter::Mmse;
    const double mmse = mc_rate(c.scenario, hw, c.book, 0, mc)[0].rate;
    CHECK(mmse > mrc);
}

TEST_CASE("simulated estimation error matches the trace of C")
{
    const HardwareProfile hw{5e-3, 0.02, 1.2, LoMode::Common};
    const Small c = small_case(2, 2, 4, 2, 20, 2, PilotBookKind::Dft, PlacementKind::Beginning, hw, 22);
    const EstimatorCache cache(c.scenario, hw, c.book, 1);
    McConfig mc;
    mc.trials = 20000;
    const std::vector<int> t{5, 20};
    const EstimationCheck r = simulate_estimation(c.scenario, hw, c.book, 1, 0, 1, t, mc);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double cf = error_covariance(cache, 0, 1, t[i]).mse;
        CHECK(std::abs(r.mse[i] - cf) <= std::max(0.03 * cf, 4 * r.mse_se[i]));
    }
    CHECK(r.max_correlation < 5.0 / std::sqrt(20000.0));
}

TEST_CASE("instant stride approximates the full rate")
{
    const HardwareProfile hw{1e-3, 0.01, 1.2, LoMode::Separate};
    const Small c = small_case(1, 2, 4, 1, 40, 2, PilotBookKind::Dft, PlacementKind::Beginning, hw, 2);
    McConfig mc;
    mc.trials = 4000;
    const auto full = mc_rate_detailed(c.scenario, hw, c.book, 0, mc, 1);
    const auto thin = mc_rate_detailed(c.scenario, hw, c.book, 0, mc, 5);
    CHECK(thin.instants.size() < full.instants.size());
    CHECK(thin.rates[0].rate == doctest::Approx(full.rates[0].rate).epsilon(0.05));
}
