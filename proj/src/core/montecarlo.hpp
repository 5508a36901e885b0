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

#include "core/rates.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace hwmimo {

enum class ReceiveFilter
{
    Mrc,
    Mmse,
};

struct McConfig
{
    long trials = 10000;
    std::uint64_t seed = 1;
    ReceiveFilter filter = ReceiveFilter::Mrc;
    int batches = 100;
    int threads = 1;
};

/// Sample means of the expectations entering the SINR, with batch-means
/// standard errors.
struct McMoments
{
    int cells = 0;
    int users = 0;
    long trials = 0;
    double norm2 = 0.0;
    double norm2_se = 0.0;
    cplx gain;
    double gain_se = 0.0;
    std::vector<double> second;
    std::vector<double> second_se;
    double distortion = 0.0;
    double distortion_se = 0.0;

    /// Same layout as the closed form, for SINR assembly.
    MrcMoments as_moments() const;
};

/// Approximate MMSE filter
/// v = (sum p_lm (G_lm + kappa2 diag(G_lm)) + xi I)^{-1} h-hat_jjk,
/// G_lm = h-hat_jlm h-hat_jlm^H + C_jlm. Inputs are indexed l*K + m.
VectorC mmse_filter(std::span<const VectorC> estimates, std::span<const VectorR> errors, const MatrixR &powers,
                    const HardwareProfile &hw, int j, int k);

/// Moments for UE k of cell j at channel use t.
McMoments estimate_moments(const Scenario &scenario, const HardwareProfile &hw, const PilotBook &book, int j, int k,
                           int t, const McConfig &mc);

/// Moments for several UEs and instants from one set of trials; result[u][i]
/// belongs to ues[u] and instants[i].
std::vector<std::vector<McMoments>> estimate_moments(const Scenario &scenario, const HardwareProfile &hw,
                                                     const PilotBook &book, int j, std::span<const int> ues,
                                                     std::span<const int> instants, const McConfig &mc);

struct EstimationCheck
{
    long trials = 0;
    std::vector<int> instants;
    std::vector<double> mse;    // E{||h_jlk(t) - h-hat_jlk(t)||^2}
    std::vector<double> mse_se;
    /// Largest normalized sample correlation |E{e_n psi_i^*}| over all
    /// antennas n and observation entries i, at the first instant.
    double max_correlation = 0.0;
};

/// Simulates LMMSE estimation of h_jlk(t) = D_phi(t) h_jlk at the given instants.
EstimationCheck simulate_estimation(const Scenario &scenario, const HardwareProfile &hw, const PilotBook &book, int j,
                                    int l, int k, std::span<const int> instants, const McConfig &mc);

struct McRateResult
{
    std::vector<int> instants;                 // simulated channel uses
    std::vector<std::vector<McMoments>> moments; // [ue][instant]
    std::vector<RateReport> rates;
};

McRateResult mc_rate_detailed(const Scenario &scenario, const HardwareProfile &hw, const PilotBook &book, int j,
                              const McConfig &mc, int instant_stride = 1);

/// Simulated rates of every UE in cell j. With drift, a stride above one
/// simulates every stride-th data instant and averages the rate over those.
std::vector<RateReport> mc_rate(const Scenario &scenario, const HardwareProfile &hw, const PilotBook &book, int j,
                                const McConfig &mc, int instant_stride = 1);

} // namespace hwmimo
