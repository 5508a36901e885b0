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
#include "core/pilots.hpp"
#include "core/rng.hpp"

#include <cstdint>
#include <vector>

namespace hwmimo {

/// E{exp(i(phi(t1) - phi(t2)))} for a Wiener phase with innovation variance delta.
double phase_correlation(double delta, double dt);

/// Channels seen by one base station j: entry l*K + k holds h_jlk ~ CN(0, Lambda_jlk).
struct ChannelRealization
{
    int cell = 0;
    int users = 0;
    std::vector<VectorC> h;

    const VectorC &link(int l, int k) const { return h[static_cast<std::size_t>(l) * users + k]; }
};

ChannelRealization draw_channels(const Scenario &scenario, int j, Stream &stream);

/// Phase-drift trajectories of one array, columns t = 0..T.
///
/// With a common LO there is a single row shared by all antennas; with
/// separate LOs there is one row per antenna.
struct PhaseTrajectories
{
    LoMode mode = LoMode::Common;
    double delta = 0.0;
    MatrixR phi;

    double at(int n, int t) const { return mode == LoMode::Common ? phi(0, t) : phi(n, t); }
    int oscillators() const { return static_cast<int>(phi.rows()); }
};

/// phi(0) ~ U[0, 2pi) and phi(t) = phi(t-1) + N(0, delta) for t = 1..last_t.
PhaseTrajectories draw_phases(int N, int last_t, const HardwareProfile &hw, Stream &stream);

/// One coherence block received in cell j, with the latent draws kept for
/// diagnostics. Column t-1 of each matrix belongs to channel use t.
struct ReceivedBlock
{
    int cell = 0;
    MatrixC y;
    MatrixC distortion;
    MatrixC noise;
    MatrixC symbols; // row l*K + k, column t-1
    ChannelRealization channels;
    PhaseTrajectories phases;
};

/// Draws a block from the impaired model
/// y_j(t) = D_phi(t) sum_l H_jl x_l(t) + upsilon_j(t) + eta_j(t).
///
/// Data symbols are CN(0, p_lk) unless supplied (rows l*K + k, T columns;
/// entries at pilot instants are ignored and replaced by the pilot book).
ReceivedBlock draw_block(const Scenario &scenario, const HardwareProfile &hw, const PilotBook &book,
                         int j, std::uint64_t seed, std::uint64_t block_index = 0,
                         const MatrixC *data_symbols = nullptr);

/// psi_j = [y_j(tau_1)^T ... y_j(tau_B)^T]^T
VectorC stack_pilot_observation(const ReceivedBlock &block, const std::vector<int> &tau);

} // namespace hwmimo
