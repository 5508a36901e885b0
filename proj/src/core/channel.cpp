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

#include "core/channel.hpp"

#include <cmath>
#include <numbers>

namespace hwmimo {

double phase_correlation(double delta, double dt)
{
    require(delta >= 0.0, "delta must be nonnegative");
    return std::exp(-0.5 * delta * std::abs(dt));
}

ChannelRealization draw_channels(const Scenario &s, int j, Stream &stream)
{
    const int L = s.cells(), K = s.users(), N = s.antennas(), A = s.subarrays();
    const int per = N / A;
    ChannelRealization out;
    out.cell = j;
    out.users = K;
    out.h.resize(static_cast<std::size_t>(L) * K);
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < K; ++k)
        {
            auto g = s.gains(j, l, k);
            VectorC h(N);
            for (int n = 0; n < N; ++n)
                h(n) = stream.complex_normal(g[n / per]);
            out.h[static_cast<std::size_t>(l) * K + k] = std::move(h);
        }
    return out;
}

PhaseTrajectories draw_phases(int N, int last_t, const HardwareProfile &hw, Stream &stream)
{
    PhaseTrajectories p;
    p.mode = hw.lo_mode;
    p.delta = hw.delta;
    const int rows = hw.lo_mode == LoMode::Common ? 1 : N;
    p.phi.resize(rows, last_t + 1);
    const double sd = std::sqrt(hw.delta);
    for (int n = 0; n < rows; ++n)
    {
        double phi = 2.0 * std::numbers::pi * stream.uniform();
        p.phi(n, 0) = phi;
        for (int t = 1; t <= last_t; ++t)
        {
            phi += sd * stream.normal();
            p.phi(n, t) = phi;
        }
    }
    return p;
}

ReceivedBlock draw_block(const Scenario &s, const HardwareProfile &hw, const PilotBook &book, int j,
                         std::uint64_t seed, std::uint64_t block_index, const MatrixC *data_symbols)
{
    const int L = s.cells(), K = s.users(), N = s.antennas(), T = s.block_length();
    require(N % s.subarrays() == 0, "A must divide N");
    require(j >= 0 && j < L, "cell index out of range");
    require(book.cells() == L && book.users() == K, "pilot book does not match the scenario");
    require(book.placement().block_length == T, "pilot placement does not match the block length");
    if (data_symbols)
        require(data_symbols->rows() == L * K && data_symbols->cols() == T,
                "data symbols must be (L*K) x T");

    const std::uint64_t id = stream_id(block_index, static_cast<std::uint64_t>(j));
    Stream ch_stream(seed, id, StreamPurpose::Channel);
    Stream ph_stream(seed, id, StreamPurpose::Phase);
    Stream dist_stream(seed, id, StreamPurpose::Distortion);
    Stream noise_stream(seed, id, StreamPurpose::ReceiverNoise);
    Stream data_stream(seed, id, StreamPurpose::DataSymbols);

    ReceivedBlock blk;
    blk.cell = j;
    blk.channels = draw_channels(s, j, ch_stream);
    blk.phases = draw_phases(N, T, hw, ph_stream);

    // transmitted symbols and their expected energies
    blk.symbols.resize(L * K, T);
    MatrixR energy(L * K, T);
    for (int t = 1; t <= T; ++t)
        for (int l = 0; l < L; ++l)
            for (int k = 0; k < K; ++k)
            {
                const int row = l * K + k;
                if (book.is_pilot(t))
                {
                    const cplx x = book.symbol(l, k, t);
                    blk.symbols(row, t - 1) = x;
                    energy(row, t - 1) = std::norm(x);
                }
                else
                {
                    blk.symbols(row, t - 1) = data_symbols ? (*data_symbols)(row, t - 1)
                                                           : data_stream.complex_normal(s.power(l, k));
                    energy(row, t - 1) = s.power(l, k);
                }
            }

    blk.y.resize(N, T);
    blk.distortion.resize(N, T);
    blk.noise.resize(N, T);
    for (int t = 1; t <= T; ++t)
    {
        VectorC rx = VectorC::Zero(N);
        VectorR power = VectorR::Zero(N);
        for (int l = 0; l < L; ++l)
            for (int k = 0; k < K; ++k)
            {
                const VectorC &h = blk.channels.link(l, k);
                rx += h * blk.symbols(l * K + k, t - 1);
                power += energy(l * K + k, t - 1) * h.cwiseAbs2();
            }
        for (int n = 0; n < N; ++n)
        {
            const cplx rot = std::polar(1.0, blk.phases.at(n, t));
            const cplx ups = dist_stream.complex_normal(hw.kappa2 * power(n));
            const cplx eta = noise_stream.complex_normal(hw.xi);
            blk.distortion(n, t - 1) = ups;
            blk.noise(n, t - 1) = eta;
            blk.y(n, t - 1) = rot * rx(n) + ups + eta;
        }
    }
    return blk;
}

VectorC stack_pilot_observation(const ReceivedBlock &block, const std::vector<int> &tau)
{
    const int N = static_cast<int>(block.y.rows());
    VectorC psi(static_cast<Eigen::Index>(tau.size()) * N);
    for (std::size_t b = 0; b < tau.size(); ++b)
    {
        require(tau[b] >= 1 && tau[b] <= block.y.cols(), "pilot instant outside the block");
        psi.segment(static_cast<Eigen::Index>(b) * N, N) = block.y.col(tau[b] - 1);
    }
    return psi;
}

} // namespace hwmimo
