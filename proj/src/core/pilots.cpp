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

#include "core/pilots.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace hwmimo {

Placement place(PlacementKind kind, int T, int B)
{
    require(B >= 1, "pilot length must be positive");
    require(B <= T, "pilot length exceeds the coherence block");

    Placement p;
    p.kind = kind;
    p.block_length = T;
    p.tau.reserve(B);

    switch (kind)
    {
    case PlacementKind::Beginning:
        for (int b = 0; b < B; ++b)
            p.tau.push_back(1 + b);
        break;
    case PlacementKind::Middle: {
        const int start = (T - B) / 2 + 1;
        for (int b = 0; b < B; ++b)
            p.tau.push_back(start + b);
        break;
    }
    case PlacementKind::Uniform:
        // floor division rounds ties toward the earlier channel use
        for (int b = 0; b < B; ++b)
            p.tau.push_back(1 + static_cast<int>((static_cast<long long>(b) * T) / B));
        break;
    case PlacementKind::PreamblePlusDistributed: {
        const int head = (B + 1) / 2;
        const int rest = B - head;
        for (int b = 0; b < head; ++b)
            p.tau.push_back(1 + b);
        const long long span = T - head;
        // midpoints of `rest` equal segments of the remaining uses
        for (int i = 0; i < rest; ++i)
            p.tau.push_back(head + 1 + static_cast<int>(((2LL * i + 1) * span) / (2LL * rest)));
        break;
    }
    }

    std::set<int> pilots(p.tau.begin(), p.tau.end());
    if (static_cast<int>(pilots.size()) != B)
        fail(ErrorCode::InvalidArgument, "pilot placement produced colliding instants");
    for (int t = 1; t <= T; ++t)
        if (!pilots.count(t))
            p.data.push_back(t);
    return p;
}

PilotBook::PilotBook(PilotBookKind kind, MatrixC base, const MatrixR &powers, Placement placement)
    : kind_(kind), base_(std::move(base)), powers_(powers), placement_(std::move(placement))
{
    require(static_cast<int>(placement_.tau.size()) == base_.rows(),
            "placement and pilot length disagree");
    require(powers_.cols() <= base_.cols(), "fewer pilot sequences than UEs per cell");
    require((powers_.array() >= 0.0).all(), "pilot powers must be nonnegative");
    reuse_.resize(powers_.rows(), powers_.cols());
    for (int l = 0; l < reuse_.rows(); ++l)
        for (int k = 0; k < reuse_.cols(); ++k)
            reuse_(l, k) = k;
    slot_of_t_.assign(placement_.block_length + 1, -1);
    for (std::size_t b = 0; b < placement_.tau.size(); ++b)
        slot_of_t_[placement_.tau[b]] = static_cast<int>(b);
}

VectorC PilotBook::sequence(int l, int k) const
{
    return std::sqrt(powers_(l, k)) * base_.col(reuse_(l, k));
}

MatrixC PilotBook::cell_matrix(int l) const
{
    MatrixC X(length(), users());
    for (int k = 0; k < users(); ++k)
        X.col(k) = sequence(l, k);
    return X;
}

cplx PilotBook::symbol(int l, int k, int t) const
{
    if (t < 1 || t >= static_cast<int>(slot_of_t_.size()) || slot_of_t_[t] < 0)
        return {0.0, 0.0};
    return std::sqrt(powers_(l, k)) * base_(slot_of_t_[t], reuse_(l, k));
}

bool PilotBook::is_pilot(int t) const
{
    return t >= 1 && t < static_cast<int>(slot_of_t_.size()) && slot_of_t_[t] >= 0;
}

void PilotBook::set_reuse(const Eigen::MatrixXi &reuse)
{
    require(reuse.rows() == reuse_.rows() && reuse.cols() == reuse_.cols(), "reuse map must be L x K");
    for (int l = 0; l < reuse.rows(); ++l)
    {
        std::set<int> seen;
        for (int k = 0; k < reuse.cols(); ++k)
        {
            require(reuse(l, k) >= 0 && reuse(l, k) < sequences(), "reuse index out of range");
            require(seen.insert(reuse(l, k)).second, "pilot sequence reused within a cell");
        }
    }
    reuse_ = reuse;
}

PilotBook temporal_book(const MatrixR &powers, const Placement &placement)
{
    const int K = static_cast<int>(powers.cols());
    const int B = static_cast<int>(placement.tau.size());
    require(B == K, "temporal pilots need B = K");
    return PilotBook(PilotBookKind::Temporal, MatrixC::Identity(B, K), powers, placement);
}

PilotBook dft_book(const MatrixR &powers, const Placement &placement)
{
    const int K = static_cast<int>(powers.cols());
    const int B = static_cast<int>(placement.tau.size());
    require(B >= K, "DFT pilots need B >= K");
    MatrixC base(B, K);
    for (int b = 0; b < B; ++b)
        for (int k = 0; k < K; ++k)
        {
            // reduce the exponent mod K so large B stays exact
            const int e = static_cast<int>((static_cast<long long>(b) * k) % K);
            base(b, k) = std::polar(1.0, -2.0 * std::numbers::pi * e / K);
        }
    return PilotBook(PilotBookKind::Dft, std::move(base), powers, placement);
}

PilotBook make_book(PilotBookKind kind, const MatrixR &powers, const Placement &placement)
{
    return kind == PilotBookKind::Temporal ? temporal_book(powers, placement)
                                           : dft_book(powers, placement);
}

} // namespace hwmimo
