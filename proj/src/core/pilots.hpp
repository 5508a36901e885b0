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

#include "core/common.hpp"

#include <vector>

namespace hwmimo {

enum class PilotBookKind
{
    Temporal,
    Dft,
};

enum class PlacementKind
{
    Beginning,
    Middle,
    Uniform,
    PreamblePlusDistributed,
};

/// Pilot instants tau_1 < ... < tau_B and data instants, 1-based channel uses.
struct Placement
{
    PlacementKind kind = PlacementKind::Beginning;
    int block_length = 0;
    std::vector<int> tau;
    std::vector<int> data;
};

Placement place(PlacementKind kind, int T, int B);

/// Pilot sequences for every UE in the network.
///
/// Each UE (l,k) sends sqrt(p_lk) times one of the unit-modulus base
/// sequences; `reuse(l,k)` names that sequence. UEs in different cells may
/// share a base sequence, UEs in one cell never do.
class PilotBook
{
public:
    PilotBook(PilotBookKind kind, MatrixC base, const MatrixR &powers, Placement placement);

    PilotBookKind kind() const { return kind_; }
    int length() const { return static_cast<int>(base_.rows()); }
    int cells() const { return static_cast<int>(reuse_.rows()); }
    int users() const { return static_cast<int>(reuse_.cols()); }
    int sequences() const { return static_cast<int>(base_.cols()); }
    const Placement &placement() const { return placement_; }
    const std::vector<int> &tau() const { return placement_.tau; }
    const std::vector<int> &data() const { return placement_.data; }

    const MatrixC &base() const { return base_; }
    VectorC unit_sequence(int r) const { return base_.col(r); }
    int reuse(int l, int k) const { return reuse_(l, k); }
    double power(int l, int k) const { return powers_(l, k); }
    /// x~_lk = [x_lk(tau_1) ... x_lk(tau_B)]^T
    VectorC sequence(int l, int k) const;
    /// X~_l, B x K with column k = x~_lk
    MatrixC cell_matrix(int l) const;
    /// Pilot symbol of UE (l,k) at channel use t, zero outside the pilot instants.
    cplx symbol(int l, int k, int t) const;
    bool is_pilot(int t) const;

    /// Replaces the sequence assignment; rows are cells, columns UEs.
    void set_reuse(const Eigen::MatrixXi &reuse);

private:
    PilotBookKind kind_;
    MatrixC base_;
    MatrixR powers_;
    Eigen::MatrixXi reuse_;
    Placement placement_;
    std::vector<int> slot_of_t_;
};

/// X~ = diag(sqrt(p_l1), ..., sqrt(p_lK)) in every cell; needs B = K.
PilotBook temporal_book(const MatrixR &powers, const Placement &placement);

/// Scaled DFT pilots, entry (b,k) = W_K^{(b-1)(k-1)} sqrt(p_lk); needs B >= K.
PilotBook dft_book(const MatrixR &powers, const Placement &placement);

PilotBook make_book(PilotBookKind kind, const MatrixR &powers, const Placement &placement);

} // namespace hwmimo
