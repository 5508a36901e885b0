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

#include <vector>

namespace hwmimo {

/// Precomputed statistics for LMMSE estimation in one cell j.
///
/// With diagonal covariances, Psi_j = sum X_lm (x) Lambda_jlm + xi I is block
/// diagonal once reordered antenna-major, and all antennas of subarray a
/// share the same B x B block
///
///     Omega_a = sum_{l,m} lambda~_jlm^(a) X_lm + xi I_B.
///
/// The cache keeps one Cholesky factor per subarray, which is the reduced
/// AB x AB matrix Psi~_j factorized blockwise. Nothing here depends on N.
class EstimatorCache
{
public:
    EstimatorCache(const Scenario &scenario, const HardwareProfile &hw, const PilotBook &book, int cell);

    int cell() const { return cell_; }
    int cells() const { return L_; }
    int users() const { return K_; }
    int groups() const { return G_; }
    int pilot_length() const { return B_; }
    double multiplicity() const { return multiplicity_; }
    int antennas() const { return N_; }
    const HardwareProfile &hardware() const { return hw_; }
    const PilotBook &book() const { return book_; }

    /// Diagonal of D_delta(t): exp(-delta/2 |t - tau_b|).
    VectorR damping(int t) const;
    /// D_delta(t) x~_lk
    VectorC damped_pilot(int l, int k, int t) const;

    /// Lambda~_jlm^(a)
    double gain(int l, int m, int a) const { return gains_(l * K_ + m, a); }
    double power(int l, int m) const { return book_.power(l, m); }
    int reuse(int l, int m) const { return book_.reuse(l, m); }

    /// X-bar for a unit-power copy of base sequence r; X-bar_lm = p_lm times this.
    const MatrixC &unit_xbar(int r) const { return unit_xbar_[r]; }
    /// |phi_r(tau_b)|^2
    const VectorR &unit_energy(int r) const { return unit_energy_[r]; }
    MatrixC xbar(int l, int m) const;
    MatrixC xfull(int l, int m) const;

    const MatrixC &omega(int a) const { return omega_[a]; }
    const MatrixC &omega_inverse(int a) const { return omega_inv_[a]; }
    VectorC solve(int a, const VectorC &rhs) const;

    /// Psi~_j assembled as an AB x AB matrix, pilot-major ordering.
    MatrixC psi_reduced() const;

    /// Columns z^(n) = Omega_{a(n)}^{-1} psi^(n), where psi^(n) collects antenna
    /// n over the B pilot instants. Estimates are linear in these.
    MatrixC whiten(const VectorC &psi) const;
    /// Estimate from whitened observations, length N.
    VectorC estimate_whitened(const MatrixC &z, int l, int k, int t) const;

private:
    int cell_, L_, K_, N_, G_, B_;
    double multiplicity_;
    HardwareProfile hw_;
    PilotBook book_;
    MatrixR gains_; // (L*K) x A
    std::vector<MatrixC> unit_xbar_;
    std::vector<VectorR> unit_energy_;
    std::vector<MatrixC> omega_;
    std::vector<MatrixC> omega_inv_;
    std::vector<Eigen::LLT<MatrixC>> omega_llt_;
};

struct ErrorCovariance
{
    VectorR diagonal; // length N
    double mse = 0.0; // tr(C)
};

struct EstimateResult
{
    VectorC hhat;
    VectorR error; // diagonal of C_jlk(t)
    double mse = 0.0;
};

/// h-hat_jlk(t) = (x~_lk^H D_delta(t) (x) Lambda_jlk) Psi_j^{-1} psi_j
EstimateResult lmmse_estimate(const EstimatorCache &cache, const VectorC &psi, int l, int k, int t);

/// C_jlk(t) = Lambda_jlk - (x~^H D (x) Lambda) Psi^{-1} (D^H x~ (x) Lambda), as its diagonal.
ErrorCovariance error_covariance(const EstimatorCache &cache, int l, int k, int t);

/// Co-located form: every Lambda_jlk = lambda_jlk I, so the estimate needs
/// only the B x B matrix Omega_j. Throws if some link is not a scaled identity.
EstimateResult lmmse_estimate_colocated(const EstimatorCache &cache, const VectorC &psi, int l, int k, int t);

/// Reference path on the full BN x BN matrix Psi_j, built with explicit
/// Kronecker products. Cubic in BN; meant for small arrays and cross-checks.
class DenseEstimator
{
public:
    DenseEstimator(const Scenario &scenario, const HardwareProfile &hw, const PilotBook &book, int cell);

    int cell() const { return cell_; }
    const MatrixC &psi() const { return psi_; }
    /// x~_lk^H D_delta(t) (x) Lambda_jlk, N x BN
    MatrixC cross(int l, int k, int t) const;
    /// Psi_j^{-1} applied to a BN x m block.
    MatrixC solve(const MatrixC &rhs) const;

    VectorC estimate(const VectorC &psi_obs, int l, int k, int t) const;
    /// Full N x N error covariance.
    MatrixC error_covariance(int l, int k, int t) const;

    int antennas() const { return N_; }
    int pilot_length() const { return B_; }
    int users() const { return K_; }
    int cells() const { return L_; }
    const HardwareProfile &hardware() const { return hw_; }
    VectorC pilot(int l, int k) const { return pilots_[l * K_ + k]; }
    VectorR damping(int t) const;
    const MatrixC &xbar(int l, int k) const { return xbar_[l * K_ + k]; }
    MatrixC xfull(int l, int k) const;
    const VectorR &covariance(int l, int k) const { return lambda_[l * K_ + k]; }
    double power(int l, int k) const { return powers_(l, k); }

private:
    int cell_, L_, K_, N_, B_;
    HardwareProfile hw_;
    std::vector<int> tau_;
    MatrixR powers_;
    std::vector<VectorC> pilots_;
    std::vector<MatrixC> xbar_;
    std::vector<VectorR> lambda_;
    MatrixC psi_;
    Eigen::LDLT<MatrixC> ldlt_;
};

/// Kronecker product of dense matrices.
MatrixC kron(const MatrixC &a, const MatrixC &b);

} // namespace hwmimo
