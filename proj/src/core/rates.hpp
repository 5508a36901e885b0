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

#include "core/estimator.hpp"

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace hwmimo {

/// Moments of the MRC filter v = h-hat_jjk(t) for one (k, t).
struct MrcMoments
{
    int cells = 0;
    int users = 0;
    double norm2 = 0.0;      // E{||v||^2}
    cplx gain;               // E{v^H h_jjk}
    std::vector<double> second; // E{|v^H h_jlm|^2}, entry l*K + m
    double distortion = 0.0; // E{|v^H upsilon_j|^2}

    double second_at(int l, int m) const { return second[static_cast<std::size_t>(l) * users + m]; }
};

/// MRC moments written as polynomials in the subarray multiplicity mu = N/A:
///
///     E{||v||^2}        = mu norm2
///     E{|v^H h_lm|^2}   = mu linear_lm + mu^2 quadratic_lm
///     E{|v^H upsilon|^2} = mu distortion
///
/// None of the coefficients depend on N, so one evaluation serves a whole
/// sweep over array sizes.
struct MomentTerms
{
    int cells = 0;
    int users = 0;
    double norm2 = 0.0;
    std::vector<double> linear;
    std::vector<double> quadratic;
    double distortion = 0.0;

    MrcMoments at(double mu) const;
    void axpy(double s, const MomentTerms &other);
};

/// Outside the pilot interval D_delta(t) = alpha D_delta(tau_edge) with
/// alpha = exp(-delta/2 |t - tau_edge|). Every term splits into parts that
/// scale as alpha^2 and alpha^4; this keeps them apart.
struct DampingSplit
{
    MomentTerms second;
    MomentTerms fourth;

    /// Terms at beta = alpha^2.
    MomentTerms evaluate(double beta) const;
};

DampingSplit mrc_terms_split(const EstimatorCache &cache, int k, int t);
MomentTerms mrc_terms(const EstimatorCache &cache, int k, int t);

/// Terms for every data instant of the placement, in order.
std::vector<MomentTerms> mrc_terms_trajectory(const EstimatorCache &cache, int k);

/// Closed-form MRC moments for UE k of cell j = cache.cell() at channel use t.
MrcMoments mrc_moments(const EstimatorCache &cache, int k, int t);

/// Same four moments for co-located arrays (Lambda = lambda I), evaluated on
/// the B x B matrix Omega_j with explicit N and N(N-1) factors.
MrcMoments mrc_moments_colocated(const EstimatorCache &cache, int k, int t);

/// Same four moments on the BN x BN matrix Psi_j, with the antenna sums
/// carried out term by term. Small N only.
MrcMoments mrc_moments_dense(const DenseEstimator &dense, int k, int t);

struct SinrBreakdown
{
    double signal = 0.0;
    std::vector<double> interference; // p_lm E{|v^H h_jlm|^2}, entry l*K + m
    double self_subtraction = 0.0;
    double distortion = 0.0;
    double noise = 0.0;
    double sinr = 0.0;

    double interference_total() const;
    double denominator() const;
};

/// SINR of UE (j,k) under the use-and-then-forget bound.
SinrBreakdown sinr(const MrcMoments &m, const MatrixR &powers, int j, int k, double xi);

struct RateReport
{
    int cell = 0;
    int ue = 0;
    double rate = 0.0; // bit per channel use
    std::vector<int> t;
    std::vector<double> sinr;
};

/// (1/T) sum over the data instants of log2(1 + SINR).
double ergodic_rate(std::span<const double> sinr, int T, int B);

/// Closed-form MRC rates of every UE in the cell for each array size in
/// `antennas` (each a multiple of A). Result is indexed [size][ue].
std::vector<std::vector<RateReport>> mrc_rates(const EstimatorCache &cache, std::span<const int> antennas);

/// Rate report at the cache's own N.
std::vector<RateReport> mrc_rates(const EstimatorCache &cache);

/// Real number or +infinity, kept apart so output stays parseable.
struct ExtendedReal
{
    double value = 0.0;
    bool infinite = false;

    static ExtendedReal infinity() { return {0.0, true}; }
    double as_double() const { return infinite ? std::numeric_limits<double>::infinity() : value; }
    std::string to_string() const;
};

/// MRC SINR as a function of mu = N/A: mu num / (s1 + mu s2).
struct SinrPolynomial
{
    double num = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;

    double at(double mu) const;
    ExtendedReal limit() const;
};

SinrPolynomial sinr_polynomial(const MomentTerms &terms, const MatrixR &powers, int j, int k, double xi);

/// SINR polynomials of UE k for every data instant of the placement.
std::vector<SinrPolynomial> mrc_sinr_trajectory(const EstimatorCache &cache, int k);

/// Limit of the MRC SINR as N grows with A fixed: p Sig / (sum p Int - p Sig).
ExtendedReal asymptotic_sinr(const EstimatorCache &cache, int k, int t);
ExtendedReal asymptotic_sinr(const MomentTerms &terms, const MatrixR &powers, int j, int k);

struct AsymptoticParts
{
    double signal = 0.0;               // Sig
    std::vector<double> interference;  // Int_lm, entry l*K + m
};

AsymptoticParts asymptotic_parts(const EstimatorCache &cache, int k, int t);

struct ScalingExponents
{
    double z1 = 0.0;
    double z2 = 0.0;
    double z3 = 0.0;
    double kappa2_0 = 0.0;
    double xi_0 = 1.0;
    double delta_0 = 0.0;
};

struct ScalingVerdict
{
    bool satisfied = false;
    double margin = 0.0;
};

ScalingVerdict check_scaling_law(const ScalingExponents &e, LoMode lo, int t, std::span<const int> tau);

/// kappa2 = kappa2_0 N^z1, xi = xi_0 N^z2, delta = delta_0 (1 + z3 ln N).
HardwareProfile scaled_profile(const ScalingExponents &e, LoMode lo, double N, double sigma2);

} // namespace hwmimo
