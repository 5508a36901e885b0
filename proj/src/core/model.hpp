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

#include <span>
#include <string>
#include <vector>

namespace hwmimo {

enum class LoMode
{
    Common,   // one oscillator per array, identical drift on every antenna
    Separate, // one oscillator per antenna, independent drifts
};

/// Hardware impairment triple applied network-wide.
///
/// delta is the per-channel-use innovation variance of the phase drift,
/// kappa2 scales the distortion noise with the received power per antenna
/// and xi is the receiver noise variance (xi >= sigma2).
struct HardwareProfile
{
    double delta = 0.0;
    double kappa2 = 0.0;
    double xi = 1.0;
    LoMode lo_mode = LoMode::Common;

    bool operator==(const HardwareProfile &) const = default;
};

/// Noise amplification factor F = xi / sigma2 (linear).
struct NoiseFigure
{
    double factor = 1.0;

    double xi(double sigma2) const { return factor * sigma2; }
    static NoiseFigure from_db(double db);
    double db() const;
};

HardwareProfile conventional_profile(double sigma2);

struct Dimensions
{
    int cells = 1;        // L
    int users = 1;        // K per cell
    int antennas = 1;     // N per base station
    int subarrays = 1;    // A, must divide N
    int block_length = 1; // T

    bool operator==(const Dimensions &) const = default;
};

/// Static problem description: dimensions, diagonal channel covariances,
/// transmit powers and the thermal noise floor.
///
/// Covariances are held in subarray-factorized form: every link (j,l,k)
/// stores A attenuations, each shared by N/A consecutive antennas. A general
/// diagonal covariance is the special case A = N.
class Scenario
{
public:
    Scenario() = default;
    Scenario(Dimensions dims, double sigma2);

    const Dimensions &dims() const { return dims_; }
    int cells() const { return dims_.cells; }
    int users() const { return dims_.users; }
    int antennas() const { return dims_.antennas; }
    int subarrays() const { return dims_.subarrays; }
    int block_length() const { return dims_.block_length; }
    int antennas_per_subarray() const { return dims_.antennas / dims_.subarrays; }
    double sigma2() const { return sigma2_; }

    /// Per-subarray attenuations of the link from UE k in cell l to BS j.
    std::span<const double> gains(int j, int l, int k) const;
    void set_gains(int j, int l, int k, std::span<const double> per_subarray);
    void set_gain(int j, int l, int k, int a, double value);
    /// Full length-N diagonal of Lambda_jlk.
    VectorR covariance(int j, int l, int k) const;
    double mean_gain(int j, int l, int k) const;

    double power(int l, int k) const { return powers_(l, k); }
    void set_power(int l, int k, double p) { powers_(l, k) = p; }
    const MatrixR &powers() const { return powers_; }
    void set_powers(const MatrixR &p);

    void set_block_length(int T) { dims_.block_length = T; }
    void set_sigma2(double s) { sigma2_ = s; }

    /// Same per-subarray statistics, different array size.
    Scenario with_antennas(int N) const;
    /// Equivalent scenario with one group per antenna (A = N).
    Scenario unfactorized() const;

    bool operator==(const Scenario &) const = default;

private:
    std::size_t offset(int j, int l, int k) const;

    Dimensions dims_;
    double sigma2_ = 1.0;
    std::vector<double> gains_;
    MatrixR powers_;
};

struct Violation
{
    std::string what;
    std::string where;

    bool operator==(const Violation &) const = default;
};

struct ValidationReport
{
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(const std::string &what) const;
    std::string to_string() const;
};

ValidationReport validate(const Scenario &scenario, const HardwareProfile &hw);

/// Expands a length-A factorized diagonal to length N (Kronecker with I_{N/A}).
VectorR expand_covariance(std::span<const double> factorized, int N);

} // namespace hwmimo
