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

#include <span>
#include <vector>

namespace hwmimo {

/// Quantizer with b bits; b may be fractional in trend reports.
struct AdcSpec
{
    double bits = 6.0;
};

struct AdcImpairments
{
    double kappa2 = 0.0;   // 2^{-2b} / (1 - 2^{-2b})
    double xi_scale = 1.0; // 1 / (1 - 2^{-2b})
};

AdcImpairments adc_to_impairments(const AdcSpec &adc);
/// Bits that can be dropped when kappa2 grows as N^z1: (z1/2) log2 N.
double adc_relaxation(double N, double z1);
/// Smallest integer resolution not below `bits`.
int deployable_bits(double bits);

struct LnaSpec
{
    double noise_factor = 1.0; // F, linear
    double gain = 1.0;         // G
    double fom = 1.0;          // FoM_LNA

    /// P_LNA = G / ((F - 1) FoM)
    double power() const;
};

/// xi = F sigma2 / (1 - 2^{-2b}); pass bits = +inf for an ideal quantizer.
double lna_to_xi(const LnaSpec &lna, double sigma2, double bits);
/// Noise figure increase in dB allowed when xi grows as N^z2: z2 10 log10 N.
double noise_figure_relaxation_db(double N, double z2);

struct LoSpec
{
    double carrier_hz = 2e9;
    double symbol_time_s = 1e-7;
    double zeta = 1e-17;
    double fom = 1.0; // P_LO zeta, taken as exact

    /// delta = 4 pi^2 f_c^2 T_s zeta
    double delta() const;
    double power() const;
};

struct CircuitSpec
{
    AdcSpec adc;
    LnaSpec lna;
    LoSpec lo;
    double extra_kappa2 = 0.0; // other nonlinearities, added as-is
    LoMode lo_mode = LoMode::Common;
};

HardwareProfile circuit_profile(const CircuitSpec &spec, double sigma2);

struct PowerRow
{
    double N = 1.0;
    double adc_bits = 0.0;
    double adc_power = 0.0; // per antenna
    double adc_total = 0.0;
    double lna_noise_figure_db = 0.0;
    double lna_power = 0.0;
    double lna_total = 0.0;
    double lo_power = 0.0;  // per oscillator
    double lo_total = 0.0;
};

/// Circuit power versus N when the impairments follow the scaling exponents.
/// Per-antenna powers scale as N^{-z1} (ADC), N^{-z2} (LNA) and
/// 1/(1 + z3 ln N) (LO); `adc_power_0` is the ADC power at N = 1.
std::vector<PowerRow> power_scaling_report(std::span<const double> N_grid, double z1, double z2, double z3,
                                           const CircuitSpec &spec, double adc_power_0);

/// Bussgang normalization of a known gain c: kappa2 and xi divided by |c|^2.
HardwareProfile bussgang_rescale(const HardwareProfile &hw, cplx c);

} // namespace hwmimo
