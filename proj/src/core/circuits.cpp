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

#include "core/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hwmimo {

AdcImpairments adc_to_impairments(const AdcSpec &adc)
{
    require(adc.bits >= 1.0, "ADC needs at least one bit");
    if (std::isinf(adc.bits))
        return {0.0, 1.0};
    const double q = std::exp2(-2.0 * adc.bits);
    return {q / (1.0 - q), 1.0 / (1.0 - q)};
}

double adc_relaxation(double N, double z1)
{
    require(N >= 1.0, "N must be at least 1");
    require(z1 >= 0.0, "z1 must be nonnegative");
    return z1 / 2.0 * std::log2(N);
}

int deployable_bits(double bits)
{
    return std::max(1, static_cast<int>(std::ceil(bits - 1e-12)));
}

double LnaSpec::power() const
{
    require(noise_factor > 1.0, "noise factor must exceed 1 for a finite LNA power");
    require(fom > 0.0, "FoM must be positive");
    return gain / ((noise_factor - 1.0) * fom);
}

double lna_to_xi(const LnaSpec &lna, double sigma2, double bits)
{
    require(lna.noise_factor >= 1.0, "noise factor below 1");
    require(sigma2 > 0.0, "sigma2 must be positive");
    return lna.noise_factor * sigma2 * adc_to_impairments({bits}).xi_scale;
}

double noise_figure_relaxation_db(double N, double z2)
{
    require(N >= 1.0, "N must be at least 1");
    return z2 * 10.0 * std::log10(N);
}

double LoSpec::delta() const
{
    require(carrier_hz > 0.0 && symbol_time_s > 0.0 && zeta >= 0.0, "LO parameters must be positive");
    return 4.0 * std::numbers::pi * std::numbers::pi * carrier_hz * carrier_hz * symbol_time_s * zeta;
}

double LoSpec::power() const
{
    require(zeta > 0.0, "zeta must be positive");
    return fom / zeta;
}

HardwareProfile circuit_profile(const CircuitSpec &spec, double sigma2)
{
    require(spec.extra_kappa2 >= 0.0, "extra kappa2 negative");
    HardwareProfile hw;
    hw.kappa2 = adc_to_impairments(spec.adc).kappa2 + spec.extra_kappa2;
    hw.xi = lna_to_xi(spec.lna, sigma2, spec.adc.bits);
    hw.delta = spec.lo.delta();
    hw.lo_mode = spec.lo_mode;
    return hw;
}

std::vector<PowerRow> power_scaling_report(std::span<const double> N_grid, double z1, double z2, double z3,
                                           const CircuitSpec &spec, double adc_power_0)
{
    require(z1 >= 0.0 && z2 >= 0.0 && z3 >= 0.0, "scaling exponents must be nonnegative");
    const double lna0 = spec.lna.power();
    const double lo0 = spec.lo.power();
    const double nf0 = 10.0 * std::log10(spec.lna.noise_factor);
    std::vector<PowerRow> rows;
    for (double N : N_grid) {
        require(N >= 1.0, "N must be at least 1");
        PowerRow r;
        r.N = N;
        r.adc_bits = spec.adc.bits - adc_relaxation(N, z1);
        r.adc_power = adc_power_0 * std::exp2(2.0 * (r.adc_bits - spec.adc.bits));
        r.adc_total = N * r.adc_power;
        r.lna_noise_figure_db = nf0 + noise_figure_relaxation_db(N, z2);
        r.lna_power = lna0 * std::pow(N, -z2);
        r.lna_total = N * r.lna_power;
        r.lo_power = lo0 / (1.0 + z3 * std::log(N));
        r.lo_total = spec.lo_mode == LoMode::Separate ? N * r.lo_power : r.lo_power;
        rows.push_back(r);
    }
    return rows;
}

HardwareProfile bussgang_rescale(const HardwareProfile &hw, cplx c)
{
    const double g = std::norm(c);
    require(g > 0.0, "Bussgang gain must be nonzero");
    HardwareProfile out = hw;
    out.kappa2 /= g;
    out.xi /= g;
    return out;
}

} // namespace hwmimo
