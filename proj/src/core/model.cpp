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

#include "core/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hwmimo {

NoiseFigure NoiseFigure::from_db(double db)
{
    return NoiseFigure{std::pow(10.0, db / 10.0)};
}

double NoiseFigure::db() const
{
    return 10.0 * std::log10(factor);
}

HardwareProfile conventional_profile(double sigma2)
{
    require(sigma2 > 0.0, "sigma2 must be positive");
    return HardwareProfile{0.0, 0.0, sigma2, LoMode::Common};
}

Scenario::Scenario(Dimensions dims, double sigma2) : dims_(dims), sigma2_(sigma2)
{
    require(dims.cells >= 1 && dims.users >= 1 && dims.antennas >= 1 && dims.subarrays >= 1 &&
                dims.block_length >= 1,
            "scenario dimensions must be positive");
    gains_.assign(static_cast<std::size_t>(dims.cells) * dims.cells * dims.users * dims.subarrays, 0.0);
    powers_ = MatrixR::Zero(dims.cells, dims.users);
}

std::size_t Scenario::offset(int j, int l, int k) const
{
    require(j >= 0 && j < dims_.cells && l >= 0 && l < dims_.cells && k >= 0 && k < dims_.users,
            "link index out of range");
    return ((static_cast<std::size_t>(j) * dims_.cells + l) * dims_.users + k) * dims_.subarrays;
}

std::span<const double> Scenario::gains(int j, int l, int k) const
{
    return {gains_.data() + offset(j, l, k), static_cast<std::size_t>(dims_.subarrays)};
}

void Scenario::set_gains(int j, int l, int k, std::span<const double> per_subarray)
{
    require(per_subarray.size() == static_cast<std::size_t>(dims_.subarrays),
            "gain vector length must equal the subarray count");
    std::copy(per_subarray.begin(), per_subarray.end(), gains_.begin() + offset(j, l, k));
}

void Scenario::set_gain(int j, int l, int k, int a, double value)
{
    require(a >= 0 && a < dims_.subarrays, "subarray index out of range");
    gains_[offset(j, l, k) + a] = value;
}

VectorR Scenario::covariance(int j, int l, int k) const
{
    return expand_covariance(gains(j, l, k), dims_.antennas);
}

double Scenario::mean_gain(int j, int l, int k) const
{
    auto g = gains(j, l, k);
    double s = 0.0;
    for (double v : g)
        s += v;
    return s / static_cast<double>(g.size());
}

void Scenario::set_powers(const MatrixR &p)
{
    require(p.rows() == dims_.cells && p.cols() == dims_.users, "power table must be L x K");
    powers_ = p;
}

Scenario Scenario::with_antennas(int N) const
{
    require(N >= 1, "antenna count must be positive");
    Scenario s = *this;
    s.dims_.antennas = N;
    return s;
}

Scenario Scenario::unfactorized() const
{
    require(dims_.antennas % dims_.subarrays == 0, "A must divide N");
    Dimensions d = dims_;
    d.subarrays = d.antennas;
    Scenario s(d, sigma2_);
    s.powers_ = powers_;
    for (int j = 0; j < dims_.cells; ++j)
        for (int l = 0; l < dims_.cells; ++l)
            for (int k = 0; k < dims_.users; ++k)
            {
                VectorR full = covariance(j, l, k);
                s.set_gains(j, l, k, std::span<const double>(full.data(), full.size()));
            }
    return s;
}

bool ValidationReport::has(const std::string &what) const
{
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation &v) { return v.what == what; });
}

std::string ValidationReport::to_string() const
{
    if (ok())
        return "ok";
    std::ostringstream os;
    for (const auto &v : violations)
    {
        os << v.what;
        if (!v.where.empty())
            os << " at " << v.where;
        os << '\n';
    }
    return os.str();
}

ValidationReport validate(const Scenario &s, const HardwareProfile &hw)
{
    ValidationReport r;
    auto add = [&](std::string what, std::string where = {}) {
        r.violations.push_back({std::move(what), std::move(where)});
    };

    const auto &d = s.dims();
    if (!(s.sigma2() > 0.0))
        add("sigma2 must be positive");
    if (d.subarrays < 1 || d.subarrays > d.antennas)
        add("A must lie in 1..N");
    else if (d.antennas % d.subarrays != 0)
        add("A must divide N");
    if (!(hw.xi >= s.sigma2()))
        add("xi below sigma2");
    if (!(hw.delta >= 0.0))
        add("delta negative");
    if (!(hw.kappa2 >= 0.0))
        add("kappa2 negative");

    for (int j = 0; j < d.cells; ++j)
        for (int l = 0; l < d.cells; ++l)
            for (int k = 0; k < d.users; ++k)
            {
                auto g = s.gains(j, l, k);
                for (std::size_t a = 0; a < g.size(); ++a)
                    if (!(g[a] >= 0.0) || !std::isfinite(g[a]))
                    {
                        std::ostringstream w;
                        w << "(j=" << j << ",l=" << l << ",k=" << k << ",a=" << a << ")";
                        add("negative gain", w.str());
                    }
            }
    for (int l = 0; l < d.cells; ++l)
        for (int k = 0; k < d.users; ++k)
            if (!(s.power(l, k) >= 0.0) || !std::isfinite(s.power(l, k)))
            {
                std::ostringstream w;
                w << "(l=" << l << ",k=" << k << ")";
                add("negative power", w.str());
            }
    return r;
}

VectorR expand_covariance(std::span<const double> factorized, int N)
{
    const int A = static_cast<int>(factorized.size());
    require(A >= 1 && N >= 1 && N % A == 0, "A must divide N");
    const int per = N / A;
    VectorR out(N);
    for (int a = 0; a < A; ++a)
        out.segment(a * per, per).setConstant(factorized[a]);
    return out;
}

} // namespace hwmimo
