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

#include "core/montecarlo.hpp"

#include "core/channel.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

#include <algorithm>
#include <cmath>

namespace hwmimo {

MrcMoments McMoments::as_moments() const
{
    MrcMoments m;
    m.cells = cells;
    m.users = users;
    m.norm2 = norm2;
    m.gain = gain;
    m.second = second;
    m.distortion = distortion;
    return m;
}

namespace {

MatrixC mmse_matrix(std::span<const VectorC> estimates, std::span<const VectorR> errors, const MatrixR &powers,
                    const HardwareProfile &hw)
{
    const int K = static_cast<int>(powers.cols());
    const int N = static_cast<int>(estimates.front().size());
    MatrixC a = MatrixC::Zero(N, N);
    VectorR diag = VectorR::Constant(N, hw.xi);
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        const double p = powers(static_cast<int>(i) / K, static_cast<int>(i) % K);
        if (p == 0.0)
            continue;
        a.noalias() += p * estimates[i] * estimates[i].adjoint();
        diag += p * errors[i] + (hw.kappa2 * p) * (estimates[i].cwiseAbs2() + errors[i]);
    }
    a.diagonal() += diag.cast<cplx>();
    return a;
}

struct Trial
{
    ChannelRealization channels;
    PhaseTrajectories phases;
    VectorC psi;
};

// Channels, phases up to last_t and the stacked pilot observation of one trial.
Trial draw_trial(const Scenario &s, const HardwareProfile &hw, const PilotBook &book, int j, std::uint64_t seed,
                 long trial, int last_t)
{
    const int L = s.cells(), K = s.users(), N = s.antennas(), B = book.length();
    const std::uint64_t id = stream_id(static_cast<std::uint64_t>(trial), static_cast<std::uint64_t>(j));
    Stream ch_stream(seed, id, StreamPurpose::Channel);
    Stream ph_stream(seed, id, StreamPurpose::Phase);
    Stream dist_stream(seed, id, StreamPurpose::Distortion);
    Stream noise_stream(seed, id, StreamPurpose::ReceiverNoise);
    Trial tr;
    tr.channels = draw_channels(s, j, ch_stream);
    tr.phases = draw_phases(N, last_t, hw, ph_stream);
    tr.psi.resize(static_cast<Eigen::Index>(B) * N);
    for (int b = 0; b < B; ++b) {
        const int t = book.tau()[b];
        VectorC rx = VectorC::Zero(N);
        VectorR energy = VectorR::Zero(N);
        for (int l = 0; l < L; ++l)
            for (int m = 0; m < K; ++m) {
                const cplx x = book.symbol(l, m, t);
                rx += x * tr.channels.link(l, m);
                energy += std::norm(x) * tr.channels.link(l, m).cwiseAbs2();
            }
        for (int n = 0; n < N; ++n) {
            const cplx ups = dist_stream.complex_normal(hw.kappa2 * energy(n));
            const cplx eta = noise_stream.complex_normal(hw.xi);
            tr.psi(b * N + n) = std::polar(1.0, tr.phases.at(n, t)) * rx(n) + ups + eta;
        }
    }
    return tr;
}

struct Layout
{
    int ues, instants, links;
    int stride() const { return 4 + links; }
    std::size_t at(int u, int i) const { return (static_cast<std::size_t>(u) * instants + i) * stride(); }
    std::size_t size() const { return static_cast<std::size_t>(ues) * instants * stride(); }
};

} // namespace

VectorC mmse_filter(std::span<const VectorC> estimates, std::span<const VectorR> errors, const MatrixR &powers,
                    const HardwareProfile &hw, int j, int k)
{
    const int K = static_cast<int>(powers.cols());
    require(estimates.size() == static_cast<std::size_t>(powers.size()) && errors.size() == estimates.size(),
            "need one estimate and error per UE");
    require(hw.xi > 0.0, "xi must be positive");
    MatrixC a = mmse_matrix(estimates, errors, powers, hw);
    return a.llt().solve(estimates[static_cast<std::size_t>(j) * K + k]);
}

std::vector<std::vector<McMoments>> estimate_moments(const Scenario &s, const HardwareProfile &hw,
                                                     const PilotBook &book, int j, std::span<const int> ues,
                                                     std::span<const int> instants, const McConfig &mc)
{
    require(mc.trials >= 1, "need at least one trial");
    require(mc.batches >= 1, "need at least one batch");
    require(!ues.empty() && !instants.empty(), "nothing to estimate");
    const int L = s.cells(), K = s.users(), N = s.antennas(), LK = L * K;
    const int T = s.block_length();
    for (int k : ues)
        require(k >= 0 && k < K, "UE index out of range");
    for (int t : instants)
        require(t >= 1 && t <= T, "channel use outside 1..T");

    const EstimatorCache cache(s, hw, book, j);
    const std::vector<int> &tau = book.tau();
    const int last_t = std::max(*std::max_element(instants.begin(), instants.end()), tau.back());
    const int U = static_cast<int>(ues.size()), I = static_cast<int>(instants.size());
    const Layout lay{U, I, LK};
    const MatrixR &powers = s.powers();

    std::vector<std::vector<VectorR>> errors; // [instant][l*K + m]
    if (mc.filter == ReceiveFilter::Mmse) {
        errors.resize(I);
        for (int i = 0; i < I; ++i)
            for (int l = 0; l < L; ++l)
                for (int m = 0; m < K; ++m)
                    errors[i].push_back(error_covariance(cache, l, m, instants[i]).diagonal);
    }

    const int nb = static_cast<int>(std::min<long>(mc.batches, mc.trials));
    std::vector<std::vector<double>> batch_mean(nb);
    std::vector<long> batch_count(nb);

    parallel_for(nb, mc.threads, [&](int b) {
        const long first = mc.trials * b / nb, end = mc.trials * (b + 1) / nb;
        std::vector<double> acc(lay.size(), 0.0);
        std::vector<VectorC> hhat(LK), heff(LK);
        for (long trial = first; trial < end; ++trial) {
            const Trial tr = draw_trial(s, hw, book, j, mc.seed, trial, last_t);
            const ChannelRealization &chan = tr.channels;
            const PhaseTrajectories &ph = tr.phases;

            VectorR rx_power = VectorR::Zero(N); // sum p_lm |h_lm|^2 per antenna
            for (int i = 0; i < LK; ++i)
                rx_power += powers(i / K, i % K) * chan.h[i].cwiseAbs2();

            const MatrixC z = cache.whiten(tr.psi);

            for (int i = 0; i < I; ++i) {
                const int t = instants[i];
                VectorC rot(N);
                for (int n = 0; n < N; ++n)
                    rot(n) = std::polar(1.0, ph.at(n, t));
                for (int lm = 0; lm < LK; ++lm)
                    heff[lm] = rot.cwiseProduct(chan.h[lm]);

                Eigen::LLT<MatrixC> llt;
                if (mc.filter == ReceiveFilter::Mmse) {
                    for (int l = 0; l < L; ++l)
                        for (int m = 0; m < K; ++m)
                            hhat[l * K + m] = cache.estimate_whitened(z, l, m, t);
                    llt.compute(mmse_matrix(hhat, errors[i], powers, hw));
                }
                for (int u = 0; u < U; ++u) {
                    const int k = ues[u];
                    const VectorC v = mc.filter == ReceiveFilter::Mmse ? VectorC(llt.solve(hhat[j * K + k]))
                                                                        : cache.estimate_whitened(z, j, k, t);
                    double *a = acc.data() + lay.at(u, i);
                    a[0] += v.squaredNorm();
                    const cplx g = v.dot(heff[j * K + k]);
                    a[1] += g.real();
                    a[2] += g.imag();
                    a[3] += hw.kappa2 * v.cwiseAbs2().dot(rx_power);
                    for (int lm = 0; lm < LK; ++lm)
                        a[4 + lm] += std::norm(v.dot(heff[lm]));
                }
            }
        }
        const double count = static_cast<double>(end - first);
        for (double &x : acc)
            x /= count;
        batch_mean[b] = std::move(acc);
        batch_count[b] = end - first;
    });

    // merge in batch order
    std::vector<double> mean(lay.size(), 0.0), se(lay.size(), 0.0);
    for (int b = 0; b < nb; ++b)
        for (std::size_t x = 0; x < mean.size(); ++x)
            mean[x] += batch_mean[b][x] * static_cast<double>(batch_count[b]) / static_cast<double>(mc.trials);
    if (nb > 1) {
        for (int b = 0; b < nb; ++b)
            for (std::size_t x = 0; x < mean.size(); ++x) {
                const double d = batch_mean[b][x] - mean[x];
                se[x] += d * d;
            }
        for (double &x : se)
            x = std::sqrt(x / (static_cast<double>(nb) * (nb - 1)));
    }

    std::vector<std::vector<McMoments>> out(U, std::vector<McMoments>(I));
    for (int u = 0; u < U; ++u)
        for (int i = 0; i < I; ++i) {
            const std::size_t o = lay.at(u, i);
            McMoments &m = out[u][i];
            m.cells = L;
            m.users = K;
            m.trials = mc.trials;
            m.norm2 = mean[o];
            m.norm2_se = se[o];
            m.gain = {mean[o + 1], mean[o + 2]};
            m.gain_se = se[o + 1];
            m.distortion = mean[o + 3];
            m.distortion_se = se[o + 3];
            m.second.assign(mean.begin() + o + 4, mean.begin() + o + 4 + LK);
            m.second_se.assign(se.begin() + o + 4, se.begin() + o + 4 + LK);
        }
    return out;
}

McMoments estimate_moments(const Scenario &s, const HardwareProfile &hw, const PilotBook &book, int j, int k, int t,
                           const McConfig &mc)
{
    return estimate_moments(s, hw, book, j, std::span<const int>(&k, 1), std::span<const int>(&t, 1), mc)
        .front()
        .front();
}

EstimationCheck simulate_estimation(const Scenario &s, const HardwareProfile &hw, const PilotBook &book, int j,
                                    int l, int k, std::span<const int> instants, const McConfig &mc)
{
    require(mc.trials >= 2, "need at least two trials");
    require(!instants.empty(), "nothing to estimate");
    require(l >= 0 && l < s.cells() && k >= 0 && k < s.users(), "UE index out of range");
    const int N = s.antennas(), B = book.length(), T = s.block_length();
    for (int t : instants)
        require(t >= 1 && t <= T, "channel use outside 1..T");
    const EstimatorCache cache(s, hw, book, j);
    const int I = static_cast<int>(instants.size());
    const int last_t = std::max(*std::max_element(instants.begin(), instants.end()), book.tau().back());
    const int BN = B * N;

    // per batch: mse per instant, then for the first instant sums of
    // e_n psi_i^*, |e_n|^2 and |psi_i|^2
    const int nb = static_cast<int>(std::min<long>(mc.batches, mc.trials));
    struct Acc
    {
        std::vector<double> mse;
        MatrixC cross;
        VectorR err2, psi2;
    };
    std::vector<Acc> acc(nb);
    std::vector<long> count(nb);
    parallel_for(nb, mc.threads, [&](int b) {
        const long first = mc.trials * b / nb, end = mc.trials * (b + 1) / nb;
        Acc a{std::vector<double>(I, 0.0), MatrixC::Zero(N, BN), VectorR::Zero(N), VectorR::Zero(BN)};
        for (long trial = first; trial < end; ++trial) {
            const Trial tr = draw_trial(s, hw, book, j, mc.seed, trial, last_t);
            const MatrixC z = cache.whiten(tr.psi);
            for (int i = 0; i < I; ++i) {
                const int t = instants[i];
                VectorC h(N);
                for (int n = 0; n < N; ++n)
                    h(n) = std::polar(1.0, tr.phases.at(n, t)) * tr.channels.link(l, k)(n);
                const VectorC e = h - cache.estimate_whitened(z, l, k, t);
                a.mse[i] += e.squaredNorm();
                if (i == 0) {
                    a.cross.noalias() += e * tr.psi.adjoint();
                    a.err2 += e.cwiseAbs2();
                    a.psi2 += tr.psi.cwiseAbs2();
                }
            }
        }
        acc[b] = std::move(a);
        count[b] = end - first;
    });

    EstimationCheck out;
    out.trials = mc.trials;
    out.instants.assign(instants.begin(), instants.end());
    out.mse.assign(I, 0.0);
    out.mse_se.assign(I, 0.0);
    MatrixC cross = MatrixC::Zero(N, BN);
    VectorR err2 = VectorR::Zero(N), psi2 = VectorR::Zero(BN);
    for (int b = 0; b < nb; ++b) {
        for (int i = 0; i < I; ++i)
            out.mse[i] += acc[b].mse[i];
        cross += acc[b].cross;
        err2 += acc[b].err2;
        psi2 += acc[b].psi2;
    }
    const double M = static_cast<double>(mc.trials);
    for (int i = 0; i < I; ++i) {
        out.mse[i] /= M;
        if (nb > 1) {
            double ss = 0.0;
            for (int b = 0; b < nb; ++b) {
                const double d = acc[b].mse[i] / count[b] - out.mse[i];
                ss += d * d;
            }
            out.mse_se[i] = std::sqrt(ss / (static_cast<double>(nb) * (nb - 1)));
        }
    }
    for (int n = 0; n < N; ++n)
        for (int x = 0; x < BN; ++x) {
            const double denom = std::sqrt(err2(n) * psi2(x));
            if (denom > 0.0)
                out.max_correlation = std::max(out.max_correlation, std::abs(cross(n, x)) / denom);
        }
    return out;
}

McRateResult mc_rate_detailed(const Scenario &s, const HardwareProfile &hw, const PilotBook &book, int j,
                              const McConfig &mc, int instant_stride)
{
    require(instant_stride >= 1, "instant stride must be positive");
    const int K = s.users(), T = s.block_length(), B = book.length();
    const std::vector<int> &data = book.data();
    std::vector<int> ues(K);
    for (int k = 0; k < K; ++k)
        ues[k] = k;

    McRateResult res;
    res.rates.resize(K);
    if (data.empty()) {
        for (int k = 0; k < K; ++k)
            res.rates[k] = RateReport{j, k, 0.0, {}, {}};
        return res;
    }
    // without drift the statistics do not depend on t
    const bool stationary = hw.delta == 0.0;
    if (stationary)
        res.instants.push_back(data.front());
    else
        for (std::size_t i = 0; i < data.size(); i += instant_stride)
            res.instants.push_back(data[i]);
    res.moments = estimate_moments(s, hw, book, j, ues, res.instants, mc);

    for (int k = 0; k < K; ++k) {
        RateReport &r = res.rates[k];
        r.cell = j;
        r.ue = k;
        if (stationary || instant_stride == 1) {
            r.t = data;
            r.sinr.resize(data.size());
            for (std::size_t i = 0; i < data.size(); ++i)
                r.sinr[i] = sinr(res.moments[k][stationary ? 0 : i].as_moments(), s.powers(), j, k, hw.xi).sinr;
            r.rate = ergodic_rate(r.sinr, T, B);
        } else {
            r.t = res.instants;
            CompensatedSum acc;
            for (std::size_t i = 0; i < res.instants.size(); ++i) {
                r.sinr.push_back(sinr(res.moments[k][i].as_moments(), s.powers(), j, k, hw.xi).sinr);
                acc.add(std::log2(1.0 + r.sinr.back()));
            }
            r.rate = acc.value() / static_cast<double>(res.instants.size()) * static_cast<double>(data.size()) / T;
        }
    }
    return res;
}

std::vector<RateReport> mc_rate(const Scenario &s, const HardwareProfile &hw, const PilotBook &book, int j,
                                const McConfig &mc, int instant_stride)
{
    return mc_rate_detailed(s, hw, book, j, mc, instant_stride).rates;
}

} // namespace hwmimo
