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

#include "core/rates.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace hwmimo {

namespace {

constexpr double kNegativeTolerance = 1e-9;

MomentTerms empty_terms(int L, int K)
{
    MomentTerms m;
    m.cells = L;
    m.users = K;
    m.linear.assign(static_cast<std::size_t>(L) * K, 0.0);
    m.quadratic.assign(static_cast<std::size_t>(L) * K, 0.0);
    return m;
}

MrcMoments empty_moments(int L, int K)
{
    MrcMoments m;
    m.cells = L;
    m.users = K;
    m.second.assign(static_cast<std::size_t>(L) * K, 0.0);
    return m;
}

void check_ue(int k, int K)
{
    require(k >= 0 && k < K, "UE index out of range");
}

} // namespace

MrcMoments MomentTerms::at(double mu) const
{
    MrcMoments m = empty_moments(cells, users);
    m.norm2 = mu * norm2;
    m.gain = m.norm2;
    for (std::size_t i = 0; i < m.second.size(); ++i)
        m.second[i] = mu * linear[i] + mu * mu * quadratic[i];
    m.distortion = mu * distortion;
    return m;
}

void MomentTerms::axpy(double s, const MomentTerms &o)
{
    norm2 += s * o.norm2;
    for (std::size_t i = 0; i < linear.size(); ++i) {
        linear[i] += s * o.linear[i];
        quadratic[i] += s * o.quadratic[i];
    }
    distortion += s * o.distortion;
}

MomentTerms DampingSplit::evaluate(double beta) const
{
    MomentTerms m = empty_terms(second.cells, second.users);
    m.axpy(beta, second);
    m.axpy(beta * beta, fourth);
    return m;
}

DampingSplit mrc_terms_split(const EstimatorCache &cache, int k, int t)
{
    const int L = cache.cells(), K = cache.users(), G = cache.groups();
    const int j = cache.cell();
    const int R = cache.book().sequences();
    const HardwareProfile &hw = cache.hardware();
    check_ue(k, K);

    DampingSplit out{empty_terms(L, K), empty_terms(L, K)};
    MomentTerms &a2 = out.second;
    MomentTerms &a4 = out.fourth;

    const VectorR d = cache.damping(t);
    const VectorC dx = cache.book().sequence(j, k).cwiseProduct(d.cast<cplx>());

    std::vector<VectorC> w(G);
    VectorR q(G), lk(G);
    for (int g = 0; g < G; ++g) {
        w[g] = cache.omega_inverse(g) * dx;
        q(g) = dx.dot(w[g]).real();
        lk(g) = cache.gain(j, k, g);
        a2.norm2 += lk(g) * lk(g) * q(g);
    }

    // per base sequence r: xb(g,g') = w_g^H Xbar_r w_g', s_g = w_g^H D phi_r,
    // e_g = sum_b |phi_r(b)|^2 |w_g(b)|^2
    std::vector<MatrixC> xb(R);
    std::vector<VectorC> sv(R);
    std::vector<VectorR> ev(R);
    std::vector<bool> used(R, false);
    for (int l = 0; l < L; ++l)
        for (int m = 0; m < K; ++m)
            used[cache.reuse(l, m)] = true;
    MatrixC W(cache.pilot_length(), G);
    for (int g = 0; g < G; ++g)
        W.col(g) = w[g];
    for (int r = 0; r < R; ++r) {
        if (!used[r])
            continue;
        xb[r] = W.adjoint() * cache.unit_xbar(r) * W;
        VectorC dphi = cache.book().unit_sequence(r).cwiseProduct(d.cast<cplx>());
        sv[r] = W.adjoint() * dphi;
        ev[r] = W.cwiseAbs2().transpose() * cache.unit_energy(r);
    }

    const bool slo = hw.lo_mode == LoMode::Separate;
    VectorR c(G);
    for (int l = 0; l < L; ++l)
        for (int m = 0; m < K; ++m) {
            const std::size_t i = static_cast<std::size_t>(l) * K + m;
            const int r = cache.reuse(l, m);
            const double p = cache.power(l, m);
            double base = 0.0;
            for (int g = 0; g < G; ++g) {
                const double lm = cache.gain(l, m, g);
                base += lm * lk(g) * lk(g) * q(g);
                c(g) = lk(g) * lm;
            }
            double diag_full = 0.0; // sum c^2 w^H X_lm w / p
            double diag_kappa = 0.0;
            double diag_s = 0.0;
            for (int g = 0; g < G; ++g) {
                const double c2 = c(g) * c(g);
                diag_full += c2 * (xb[r](g, g).real() + hw.kappa2 * ev[r](g));
                diag_kappa += c2 * hw.kappa2 * ev[r](g);
                diag_s += c2 * std::norm(sv[r](g));
            }
            if (slo) {
                a2.linear[i] = base + p * diag_full;
                a4.linear[i] = -p * diag_s;
                cplx sum = 0.0;
                for (int g = 0; g < G; ++g)
                    sum += c(g) * sv[r](g);
                a4.quadratic[i] = p * std::norm(sum);
            } else {
                a2.linear[i] = base + p * diag_kappa;
                a2.quadratic[i] = p * (c.cast<cplx>().dot(xb[r] * c.cast<cplx>())).real();
            }
            a2.distortion += hw.kappa2 * p * (base + p * diag_full);
        }
    return out;
}

MomentTerms mrc_terms(const EstimatorCache &cache, int k, int t)
{
    return mrc_terms_split(cache, k, t).evaluate(1.0);
}

MrcMoments mrc_moments(const EstimatorCache &cache, int k, int t)
{
    return mrc_terms(cache, k, t).at(cache.multiplicity());
}

MrcMoments mrc_moments_colocated(const EstimatorCache &cache, int k, int t)
{
    const int L = cache.cells(), K = cache.users(), G = cache.groups();
    const int B = cache.pilot_length(), j = cache.cell();
    const double N = cache.antennas();
    const HardwareProfile &hw = cache.hardware();
    check_ue(k, K);

    MatrixR lambda(L, K);
    for (int l = 0; l < L; ++l)
        for (int m = 0; m < K; ++m) {
            lambda(l, m) = cache.gain(l, m, 0);
            for (int a = 1; a < G; ++a)
                if (std::abs(cache.gain(l, m, a) - lambda(l, m)) > 1e-12 * std::max(1.0, lambda(l, m)))
                    fail(ErrorCode::InvalidArgument, "covariance is not a scaled identity");
        }

    MatrixC omega = hw.xi * MatrixC::Identity(B, B);
    for (int l = 0; l < L; ++l)
        for (int m = 0; m < K; ++m)
            omega += lambda(l, m) * cache.xfull(l, m);
    Eigen::PartialPivLU<MatrixC> lu(omega);

    const VectorR d = cache.damping(t);
    const VectorC dxk = cache.book().sequence(j, k).cwiseProduct(d.cast<cplx>());
    const VectorC w = lu.solve(dxk);
    const double lk = lambda(j, k);

    MrcMoments out = empty_moments(L, K);
    out.norm2 = N * lk * lk * dxk.dot(w).real();
    out.gain = out.norm2;
    for (int l = 0; l < L; ++l)
        for (int m = 0; m < K; ++m) {
            const double lm = lambda(l, m);
            const double c2 = lk * lk * lm * lm;
            const double full = w.dot(cache.xfull(l, m) * w).real();
            double cross;
            if (hw.lo_mode == LoMode::Common) {
                cross = w.dot(cache.xbar(l, m) * w).real();
            } else {
                const VectorC dxlm = cache.book().sequence(l, m).cwiseProduct(d.cast<cplx>());
                cross = std::norm(w.dot(dxlm));
            }
            out.second[l * K + m] = lm * out.norm2 + N * c2 * full + N * (N - 1.0) * c2 * cross;
            out.distortion += hw.kappa2 * cache.power(l, m) * (lm * out.norm2 + N * c2 * full);
        }
    return out;
}

MrcMoments mrc_moments_dense(const DenseEstimator &dense, int k, int t)
{
    const int L = dense.cells(), K = dense.users(), N = dense.antennas(), B = dense.pilot_length();
    const int j = dense.cell();
    const HardwareProfile &hw = dense.hardware();
    check_ue(k, K);

    const VectorR d = dense.damping(t);
    const MatrixC D = d.cast<cplx>().asDiagonal().toDenseMatrix();
    const VectorC dxk = D * dense.pilot(j, k);
    const MatrixC A = dense.cross(j, k, t);                    // (x^H D (x) Lambda_k)
    const MatrixC M = A * dense.solve(MatrixC(A.adjoint()));   // N x N
    const MatrixC Z = dense.solve(kron(dxk, MatrixC::Identity(N, N))); // column n: Psi^{-1}(D x (x) e_n)

    auto unit = [N](int a, int b) {
        MatrixC e = MatrixC::Zero(N, N);
        e(a, b) = 1.0;
        return e;
    };

    MrcMoments out = empty_moments(L, K);
    out.norm2 = M.trace().real();
    out.gain = M.trace();
    for (int l = 0; l < L; ++l)
        for (int m = 0; m < K; ++m) {
            const MatrixC lamlm = dense.covariance(l, m).cast<cplx>().asDiagonal().toDenseMatrix();
            const VectorR cvec = dense.covariance(j, k).cwiseProduct(dense.covariance(l, m));
            const double base = (lamlm * M).trace().real();
            const MatrixC Xfull = dense.xfull(l, m);
            const VectorC dxlm = D * dense.pilot(l, m);

            double cross = 0.0, diag = 0.0, dist = 0.0;
            if (hw.lo_mode == LoMode::Common) {
                for (int n1 = 0; n1 < N; ++n1)
                    for (int n2 = 0; n2 < N; ++n2)
                        cross += cvec(n1) * cvec(n2) *
                                 Z.col(n1).dot(kron(dense.xbar(l, m), unit(n1, n2)) * Z.col(n2)).real();
                MatrixC part = MatrixC::Zero(B, B);
                for (int b = 0; b < B; ++b)
                    part(b, b) = hw.kappa2 * std::norm(dense.pilot(l, m)(b));
                for (int n = 0; n < N; ++n)
                    diag += cvec(n) * cvec(n) * Z.col(n).dot(kron(part, unit(n, n)) * Z.col(n)).real();
            } else {
                const MatrixC rhs = kron(dxlm, lamlm);
                cross = std::norm((A * dense.solve(rhs)).trace());
                const MatrixC part = Xfull - dxlm * dxlm.adjoint();
                for (int n = 0; n < N; ++n)
                    diag += cvec(n) * cvec(n) * Z.col(n).dot(kron(part, unit(n, n)) * Z.col(n)).real();
            }
            for (int n = 0; n < N; ++n)
                dist += cvec(n) * cvec(n) * Z.col(n).dot(kron(Xfull, unit(n, n)) * Z.col(n)).real();
            out.second[l * K + m] = base + cross + diag;
            out.distortion += hw.kappa2 * dense.power(l, m) * (base + dist);
        }
    return out;
}

double SinrBreakdown::interference_total() const
{
    CompensatedSum s;
    for (double v : interference)
        s.add(v);
    return s.value();
}

double SinrBreakdown::denominator() const
{
    CompensatedSum s;
    for (double v : interference)
        s.add(v);
    s.add(-self_subtraction);
    s.add(distortion);
    s.add(noise);
    return s.value();
}

SinrBreakdown sinr(const MrcMoments &m, const MatrixR &powers, int j, int k, double xi)
{
    require(powers.rows() == m.cells && powers.cols() == m.users, "power matrix does not match moments");
    SinrBreakdown s;
    const double p = powers(j, k);
    s.signal = p * std::norm(m.gain);
    s.self_subtraction = s.signal;
    s.interference.resize(m.second.size());
    for (int l = 0; l < m.cells; ++l)
        for (int mm = 0; mm < m.users; ++mm)
            s.interference[l * m.users + mm] = powers(l, mm) * m.second_at(l, mm);
    s.distortion = m.distortion;
    s.noise = xi * m.norm2;
    const double den = s.denominator();
    const double scale = s.interference_total() + s.distortion + s.noise;
    if (den < -kNegativeTolerance * scale)
        fail(ErrorCode::Numerical, "negative SINR denominator");
    s.sinr = den > 0.0 ? s.signal / den : 0.0;
    if (den <= 0.0 && s.signal > 0.0)
        fail(ErrorCode::Numerical, "zero SINR denominator");
    return s;
}

double ergodic_rate(std::span<const double> sinr, int T, int B)
{
    require(T >= 1 && B >= 0 && B <= T, "invalid block dimensions");
    require(sinr.size() == static_cast<std::size_t>(T - B), "need one SINR per data instant");
    CompensatedSum s;
    for (double v : sinr)
        s.add(std::log2(1.0 + std::max(0.0, v)));
    return s.value() / T;
}

double SinrPolynomial::at(double mu) const
{
    const double den = s1 + mu * s2;
    return den > 0.0 ? mu * num / den : 0.0;
}

ExtendedReal SinrPolynomial::limit() const
{
    if (s2 <= 1e-10 * num)
        return ExtendedReal::infinity();
    return {num / s2, false};
}

SinrPolynomial sinr_polynomial(const MomentTerms &terms, const MatrixR &powers, int j, int k, double xi)
{
    const int K = terms.users;
    const double p = powers(j, k);
    const double n2 = terms.norm2;
    CompensatedSum s1, s2;
    for (int l = 0; l < terms.cells; ++l)
        for (int m = 0; m < K; ++m) {
            const std::size_t i = static_cast<std::size_t>(l) * K + m;
            s1.add(powers(l, m) * terms.linear[i]);
            if (l == j && m == k)
                s2.add(p * (terms.quadratic[i] - n2 * n2));
            else
                s2.add(powers(l, m) * terms.quadratic[i]);
        }
    s1.add(terms.distortion);
    s1.add(xi * n2);
    SinrPolynomial poly{p * n2 * n2, s1.value(), std::max(0.0, s2.value())};
    if (s2.value() < -kNegativeTolerance * std::max(poly.num, 1e-300))
        fail(ErrorCode::Numerical, "negative interference excess");
    return poly;
}

std::vector<MomentTerms> mrc_terms_trajectory(const EstimatorCache &cache, int k)
{
    const Placement &pl = cache.book().placement();
    const double delta = cache.hardware().delta;
    const int tau_first = pl.tau.front(), tau_last = pl.tau.back();
    std::vector<MomentTerms> out;
    out.reserve(pl.data.size());
    if (pl.data.empty())
        return out;
    if (delta == 0.0) {
        out.assign(pl.data.size(), mrc_terms(cache, k, pl.data.front()));
        return out;
    }
    std::optional<DampingSplit> after, before;
    for (int t : pl.data) {
        if (t > tau_last) {
            if (!after)
                after = mrc_terms_split(cache, k, tau_last);
            out.push_back(after->evaluate(std::exp(-delta * (t - tau_last))));
        } else if (t < tau_first) {
            if (!before)
                before = mrc_terms_split(cache, k, tau_first);
            out.push_back(before->evaluate(std::exp(-delta * (tau_first - t))));
        } else {
            out.push_back(mrc_terms(cache, k, t));
        }
    }
    return out;
}

namespace {

// SINR polynomial coefficients at damping beta = alpha^2, from the two
// parts of a DampingSplit: num ~ beta^2, s1 and s2 ~ beta and beta^2.
struct SplitSums
{
    double num4 = 0.0;
    double s1_2 = 0.0, s1_4 = 0.0;
    double s2_2 = 0.0, s2_4 = 0.0;

    SinrPolynomial at(double beta) const
    {
        const double b2 = beta * beta;
        return {num4 * b2, beta * s1_2 + b2 * s1_4, std::max(0.0, beta * s2_2 + b2 * s2_4)};
    }
};

SplitSums split_sums(const DampingSplit &d, const MatrixR &powers, int j, int k, double xi)
{
    const int K = d.second.users;
    const double p = powers(j, k);
    const double n2 = d.second.norm2; // the fourth-order part has no norm
    CompensatedSum s1_2, s1_4, s2_2, s2_4;
    for (int l = 0; l < d.second.cells; ++l)
        for (int m = 0; m < K; ++m) {
            const std::size_t i = static_cast<std::size_t>(l) * K + m;
            const double pl = powers(l, m);
            s1_2.add(pl * d.second.linear[i]);
            s1_4.add(pl * d.fourth.linear[i]);
            s2_2.add(pl * d.second.quadratic[i]);
            if (l == j && m == k)
                s2_4.add(p * (d.fourth.quadratic[i] - n2 * n2));
            else
                s2_4.add(pl * d.fourth.quadratic[i]);
        }
    s1_2.add(d.second.distortion + xi * n2);
    s1_4.add(d.fourth.distortion + xi * d.fourth.norm2);
    return {p * n2 * n2, s1_2.value(), s1_4.value(), s2_2.value(), s2_4.value()};
}

} // namespace

std::vector<SinrPolynomial> mrc_sinr_trajectory(const EstimatorCache &cache, int k)
{
    const Placement &pl = cache.book().placement();
    const double delta = cache.hardware().delta;
    const double xi = cache.hardware().xi;
    const int j = cache.cell(), K = cache.users();
    const int tau_first = pl.tau.front(), tau_last = pl.tau.back();
    MatrixR powers(cache.cells(), K);
    for (int l = 0; l < cache.cells(); ++l)
        for (int m = 0; m < K; ++m)
            powers(l, m) = cache.power(l, m);

    std::vector<SinrPolynomial> out;
    out.reserve(pl.data.size());
    if (pl.data.empty())
        return out;
    if (delta == 0.0) {
        out.assign(pl.data.size(), sinr_polynomial(mrc_terms(cache, k, pl.data.front()), powers, j, k, xi));
        return out;
    }
    std::optional<SplitSums> after, before;
    for (int t : pl.data) {
        if (t > tau_last) {
            if (!after)
                after = split_sums(mrc_terms_split(cache, k, tau_last), powers, j, k, xi);
            out.push_back(after->at(std::exp(-delta * (t - tau_last))));
        } else if (t < tau_first) {
            if (!before)
                before = split_sums(mrc_terms_split(cache, k, tau_first), powers, j, k, xi);
            out.push_back(before->at(std::exp(-delta * (tau_first - t))));
        } else {
            out.push_back(sinr_polynomial(mrc_terms(cache, k, t), powers, j, k, xi));
        }
    }
    return out;
}

std::vector<std::vector<RateReport>> mrc_rates(const EstimatorCache &cache, std::span<const int> antennas)
{
    const int K = cache.users(), G = cache.groups(), j = cache.cell();
    const Placement &pl = cache.book().placement();
    const int T = pl.block_length, B = cache.pilot_length();

    std::vector<double> mus;
    for (int N : antennas) {
        require(N >= G && N % G == 0, "array size must be a multiple of A");
        mus.push_back(static_cast<double>(N / G));
    }

    std::vector<std::vector<RateReport>> out(antennas.size(), std::vector<RateReport>(K));
    for (int k = 0; k < K; ++k) {
        const std::vector<SinrPolynomial> poly = mrc_sinr_trajectory(cache, k);
        for (std::size_t n = 0; n < mus.size(); ++n) {
            RateReport &r = out[n][k];
            r.cell = j;
            r.ue = k;
            r.t = pl.data;
            r.sinr.resize(poly.size());
            for (std::size_t i = 0; i < poly.size(); ++i)
                r.sinr[i] = poly[i].at(mus[n]);
            r.rate = ergodic_rate(r.sinr, T, B);
        }
    }
    return out;
}

std::vector<RateReport> mrc_rates(const EstimatorCache &cache)
{
    const int N = cache.antennas();
    return mrc_rates(cache, std::span<const int>(&N, 1)).front();
}

std::string ExtendedReal::to_string() const
{
    if (infinite)
        return "inf";
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
}

ExtendedReal asymptotic_sinr(const MomentTerms &terms, const MatrixR &powers, int j, int k)
{
    return sinr_polynomial(terms, powers, j, k, 0.0).limit();
}

ExtendedReal asymptotic_sinr(const EstimatorCache &cache, int k, int t)
{
    const AsymptoticParts parts = asymptotic_parts(cache, k, t);
    const int j = cache.cell(), K = cache.users();
    const double p = cache.power(j, k);
    CompensatedSum den;
    for (int l = 0; l < cache.cells(); ++l)
        for (int m = 0; m < K; ++m)
            den.add(cache.power(l, m) * parts.interference[l * K + m]);
    den.add(-p * parts.signal);
    const double num = p * parts.signal;
    if (den.value() <= 1e-10 * num)
        return ExtendedReal::infinity();
    return {num / den.value(), false};
}

AsymptoticParts asymptotic_parts(const EstimatorCache &cache, int k, int t)
{
    const MomentTerms terms = mrc_terms(cache, k, t);
    AsymptoticParts a;
    a.signal = terms.norm2 * terms.norm2;
    a.interference = terms.quadratic;
    return a;
}

ScalingVerdict check_scaling_law(const ScalingExponents &e, LoMode lo, int t, std::span<const int> tau)
{
    require(e.z1 >= 0.0 && e.z2 >= 0.0 && e.z3 >= 0.0, "scaling exponents must be nonnegative");
    require(!tau.empty(), "need at least one pilot instant");
    const double zmax = std::max(e.z1, e.z2);
    ScalingVerdict v;
    if (lo == LoMode::Common) {
        v.margin = 0.5 - zmax;
        if (e.z3 > 0.0)
            v.margin = std::min(v.margin, -e.z3);
        v.satisfied = zmax <= 0.5 && e.z3 == 0.0;
        return v;
    }
    int dmin = std::abs(t - tau.front());
    for (int s : tau)
        dmin = std::min(dmin, std::abs(t - s));
    const double lhs = zmax + e.z3 * e.delta_0 * dmin / 2.0;
    v.margin = 0.5 - lhs;
    v.satisfied = lhs <= 0.5;
    return v;
}

HardwareProfile scaled_profile(const ScalingExponents &e, LoMode lo, double N, double sigma2)
{
    require(N >= 1.0, "N must be at least 1");
    HardwareProfile hw;
    hw.kappa2 = e.kappa2_0 * std::pow(N, e.z1);
    hw.xi = e.xi_0 * std::pow(N, e.z2);
    hw.delta = e.delta_0 * (1.0 + e.z3 * std::log(N));
    hw.lo_mode = lo;
    if (hw.xi < sigma2)
        fail(ErrorCode::InvalidArgument, "scaled xi below sigma2");
    return hw;
}

} // namespace hwmimo
