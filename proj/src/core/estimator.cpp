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

#include "core/estimator.hpp"

#include "core/channel.hpp"

#include <cmath>

namespace hwmimo {

namespace {

MatrixC unit_xbar_matrix(const VectorC &phi, const std::vector<int> &tau, double delta)
{
    const int B = static_cast<int>(phi.size());
    MatrixC x(B, B);
    for (int b1 = 0; b1 < B; ++b1)
        for (int b2 = 0; b2 < B; ++b2)
            x(b1, b2) = phi(b1) * std::conj(phi(b2)) * phase_correlation(delta, tau[b1] - tau[b2]);
    return x;
}

void check_cell(int cell, int L)
{
    require(cell >= 0 && cell < L, "cell index out of range");
}

void check_instant(int t, int T)
{
    require(t >= 1 && t <= T, "channel use outside 1..T");
}

} // namespace

MatrixC kron(const MatrixC &a, const MatrixC &b)
{
    MatrixC out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

EstimatorCache::EstimatorCache(const Scenario &scenario, const HardwareProfile &hw, const PilotBook &book, int cell)
    : cell_(cell), L_(scenario.cells()), K_(scenario.users()), N_(scenario.antennas()),
      G_(scenario.subarrays()), B_(book.length()),
      multiplicity_(static_cast<double>(scenario.antennas_per_subarray())), hw_(hw), book_(book)
{
    check_cell(cell, L_);
    require(book.cells() == L_ && book.users() == K_, "pilot book does not match the scenario");
    require(book.placement().block_length == scenario.block_length(), "pilot placement does not match T");
    require(hw.xi > 0.0, "xi must be positive");

    gains_.resize(L_ * K_, G_);
    for (int l = 0; l < L_; ++l)
        for (int m = 0; m < K_; ++m) {
            auto g = scenario.gains(cell, l, m);
            for (int a = 0; a < G_; ++a)
                gains_(l * K_ + m, a) = g[a];
        }

    const int R = book.sequences();
    unit_xbar_.reserve(R);
    unit_energy_.reserve(R);
    for (int r = 0; r < R; ++r) {
        VectorC phi = book.unit_sequence(r);
        unit_xbar_.push_back(unit_xbar_matrix(phi, book.tau(), hw.delta));
        unit_energy_.push_back(phi.cwiseAbs2());
    }

    // Omega_a = sum_r (sum_{lm: reuse r} lambda p) X^unit_r + xi I
    omega_.reserve(G_);
    omega_inv_.reserve(G_);
    omega_llt_.reserve(G_);
    for (int a = 0; a < G_; ++a) {
        VectorR weight = VectorR::Zero(R);
        for (int l = 0; l < L_; ++l)
            for (int m = 0; m < K_; ++m)
                weight(book.reuse(l, m)) += gains_(l * K_ + m, a) * book.power(l, m);
        MatrixC om = hw.xi * MatrixC::Identity(B_, B_);
        for (int r = 0; r < R; ++r) {
            if (weight(r) == 0.0)
                continue;
            om += weight(r) * unit_xbar_[r];
            om.diagonal() += (weight(r) * hw.kappa2) * unit_energy_[r].cast<cplx>();
        }
        Eigen::LLT<MatrixC> llt(om);
        if (llt.info() != Eigen::Success)
            fail(ErrorCode::Numerical, "Omega is not positive definite");
        omega_inv_.push_back(llt.solve(MatrixC::Identity(B_, B_)));
        omega_.push_back(std::move(om));
        omega_llt_.push_back(std::move(llt));
    }
}

VectorR EstimatorCache::damping(int t) const
{
    VectorR d(B_);
    for (int b = 0; b < B_; ++b)
        d(b) = phase_correlation(hw_.delta, t - book_.tau()[b]);
    return d;
}

VectorC EstimatorCache::damped_pilot(int l, int k, int t) const
{
    return book_.sequence(l, k).cwiseProduct(damping(t).cast<cplx>());
}

MatrixC EstimatorCache::xbar(int l, int m) const
{
    return book_.power(l, m) * unit_xbar_[book_.reuse(l, m)];
}

MatrixC EstimatorCache::xfull(int l, int m) const
{
    const int r = book_.reuse(l, m);
    MatrixC x = unit_xbar_[r];
    x.diagonal() += hw_.kappa2 * unit_energy_[r].cast<cplx>();
    return book_.power(l, m) * x;
}

VectorC EstimatorCache::solve(int a, const VectorC &rhs) const
{
    return omega_llt_[a].solve(rhs);
}

MatrixC EstimatorCache::psi_reduced() const
{
    // entry (b1*A + a, b2*A + a) = Omega_a(b1, b2)
    MatrixC psi = MatrixC::Zero(B_ * G_, B_ * G_);
    for (int a = 0; a < G_; ++a)
        for (int b1 = 0; b1 < B_; ++b1)
            for (int b2 = 0; b2 < B_; ++b2)
                psi(b1 * G_ + a, b2 * G_ + a) = omega_[a](b1, b2);
    return psi;
}

MatrixC EstimatorCache::whiten(const VectorC &psi) const
{
    require(psi.size() == static_cast<Eigen::Index>(B_) * N_, "psi must have length B*N");
    const int mu = N_ / G_;
    MatrixC z(B_, N_);
    // psi is pilot-major: entry b*N + n
    Eigen::Map<const MatrixC> obs(psi.data(), N_, B_);
    for (int a = 0; a < G_; ++a)
        z.middleCols(a * mu, mu) = omega_inv_[a] * obs.middleRows(a * mu, mu).transpose();
    return z;
}

VectorC EstimatorCache::estimate_whitened(const MatrixC &z, int l, int k, int t) const
{
    check_instant(t, book_.placement().block_length);
    const int mu = N_ / G_;
    VectorC dx = damped_pilot(l, k, t);
    VectorC h(N_);
    for (int a = 0; a < G_; ++a) {
        const double lam = gains_(l * K_ + k, a);
        h.segment(a * mu, mu) = lam * (dx.adjoint() * z.middleCols(a * mu, mu)).transpose();
    }
    return h;
}

ErrorCovariance error_covariance(const EstimatorCache &cache, int l, int k, int t)
{
    const int G = cache.groups();
    const int N = cache.antennas();
    const int mu = N / G;
    check_instant(t, cache.book().placement().block_length);
    VectorC dx = cache.damped_pilot(l, k, t);
    ErrorCovariance c;
    c.diagonal.resize(N);
    for (int a = 0; a < G; ++a) {
        const double lam = cache.gain(l, k, a);
        const double q = dx.dot(cache.solve(a, dx)).real();
        const double e = std::max(0.0, lam - lam * lam * q);
        c.diagonal.segment(a * mu, mu).setConstant(e);
        c.mse += mu * e;
    }
    return c;
}

EstimateResult lmmse_estimate(const EstimatorCache &cache, const VectorC &psi, int l, int k, int t)
{
    EstimateResult r;
    r.hhat = cache.estimate_whitened(cache.whiten(psi), l, k, t);
    auto c = error_covariance(cache, l, k, t);
    r.error = std::move(c.diagonal);
    r.mse = c.mse;
    return r;
}

EstimateResult lmmse_estimate_colocated(const EstimatorCache &cache, const VectorC &psi, int l, int k, int t)
{
    const int L = cache.cells(), K = cache.users(), G = cache.groups();
    const int B = cache.pilot_length(), N = cache.antennas();
    require(psi.size() == static_cast<Eigen::Index>(B) * N, "psi must have length B*N");
    check_instant(t, cache.book().placement().block_length);

    auto scalar_gain = [&](int ll, int mm) {
        const double g0 = cache.gain(ll, mm, 0);
        for (int a = 1; a < G; ++a)
            if (std::abs(cache.gain(ll, mm, a) - g0) > 1e-12 * std::max(1.0, std::abs(g0)))
                fail(ErrorCode::InvalidArgument, "covariance is not a scaled identity");
        return g0;
    };

    MatrixC omega = cache.hardware().xi * MatrixC::Identity(B, B);
    for (int ll = 0; ll < L; ++ll)
        for (int mm = 0; mm < K; ++mm)
            omega += scalar_gain(ll, mm) * cache.xfull(ll, mm);

    const double lam = scalar_gain(l, k);
    VectorC dx = cache.damped_pilot(l, k, t);
    Eigen::PartialPivLU<MatrixC> lu(omega);
    VectorC w = lu.solve(dx);

    // (lambda x~^H D Omega^{-1} (x) I_N) psi
    Eigen::Map<const MatrixC> obs(psi.data(), N, B);
    EstimateResult r;
    r.hhat = lam * obs * w.conjugate();
    const double e = lam * (1.0 - lam * dx.dot(w).real());
    r.error = VectorR::Constant(N, e);
    r.mse = N * e;
    return r;
}

DenseEstimator::DenseEstimator(const Scenario &scenario, const HardwareProfile &hw, const PilotBook &book, int cell)
    : cell_(cell), L_(scenario.cells()), K_(scenario.users()), N_(scenario.antennas()), B_(book.length()), hw_(hw),
      tau_(book.tau()), powers_(scenario.powers())
{
    check_cell(cell, L_);
    const int BN = B_ * N_;
    psi_ = hw.xi * MatrixC::Identity(BN, BN);
    for (int l = 0; l < L_; ++l)
        for (int k = 0; k < K_; ++k) {
            VectorC x = book.sequence(l, k);
            pilots_.push_back(x);
            MatrixC xb(B_, B_);
            for (int b1 = 0; b1 < B_; ++b1)
                for (int b2 = 0; b2 < B_; ++b2)
                    xb(b1, b2) = x(b1) * std::conj(x(b2)) * std::exp(-hw.delta / 2.0 * std::abs(tau_[b1] - tau_[b2]));
            xbar_.push_back(xb);
            VectorR lam = scenario.covariance(cell, l, k);
            lambda_.push_back(lam);
            psi_ += kron(xfull(l, k), lam.cast<cplx>().asDiagonal().toDenseMatrix());
        }
    ldlt_.compute(psi_);
    if (ldlt_.info() != Eigen::Success)
        fail(ErrorCode::Numerical, "Psi factorization failed");
}

VectorR DenseEstimator::damping(int t) const
{
    VectorR d(B_);
    for (int b = 0; b < B_; ++b)
        d(b) = std::exp(-hw_.delta / 2.0 * std::abs(t - tau_[b]));
    return d;
}

MatrixC DenseEstimator::xfull(int l, int k) const
{
    MatrixC x = xbar(l, k);
    const VectorC &p = pilots_[l * K_ + k];
    for (int b = 0; b < B_; ++b)
        x(b, b) += hw_.kappa2 * std::norm(p(b));
    return x;
}

MatrixC DenseEstimator::cross(int l, int k, int t) const
{
    VectorC dx = pilots_[l * K_ + k].cwiseProduct(damping(t).cast<cplx>());
    MatrixC row = dx.adjoint();
    return kron(row, lambda_[l * K_ + k].cast<cplx>().asDiagonal().toDenseMatrix());
}

MatrixC DenseEstimator::solve(const MatrixC &rhs) const
{
    return ldlt_.solve(rhs);
}

VectorC DenseEstimator::estimate(const VectorC &psi_obs, int l, int k, int t) const
{
    return cross(l, k, t) * ldlt_.solve(psi_obs);
}

MatrixC DenseEstimator::error_covariance(int l, int k, int t) const
{
    MatrixC a = cross(l, k, t);
    MatrixC c = lambda_[l * K_ + k].cast<cplx>().asDiagonal().toDenseMatrix();
    c -= a * ldlt_.solve(MatrixC(a.adjoint()));
    return c;
}

} // namespace hwmimo
