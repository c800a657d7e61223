// SPDX-License-Identifier: Apache-2.0
//
// beamsim: wideband THz RIS beamforming simulator
// Copyright (C) 2026 The beamsim Authors
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

#include "oracles.hpp"

#include <Eigen/Cholesky>

namespace beamsim::oracle
{
    double uniform(Rng &rng, double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    CMatrix random_matrix(Rng &rng, Eigen::Index rows, Eigen::Index cols, double scale)
    {
        std::normal_distribution<double> n(0.0, scale / std::sqrt(2.0));
        CMatrix a(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j)
                a(i, j) = {n(rng), n(rng)};
        return a;
    }

    CVector random_vector(Rng &rng, Eigen::Index n, double scale) { return random_matrix(rng, n, 1, scale).col(0); }

    channel::ChannelSet random_channel_set(Rng &rng, int num_ris, int num_subcarriers, int num_users, int n_tx,
                                           int rows, int cols)
    {
        channel::ChannelSet ch;
        ch.num_ris = num_ris;
        ch.num_subcarriers = num_subcarriers;
        ch.num_users = num_users;
        ch.n_tx = n_tx;
        ch.ris_rows = rows;
        ch.ris_cols = cols;
        ch.f_c = 100e9;
        ch.frequencies = channel::subcarrier_frequencies(ch.f_c, 10e9, num_subcarriers);
        const int n = rows * cols;
        for (int i = 0; i < num_ris * num_subcarriers; ++i)
            ch.G.push_back(random_matrix(rng, n, n_tx));
        for (int i = 0; i < num_ris * num_subcarriers * num_users; ++i)
            ch.f.push_back(random_matrix(rng, 1, n).row(0));
        ch.paths.bs_ris.assign(num_ris, std::vector<channel::PathParams>(1));
        ch.paths.ris_user.assign(num_ris, std::vector<std::vector<channel::PathParams>>(
                                              num_users, std::vector<channel::PathParams>(1)));
        return ch;
    }

    ReflectionState random_reflection(Rng &rng, int num_ris, int elements)
    {
        ReflectionState psi = ReflectionState::filled(num_ris, elements, 0.0);
        for (Eigen::Index i = 0; i < psi.psi.size(); ++i)
            psi.psi[i] = std::sqrt(uniform(rng, 0.0, 1.0)) * unit_phasor(uniform(rng, 0.0, 2.0 * kPi));
        return psi;
    }

    CRowVector loop_cascade(const channel::ChannelSet &ch, const ReflectionState &psi, int m, int k)
    {
        const int n = ch.ris_elements();
        CRowVector h = CRowVector::Zero(ch.n_tx);
        for (int r = 0; r < ch.num_ris; ++r)
        {
            const CMatrix &G = ch.G[std::size_t(r) * ch.num_subcarriers + m];
            const CRowVector &f = ch.f[(std::size_t(r) * ch.num_subcarriers + m) * ch.num_users + k];
            for (int t = 0; t < ch.n_tx; ++t)
                for (int i = 0; i < n; ++i)
                    h[t] += f[i] * psi.psi[r * n + i] * G(i, t);
        }
        return h;
    }

    double loop_sinr(const channel::ChannelSet &ch, const std::vector<CMatrix> &fa, const digital::PrecoderSet &d,
                     const ReflectionState &psi, double sigma2, int m, int k)
    {
        const CRowVector h = loop_cascade(ch, psi, m, k);
        double signal = 0.0, interference = 0.0;
        for (int j = 0; j < ch.num_users; ++j)
        {
            cd acc = 0.0;
            for (Eigen::Index t = 0; t < fa[m].rows(); ++t)
                for (Eigen::Index n = 0; n < fa[m].cols(); ++n)
                    acc += h[t] * fa[m](t, n) * d.d[m](n, j);
            (j == k ? signal : interference) += std::norm(acc);
        }
        return signal / (interference + sigma2);
    }

    double loop_sum_rate(const channel::ChannelSet &ch, const std::vector<CMatrix> &fa,
                         const digital::PrecoderSet &d, const ReflectionState &psi, double sigma2)
    {
        double rate = 0.0;
        for (int m = 0; m < ch.num_subcarriers; ++m)
            for (int k = 0; k < ch.num_users; ++k)
                rate += std::log2(1.0 + loop_sinr(ch, fa, d, psi, sigma2, m, k));
        return rate;
    }

    double weighted_mse(const std::vector<CMatrix> &hhat, const digital::PrecoderSet &d, const Eigen::MatrixXcd &u,
                        const RMatrix &tau, double sigma2)
    {
        double total = 0.0;
        for (std::size_t m = 0; m < hhat.size(); ++m)
            for (Eigen::Index k = 0; k < hhat[m].rows(); ++k)
            {
                // e = conj(u) y - s with y = sum_j hhat_k d_j s_j + n
                double eps = std::norm(u(m, k)) * sigma2;
                for (Eigen::Index j = 0; j < hhat[m].rows(); ++j)
                {
                    cd hd = 0.0;
                    for (Eigen::Index n = 0; n < hhat[m].cols(); ++n)
                        hd += hhat[m](k, n) * d.d[m](n, j);
                    const cd e = std::conj(u(m, k)) * hd - (j == k ? 1.0 : 0.0);
                    eps += std::norm(e);
                }
                total += tau(m, k) * eps;
            }
        return total;
    }

    double power_iteration(const CMatrix &a, int iterations)
    {
        CVector x = CVector::Ones(a.rows());
        double value = 0.0;
        for (int i = 0; i < iterations; ++i)
        {
            const CVector y = a * x;
            const double norm = y.norm();
            if (norm == 0.0)
                return 0.0;
            value = std::real(x.dot(y)) / x.squaredNorm();
            x = y / norm;
        }
        return value * 1.01;
    }

    digital::PrecoderSet projected_gradient_precoder(const std::vector<CMatrix> &hhat, const std::vector<CMatrix> &fa,
                                               const Eigen::MatrixXcd &u, const RMatrix &tau, double p_max,
                                               int iterations)
    {
        const std::size_t M = hhat.size();
        std::vector<CMatrix> H(M), c(M), Linv(M);
        double lip = 0.0;
        for (std::size_t m = 0; m < M; ++m)
        {
            const Eigen::Index n_rf = hhat[m].cols();
            const Eigen::Index K = hhat[m].rows();
            CMatrix A = CMatrix::Zero(n_rf, n_rf);
            CMatrix cm(n_rf, K);
            for (Eigen::Index k = 0; k < K; ++k)
            {
                const CVector hk = hhat[m].row(k).adjoint();
                A += tau(m, k) * std::norm(u(m, k)) * hk * hk.adjoint();
                cm.col(k) = tau(m, k) * u(m, k) * hk;
            }
            // whitening e = L^H d with F^H F = L L^H
            const Eigen::LLT<CMatrix> llt(fa[m].adjoint() * fa[m]);
            const CMatrix L = llt.matrixL();
            Linv[m] = L.inverse();
            H[m] = Linv[m] * A * Linv[m].adjoint();
            c[m] = Linv[m] * cm;
            lip = std::max(lip, power_iteration(H[m]));
        }
        const double step = 1.0 / std::max(lip, 1e-300);

        std::vector<CMatrix> e(M), prev(M), y(M);
        for (std::size_t m = 0; m < M; ++m)
            e[m] = prev[m] = y[m] = CMatrix::Zero(c[m].rows(), c[m].cols());
        double t = 1.0;
        for (int it = 0; it < iterations; ++it)
        {
            double norm2 = 0.0;
            for (std::size_t m = 0; m < M; ++m)
            {
                prev[m] = e[m];
                e[m] = y[m] - step * (H[m] * y[m] - c[m]);
                norm2 += e[m].squaredNorm();
            }
            if (norm2 > p_max)
                for (auto &em : e)
                    em *= std::sqrt(p_max / norm2);
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            for (std::size_t m = 0; m < M; ++m)
                y[m] = e[m] + ((t - 1.0) / t_next) * (e[m] - prev[m]);
            t = t_next;
        }

        digital::PrecoderSet d;
        for (std::size_t m = 0; m < M; ++m)
            d.d.push_back(Linv[m].adjoint() * e[m]);
        return d;
    }

    CVector projected_gradient_qcqp(const CMatrix &lambda, const CVector &upsilon, int iterations)
    {
        const double step = 1.0 / std::max(power_iteration(lambda), 1e-300);
        auto clip = [](CVector x)
        {
            for (Eigen::Index i = 0; i < x.size(); ++i)
                if (std::abs(x[i]) > 1.0)
                    x[i] /= std::abs(x[i]);
            return x;
        };
        CVector x = CVector::Zero(upsilon.size());
        CVector y = x;
        double t = 1.0;
        for (int it = 0; it < iterations; ++it)
        {
            const CVector prev = x;
            x = clip(y - step * (lambda * y - upsilon));
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            y = x + ((t - 1.0) / t_next) * (x - prev);
            t = t_next;
        }
        return x;
    }
}
