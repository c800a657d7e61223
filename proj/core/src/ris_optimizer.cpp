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

#include "beamsim/ris_optimizer.hpp"
#include "beamsim/errors.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace beamsim::ris
{
    namespace
    {
        void check_beams(const channel::ChannelSet &ch, std::span<const CMatrix> w)
        {
            if (int(w.size()) != ch.num_subcarriers)
                throw std::invalid_argument("one beam matrix per subcarrier is required");
            for (const auto &wm : w)
                if (wm.rows() != ch.n_tx || wm.cols() != ch.num_users)
                    throw std::invalid_argument("beam matrices must be N_TX x K");
        }

        double log1p_sum(const RMatrix &rho)
        {
            double s = 0.0;
            for (Eigen::Index i = 0; i < rho.size(); ++i)
                s += std::log1p(rho.data()[i]);
            return s;
        }

        CVector project(const CVector &x, bool unit_modulus)
        {
            CVector z(x.size());
            for (Eigen::Index i = 0; i < x.size(); ++i)
            {
                const double a = std::abs(x[i]);
                if (unit_modulus)
                    z[i] = a > 0.0 ? x[i] / a : cd(1.0, 0.0);
                else
                    z[i] = a > 1.0 ? x[i] / a : x[i];
            }
            return z;
        }
    }

    double QuadraticForm::transformed_objective(const CVector &psi) const
    {
        return -std::real(psi.dot(lambda * psi)) + 2.0 * std::real(psi.dot(upsilon)) - varsigma;
    }

    double QuadraticForm::qcqp_objective(const CVector &psi) const
    {
        return std::real(psi.dot(lambda * psi)) - 2.0 * std::real(psi.dot(upsilon));
    }

    std::vector<Eigen::MatrixXcd> beam_products(const channel::ChannelSet &ch, const ReflectionState &psi,
                                                std::span<const CMatrix> w)
    {
        check_beams(ch, w);
        std::vector<Eigen::MatrixXcd> q(ch.num_subcarriers);
        for (int m = 0; m < ch.num_subcarriers; ++m)
        {
            CMatrix h(ch.num_users, ch.n_tx);
            for (int k = 0; k < ch.num_users; ++k)
                h.row(k) = channel::cascaded_channel(ch, psi, m, k);
            q[m] = h * w[m];
        }
        return q;
    }

    RMatrix rho_update(const channel::ChannelSet &ch, const ReflectionState &psi, std::span<const CMatrix> w,
                       double sigma2)
    {
        const auto q = beam_products(ch, psi, w);
        RMatrix rho(ch.num_subcarriers, ch.num_users);
        for (int m = 0; m < ch.num_subcarriers; ++m)
            for (int k = 0; k < ch.num_users; ++k)
            {
                const double signal = std::norm(q[m](k, k));
                rho(m, k) = signal / (q[m].row(k).squaredNorm() - signal + sigma2);
            }
        return rho;
    }

    Eigen::MatrixXcd chi_update(const channel::ChannelSet &ch, const ReflectionState &psi,
                                std::span<const CMatrix> w, const RMatrix &rho, double sigma2)
    {
        const auto q = beam_products(ch, psi, w);
        Eigen::MatrixXcd chi(ch.num_subcarriers, ch.num_users);
        for (int m = 0; m < ch.num_subcarriers; ++m)
            for (int k = 0; k < ch.num_users; ++k)
                chi(m, k) = std::sqrt(1.0 + rho(m, k)) * q[m](k, k) / (q[m].row(k).squaredNorm() + sigma2);
        return chi;
    }

    QuadraticForm assemble_quadratic(const channel::ChannelSet &ch, std::span<const CMatrix> w, const RMatrix &rho,
                                     const Eigen::MatrixXcd &chi, double sigma2)
    {
        check_beams(ch, w);
        const Eigen::Index n = Eigen::Index(ch.num_ris) * ch.ris_elements();
        QuadraticForm qf;
        qf.lambda = CMatrix::Zero(n, n);
        qf.upsilon = CVector::Zero(n);
        for (int m = 0; m < ch.num_subcarriers; ++m)
        {
            const CMatrix gw = channel::stacked_bs_ris(ch, m) * w[m]; // N x K
            for (int k = 0; k < ch.num_users; ++k)
            {
                const CVector fk = channel::stacked_ris_user(ch, m, k).transpose();
                // column j: q_{k,m,j} = chi conj(f_{m,k} .* G_m w_{m,j}), so that conj(chi) Q_{k,m,j} = q^H psi
                const CMatrix qk = chi(m, k) * (gw.array().colwise() * fk.array()).matrix().conjugate();
                qf.lambda.noalias() += qk * qk.adjoint();
                qf.upsilon += std::sqrt(1.0 + rho(m, k)) * qk.col(k);
                qf.varsigma += std::norm(chi(m, k)) * sigma2;
            }
        }
        qf.lambda = (0.5 * (qf.lambda + qf.lambda.adjoint())).eval();
        return qf;
    }

    double transformed_objective_direct(const channel::ChannelSet &ch, const ReflectionState &psi,
                                        std::span<const CMatrix> w, const RMatrix &rho,
                                        const Eigen::MatrixXcd &chi, double sigma2)
    {
        const auto q = beam_products(ch, psi, w);
        double total = 0.0;
        for (int m = 0; m < ch.num_subcarriers; ++m)
            for (int k = 0; k < ch.num_users; ++k)
            {
                const cd x = chi(m, k);
                total += 2.0 * std::sqrt(1.0 + rho(m, k)) * std::real(std::conj(x) * q[m](k, k)) -
                         std::norm(x) * (q[m].row(k).squaredNorm() + sigma2);
            }
        return total;
    }

    double ldr_objective(const channel::ChannelSet &ch, const ReflectionState &psi, std::span<const CMatrix> w,
                         const RMatrix &rho, double sigma2)
    {
        const auto q = beam_products(ch, psi, w);
        double total = log1p_sum(rho) - rho.sum();
        for (int m = 0; m < ch.num_subcarriers; ++m)
            for (int k = 0; k < ch.num_users; ++k)
                total += (1.0 + rho(m, k)) * std::norm(q[m](k, k)) / (q[m].row(k).squaredNorm() + sigma2);
        return total;
    }

    AdmmResult admm_solve(const QuadraticForm &q, const ReflectionState &psi0, const AdmmParams &params)
    {
        const Eigen::Index n = q.upsilon.size();
        if (q.lambda.rows() != n || q.lambda.cols() != n || psi0.psi.size() != n)
            throw std::invalid_argument("admm_solve: dimension mismatch");
        if (!q.lambda.allFinite() || !q.upsilon.allFinite())
            throw SolverError("admm_solve: non-finite quadratic form");

        Eigen::SelfAdjointEigenSolver<CMatrix> eig(q.lambda);
        if (eig.info() != Eigen::Success)
            throw SolverError("admm_solve: eigendecomposition failed");
        const RVector sigma = eig.eigenvalues().cwiseMax(0.0);
        const CMatrix &V = eig.eigenvectors();
        const CVector v_upsilon = V.adjoint() * q.upsilon;

        double penalty = params.penalty;
        if (penalty <= 0.0)
        {
            penalty = std::real(q.lambda.trace()) / double(std::max<Eigen::Index>(n, 1));
            if (!(penalty > 0.0))
                penalty = 1.0;
        }

        AdmmResult res;
        res.psi = psi0;
        CVector z = project(psi0.psi, params.unit_modulus);
        CVector y = CVector::Zero(n);
        CVector psi = z;
        const double threshold = params.tol * std::sqrt(double(std::max<Eigen::Index>(n, 1)));

        for (int it = 1; it <= params.max_iter; ++it)
        {
            // (Lambda + penalty/2 I) psi = upsilon + penalty/2 (z - y)
            const CVector rhs = v_upsilon + (penalty / 2.0) * (V.adjoint() * (z - y));
            psi = V * (rhs.array() / (sigma.array() + penalty / 2.0)).matrix();

            const CVector z_old = z;
            z = project(psi + y, params.unit_modulus);
            y += psi - z;

            const double primal = (psi - z).norm();
            const double change = (z - z_old).norm();
            res.trace.push_back({it, q.qcqp_objective(z), primal, change, penalty});
            res.iterations = it;
            if (primal < threshold && change < threshold)
            {
                res.converged = true;
                break;
            }

            const double dual = penalty * change;
            if (primal > 10.0 * dual)
            {
                penalty *= 2.0;
                y /= 2.0;
            }
            else if (dual > 10.0 * primal)
            {
                penalty /= 2.0;
                y *= 2.0;
            }
        }
        res.psi.psi = z;
        return res;
    }

    RisLoopResult ris_loop(const channel::ChannelSet &ch, std::span<const CMatrix> w, const ReflectionState &psi0,
                           double sigma2, const RisLoopOptions &opt)
    {
        RisLoopResult res;
        res.psi = psi0;
        RMatrix rho = rho_update(ch, res.psi, w, sigma2);
        double value = log1p_sum(rho);
        res.trace.push_back(value);

        int admm_offset = 0;
        for (int sweep = 1; sweep <= opt.max_sweeps; ++sweep)
        {
            const Eigen::MatrixXcd chi = chi_update(ch, res.psi, w, rho, sigma2);
            const QuadraticForm qf = assemble_quadratic(ch, w, rho, chi, sigma2);
            AdmmResult step = admm_solve(qf, res.psi, opt.admm);
            if (!step.converged)
                ++res.admm_failures;
            for (auto row : step.trace)
            {
                row.iteration += admm_offset;
                res.admm_trace.push_back(row);
            }
            admm_offset += step.iterations;

            // the ADMM iterate is only accepted when it improves the surrogate
            if (qf.qcqp_objective(step.psi.psi) < qf.qcqp_objective(res.psi.psi))
                res.psi = std::move(step.psi);

            rho = rho_update(ch, res.psi, w, sigma2);
            const double next = log1p_sum(rho);
            res.trace.push_back(next);
            res.sweeps = sweep;
            const bool small = std::abs(next - value) <= opt.tol * std::max(std::abs(value), 1e-12);
            value = next;
            if (small)
            {
                res.converged = true;
                break;
            }
        }
        return res;
    }

    ReflectionState beam_split_aware_init(const channel::ChannelSet &ch)
    {
        const int n = ch.ris_elements();
        ReflectionState psi = ReflectionState::filled(ch.num_ris, n, cd(1.0, 0.0));
        for (int r = 0; r < ch.num_ris; ++r)
        {
            const auto &bs = ch.paths.bs_ris[r].front();
            double ky = std::sin(bs.ris_azimuth) * std::sin(bs.ris_elevation);
            double kz = std::cos(bs.ris_elevation);
            double cy = 0.0, cz = 0.0;
            for (const auto &user : ch.paths.ris_user[r])
            {
                const auto &p = user.front();
                cy += std::sin(p.ris_azimuth) * std::sin(p.ris_elevation);
                cz += std::cos(p.ris_elevation);
            }
            if (ch.num_users > 0)
            {
                ky += cy / ch.num_users;
                kz += cz / ch.num_users;
            }
            auto block = psi.block(r);
            for (int mx = 0; mx < ch.ris_rows; ++mx)
                for (int my = 0; my < ch.ris_cols; ++my)
                    block[mx * ch.ris_cols + my] = unit_phasor(-kPi * (mx * ky + my * kz));
        }
        return psi;
    }
}
