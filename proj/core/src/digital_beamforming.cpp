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

#include "beamsim/digital_beamforming.hpp"
#include "beamsim/errors.hpp"

#include <Eigen/Eigenvalues>

#include <limits>
#include <stdexcept>

namespace beamsim::digital
{
    namespace
    {
        constexpr double kRankTol = 1e-12;

        void check_sizes(std::span<const CMatrix> hhat, const PrecoderSet &d)
        {
            if (hhat.size() != d.d.size())
                throw std::invalid_argument("channel and precoder subcarrier counts differ");
        }

        // Per-subcarrier reduction of the stationarity system to a diagonal one:
        // d_k(mu) = basis * (lambda + mu)^{-1} g_k, ||F_A d_k||^2 = sum_i |g_ki|^2 / (lambda_i + mu)^2
        struct ReducedSystem
        {
            CMatrix basis;  // N_RF x r
            RVector lambda; // r
            CMatrix g;      // r x K
            CMatrix A, B, c;
        };

        ReducedSystem reduce(const CMatrix &h, const Eigen::VectorXcd &u, const RVector &tau, const CMatrix &fa)
        {
            const Eigen::Index n_rf = h.cols();
            const Eigen::Index K = h.rows();
            ReducedSystem sys;
            sys.B = fa.adjoint() * fa;
            sys.A = CMatrix::Zero(n_rf, n_rf);
            sys.c = CMatrix::Zero(n_rf, K);
            for (Eigen::Index k = 0; k < K; ++k)
            {
                const CVector hk = h.row(k).adjoint();
                sys.A.noalias() += tau[k] * std::norm(u[k]) * hk * hk.adjoint();
                sys.c.col(k) = tau[k] * u[k] * hk;
            }
            sys.A = (0.5 * (sys.A + sys.A.adjoint())).eval();

            Eigen::SelfAdjointEigenSolver<CMatrix> eb(0.5 * (sys.B + sys.B.adjoint()));
            const RVector &s = eb.eigenvalues();
            const double s_max = s.size() ? s.maxCoeff() : 0.0;
            std::vector<Eigen::Index> keep;
            for (Eigen::Index i = 0; i < s.size(); ++i)
                if (s[i] > kRankTol * s_max && s[i] > 0.0)
                    keep.push_back(i);
            CMatrix W(n_rf, Eigen::Index(keep.size()));
            for (std::size_t i = 0; i < keep.size(); ++i)
                W.col(Eigen::Index(i)) = eb.eigenvectors().col(keep[i]) / std::sqrt(s[keep[i]]);

            const CMatrix T = W.adjoint() * sys.A * W;
            Eigen::SelfAdjointEigenSolver<CMatrix> et(0.5 * (T + T.adjoint()));
            sys.lambda = et.eigenvalues().cwiseMax(0.0);
            sys.basis = W * et.eigenvectors();
            sys.g = et.eigenvectors().adjoint() * (W.adjoint() * sys.c);
            return sys;
        }

        // components outside the range of A carry no signal and are dropped (pseudo-inverse at mu = 0)
        bool active(const ReducedSystem &sys, Eigen::Index i)
        {
            const double lmax = sys.lambda.size() ? sys.lambda.maxCoeff() : 0.0;
            return sys.lambda[i] > kRankTol * lmax;
        }

        double power_at(const std::vector<ReducedSystem> &systems, double mu)
        {
            double p = 0.0;
            for (const auto &sys : systems)
                for (Eigen::Index i = 0; i < sys.lambda.size(); ++i)
                {
                    if (!active(sys, i))
                        continue;
                    const double den = sys.lambda[i] + mu;
                    p += sys.g.row(i).squaredNorm() / (den * den);
                }
            return p;
        }

        CMatrix precoders_at(const ReducedSystem &sys, double mu)
        {
            CMatrix scaled = CMatrix::Zero(sys.g.rows(), sys.g.cols());
            for (Eigen::Index i = 0; i < sys.lambda.size(); ++i)
                if (active(sys, i))
                    scaled.row(i) = sys.g.row(i) / (sys.lambda[i] + mu);
            return sys.basis * scaled;
        }
    }

    Eigen::MatrixXcd equalizer_update(std::span<const CMatrix> hhat, const PrecoderSet &d, double sigma2)
    {
        check_sizes(hhat, d);
        const int M = int(hhat.size());
        const int K = M ? int(hhat.front().rows()) : 0;
        Eigen::MatrixXcd u(M, K);
        for (int m = 0; m < M; ++m)
        {
            const CMatrix q = hhat[m] * d.d[m]; // q(k, j) = hhat_k d_j
            for (int k = 0; k < K; ++k)
                u(m, k) = q(k, k) / (q.row(k).squaredNorm() + sigma2);
        }
        return u;
    }

    RMatrix mse_eval(std::span<const CMatrix> hhat, const PrecoderSet &d, const Eigen::MatrixXcd &u, double sigma2)
    {
        check_sizes(hhat, d);
        const int M = int(hhat.size());
        const int K = M ? int(hhat.front().rows()) : 0;
        RMatrix eps(M, K);
        for (int m = 0; m < M; ++m)
        {
            const CMatrix q = hhat[m] * d.d[m];
            for (int k = 0; k < K; ++k)
                eps(m, k) = std::norm(u(m, k)) * (q.row(k).squaredNorm() + sigma2) -
                            2.0 * std::real(std::conj(u(m, k)) * q(k, k)) + 1.0;
        }
        return eps;
    }

    RMatrix weight_update(const RMatrix &eps)
    {
        if (eps.size() && !(eps.minCoeff() > 0.0))
            throw std::invalid_argument("weight_update: MSE values must be positive");
        return eps.cwiseInverse();
    }

    double rate_surrogate(double p, double q)
    {
        return -p * q / std::numbers::ln2 + std::log2(p) + 1.0 / std::numbers::ln2;
    }

    RMatrix sinr(std::span<const CMatrix> hhat, const PrecoderSet &d, double sigma2)
    {
        check_sizes(hhat, d);
        const int M = int(hhat.size());
        const int K = M ? int(hhat.front().rows()) : 0;
        RMatrix g(M, K);
        for (int m = 0; m < M; ++m)
        {
            const CMatrix q = hhat[m] * d.d[m];
            for (int k = 0; k < K; ++k)
            {
                const double signal = std::norm(q(k, k));
                g(m, k) = signal / (q.row(k).squaredNorm() - signal + sigma2);
            }
        }
        return g;
    }

    double sum_rate(std::span<const CMatrix> hhat, const PrecoderSet &d, double sigma2)
    {
        const RMatrix g = sinr(hhat, d, sigma2);
        double rate = 0.0;
        for (Eigen::Index i = 0; i < g.size(); ++i)
            rate += std::log2(1.0 + g.data()[i]);
        return rate;
    }

    double transmit_power(const PrecoderSet &d, std::span<const CMatrix> fa)
    {
        if (fa.size() != d.d.size())
            throw std::invalid_argument("analog stage and precoder subcarrier counts differ");
        double p = 0.0;
        for (std::size_t m = 0; m < fa.size(); ++m)
            p += (fa[m] * d.d[m]).squaredNorm();
        return p;
    }

    double weighted_mse_objective(std::span<const CMatrix> hhat, const PrecoderSet &d, const Eigen::MatrixXcd &u,
                        const RMatrix &tau, double sigma2)
    {
        const RMatrix eps = mse_eval(hhat, d, u, sigma2);
        double obj = 0.0;
        for (Eigen::Index i = 0; i < eps.size(); ++i)
            obj += -rate_surrogate(tau.data()[i], eps.data()[i]);
        return obj;
    }

    PrecoderSolution precoder_update(std::span<const CMatrix> hhat, const Eigen::MatrixXcd &u, const RMatrix &tau,
                                     std::span<const CMatrix> fa, double p_max)
    {
        if (hhat.size() != fa.size())
            throw std::invalid_argument("channel and analog stage subcarrier counts differ");
        if (tau.size() && !(tau.minCoeff() > 0.0))
            throw std::invalid_argument("precoder_update: weights must be positive");

        const int M = int(hhat.size());
        std::vector<ReducedSystem> systems;
        systems.reserve(M);
        for (int m = 0; m < M; ++m)
            systems.push_back(reduce(hhat[m], u.row(m).transpose(), tau.row(m).transpose(), fa[m]));

        double mu = 0.0;
        if (power_at(systems, 0.0) > p_max)
        {
            double g2 = 0.0;
            for (const auto &sys : systems)
                g2 += sys.g.squaredNorm();
            // P(mu) <= sum |g|^2 / mu^2 gives a feasible upper end directly
            double hi = std::sqrt(g2 / p_max);
            double lo = 0.0;
            if (!std::isfinite(hi) || hi <= 0.0)
                throw SolverError("precoder_update: cannot bracket the power dual");
            while (power_at(systems, hi) > p_max)
                hi *= 2.0;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it)
            {
                const double mid = 0.5 * (lo + hi);
                if (power_at(systems, mid) > p_max)
                    lo = mid;
                else
                    hi = mid;
            }
            mu = hi;
        }

        PrecoderSolution sol;
        sol.mu = mu;
        sol.d.d.resize(M);
        for (int m = 0; m < M; ++m)
        {
            sol.d.d[m] = precoders_at(systems[m], mu);
            const CMatrix &d = sol.d.d[m];
            const ReducedSystem &sys = systems[m];
            const CMatrix res = sys.A * d + mu * sys.B * d - sys.c;
            const double scale = std::max(sys.c.norm(), std::numeric_limits<double>::min());
            if (sys.c.norm() > 0.0)
                sol.kkt_residual = std::max(sol.kkt_residual, res.norm() / scale);
            if (!d.allFinite())
                throw SolverError("precoder_update: non-finite precoder");
        }
        sol.power = transmit_power(sol.d, fa);
        return sol;
    }

    PrecoderSet matched_filter_init(std::span<const CMatrix> hhat, std::span<const CMatrix> fa, double p_max)
    {
        if (hhat.size() != fa.size())
            throw std::invalid_argument("channel and analog stage subcarrier counts differ");
        const int M = int(hhat.size());
        const int K = M ? int(hhat.front().rows()) : 0;
        const double per_user = M > 0 && K > 0 ? p_max / (M * K) : 0.0;
        PrecoderSet d;
        d.d.resize(M);
        for (int m = 0; m < M; ++m)
        {
            d.d[m] = CMatrix::Zero(hhat[m].cols(), K);
            for (int k = 0; k < K; ++k)
            {
                const CVector v = hhat[m].row(k).adjoint();
                const double radiated = (fa[m] * v).norm();
                if (radiated > 0.0)
                    d.d[m].col(k) = v * (std::sqrt(per_user) / radiated);
            }
        }
        return d;
    }

    WmmseResult wmmse_loop(std::span<const CMatrix> hhat, std::span<const CMatrix> fa, const PrecoderSet &init,
                           double sigma2, double p_max, const WmmseOptions &opt)
    {
        WmmseResult res;
        res.d = init;
        double rate = sum_rate(hhat, res.d, sigma2);
        res.trace.push_back({0, rate, transmit_power(res.d, fa), 0.0});

        for (int it = 1; it <= opt.max_iter; ++it)
        {
            res.state.u = equalizer_update(hhat, res.d, sigma2);
            const RMatrix eps = mse_eval(hhat, res.d, res.state.u, sigma2);
            if (!eps.allFinite() || (eps.array() <= 0.0).any())
                throw SolverError("wmmse_loop: MSE left (0, 1] at iteration " + std::to_string(it));
            res.state.tau = weight_update(eps);
            PrecoderSolution sol = precoder_update(hhat, res.state.u, res.state.tau, fa, p_max);
            res.d = std::move(sol.d);
            res.state.objective_trace.push_back(weighted_mse_objective(hhat, res.d, res.state.u, res.state.tau, sigma2));

            const double next = sum_rate(hhat, res.d, sigma2);
            res.trace.push_back({it, next, sol.power, sol.mu});
            res.iterations = it;
            const bool small = std::abs(next - rate) <= opt.tol * std::max(std::abs(rate), 1e-12);
            rate = next;
            if (small)
            {
                res.converged = true;
                break;
            }
        }
        return res;
    }
}
