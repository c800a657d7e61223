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

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

using namespace beamsim;
using namespace beamsim::ris;

namespace
{
    struct Problem
    {
        channel::ChannelSet ch;
        std::vector<CMatrix> w;
        ReflectionState psi;
        double sigma2 = 0.5;
    };

    Problem random_problem(oracle::Rng &rng, int R = 2, int M = 3, int K = 2, int n_tx = 4, int rows = 2,
                           int cols = 3)
    {
        Problem p;
        p.ch = oracle::random_channel_set(rng, R, M, K, n_tx, rows, cols);
        for (int m = 0; m < M; ++m)
            p.w.push_back(oracle::random_matrix(rng, n_tx, K, 0.3));
        p.psi = oracle::random_reflection(rng, R, rows * cols);
        return p;
    }

    channel::ChannelSet scalar_channel()
    {
        channel::ChannelSet ch;
        ch.num_ris = ch.num_subcarriers = ch.num_users = ch.n_tx = ch.ris_rows = ch.ris_cols = 1;
        ch.f_c = 1.0;
        ch.frequencies = {1.0};
        ch.G = {CMatrix::Ones(1, 1)};
        ch.f = {CRowVector::Ones(1)};
        return ch;
    }

    std::vector<CMatrix> as_identity(int n, int M)
    {
        return std::vector<CMatrix>(M, CMatrix::Identity(n, n));
    }
}

TEST(Auxiliary, ScalarExamples)
{
    const auto ch = scalar_channel();
    const std::vector<CMatrix> w{CMatrix::Ones(1, 1)};
    const auto psi = ReflectionState::filled(1, 1, 1.0);
    const RMatrix rho = rho_update(ch, psi, w, 1.0);
    EXPECT_DOUBLE_EQ(rho(0, 0), 1.0);
    const auto chi = chi_update(ch, psi, w, rho, 1.0);
    EXPECT_NEAR(std::abs(chi(0, 0) - cd(std::sqrt(0.5))), 0.0, 1e-15);
}

TEST(Auxiliary, RhoIsSinr)
{
    oracle::Rng rng(3);
    Problem p = random_problem(rng);
    const RMatrix rho = rho_update(p.ch, p.psi, p.w, p.sigma2);
    digital::PrecoderSet d;
    d.d = p.w;
    const auto fa = as_identity(p.ch.n_tx, p.ch.num_subcarriers);
    for (int m = 0; m < p.ch.num_subcarriers; ++m)
        for (int k = 0; k < p.ch.num_users; ++k)
        {
            const double ref = oracle::loop_sinr(p.ch, fa, d, p.psi, p.sigma2, m, k);
            EXPECT_NEAR(rho(m, k), ref, 1e-10 * ref);
        }
}

TEST(Auxiliary, LdrAtOptimalRhoIsLogSum)
{
    oracle::Rng rng(4);
    Problem p = random_problem(rng);
    const RMatrix rho = rho_update(p.ch, p.psi, p.w, p.sigma2);
    double ref = 0.0;
    for (Eigen::Index i = 0; i < rho.size(); ++i)
        ref += std::log1p(rho.data()[i]);
    EXPECT_NEAR(ldr_objective(p.ch, p.psi, p.w, rho, p.sigma2), ref, 1e-10 * ref);

    // rho is the maximizer: perturbing it lowers f
    for (double delta : {-0.05, 0.05})
    {
        RMatrix moved = rho;
        moved(1, 0) = std::max(moved(1, 0) + delta, 0.0);
        EXPECT_LE(ldr_objective(p.ch, p.psi, p.w, moved, p.sigma2), ref + 1e-12);
    }
}

TEST(Auxiliary, ChiIsStationary)
{
    oracle::Rng rng(5);
    Problem p = random_problem(rng);
    const RMatrix rho = rho_update(p.ch, p.psi, p.w, p.sigma2);
    const auto chi = chi_update(p.ch, p.psi, p.w, rho, p.sigma2);
    const double base = transformed_objective_direct(p.ch, p.psi, p.w, rho, chi, p.sigma2);
    // at the optimal chi the transform recovers the ratio terms of f
    double lifted = 0.0;
    for (Eigen::Index i = 0; i < rho.size(); ++i)
        lifted += std::log1p(rho.data()[i]) - rho.data()[i];
    EXPECT_NEAR(base, ldr_objective(p.ch, p.psi, p.w, rho, p.sigma2) - lifted, 1e-10 * std::abs(base));
    const double step = 1e-6;
    for (cd dir : {cd(1.0, 0.0), cd(0.0, 1.0)})
    {
        auto up = chi, dn = chi;
        up(2, 1) += step * dir;
        dn(2, 1) -= step * dir;
        const double g = (transformed_objective_direct(p.ch, p.psi, p.w, rho, up, p.sigma2) -
                          transformed_objective_direct(p.ch, p.psi, p.w, rho, dn, p.sigma2)) /
                         (2 * step);
        EXPECT_NEAR(g, 0.0, 1e-6);
    }
}

TEST(Quadratic, MatchesDirectEvaluation)
{
    oracle::Rng rng(6);
    Problem p = random_problem(rng);
    const RMatrix rho = rho_update(p.ch, p.psi, p.w, p.sigma2);
    const auto chi = chi_update(p.ch, p.psi, p.w, rho, p.sigma2);
    const QuadraticForm qf = assemble_quadratic(p.ch, p.w, rho, chi, p.sigma2);
    EXPECT_GT(qf.varsigma, 0.0);
    for (int trial = 0; trial < 100; ++trial)
    {
        const ReflectionState psi = oracle::random_reflection(rng, p.ch.num_ris, p.ch.ris_elements());
        const double direct = transformed_objective_direct(p.ch, psi, p.w, rho, chi, p.sigma2);
        EXPECT_NEAR(qf.transformed_objective(psi.psi), direct, 1e-10 * std::max(1.0, std::abs(direct)));
    }
}

TEST(Quadratic, LambdaIsHermitianPsd)
{
    oracle::Rng rng(7);
    Problem p = random_problem(rng);
    const RMatrix rho = rho_update(p.ch, p.psi, p.w, p.sigma2);
    const auto chi = chi_update(p.ch, p.psi, p.w, rho, p.sigma2);
    const QuadraticForm qf = assemble_quadratic(p.ch, p.w, rho, chi, p.sigma2);
    EXPECT_LT((qf.lambda - qf.lambda.adjoint()).norm(), 1e-14 * qf.lambda.norm());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(qf.lambda);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-12 * eig.eigenvalues().maxCoeff());
    EXPECT_NEAR(eig.eigenvalues().maxCoeff(), oracle::power_iteration(qf.lambda) / 1.01,
                1e-6 * eig.eigenvalues().maxCoeff());
}

TEST(Quadratic, RejectsMismatchedBeams)
{
    oracle::Rng rng(8);
    Problem p = random_problem(rng);
    p.w.pop_back();
    EXPECT_THROW(rho_update(p.ch, p.psi, p.w, p.sigma2), std::invalid_argument);
}

TEST(Admm, IdentityExamples)
{
    QuadraticForm qf;
    qf.lambda = CMatrix::Identity(2, 2);
    qf.upsilon = CVector(2);
    qf.upsilon << 2.0, 0.3;
    const auto start = ReflectionState::filled(1, 2, 0.0);
    AdmmResult res = admm_solve(qf, start, {1e-10, 5000});
    EXPECT_TRUE(res.converged);
    EXPECT_NEAR(std::abs(res.psi.psi[0] - cd(1.0)), 0.0, 1e-7);
    EXPECT_NEAR(std::abs(res.psi.psi[1] - cd(0.3)), 0.0, 1e-7);

    qf.upsilon.setZero();
    res = admm_solve(qf, ReflectionState::filled(1, 2, cd(0.5, 0.5)), {1e-10, 5000});
    EXPECT_LT(res.psi.psi.norm(), 1e-7);
}

TEST(Admm, DimensionMismatchThrows)
{
    QuadraticForm qf;
    qf.lambda = CMatrix::Identity(3, 3);
    qf.upsilon = CVector::Zero(3);
    EXPECT_THROW(admm_solve(qf, ReflectionState::filled(1, 2, 0.0)), std::invalid_argument);
}

TEST(Admm, MatchesProjectedGradient)
{
    oracle::Rng rng(11);
    for (int trial = 0; trial < 10; ++trial)
    {
        const int n = 4 + trial;
        const CMatrix a = oracle::random_matrix(rng, n, n / 2 + 1);
        QuadraticForm qf;
        qf.lambda = a * a.adjoint();
        qf.upsilon = oracle::random_vector(rng, n, 2.0);
        const CVector ref = oracle::projected_gradient_qcqp(qf.lambda, qf.upsilon);
        const AdmmResult res = admm_solve(qf, ReflectionState::filled(1, n, 1.0), {1e-9, 20000});
        EXPECT_LE(res.psi.max_modulus(), 1.0 + 1e-12);
        const double j = qf.qcqp_objective(res.psi.psi);
        const double j_ref = qf.qcqp_objective(ref);
        EXPECT_NEAR(j, j_ref, 1e-4 * std::abs(j_ref)) << "trial " << trial;
    }
}

TEST(Admm, EveryIterateFeasible)
{
    oracle::Rng rng(12);
    const CMatrix a = oracle::random_matrix(rng, 6, 3);
    QuadraticForm qf;
    qf.lambda = a * a.adjoint();
    qf.upsilon = oracle::random_vector(rng, 6, 3.0);
    for (int cap = 1; cap <= 30; ++cap)
    {
        AdmmParams params;
        params.max_iter = cap;
        EXPECT_LE(admm_solve(qf, ReflectionState::filled(1, 6, 1.0), params).psi.max_modulus(), 1.0 + 1e-12);
    }
}

TEST(Admm, UnitModulusProjection)
{
    oracle::Rng rng(13);
    const CMatrix a = oracle::random_matrix(rng, 5, 5);
    QuadraticForm qf;
    qf.lambda = a * a.adjoint();
    qf.upsilon = oracle::random_vector(rng, 5);
    AdmmParams params;
    params.unit_modulus = true;
    const AdmmResult res = admm_solve(qf, ReflectionState::filled(1, 5, 1.0), params);
    for (Eigen::Index i = 0; i < 5; ++i)
        EXPECT_NEAR(std::abs(res.psi.psi[i]), 1.0, 1e-12);
}

TEST(RisLoop, MonotoneAndFeasible)
{
    oracle::Rng rng(14);
    Problem p = random_problem(rng, 2, 4, 3, 6, 3, 3);
    const RisLoopResult res = ris_loop(p.ch, p.w, p.psi, p.sigma2, {1e-8, 100, {}});
    ASSERT_GE(res.trace.size(), 2u);
    for (std::size_t i = 1; i < res.trace.size(); ++i)
        EXPECT_GE(res.trace[i], res.trace[i - 1] - 1e-9);
    EXPECT_LE(res.psi.max_modulus(), 1.0 + 1e-12);
    EXPECT_GT(res.trace.back(), res.trace.front());

    digital::PrecoderSet d;
    d.d = p.w;
    const double rate = oracle::loop_sum_rate(p.ch, as_identity(p.ch.n_tx, p.ch.num_subcarriers), d, res.psi,
                                               p.sigma2);
    EXPECT_NEAR(res.trace.back(), rate * std::log(2.0), 1e-9 * rate);
}

TEST(Init, ScalarGeometryIsUnitModulus)
{
    oracle::Rng rng(15);
    const auto ch = oracle::random_channel_set(rng, 3, 2, 2, 4, 4, 4);
    const ReflectionState psi = beam_split_aware_init(ch);
    EXPECT_EQ(psi.size(), 48);
    for (Eigen::Index i = 0; i < psi.psi.size(); ++i)
        EXPECT_NEAR(std::abs(psi.psi[i]), 1.0, 1e-15);
}
