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

#ifndef BEAMSIM_TYPES_HPP
#define BEAMSIM_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>

namespace beamsim
{
    using cd = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    using CRowVector = Eigen::RowVectorXcd;
    using RVector = Eigen::VectorXd;
    using RMatrix = Eigen::MatrixXd;

    inline constexpr double kSpeedOfLight = 299792458.0; // [m/s], exact
    inline constexpr double kPi = std::numbers::pi;

    inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
    inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts / 1e-3); }

    // e^{j x}
    inline cd unit_phasor(double x) { return {std::cos(x), std::sin(x)}; }
}

#endif
