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

#ifndef BEAMSIM_REFLECTION_STATE_HPP
#define BEAMSIM_REFLECTION_STATE_HPP

#include "beamsim/types.hpp"

namespace beamsim
{
    // Stacked RIS reflection vector psi = [psi_1; ...; psi_R], each block row-major over (m_x, m_y).
    // Phi = diag(psi) is never formed explicitly.
    struct ReflectionState
    {
        int num_ris = 0;
        int elements_per_ris = 0;
        CVector psi;

        ReflectionState() = default;
        ReflectionState(int num_ris_, int elements_per_ris_, CVector psi_)
            : num_ris(num_ris_), elements_per_ris(elements_per_ris_), psi(std::move(psi_)) {}

        static ReflectionState filled(int num_ris, int elements_per_ris, cd value)
        {
            return {num_ris, elements_per_ris, CVector::Constant(num_ris * elements_per_ris, value)};
        }

        int size() const { return num_ris * elements_per_ris; }
        auto block(int r) const { return psi.segment(Eigen::Index(r) * elements_per_ris, elements_per_ris); }
        auto block(int r) { return psi.segment(Eigen::Index(r) * elements_per_ris, elements_per_ris); }

        // Dense diagonal view, for tests and small instances
        CMatrix phi() const { return psi.asDiagonal(); }

        double max_modulus() const { return psi.size() ? psi.cwiseAbs().maxCoeff() : 0.0; }
    };
}

#endif
