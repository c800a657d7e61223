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

#ifndef BEAMSIM_ERRORS_HPP
#define BEAMSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace beamsim
{
    // Invalid configuration, geometry or scenario request (CLI exit code 2)
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Numerical failure inside one of the solvers (CLI exit code 3)
    class SolverError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

#endif
