// SPDX-License-Identifier: Apache-2.0
//
// trihybrid - tri-hybrid multi-user MIMO precoding with pattern-reconfigurable antennas
// Copyright (C) 2026 The trihybrid Authors
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

#ifndef TRIHYBRID_BASELINES_HPP
#define TRIHYBRID_BASELINES_HPP

#include "trihybrid/wmmse.hpp"

namespace trihybrid
{
    /// Single-candidate selection channels: every antenna uses the given pattern.
    EffectiveChannel fixed_pattern_channels(const ScenarioGeometry &scenario, const RadiationPattern &pattern,
                                            const RadiationPattern &rx);

    /// Hybrid WMMSE with a fixed pattern: the selection algorithm with a one-element set.
    /// Budgets, weights and noise are taken from the template problem.
    SolverResult fixed_pattern_wmmse(const ScenarioGeometry &scenario, const RadiationPattern &pattern,
                                     const RadiationPattern &rx, const WmmseProblem &templ,
                                     const SolverOptions &options);

    /// Block-diagonalization zero forcing with equal stream power and the per-antenna
    /// rescale. Throws ConfigError when some user has fewer null-space dimensions than streams.
    CMat zf_precoder(const std::vector<CMat> &H, const std::vector<int> &streams, const RVec &budget);

    /// Largest ||H_k F_i|| / ||H_k F_k|| over i != k.
    double zf_leakage(const std::vector<CMat> &H, const CMat &F, const std::vector<int> &streams);

} // namespace trihybrid

#endif
