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

#ifndef TRIHYBRID_HYBRID_DECOMP_HPP
#define TRIHYBRID_HYBRID_DECOMP_HPP

#include "trihybrid/types.hpp"

#include <cstdint>
#include <vector>

namespace trihybrid
{
    struct DecompositionResult
    {
        CMat F_RF;             // N x N_RF, every entry of modulus 1/sqrt(N)
        CMat F_BB;             // N_RF x D, after the per-antenna rescale
        double residual = 0.0; // ||F_D - F_RF F_BB|| / ||F_D|| before the rescale
        double scale = 1.0;
        std::vector<double> residual_trace; // one entry per alternation, plus the start
    };

    /// Per-antenna powers [F F^H]_nn.
    RVec antenna_powers(const CMat &F);

    /// Scales F_BB by min(1, min_n sqrt(P_n / p_n)) where p_n are the antenna powers of F_RF F_BB.
    CMat per_antenna_rescale(const CMat &F_RF, const CMat &F_BB, const RVec &budget, double *scale = nullptr);

    /// Alternating least squares / phase projection for F_D ~ F_RF F_BB, followed by
    /// the per-antenna rescale. The phase step is a majorize-minimize update, so the
    /// residual never increases.
    DecompositionResult decompose(const CMat &F_D, int n_rf, const RVec &budget, int iterations = 30,
                                  std::uint64_t seed = 0);

} // namespace trihybrid

#endif
