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

#ifndef TRIHYBRID_KERNELS_HPP
#define TRIHYBRID_KERNELS_HPP

// Hot loops in two flavors: a plain serial reference and an OpenMP version that
// produces the same numbers (fixed reduction order, independent of thread count).

#include "trihybrid/channel.hpp"

#include <functional>

namespace trihybrid::kernels
{
    /// Quadrature projection onto real harmonics, one basis evaluation per grid point.
    RVec sh_project_serial(const RMat &values, const SphereGrid &grid, int degree);

    /// Same projection using per-row Legendre values and azimuth Fourier sums; rows
    /// are processed in parallel and summed in row order.
    RVec sh_project_parallel(const RMat &values, const SphereGrid &grid, int degree);

    /// Writes the width-W antenna basis of antenna n at a departure direction.
    using AntennaBasis = std::function<void(int n, double theta, double phi, double *out)>;

    /// H[m, n W + w] = sum_l coeff[l, m, n] * basis_w(n, AoD[l, m, n]).
    CMat lift_channel_serial(const UserGeometry &g, const CVec &coeffs, int width, const AntennaBasis &basis);
    CMat lift_channel_parallel(const UserGeometry &g, const CVec &coeffs, int width, const AntennaBasis &basis);

} // namespace trihybrid::kernels

#endif
