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

#ifndef TRIHYBRID_MANIFOLD_HPP
#define TRIHYBRID_MANIFOLD_HPP

#include "trihybrid/types.hpp"

#include <cstdint>
#include <optional>

namespace trihybrid
{
    struct ManifoldOptions
    {
        int max_iterations = 500;
        double tolerance = 1e-8; // on the Riemannian gradient norm
        int restarts = 1;        // 1 = start from the given point only
        int max_backtracks = 30;
        double armijo = 1e-4;
        double contraction = 0.5;
        std::uint64_t seed = 0; // for the extra restarts
    };

    /// min x^T B x + v^T x  subject to ||x|| = 1.
    struct SphereProblem
    {
        RMat B;
        RVec v;
        RVec x0;
    };

    struct SphereSolution
    {
        RVec x;
        double objective = 0.0;
        int iterations = 0;
        bool converged = false;
    };

    double sphere_objective(const RMat &B, const RVec &v, const RVec &x);

    /// Reduced coefficient problem for the trailing T-1 entries of an antenna's
    /// coefficient vector, the first entry being pinned at 2 sqrt(rho pi).
    /// B, Q, D are the antenna's (T x T, D x T, D x T) blocks, f its digital row.
    SphereProblem build_reduced_problem(const CMat &B, const CMat &Q, const CMat &D, const CVec &f, double rho,
                                        const RVec &x0);

    /// Euclidean gradient (B + B^T) x + v projected onto the tangent space at x.
    RVec riemannian_gradient(const RVec &x, const RMat &B, const RVec &v);

    /// Tangent projection I - x x^T.
    RVec project_tangent(const RVec &x, const RVec &g);

    /// (x - eps g) / ||x - eps g||, or nothing if the denominator vanishes.
    std::optional<RVec> retract_step(const RVec &x, const RVec &g, double eps);

    /// Gradient descent with Armijo backtracking; returns the best iterate over all restarts.
    SphereSolution solve_sphere(const SphereProblem &problem, const ManifoldOptions &options = {});

} // namespace trihybrid

#endif
