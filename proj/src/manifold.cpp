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

#include "trihybrid/manifold.hpp"

#include <random>

namespace trihybrid
{
    double sphere_objective(const RMat &B, const RVec &v, const RVec &x) { return x.dot(B * x) + v.dot(x); }

    SphereProblem build_reduced_problem(const CMat &B, const CMat &Q, const CMat &D, const CVec &f, double rho,
                                        const RVec &x0)
    {
        if (!(rho > 0.0 && rho < 1.0))
            throw DomainError("build_reduced_problem: rho must lie in (0, 1)");
        const Eigen::Index T = B.rows();
        if (T < 2 || B.cols() != T || Q.cols() != T || D.cols() != T || Q.rows() != f.size() || D.rows() != f.size())
            throw ConfigError("build_reduced_problem: inconsistent block sizes");
        if (x0.size() != T - 1)
            throw ConfigError("build_reduced_problem: start point has the wrong length");

        const double f2 = f.squaredNorm();
        SphereProblem p;
        p.B = (four_pi * (1.0 - rho) * f2) * B.bottomRightCorner(T - 1, T - 1).real();
        const RVec v1 = 4.0 * std::sqrt((1.0 - rho) * pi) *
                        (f.adjoint() * (Q - D).rightCols(T - 1)).real().transpose();
        const RVec v2 = 8.0 * pi * std::sqrt(rho * (1.0 - rho)) * f2 * B.col(0).tail(T - 1).real();
        p.v = v1 + v2;
        p.x0 = x0;
        return p;
    }

    RVec project_tangent(const RVec &x, const RVec &g) { return g - x.dot(g) * x; }

    RVec riemannian_gradient(const RVec &x, const RMat &B, const RVec &v)
    {
        const RVec ge = (B + B.transpose()) * x + v;
        return project_tangent(x, ge);
    }

    std::optional<RVec> retract_step(const RVec &x, const RVec &g, double eps)
    {
        const RVec y = x - eps * g;
        const double n = y.norm();
        if (!(n > 1e-300))
            return std::nullopt;
        return RVec(y / n);
    }

    namespace
    {
        SphereSolution descend(const RMat &B, const RVec &v, RVec x, const ManifoldOptions &o)
        {
            SphereSolution s;
            if (!(x.norm() > 0.0))
                x = RVec::Unit(x.size(), 0);
            x.normalize();
            double fx = sphere_objective(B, v, x);
            const double eps0 = 1.0 / (B.norm() + v.norm() + 1.0);

            int it = 0;
            for (; it < o.max_iterations; ++it)
            {
                const RVec g = riemannian_gradient(x, B, v);
                const double g2 = g.squaredNorm();
                if (std::sqrt(g2) < o.tolerance)
                {
                    s.converged = true;
                    break;
                }
                double eps = eps0;
                bool accepted = false;
                for (int bt = 0; bt <= o.max_backtracks; ++bt, eps *= o.contraction)
                {
                    const auto y = retract_step(x, g, eps);
                    if (!y)
                        continue;
                    const double fy = sphere_objective(B, v, *y);
                    if (fy <= fx - o.armijo * eps * g2)
                    {
                        x = *y;
                        fx = fy;
                        accepted = true;
                        break;
                    }
                }
                if (!accepted)
                    break; // no Armijo step left; x is numerically stationary
            }
            s.x = x;
            s.objective = fx;
            s.iterations = it;
            return s;
        }
    } // namespace

    SphereSolution solve_sphere(const SphereProblem &problem, const ManifoldOptions &options)
    {
        const Eigen::Index n = problem.v.size();
        if (problem.B.rows() != n || problem.B.cols() != n || problem.x0.size() != n)
            throw ConfigError("solve_sphere: inconsistent problem dimensions");
        if (n == 0)
            return SphereSolution{RVec(), 0.0, 0, true};

        SphereSolution best = descend(problem.B, problem.v, problem.x0, options);
        std::mt19937_64 rng(options.seed);
        std::normal_distribution<double> gauss;
        for (int r = 1; r < options.restarts; ++r)
        {
            RVec x(n);
            for (Eigen::Index i = 0; i < n; ++i)
                x(i) = gauss(rng);
            SphereSolution s = descend(problem.B, problem.v, x, options);
            if (s.objective < best.objective)
                best = std::move(s);
        }
        return best;
    }

} // namespace trihybrid
