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

#include "trihybrid/kernels.hpp"

#include <vector>

namespace trihybrid::kernels
{
    RVec sh_project_serial(const RMat &values, const SphereGrid &grid, int degree)
    {
        const int T = sh_count(degree);
        RVec c = RVec::Zero(T);
        RVec y(T);
        for (int i = 0; i < grid.n_theta(); ++i)
            for (int j = 0; j < grid.n_phi(); ++j)
            {
                basis_vector_into(grid.theta(i), grid.phi(j), degree, y.data());
                c += (grid.weight(i, j) * values(i, j)) * y;
            }
        return c;
    }

    RVec sh_project_parallel(const RMat &values, const SphereGrid &grid, int degree)
    {
        const int T = sh_count(degree);
        const int nt = grid.n_theta();
        const int np = grid.n_phi();
        RMat partial(T, nt);

#pragma omp parallel for schedule(static)
        for (int i = 0; i < nt; ++i)
        {
            // At phi = 0 the basis holds the (sqrt2-scaled) normalized Legendre values
            // in the cosine slots; the sine slots are zero.
            std::vector<double> leg(static_cast<size_t>(T));
            basis_vector_into(grid.theta(i), 0.0, degree, leg.data());

            std::vector<double> cs(static_cast<size_t>(degree + 1), 0.0), sn(static_cast<size_t>(degree + 1), 0.0);
            for (int j = 0; j < np; ++j)
            {
                const double f = values(i, j);
                const double p = grid.phi(j);
                for (int q = 0; q <= degree; ++q)
                {
                    cs[q] += f * std::cos(q * p);
                    sn[q] += f * std::sin(q * p);
                }
            }

            const double w = grid.weight(i, 0);
            auto col = partial.col(i);
            for (int u = 0; u <= degree; ++u)
            {
                const int c0 = u * u + u;
                col(c0) = w * leg[c0] * cs[0];
                for (int q = 1; q <= u; ++q)
                {
                    col(c0 + q) = w * leg[c0 + q] * cs[q];
                    col(c0 - q) = w * leg[c0 + q] * sn[q];
                }
            }
        }

        RVec c = RVec::Zero(T);
        for (int i = 0; i < nt; ++i)
            c += partial.col(i);
        return c;
    }

    namespace
    {
        void lift_pair(const UserGeometry &g, const CVec &coeffs, int width, const AntennaBasis &basis, int m, int n,
                       double *buf, CMat &H)
        {
            for (int w = 0; w < width; ++w)
                H(m, n * width + w) = 0.0;
            for (int l = 0; l < g.L; ++l)
            {
                const size_t p = g.pair(l, m, n);
                basis(n, g.aod_theta[p], g.aod_phi[p], buf);
                const cplx a = coeffs(static_cast<Eigen::Index>(p));
                for (int w = 0; w < width; ++w)
                    H(m, n * width + w) += a * buf[w];
            }
        }
    } // namespace

    CMat lift_channel_serial(const UserGeometry &g, const CVec &coeffs, int width, const AntennaBasis &basis)
    {
        CMat H(g.M, g.N * width);
        std::vector<double> buf(static_cast<size_t>(width));
        for (int n = 0; n < g.N; ++n)
            for (int m = 0; m < g.M; ++m)
                lift_pair(g, coeffs, width, basis, m, n, buf.data(), H);
        return H;
    }

    CMat lift_channel_parallel(const UserGeometry &g, const CVec &coeffs, int width, const AntennaBasis &basis)
    {
        CMat H(g.M, g.N * width);
        const int pairs = g.M * g.N;
#pragma omp parallel
        {
            std::vector<double> buf(static_cast<size_t>(width));
#pragma omp for schedule(static)
            for (int idx = 0; idx < pairs; ++idx)
                lift_pair(g, coeffs, width, basis, idx % g.M, idx / g.M, buf.data(), H);
        }
        return H;
    }

} // namespace trihybrid::kernels
