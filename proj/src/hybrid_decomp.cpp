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

#include "trihybrid/hybrid_decomp.hpp"

#include <Eigen/Eigenvalues>

#include <random>

namespace trihybrid
{
    RVec antenna_powers(const CMat &F) { return F.rowwise().squaredNorm(); }

    CMat per_antenna_rescale(const CMat &F_RF, const CMat &F_BB, const RVec &budget, double *scale)
    {
        const RVec p = antenna_powers(F_RF * F_BB);
        if (budget.size() != p.size())
            throw ConfigError("per_antenna_rescale: one budget per antenna is required");
        double s = 1.0;
        for (Eigen::Index n = 0; n < p.size(); ++n)
            if (p(n) > budget(n))
                s = std::min(s, std::sqrt(budget(n) / p(n)));
        if (scale)
            *scale = s;
        return s * F_BB;
    }

    namespace
    {
        cplx unit_phase(cplx z, cplx fallback)
        {
            const double a = std::abs(z);
            return a > 0.0 ? z / a : fallback;
        }
    } // namespace

    DecompositionResult decompose(const CMat &F_D, int n_rf, const RVec &budget, int iterations, std::uint64_t seed)
    {
        const Eigen::Index N = F_D.rows(), D = F_D.cols();
        if (n_rf < 1 || n_rf > N)
            throw ConfigError("decompose: need 1 <= N_RF <= N");
        if (budget.size() != N)
            throw ConfigError("decompose: one budget per antenna is required");

        const double amp = 1.0 / std::sqrt(static_cast<double>(N));
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uphase(0.0, 2.0 * pi);

        DecompositionResult r;
        r.F_RF.resize(N, n_rf);
        for (Eigen::Index j = 0; j < n_rf; ++j)
            for (Eigen::Index n = 0; n < N; ++n)
            {
                const cplx random = std::polar(1.0, uphase(rng));
                const cplx z = j < D ? F_D(n, j) : cplx(0.0);
                r.F_RF(n, j) = amp * unit_phase(z, random);
            }

        const double norm_d = F_D.norm();
        auto residual = [&](const CMat &B)
        { return norm_d > 0.0 ? (F_D - r.F_RF * B).norm() / norm_d : 0.0; };

        CMat B = r.F_RF.colPivHouseholderQr().solve(F_D);
        r.residual_trace.push_back(residual(B));
        for (int it = 0; it < iterations; ++it)
        {
            // Exact coordinate sweep: each entry takes its best phase with the others fixed.
            // Row n of the residual is F_D(n,:) - X(n,:) B; entry (n,j) enters as X(n,j) B(j,:).
            for (Eigen::Index n = 0; n < N; ++n)
            {
                Eigen::RowVectorXcd row = F_D.row(n) - r.F_RF.row(n) * B;
                for (Eigen::Index j = 0; j < n_rf; ++j)
                {
                    row += r.F_RF(n, j) * B.row(j);
                    const cplx z = B.row(j).dot(row); // sum_d conj(B_jd) row_d
                    r.F_RF(n, j) = amp * unit_phase(z, r.F_RF(n, j) / amp);
                    row -= r.F_RF(n, j) * B.row(j);
                }
            }

            B = r.F_RF.colPivHouseholderQr().solve(F_D);
            r.residual_trace.push_back(residual(B));
        }
        r.residual = r.residual_trace.back();
        r.F_BB = per_antenna_rescale(r.F_RF, B, budget, &r.scale);
        return r;
    }

} // namespace trihybrid
