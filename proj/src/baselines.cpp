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

#include "trihybrid/baselines.hpp"

#include <Eigen/SVD>

namespace trihybrid
{
    EffectiveChannel fixed_pattern_channels(const ScenarioGeometry &scenario, const RadiationPattern &pattern,
                                            const RadiationPattern &rx)
    {
        CandidateSet single;
        single.patterns.push_back(pattern);
        return build_sel_channels(scenario, single, rx);
    }

    SolverResult fixed_pattern_wmmse(const ScenarioGeometry &scenario, const RadiationPattern &pattern,
                                     const RadiationPattern &rx, const WmmseProblem &templ,
                                     const SolverOptions &options)
    {
        WmmseProblem p = templ;
        p.channels = fixed_pattern_channels(scenario, pattern, rx);
        return algorithm1(p, options);
    }

    CMat zf_precoder(const std::vector<CMat> &H, const std::vector<int> &streams, const RVec &budget)
    {
        const int K = static_cast<int>(H.size());
        if (K < 1 || static_cast<int>(streams.size()) != K)
            throw ConfigError("zf_precoder: one stream count per user is required");
        const Eigen::Index N = H.front().cols();
        if (budget.size() != N)
            throw ConfigError("zf_precoder: one budget per antenna is required");

        int D = 0;
        for (int s : streams)
            D += s;
        if (D > N)
            throw ConfigError("zf_precoder: more streams than antennas");

        CMat F(N, D);
        int off = 0;
        for (int k = 0; k < K; ++k)
        {
            Eigen::Index rows = 0;
            for (int i = 0; i < K; ++i)
                if (i != k)
                    rows += H[static_cast<size_t>(i)].rows();

            CMat V0;
            if (rows == 0)
                V0 = CMat::Identity(N, N);
            else
            {
                CMat others(rows, N);
                Eigen::Index r = 0;
                for (int i = 0; i < K; ++i)
                    if (i != k)
                    {
                        others.middleRows(r, H[static_cast<size_t>(i)].rows()) = H[static_cast<size_t>(i)];
                        r += H[static_cast<size_t>(i)].rows();
                    }
                Eigen::JacobiSVD<CMat> svd(others, Eigen::ComputeFullV);
                const Eigen::Index rank = svd.rank();
                V0 = svd.matrixV().rightCols(N - rank);
            }

            const int Dk = streams[static_cast<size_t>(k)];
            if (V0.cols() < Dk)
                throw ConfigError("zf_precoder: null space of the other users is too small for user " +
                                  std::to_string(k));
            Eigen::JacobiSVD<CMat> svd_k(H[static_cast<size_t>(k)] * V0, Eigen::ComputeFullV);
            F.middleCols(off, Dk) = V0 * svd_k.matrixV().leftCols(Dk);
            off += Dk;
        }

        // Equal power per stream from the total budget, then the per-antenna rescale.
        F *= std::sqrt(budget.sum() / D);
        const RVec p = F.rowwise().squaredNorm();
        double s = 1.0;
        for (Eigen::Index n = 0; n < N; ++n)
            if (p(n) > budget(n))
                s = std::min(s, std::sqrt(budget(n) / p(n)));
        return s * F;
    }

    double zf_leakage(const std::vector<CMat> &H, const CMat &F, const std::vector<int> &streams)
    {
        double worst = 0.0;
        std::vector<int> off(streams.size(), 0);
        for (size_t k = 1; k < streams.size(); ++k)
            off[k] = off[k - 1] + streams[k - 1];
        for (size_t k = 0; k < H.size(); ++k)
        {
            const double own = (H[k] * F.middleCols(off[k], streams[k])).norm();
            for (size_t i = 0; i < H.size(); ++i)
                if (i != k)
                {
                    const double leak = (H[k] * F.middleCols(off[i], streams[i])).norm();
                    worst = std::max(worst, own > 0.0 ? leak / own : leak);
                }
        }
        return worst;
    }

} // namespace trihybrid
