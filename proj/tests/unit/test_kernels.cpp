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

#include <gtest/gtest.h>
#include <omp.h>

#include <random>

using namespace trihybrid;

namespace
{
    RMat random_samples(const SphereGrid &g, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> n01;
        RMat v(g.n_theta(), g.n_phi());
        for (auto &x : v.reshaped())
            x = n01(rng);
        return v;
    }
} // namespace

TEST(Kernels, ShProjectionSerialMatchesParallel)
{
    const SphereGrid g(24, 48);
    const RMat v = random_samples(g, 3);
    for (int U : {0, 1, 5, 11})
    {
        const RVec a = kernels::sh_project_serial(v, g, U);
        const RVec b = kernels::sh_project_parallel(v, g, U);
        ASSERT_EQ(a.size(), sh_count(U));
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12) << U;
    }
}

TEST(Kernels, ShProjectionIndependentOfThreadCount)
{
    const SphereGrid &g = SphereGrid::default_grid();
    const RMat v = random_samples(g, 4);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const RVec a = kernels::sh_project_parallel(v, g, 6);
    omp_set_num_threads(4);
    const RVec b = kernels::sh_project_parallel(v, g, 6);
    omp_set_num_threads(saved);
    EXPECT_EQ(a, b);
}

TEST(Kernels, LiftSerialMatchesParallelExactly)
{
    const ScenarioGeometry s = generate_scenario(ScenarioConfig{}, 8);
    const UserGeometry &u = s.users[1];
    const CVec coeffs = pair_coefficients(u, RadiationPattern::isotropic());
    BeamGridOptions o;
    o.count = 6;
    const CandidateSet set = fictitious_candidate_set(o);
    const kernels::AntennaBasis basis = [&](int, double t, double p, double *out)
    { candidate_gain_vector_into(set, t, p, out); };

    const CMat a = kernels::lift_channel_serial(u, coeffs, set.size(), basis);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(3);
    const CMat b = kernels::lift_channel_parallel(u, coeffs, set.size(), basis);
    omp_set_num_threads(saved);
    ASSERT_EQ(a.rows(), u.M);
    ASSERT_EQ(a.cols(), u.N * set.size());
    EXPECT_EQ(a, b);
}

TEST(Kernels, LiftPerAntennaBasis)
{
    const ScenarioGeometry s = generate_scenario(ScenarioConfig{}, 2);
    const UserGeometry &u = s.users[0];
    const CVec coeffs = pair_coefficients(u, RadiationPattern::isotropic());
    // Antenna-dependent scaling must land in that antenna's column only.
    const CMat a = kernels::lift_channel_serial(u, coeffs, 1, [](int n, double, double, double *out) { out[0] = 1.0 + n; });
    const CMat b = kernels::lift_channel_serial(u, coeffs, 1, [](int, double, double, double *out) { out[0] = 1.0; });
    for (int n = 0; n < u.N; ++n)
        EXPECT_LT((a.col(n) - (1.0 + n) * b.col(n)).norm(), 1e-15 * (1.0 + n) * b.col(n).norm() + 1e-300);
}
