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

// Serial reference kernels against their OpenMP counterparts.

#include "trihybrid/kernels.hpp"
#include "trihybrid/wmmse.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace trihybrid;

namespace
{
    RMat samples(const SphereGrid &g)
    {
        std::mt19937_64 rng(1);
        std::normal_distribution<double> n01;
        RMat v(g.n_theta(), g.n_phi());
        for (auto &x : v.reshaped())
            x = n01(rng);
        return v;
    }

    void BM_ShProjectSerial(benchmark::State &state)
    {
        const SphereGrid &g = SphereGrid::default_grid();
        const RMat v = samples(g);
        for (auto _ : state)
            benchmark::DoNotOptimize(kernels::sh_project_serial(v, g, static_cast<int>(state.range(0))));
    }

    void BM_ShProjectParallel(benchmark::State &state)
    {
        const SphereGrid &g = SphereGrid::default_grid();
        const RMat v = samples(g);
        for (auto _ : state)
            benchmark::DoNotOptimize(kernels::sh_project_parallel(v, g, static_cast<int>(state.range(0))));
    }

    struct LiftFixture
    {
        ScenarioGeometry geo;
        CandidateSet set;
        CVec coeffs;

        explicit LiftFixture(int side)
        {
            ScenarioConfig c;
            c.bs_nh = c.bs_nv = side;
            geo = generate_scenario(c, 3);
            set = fictitious_candidate_set();
            coeffs = pair_coefficients(geo.users[0], RadiationPattern::isotropic());
        }

        kernels::AntennaBasis basis() const
        {
            return [this](int, double t, double p, double *out) { candidate_gain_vector_into(set, t, p, out); };
        }
    };

    void BM_LiftSerial(benchmark::State &state)
    {
        const LiftFixture f(static_cast<int>(state.range(0)));
        for (auto _ : state)
            benchmark::DoNotOptimize(kernels::lift_channel_serial(f.geo.users[0], f.coeffs, f.set.size(), f.basis()));
    }

    void BM_LiftParallel(benchmark::State &state)
    {
        const LiftFixture f(static_cast<int>(state.range(0)));
        for (auto _ : state)
            benchmark::DoNotOptimize(kernels::lift_channel_parallel(f.geo.users[0], f.coeffs, f.set.size(), f.basis()));
    }

    struct TermsFixture
    {
        WmmseProblem problem;
        PrecoderState state;

        explicit TermsFixture(int side)
        {
            ScenarioConfig c;
            c.bs_nh = c.bs_nv = side;
            const ScenarioGeometry geo = generate_scenario(c, 4);
            const RadiationPattern iso = RadiationPattern::isotropic();
            problem = make_problem(build_sel_channels(geo, fictitious_candidate_set(), iso), 2, 1e-12, 1.0);
            SolverOptions o;
            state = initial_state(problem, o);
            state.U = update_U(apply_antenna_vectors(problem.channels, state.V), state.F_D, problem.streams,
                               problem.noise);
        }
    };

    void BM_TermsReference(benchmark::State &state)
    {
        const TermsFixture f(static_cast<int>(state.range(0)));
        for (auto _ : state)
            benchmark::DoNotOptimize(per_antenna_terms_reference(0, f.problem, f.state));
    }

    void BM_TermsFast(benchmark::State &state)
    {
        const TermsFixture f(static_cast<int>(state.range(0)));
        for (auto _ : state)
            benchmark::DoNotOptimize(per_antenna_terms(0, f.problem, f.state));
    }
} // namespace

BENCHMARK(BM_ShProjectSerial)->Arg(2)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShProjectParallel)->Arg(2)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LiftSerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LiftParallel)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TermsReference)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TermsFast)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
