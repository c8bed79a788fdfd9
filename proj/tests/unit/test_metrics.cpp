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

#include "oracles.hpp"
#include "trihybrid/metrics.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace trihybrid;

namespace
{
    constexpr double lambda = 0.01;
}

TEST(Beampattern, SingleIsotropicAntenna)
{
    const ArrayLayout a = ArrayLayout::upa(1, 1, 0.0, Vec3(1.0, 2.0, 3.0));
    const std::vector<RadiationPattern> p{RadiationPattern::isotropic()};
    for (double t : {0.1, 1.5, 3.0})
        for (double ph : {-2.0, 0.0, 2.5})
        {
            EXPECT_NEAR(beampattern(a, p, CMat::Ones(1, 1), t, ph, lambda), 1.0, 1e-15);
            EXPECT_EQ(beampattern(a, p, CMat::Zero(1, 1), t, ph, lambda), 0.0);
        }
}

TEST(Beampattern, SteeredArrayPeaksAtBroadside)
{
    const ArrayLayout a = ArrayLayout::upa(4, 4, lambda / 2, Vec3::Zero());
    const std::vector<RadiationPattern> p(16, RadiationPattern::isotropic());
    const CMat F = upa_arv(pi / 2, 0.0, 4, 4, lambda / 2, lambda);
    double best = -1.0, bt = 0.0, bp = 0.0;
    for (double t = 0.0; t <= pi + 1e-12; t += pi / 36)
        for (double ph = -pi / 2 + pi / 36; ph < pi / 2; ph += pi / 36) // front half-space; the back mirrors it
        {
            const double e = beampattern(a, p, F, t, ph, lambda);
            if (e > best + 1e-12)
            {
                best = e;
                bt = t;
                bp = ph;
            }
        }
    EXPECT_NEAR(best, 4.0, 1e-12);
    EXPECT_NEAR(angular_distance(bt, bp, pi / 2, 0.0), 0.0, 1e-9);
}

TEST(Beampattern, InvariantToCommonPhase)
{
    std::mt19937_64 rng(2);
    const ArrayLayout a = ArrayLayout::upa(2, 4, lambda / 2, Vec3::Zero());
    BeamGridOptions o;
    o.count = 4;
    const CandidateSet set = fictitious_candidate_set(o);
    const auto pats = patterns_from_selection(set, {0, 1, 2, 3, 3, 2, 1, 0});
    const CMat F = oracle::random_complex(8, 2, rng);
    const CMat G = F * std::polar(1.0, 1.234);
    for (double t : {0.5, 1.6})
        for (double ph : {-1.0, 0.3})
            EXPECT_NEAR(beampattern(a, pats, F, t, ph, lambda), beampattern(a, pats, G, t, ph, lambda), 1e-12);
}

TEST(Envelope, Basics)
{
    EXPECT_EQ(beampattern_envelope({2.5, 2.5, 2.5}), 2.5);
    EXPECT_EQ(beampattern_envelope({0.7}), 0.7);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::vector<double> s(50), dominated(50);
    for (size_t i = 0; i < s.size(); ++i)
    {
        s[i] = u(rng);
        dominated[i] = s[i] * 0.9;
    }
    double ref = 0.0;
    for (double x : s)
        ref = std::max(ref, x);
    EXPECT_EQ(beampattern_envelope(s), ref);
    EXPECT_LE(beampattern_envelope(dominated), beampattern_envelope(s));
    EXPECT_THROW(beampattern_envelope({}), ConfigError);
}

TEST(Envelope, GridAndCsv)
{
    const ArrayLayout a = ArrayLayout::upa(2, 2, lambda / 2, Vec3::Zero());
    const std::vector<RadiationPattern> p(4, RadiationPattern::isotropic());
    CMat F = CMat::Zero(4, 2);
    F.col(0) = upa_arv(pi / 2, 0.0, 2, 2, lambda / 2, lambda);
    const auto phis = angle_grid(-pi / 2, pi / 2, pi / 4);
    ASSERT_EQ(phis.size(), 5u);
    const RMat env = envelope_grid(a, p, F, {1, 1}, angle_grid(0.0, pi, pi / 18), phis, lambda);
    EXPECT_EQ(env.rows(), 2);
    EXPECT_EQ(env.row(1).norm(), 0.0);
    std::ostringstream os;
    write_beampattern_csv(os, env, phis);
    const std::string csv = os.str();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "phi_deg,user,envelope_db_normalized");
    EXPECT_NE(csv.find("0.000000,1,0.000000"), std::string::npos);
    EXPECT_NE(csv.find(",2,-300.000000"), std::string::npos);
}

TEST(Audit, SolverStateIsFeasible)
{
    const ScenarioGeometry geo = generate_scenario(ScenarioConfig{}, 4);
    BeamGridOptions o;
    o.count = 8;
    const CandidateSet set = fictitious_candidate_set(o);
    const RadiationPattern iso = RadiationPattern::isotropic();
    const WmmseProblem p = make_problem(build_sel_channels(geo, set, iso), 2, dbm_to_mw(-90), dbm_to_mw(0));
    SolverOptions so;
    so.max_iterations = 5;
    so.n_rf = 7;
    const SolverResult r = algorithm1(p, so);

    AuditInput in;
    in.F = r.decomposition.F_RF * r.decomposition.F_BB;
    in.budget = p.budget;
    in.F_RF = &r.decomposition.F_RF;
    in.V = &r.state.V;
    in.mode = ChannelMode::sel;
    in.set = &set;
    const AuditReport rep = audit_constraints(in);
    EXPECT_TRUE(rep.feasible());
    EXPECT_GT(rep.positivity_min, 0.0);

    in.F = 2.0 * r.state.F_D;
    in.F_RF = nullptr;
    EXPECT_LT(audit_constraints(in).power_margin, 0.0);
    EXPECT_FALSE(audit_constraints(in).feasible());

    RMat broken = r.state.V;
    broken(0, 0) = 0.5;
    in.F = r.state.F_D;
    in.V = &broken;
    EXPECT_LT(audit_constraints(in).onehot_margin, 0.0);
}

TEST(Audit, IsotropicCoefficientsHaveUnitPositivity)
{
    const RMat V = lift_coefficients(RVec::Unit(8, 0), 1.0).replicate(1, 3);
    AuditInput in;
    in.F = CMat::Zero(3, 2);
    in.budget = RVec::Ones(3);
    in.V = &V;
    in.mode = ChannelMode::cof;
    in.degree = 2;
    const AuditReport rep = audit_constraints(in);
    EXPECT_NEAR(rep.positivity_min, 1.0, 1e-12);
    EXPECT_NEAR(rep.norm_margin, 0.0, 1e-15);
    EXPECT_TRUE(rep.feasible());

    const auto pats = patterns_from_coefficients(V, 2);
    ASSERT_EQ(pats.size(), 3u);
    EXPECT_NEAR(pats[1].gain(0.3, 0.9), 1.0, 1e-12);
}
