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
#include "trihybrid/sph_harmonics.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace trihybrid;

TEST(SHIndex, FlatIndexRoundTrips)
{
    for (int t = 1; t <= 10000; ++t)
    {
        const SHIndex idx = SHIndex::from_flat(t);
        ASSERT_LE(std::abs(idx.order), idx.degree);
        ASSERT_EQ(idx.flat(), t);
    }
    EXPECT_EQ((SHIndex{2, 1}.flat()), 8);
    EXPECT_THROW(SHIndex::from_flat(0), DomainError);
}

TEST(SHIndex, DegreeForCount)
{
    EXPECT_EQ(sh_degree_for_count(1), 0);
    EXPECT_EQ(sh_degree_for_count(9), 2);
    EXPECT_EQ(sh_degree_for_count(49), 6);
    EXPECT_ANY_THROW(sh_degree_for_count(8));
}

TEST(AssocLegendre, TrivialValues)
{
    EXPECT_DOUBLE_EQ(assoc_legendre(0, 0, 0.3), 1.0);
    EXPECT_DOUBLE_EQ(assoc_legendre(1, 0, 1.0), 1.0);
}

TEST(AssocLegendre, MatchesRodrigues)
{
    EXPECT_NEAR(assoc_legendre(3, 2, 0.5), static_cast<double>(oracle::legendre_rodrigues(3, 2, 0.5L)), 1e-13);
    EXPECT_NEAR(assoc_legendre(3, 2, 0.5), 5.625, 1e-13);
    for (int u = 0; u <= 8; ++u)
        for (int q = 0; q <= u; ++q)
            for (double x : {-0.9, -0.31, 0.0, 0.42, 0.77, 1.0})
            {
                const double ref = static_cast<double>(oracle::legendre_rodrigues(u, q, x));
                EXPECT_NEAR(assoc_legendre(u, q, x), ref, 1e-10 * std::max(1.0, std::abs(ref))) << u << ' ' << q;
            }
}

TEST(AssocLegendre, RejectsBadArguments)
{
    EXPECT_THROW(assoc_legendre(2, 3, 0.1), DomainError);
    EXPECT_THROW(assoc_legendre(2, 1, 1.5), DomainError);
}

TEST(RealSH, TrivialValues)
{
    EXPECT_NEAR(real_sh(0, 0, 1.1, 2.2), 0.28209479177387814, 1e-15);
    EXPECT_NEAR(real_sh(1, 0, 0.0, 0.7), 0.4886025119029199, 1e-15);
}

TEST(RealSH, MatchesExtendedPrecisionOracle)
{
    EXPECT_NEAR(real_sh(2, 1, pi / 3, pi / 4),
                static_cast<double>(oracle::real_sh(2, 1, pi / 3, pi / 4)), 1e-14);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> th(0.0, pi), ph(-pi, pi);
    for (int trial = 0; trial < 50; ++trial)
    {
        const double t = th(rng), p = ph(rng);
        for (int u = 0; u <= 6; ++u)
            for (int q = -u; q <= u; ++q)
                ASSERT_NEAR(real_sh(u, q, t, p), static_cast<double>(oracle::real_sh(u, q, t, p)), 1e-12);
    }
}

TEST(BasisVector, TrivialCases)
{
    const RVec b0 = basis_vector(0.4, 1.0, 0);
    ASSERT_EQ(b0.size(), 1);
    EXPECT_NEAR(b0(0), 0.5 / std::sqrt(pi), 1e-15);

    const RVec b1 = basis_vector(0.0, 0.0, 1);
    ASSERT_EQ(b1.size(), 4);
    EXPECT_NEAR(b1(0), 0.5 / std::sqrt(pi), 1e-15);
    EXPECT_NEAR(b1(1), 0.0, 1e-15);
    EXPECT_NEAR(b1(2), std::sqrt(3.0 / (4.0 * pi)), 1e-15);
    EXPECT_NEAR(b1(3), 0.0, 1e-15);
}

TEST(BasisVector, EntriesMatchOracle)
{
    const RVec b = basis_vector(pi / 2, pi / 2, 2);
    ASSERT_EQ(b.size(), 9);
    for (int t = 1; t <= 9; ++t)
    {
        const SHIndex i = SHIndex::from_flat(t);
        EXPECT_NEAR(b(t - 1), static_cast<double>(oracle::real_sh(i.degree, i.order, pi / 2, pi / 2)), 1e-14);
    }
}

TEST(SphereGrid, OrthonormalityUpToDegreeSix)
{
    const SphereGrid &g = SphereGrid::default_grid();
    const int T = sh_count(6);
    RMat gram = RMat::Zero(T, T);
    for (int i = 0; i < g.n_theta(); ++i)
        for (int j = 0; j < g.n_phi(); ++j)
        {
            const RVec b = basis_vector(g.theta(i), g.phi(j), 6);
            gram += g.weight(i, j) * b * b.transpose();
        }
    EXPECT_LT((gram - RMat::Identity(T, T)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(SphereGrid, IntegratesConstant)
{
    EXPECT_NEAR(SphereGrid::default_grid().integrate([](double, double) { return 1.0; }), 4 * pi, 1e-12);
}

TEST(SynthesizeGain, IsotropicAndZero)
{
    const SHCoefficients iso = SHCoefficients::isotropic(3);
    const SHCoefficients zero(3, RVec::Zero(16));
    for (double t : {0.0, 0.5, 2.0, pi})
        for (double p : {-3.0, 0.0, 1.0})
        {
            EXPECT_NEAR(synthesize_gain(iso, t, p), 1.0, 1e-14);
            EXPECT_EQ(synthesize_gain(zero, t, p), 0.0);
        }
}

TEST(SynthesizeGain, TermByTermSum)
{
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n01;
    RVec c(16);
    for (auto &x : c)
        x = n01(rng);
    const SHCoefficients coeffs(3, c);
    for (double t = 0.05; t < pi; t += 0.3)
        for (double p = -pi; p < pi; p += 0.4)
        {
            long double ref = 0.0L;
            for (int k = 1; k <= 16; ++k)
            {
                const SHIndex i = SHIndex::from_flat(k);
                ref += c(k - 1) * oracle::real_sh(i.degree, i.order, t, p);
            }
            EXPECT_NEAR(synthesize_gain(coeffs, t, p), static_cast<double>(ref), 1e-12);
        }
}

TEST(DecomposePattern, ConstantAndSingleHarmonic)
{
    const SphereGrid &g = SphereGrid::default_grid();
    const SHCoefficients one = decompose_pattern(sample_on_grid([](double, double) { return 1.0; }, g), g, 4);
    EXPECT_NEAR(one.values(0), 2.0 * std::sqrt(pi), 1e-8);
    EXPECT_LT(one.values.tail(one.count() - 1).cwiseAbs().maxCoeff(), 1e-8);

    const SHCoefficients y21 =
        decompose_pattern(sample_on_grid([](double t, double p) { return real_sh(2, 1, t, p); }, g), g, 4);
    for (int t = 1; t <= y21.count(); ++t)
        EXPECT_NEAR(y21.values(t - 1), t == 8 ? 1.0 : 0.0, 1e-8) << t;
}

TEST(DecomposePattern, InvertsSynthesis)
{
    const SphereGrid &g = SphereGrid::default_grid();
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n01;
    for (int U : {0, 2, 6, 10})
    {
        RVec c(sh_count(U));
        for (auto &x : c)
            x = n01(rng);
        const SHCoefficients in(U, c);
        const SHCoefficients out =
            decompose_pattern(sample_on_grid([&](double t, double p) { return synthesize_gain(in, t, p); }, g), g, U);
        EXPECT_LT((out.values - c).cwiseAbs().maxCoeff(), 1e-8) << U;
    }
}

TEST(DecomposePattern, RejectsUnderresolvedGrid)
{
    const SphereGrid small(8, 16);
    EXPECT_EQ(small.max_resolvable_degree(), 3);
    const GridSamples s = sample_on_grid([](double, double) { return 1.0; }, small);
    EXPECT_NO_THROW(decompose_pattern(s, small, 3));
    EXPECT_THROW(decompose_pattern(s, small, 4), ResolutionError);
}

TEST(DecomposePattern, BeamReconstructionImprovesWithDegree)
{
    const SphereGrid &g = SphereGrid::default_grid();
    auto beam = [](double t, double p)
    {
        const double d = std::acos(std::clamp(std::sin(t) * std::cos(p), -1.0, 1.0));
        return std::exp(-0.5 * std::log(2.0) * std::pow(2.0 * d / (85.0 * pi / 180.0), 2)) + 1e-3;
    };
    const GridSamples s = sample_on_grid(beam, g);
    double prev = std::numeric_limits<double>::infinity();
    for (int U : {2, 4, 8})
    {
        const SHCoefficients c = decompose_pattern(s, g, U);
        const double err = g.integrate([&](double t, double p) { return std::pow(beam(t, p) - synthesize_gain(c, t, p), 2); });
        EXPECT_LT(err, prev) << U;
        prev = err;
    }
}

TEST(PatternEnergy, Parseval)
{
    const SphereGrid &g = SphereGrid::default_grid();
    EXPECT_NEAR(pattern_energy([](double, double) { return 1.0; }, g), 4 * pi, 1e-12);
    std::mt19937_64 rng(21);
    std::normal_distribution<double> n01;
    for (int trial = 0; trial < 20; ++trial)
    {
        RVec c(25);
        for (auto &x : c)
            x = n01(rng);
        const SHCoefficients coeffs(4, c);
        EXPECT_NEAR(pattern_energy([&](double t, double p) { return synthesize_gain(coeffs, t, p); }, g),
                    c.squaredNorm(), 1e-7 * std::max(1.0, c.squaredNorm()));
        const SHCoefficients n = coeffs.energy_normalized();
        EXPECT_NEAR(pattern_energy([&](double t, double p) { return synthesize_gain(n, t, p); }, g), 4 * pi, 1e-8);
    }
}

TEST(CoefficientIO, RoundTrip)
{
    RVec c(9);
    c << 1.5, -2.25, 3e-9, 0.0, 1.0 / 3.0, 7.0, -8.0, 9.5, 1e10;
    std::stringstream ss;
    write_coefficients(ss, SHCoefficients(2, c));
    const SHCoefficients back = read_coefficients(ss);
    EXPECT_EQ(back.degree, 2);
    EXPECT_EQ(back.values, c);
}

TEST(CoefficientIO, RejectsMalformed)
{
    std::stringstream a("U 1\n1 1.0\n2 0.0\n3 0.0\n");
    EXPECT_THROW(read_coefficients(a), SchemaError);
    std::stringstream b("U 1\n1 1.0\n2 0.0\n3 x\n4 0\n");
    EXPECT_THROW(read_coefficients(b), SchemaError);
}

TEST(PatternTableIO, RoundTrip)
{
    PatternTable t{{0.1, 0.2}, {0.3, -0.4}, {1.0, 2.0}};
    std::stringstream ss;
    write_pattern_table(ss, t);
    const PatternTable b = read_pattern_table(ss);
    EXPECT_EQ(b.theta, t.theta);
    EXPECT_EQ(b.phi, t.phi);
    EXPECT_EQ(b.gain, t.gain);
}
