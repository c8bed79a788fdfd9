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

#ifndef TRIHYBRID_SPH_HARMONICS_HPP
#define TRIHYBRID_SPH_HARMONICS_HPP

#include "trihybrid/types.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace trihybrid
{
    /// Degree/order pair of a real spherical harmonic. The flat index used for
    /// coefficient vectors is 1-based: t = u^2 + u + q + 1.
    struct SHIndex
    {
        int degree = 0;
        int order = 0;

        int flat() const { return degree * degree + degree + order + 1; }
        static SHIndex from_flat(int t);

        bool operator==(const SHIndex &) const = default;
    };

    /// Number of coefficients for truncation degree U, i.e. (U+1)^2.
    inline int sh_count(int degree) { return (degree + 1) * (degree + 1); }

    /// Truncation degree for a coefficient count T = (U+1)^2. Throws if T is not a square.
    int sh_degree_for_count(int count);

    /// Unnormalized associated Legendre function P_u^q(x), 0 <= q <= u, without the
    /// Condon-Shortley phase.
    double assoc_legendre(int degree, int order, double x);

    /// Orthonormal real spherical harmonic Y_u^q(theta, phi). Positive orders use
    /// cos(q phi), negative orders sin(|q| phi).
    double real_sh(int degree, int order, double theta, double phi);

    /// All harmonics up to degree U at one direction, ordered by flat index.
    RVec basis_vector(double theta, double phi, int degree);

    /// Same as basis_vector() but writes into a caller-provided buffer of length (U+1)^2.
    void basis_vector_into(double theta, double phi, int degree, double *out);

    /// Product quadrature on the sphere: Gauss-Legendre in cos(theta) times uniform azimuth.
    /// weight(i, j) already contains the sin(theta) Jacobian, so sum_ij w_ij f(theta_i, phi_j)
    /// approximates the surface integral of f.
    class SphereGrid
    {
    public:
        SphereGrid(int n_theta, int n_phi);

        /// 64 x 128 grid; exact for harmonic products up to degree ~60.
        static const SphereGrid &default_grid();

        int n_theta() const { return static_cast<int>(theta_.size()); }
        int n_phi() const { return static_cast<int>(phi_.size()); }
        int size() const { return n_theta() * n_phi(); }

        double theta(int i) const { return theta_[i]; }
        double phi(int j) const { return phi_[j]; }
        double weight(int i, int /*j*/) const { return theta_weight_[i] * phi_weight_; }

        const std::vector<double> &thetas() const { return theta_; }
        const std::vector<double> &phis() const { return phi_; }

        /// Largest degree U this grid is allowed to decompose (2(U+1) nodes in theta, 4(U+1) in phi).
        int max_resolvable_degree() const;

        /// Quadrature of f over the sphere.
        double integrate(const std::function<double(double, double)> &f) const;

    private:
        std::vector<double> theta_;
        std::vector<double> theta_weight_;
        std::vector<double> phi_;
        double phi_weight_ = 0.0;
    };

    /// Gauss-Legendre nodes and weights on [-1, 1], nodes in decreasing order.
    void gauss_legendre(int n, std::vector<double> &nodes, std::vector<double> &weights);

    /// Real coefficient vector of a truncated expansion (length (U+1)^2).
    struct SHCoefficients
    {
        int degree = 0;
        RVec values;

        SHCoefficients() = default;
        SHCoefficients(int degree_, RVec values_);

        /// Isotropic unit-gain pattern: c_1 = 2 sqrt(pi), everything else zero.
        static SHCoefficients isotropic(int degree);

        int count() const { return static_cast<int>(values.size()); }
        double energy() const { return values.squaredNorm(); }

        /// Copy rescaled so that ||c||^2 = 4 pi.
        SHCoefficients energy_normalized() const;
    };

    /// Pattern samples on a SphereGrid; values(i, j) at (theta_i, phi_j).
    struct GridSamples
    {
        RMat values;
    };

    GridSamples sample_on_grid(const std::function<double(double, double)> &gain, const SphereGrid &grid);

    /// gamma(theta, phi)^T c.
    double synthesize_gain(const SHCoefficients &coeffs, double theta, double phi);

    /// Quadrature projection of sampled values onto harmonics up to degree U.
    SHCoefficients decompose_pattern(const GridSamples &samples, const SphereGrid &grid, int degree);

    /// Surface integral of G^2 over the sphere.
    double pattern_energy(const GridSamples &samples, const SphereGrid &grid);
    double pattern_energy(const std::function<double(double, double)> &gain, const SphereGrid &grid);

    // Coefficient file: "U <degree>" followed by "t c_t" rows.
    void write_coefficients(std::ostream &os, const SHCoefficients &coeffs);
    SHCoefficients read_coefficients(std::istream &is);

    /// Scattered samples as read from a "theta phi gain" table.
    struct PatternTable
    {
        std::vector<double> theta;
        std::vector<double> phi;
        std::vector<double> gain;
    };

    void write_pattern_table(std::ostream &os, const PatternTable &table);
    PatternTable read_pattern_table(std::istream &is);

} // namespace trihybrid

#endif
