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

#ifndef TRIHYBRID_PATTERNS_HPP
#define TRIHYBRID_PATTERNS_HPP

#include "trihybrid/sph_harmonics.hpp"

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

namespace trihybrid
{
    /// Gaussian main lobe around (theta0, phi0) plus a constant floor. The half-power
    /// beamwidth refers to the power pattern g^2.
    struct GaussianBeam
    {
        double theta0 = pi / 2;
        double phi0 = 0.0;
        double beamwidth = 85.0 * pi / 180.0;
        double floor = 1e-3;

        double gain(double theta, double phi) const;
    };

    /// Regular (theta x phi) table with bilinear interpolation; periodic in phi,
    /// clamped in theta.
    class TabulatedPattern
    {
    public:
        TabulatedPattern(std::vector<double> thetas, std::vector<double> phis, RMat values);

        /// Builds from scattered "theta phi gain" rows that must form a full tensor grid.
        static TabulatedPattern from_table(const PatternTable &table);

        double gain(double theta, double phi) const;

        const std::vector<double> &thetas() const { return thetas_; }
        const std::vector<double> &phis() const { return phis_; }
        const RMat &values() const { return values_; }

    private:
        std::vector<double> thetas_;
        std::vector<double> phis_;
        RMat values_;
    };

    /// Magnitude gain G(theta, phi) of one antenna. Immutable; copies are cheap.
    class RadiationPattern
    {
    public:
        struct Isotropic
        {
            double level = 1.0;
        };
        using Representation =
            std::variant<Isotropic, GaussianBeam, std::shared_ptr<const TabulatedPattern>, SHCoefficients>;

        RadiationPattern() : RadiationPattern(Isotropic{}) {}

        static RadiationPattern isotropic(double level = 1.0);
        static RadiationPattern beam(const GaussianBeam &beam);
        static RadiationPattern tabulated(TabulatedPattern table);
        static RadiationPattern harmonics(SHCoefficients coeffs);

        double gain(double theta, double phi) const;

        /// Pointwise multiple; the normalized flag is dropped unless factor == 1.
        RadiationPattern scaled(double factor) const;

        double scale() const { return scale_; }
        bool normalized() const { return normalized_; }
        const Representation &representation() const { return repr_; }

    private:
        explicit RadiationPattern(Representation repr) : repr_(std::move(repr)) {}
        friend RadiationPattern normalize_pattern(const RadiationPattern &, const SphereGrid &);

        Representation repr_;
        double scale_ = 1.0;
        bool normalized_ = false;
    };

    /// Unnormalized Gaussian beam; throws DomainError unless 0 < beamwidth < pi and floor >= 0.
    RadiationPattern gaussian_beam(double theta0, double phi0, double beamwidth, double floor = 1e-3);

    /// Rescales so that the pattern energy equals 4 pi on the given grid.
    RadiationPattern normalize_pattern(const RadiationPattern &pattern,
                                       const SphereGrid &grid = SphereGrid::default_grid());

    /// Minimum gain over a grid (positivity audit).
    double min_gain(const RadiationPattern &pattern, const SphereGrid &grid = SphereGrid::default_grid());

    /// Ordered list of normalized candidate patterns. Index 0 plays the role of the
    /// fixed-antenna baseline.
    struct CandidateSet
    {
        std::vector<RadiationPattern> patterns;

        int size() const { return static_cast<int>(patterns.size()); }
        const RadiationPattern &operator[](int s) const { return patterns.at(static_cast<size_t>(s)); }
    };

    struct BeamGridOptions
    {
        int count = 64;
        double theta_min = pi / 2;
        double theta_max = pi;
        double phi_min = -pi / 2;
        double phi_max = pi / 2;
        double beamwidth = 85.0 * pi / 180.0;
        double floor = 1e-3;

        /// Move the beam closest to broadside to the front of the set.
        bool baseline_first = true;
        double broadside_theta = pi / 2;
        double broadside_phi = 0.0;
    };

    /// Most-square factorization S = rows * cols with rows <= cols.
    std::pair<int, int> beam_grid_factors(int count);

    /// Normalized Gaussian beams centered on the cell midpoints of a uniform grid.
    CandidateSet fictitious_candidate_set(const BeamGridOptions &options = {});

    /// Index of the beam whose center is closest (great-circle) to the given direction.
    int closest_beam_index(const CandidateSet &set, double theta, double phi);

    /// [G_1(theta, phi), ..., G_S(theta, phi)].
    RVec candidate_gain_vector(const CandidateSet &set, double theta, double phi);
    void candidate_gain_vector_into(const CandidateSet &set, double theta, double phi, double *out);

    /// Great-circle angle between two directions.
    double angular_distance(double theta_a, double phi_a, double theta_b, double phi_b);

    // Manifest: "S <count>", then "s theta0 phi0 bw3dB floor" or "s tabulated <path>" per pattern.
    // Relative table paths resolve against base_dir. All loaded patterns are normalized.
    CandidateSet read_candidate_manifest(std::istream &is, const std::filesystem::path &base_dir = {});
    void write_candidate_manifest(std::ostream &os, const CandidateSet &set);

} // namespace trihybrid

#endif
