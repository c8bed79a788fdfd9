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

#include "trihybrid/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

namespace trihybrid
{
    double angular_distance(double theta_a, double phi_a, double theta_b, double phi_b)
    {
        const Eigen::Vector3d a(std::sin(theta_a) * std::cos(phi_a), std::sin(theta_a) * std::sin(phi_a), std::cos(theta_a));
        const Eigen::Vector3d b(std::sin(theta_b) * std::cos(phi_b), std::sin(theta_b) * std::sin(phi_b), std::cos(theta_b));
        return std::atan2(a.cross(b).norm(), a.dot(b));
    }

    double GaussianBeam::gain(double theta, double phi) const
    {
        const double delta = angular_distance(theta, phi, theta0, phi0);
        const double r = 2.0 * delta / beamwidth;
        return std::exp(-0.5 * std::numbers::ln2 * r * r) + floor;
    }

    TabulatedPattern::TabulatedPattern(std::vector<double> thetas, std::vector<double> phis, RMat values)
        : thetas_(std::move(thetas)), phis_(std::move(phis)), values_(std::move(values))
    {
        if (thetas_.empty() || phis_.empty())
            throw ConfigError("TabulatedPattern: empty axis");
        if (values_.rows() != static_cast<Eigen::Index>(thetas_.size()) ||
            values_.cols() != static_cast<Eigen::Index>(phis_.size()))
            throw ConfigError("TabulatedPattern: value matrix does not match axes");
        if (!std::is_sorted(thetas_.begin(), thetas_.end()) || !std::is_sorted(phis_.begin(), phis_.end()))
            throw ConfigError("TabulatedPattern: axes must be ascending");
    }

    TabulatedPattern TabulatedPattern::from_table(const PatternTable &table)
    {
        std::map<double, int> ti, pi_;
        for (double t : table.theta)
            ti.emplace(t, 0);
        for (double p : table.phi)
        {
            double w = std::fmod(p, 2.0 * pi);
            pi_.emplace(w < 0 ? w + 2.0 * pi : w, 0);
        }
        std::vector<double> thetas, phis;
        for (auto &[k, v] : ti)
        {
            v = static_cast<int>(thetas.size());
            thetas.push_back(k);
        }
        for (auto &[k, v] : pi_)
        {
            v = static_cast<int>(phis.size());
            phis.push_back(k);
        }
        if (thetas.size() * phis.size() != table.gain.size())
            throw SchemaError("pattern table does not form a complete theta x phi grid");

        RMat values = RMat::Constant(static_cast<Eigen::Index>(thetas.size()), static_cast<Eigen::Index>(phis.size()),
                                     std::numeric_limits<double>::quiet_NaN());
        for (size_t r = 0; r < table.gain.size(); ++r)
        {
            double w = std::fmod(table.phi[r], 2.0 * pi);
            if (w < 0)
                w += 2.0 * pi;
            values(ti.at(table.theta[r]), pi_.at(w)) = table.gain[r];
        }
        if (values.hasNaN())
            throw SchemaError("pattern table has duplicate or missing grid points");
        return TabulatedPattern(std::move(thetas), std::move(phis), std::move(values));
    }

    double TabulatedPattern::gain(double theta, double phi) const
    {
        // theta: clamp to the table range
        const int nt = static_cast<int>(thetas_.size());
        int i0 = 0, i1 = 0;
        double wt = 0.0;
        if (theta <= thetas_.front())
            i0 = i1 = 0;
        else if (theta >= thetas_.back())
            i0 = i1 = nt - 1;
        else
        {
            i1 = static_cast<int>(std::upper_bound(thetas_.begin(), thetas_.end(), theta) - thetas_.begin());
            i0 = i1 - 1;
            wt = (theta - thetas_[i0]) / (thetas_[i1] - thetas_[i0]);
        }

        // phi: periodic
        const int np = static_cast<int>(phis_.size());
        // Map into [phi_0, phi_0 + 2 pi) so that the search below never falls before the first node.
        double p = std::fmod(phi - phis_.front(), 2.0 * pi);
        if (p < 0)
            p += 2.0 * pi;
        p += phis_.front();
        int j0 = 0, j1 = 0;
        double wp = 0.0;
        if (np > 1)
        {
            const auto it = std::upper_bound(phis_.begin(), phis_.end(), p);
            j1 = static_cast<int>(it - phis_.begin());
            j0 = j1 - 1;
            double lo, hi;
            if (j1 == 0)
            {
                j0 = np - 1;
                lo = phis_[j0] - 2.0 * pi;
                hi = phis_[0];
            }
            else if (j1 == np)
            {
                j1 = 0;
                lo = phis_[j0];
                hi = phis_[0] + 2.0 * pi;
            }
            else
            {
                lo = phis_[j0];
                hi = phis_[j1];
            }
            wp = (p - lo) / (hi - lo);
        }

        const double a = (1.0 - wp) * values_(i0, j0) + wp * values_(i0, j1);
        const double b = (1.0 - wp) * values_(i1, j0) + wp * values_(i1, j1);
        return (1.0 - wt) * a + wt * b;
    }

    RadiationPattern RadiationPattern::isotropic(double level) { return RadiationPattern(Isotropic{level}); }

    RadiationPattern RadiationPattern::beam(const GaussianBeam &beam) { return RadiationPattern(beam); }

    RadiationPattern RadiationPattern::tabulated(TabulatedPattern table)
    {
        return RadiationPattern(std::make_shared<const TabulatedPattern>(std::move(table)));
    }

    RadiationPattern RadiationPattern::harmonics(SHCoefficients coeffs) { return RadiationPattern(std::move(coeffs)); }

    double RadiationPattern::gain(double theta, double phi) const
    {
        struct Visitor
        {
            double theta, phi;
            double operator()(const Isotropic &iso) const { return iso.level; }
            double operator()(const GaussianBeam &b) const { return b.gain(theta, phi); }
            double operator()(const std::shared_ptr<const TabulatedPattern> &t) const { return t->gain(theta, phi); }
            double operator()(const SHCoefficients &c) const { return synthesize_gain(c, theta, phi); }
        };
        return scale_ * std::visit(Visitor{theta, phi}, repr_);
    }

    RadiationPattern RadiationPattern::scaled(double factor) const
    {
        RadiationPattern out = *this;
        out.scale_ *= factor;
        out.normalized_ = normalized_ && factor == 1.0;
        return out;
    }

    RadiationPattern gaussian_beam(double theta0, double phi0, double beamwidth, double floor)
    {
        if (!(beamwidth > 0.0 && beamwidth < pi))
            throw DomainError("gaussian_beam: beamwidth must lie in (0, pi)");
        if (!(floor >= 0.0))
            throw DomainError("gaussian_beam: floor must be non-negative");
        return RadiationPattern::beam(GaussianBeam{theta0, phi0, beamwidth, floor});
    }

    RadiationPattern normalize_pattern(const RadiationPattern &pattern, const SphereGrid &grid)
    {
        const double energy = pattern_energy([&](double t, double p)
                                             { return pattern.gain(t, p); }, grid);
        if (!(energy > 0.0))
            throw DomainError("normalize_pattern: pattern has zero energy");
        RadiationPattern out = pattern.scaled(std::sqrt(four_pi / energy));
        out.normalized_ = true;
        return out;
    }

    double min_gain(const RadiationPattern &pattern, const SphereGrid &grid)
    {
        double m = std::numeric_limits<double>::infinity();
        for (int i = 0; i < grid.n_theta(); ++i)
            for (int j = 0; j < grid.n_phi(); ++j)
                m = std::min(m, pattern.gain(grid.theta(i), grid.phi(j)));
        return m;
    }

    std::pair<int, int> beam_grid_factors(int count)
    {
        if (count < 1)
            throw ConfigError("candidate count must be >= 1");
        int rows = static_cast<int>(std::sqrt(static_cast<double>(count)));
        while (rows > 1 && count % rows != 0)
            --rows;
        return {rows, count / rows};
    }

    CandidateSet fictitious_candidate_set(const BeamGridOptions &options)
    {
        const auto [rows, cols] = beam_grid_factors(options.count);
        if (!(options.theta_max >= options.theta_min) || !(options.phi_max >= options.phi_min))
            throw ConfigError("fictitious_candidate_set: empty angular range");

        CandidateSet set;
        set.patterns.reserve(static_cast<size_t>(options.count));
        const double dt = (options.theta_max - options.theta_min) / rows;
        const double dp = (options.phi_max - options.phi_min) / cols;
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
            {
                const double theta0 = options.theta_min + (r + 0.5) * dt;
                const double phi0 = options.phi_min + (c + 0.5) * dp;
                set.patterns.push_back(normalize_pattern(gaussian_beam(theta0, phi0, options.beamwidth, options.floor)));
            }

        if (options.baseline_first)
        {
            const int b = closest_beam_index(set, options.broadside_theta, options.broadside_phi);
            std::rotate(set.patterns.begin(), set.patterns.begin() + b, set.patterns.begin() + b + 1);
        }
        return set;
    }

    int closest_beam_index(const CandidateSet &set, double theta, double phi)
    {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int s = 0; s < set.size(); ++s)
        {
            const auto *b = std::get_if<GaussianBeam>(&set[s].representation());
            if (!b)
                continue;
            const double d = angular_distance(theta, phi, b->theta0, b->phi0);
            if (d < best_d - 1e-12)
            {
                best_d = d;
                best = s;
            }
        }
        if (best < 0)
            throw ConfigError("closest_beam_index: candidate set has no parametric beams");
        return best;
    }

    void candidate_gain_vector_into(const CandidateSet &set, double theta, double phi, double *out)
    {
        for (int s = 0; s < set.size(); ++s)
            out[s] = set[s].gain(theta, phi);
    }

    RVec candidate_gain_vector(const CandidateSet &set, double theta, double phi)
    {
        RVec g(set.size());
        candidate_gain_vector_into(set, theta, phi, g.data());
        return g;
    }

    CandidateSet read_candidate_manifest(std::istream &is, const std::filesystem::path &base_dir)
    {
        std::string line, key;
        int count = -1;
        int lineno = 0;
        while (std::getline(is, line))
        {
            ++lineno;
            std::istringstream ls(line);
            if (!(ls >> key) || key[0] == '#')
                continue;
            if (key != "S" || !(ls >> count) || count < 1)
                throw SchemaError("manifest line " + std::to_string(lineno) + ": expected 'S <count>'");
            break;
        }
        if (count < 1)
            throw SchemaError("manifest is empty");

        std::vector<std::optional<RadiationPattern>> slots(static_cast<size_t>(count));
        while (std::getline(is, line))
        {
            ++lineno;
            std::istringstream ls(line);
            int s = 0;
            if (!(ls >> s))
                continue;
            if (s < 1 || s > count)
                throw SchemaError("manifest line " + std::to_string(lineno) + ": pattern index out of range");
            std::string first;
            ls >> first;
            RadiationPattern p;
            if (first == "tabulated")
            {
                std::string rel;
                ls >> rel;
                const auto path = std::filesystem::path(rel).is_absolute() ? std::filesystem::path(rel) : base_dir / rel;
                std::ifstream f(path);
                if (!f)
                    throw SchemaError("manifest line " + std::to_string(lineno) + ": cannot open " + path.string());
                p = RadiationPattern::tabulated(TabulatedPattern::from_table(read_pattern_table(f)));
            }
            else
            {
                double theta0 = 0, phi0 = 0, bw = 0, floor = 0;
                std::istringstream fs(first);
                if (!(fs >> theta0) || !(ls >> phi0 >> bw >> floor))
                    throw SchemaError("manifest line " + std::to_string(lineno) + ": expected 's theta0 phi0 bw3dB floor'");
                p = gaussian_beam(theta0, phi0, bw, floor);
            }
            slots[static_cast<size_t>(s - 1)] = normalize_pattern(p);
        }

        CandidateSet set;
        for (int s = 0; s < count; ++s)
        {
            if (!slots[static_cast<size_t>(s)])
                throw SchemaError("manifest is missing pattern " + std::to_string(s + 1));
            set.patterns.push_back(*slots[static_cast<size_t>(s)]);
        }
        return set;
    }

    void write_candidate_manifest(std::ostream &os, const CandidateSet &set)
    {
        os << "S " << set.size() << '\n' << std::setprecision(17);
        for (int s = 0; s < set.size(); ++s)
        {
            const auto *b = std::get_if<GaussianBeam>(&set[s].representation());
            if (!b)
                throw ConfigError("write_candidate_manifest: only parametric beams can be written inline");
            os << s + 1 << ' ' << b->theta0 << ' ' << b->phi0 << ' ' << b->beamwidth << ' ' << b->floor << '\n';
        }
    }

} // namespace trihybrid
