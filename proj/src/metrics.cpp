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

#include "trihybrid/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

namespace trihybrid
{
    double beampattern(const ArrayLayout &layout, const std::vector<RadiationPattern> &patterns, const CMat &F_k,
                       double theta, double phi, double wavelength)
    {
        const int N = layout.size();
        if (static_cast<int>(patterns.size()) != N || F_k.rows() != N)
            throw ConfigError("beampattern: need one pattern and one precoder row per antenna");
        const Vec3 u = direction(theta, phi);
        const double k0 = 2.0 * pi / wavelength;
        Eigen::RowVectorXcd r(N);
        for (int n = 0; n < N; ++n)
        {
            const Vec3 p = layout.positions[static_cast<size_t>(n)] - layout.origin;
            r(n) = patterns[static_cast<size_t>(n)].gain(theta, phi) * std::polar(1.0, k0 * p.dot(u));
        }
        return (r * F_k).norm();
    }

    double beampattern_envelope(const std::vector<double> &samples)
    {
        if (samples.empty())
            throw ConfigError("beampattern_envelope: empty theta grid");
        return *std::max_element(samples.begin(), samples.end());
    }

    RMat envelope_grid(const ArrayLayout &layout, const std::vector<RadiationPattern> &patterns, const CMat &F,
                       const std::vector<int> &streams, const std::vector<double> &thetas,
                       const std::vector<double> &phis, double wavelength)
    {
        RMat env(static_cast<Eigen::Index>(streams.size()), static_cast<Eigen::Index>(phis.size()));
        int off = 0;
        std::vector<double> col(thetas.size());
        for (size_t k = 0; k < streams.size(); ++k)
        {
            const CMat Fk = F.middleCols(off, streams[k]);
            for (size_t j = 0; j < phis.size(); ++j)
            {
                for (size_t i = 0; i < thetas.size(); ++i)
                    col[i] = beampattern(layout, patterns, Fk, thetas[i], phis[j], wavelength);
                env(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = beampattern_envelope(col);
            }
            off += streams[k];
        }
        return env;
    }

    std::vector<double> angle_grid(double lo, double hi, double step)
    {
        if (!(step > 0.0) || hi < lo)
            throw ConfigError("angle_grid: empty range");
        std::vector<double> g;
        const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
        for (int i = 0; i <= n; ++i)
            g.push_back(lo + i * step);
        return g;
    }

    void write_beampattern_csv(std::ostream &os, const RMat &envelopes, const std::vector<double> &phis)
    {
        const double ref = envelopes.size() ? envelopes.maxCoeff() : 0.0;
        os << "phi_deg,user,envelope_db_normalized\n" << std::fixed << std::setprecision(6);
        for (Eigen::Index k = 0; k < envelopes.rows(); ++k)
            for (size_t j = 0; j < phis.size(); ++j)
            {
                const double e = envelopes(k, static_cast<Eigen::Index>(j));
                const double db = (ref > 0.0 && e > 0.0) ? 20.0 * std::log10(e / ref) : -300.0;
                os << phis[j] * 180.0 / pi << ',' << k + 1 << ',' << db << '\n';
            }
    }

    std::vector<RadiationPattern> patterns_from_selection(const CandidateSet &set, const std::vector<int> &states)
    {
        std::vector<RadiationPattern> out;
        for (int s : states)
            out.push_back(set[s]);
        return out;
    }

    std::vector<RadiationPattern> patterns_from_coefficients(const RMat &V, int degree)
    {
        std::vector<RadiationPattern> out;
        for (Eigen::Index n = 0; n < V.cols(); ++n)
            out.push_back(RadiationPattern::harmonics(SHCoefficients(degree, V.col(n))));
        return out;
    }

    AuditReport audit_constraints(const AuditInput &in, const SphereGrid &grid)
    {
        AuditReport r;
        const RVec p = in.F.rowwise().squaredNorm();
        if (in.budget.size() != p.size())
            throw ConfigError("audit_constraints: one budget per antenna is required");
        r.power_margin = std::numeric_limits<double>::infinity();
        for (Eigen::Index n = 0; n < p.size(); ++n)
            r.power_margin = std::min(r.power_margin, (in.budget(n) - p(n)) / in.budget(n));

        if (in.F_RF)
        {
            const double N = static_cast<double>(in.F_RF->rows());
            const double dev = (in.F_RF->cwiseAbs2().array() - 1.0 / N).abs().maxCoeff();
            r.modulus_margin = -dev * N;
        }

        r.positivity_min = std::numeric_limits<double>::infinity();
        if (in.V && in.mode == ChannelMode::sel)
        {
            std::vector<int> states;
            for (Eigen::Index n = 0; n < in.V->cols(); ++n)
            {
                int ones = 0, state = 0;
                for (Eigen::Index s = 0; s < in.V->rows(); ++s)
                {
                    const double b = (*in.V)(s, n);
                    if (b == 1.0)
                    {
                        ++ones;
                        state = static_cast<int>(s);
                    }
                    else if (b != 0.0)
                        ones = -1000;
                }
                if (ones != 1)
                    r.onehot_margin = -1.0;
                states.push_back(state);
            }
            if (in.set)
                for (int s : states)
                    r.positivity_min = std::min(r.positivity_min, min_gain((*in.set)[s], grid));
        }
        if (in.V && in.mode == ChannelMode::cof)
        {
            double dev = 0.0;
            for (Eigen::Index n = 0; n < in.V->cols(); ++n)
            {
                dev = std::max(dev, std::abs(in.V->col(n).squaredNorm() - four_pi) / four_pi);
                const RadiationPattern g = RadiationPattern::harmonics(SHCoefficients(in.degree, in.V->col(n)));
                r.positivity_min = std::min(r.positivity_min, min_gain(g, grid));
            }
            r.norm_margin = -dev;
        }
        return r;
    }

} // namespace trihybrid
