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

#ifndef TRIHYBRID_METRICS_HPP
#define TRIHYBRID_METRICS_HPP

#include "trihybrid/channel.hpp"
#include "trihybrid/wmmse.hpp"

#include <iosfwd>
#include <vector>

namespace trihybrid
{
    /// E_k(theta, phi) = || r^T F_k || with r_n = G_n(theta, phi) exp(j 2pi/lambda p_n^T u).
    /// F_k is the N x D_k composite precoder of one user.
    double beampattern(const ArrayLayout &layout, const std::vector<RadiationPattern> &patterns, const CMat &F_k,
                       double theta, double phi, double wavelength);

    /// max over the theta samples.
    double beampattern_envelope(const std::vector<double> &samples);

    /// Envelope of every user over an azimuth grid: result(u, j) for user u at phis[j].
    RMat envelope_grid(const ArrayLayout &layout, const std::vector<RadiationPattern> &patterns, const CMat &F,
                       const std::vector<int> &streams, const std::vector<double> &thetas,
                       const std::vector<double> &phis, double wavelength);

    /// Uniform grid lo, lo + step, ..., hi (inclusive up to rounding).
    std::vector<double> angle_grid(double lo, double hi, double step);

    /// CSV phi_deg,user,envelope_db_normalized; normalized by the largest value over all users.
    void write_beampattern_csv(std::ostream &os, const RMat &envelopes, const std::vector<double> &phis);

    /// Signed margins: >= 0 means satisfied.
    struct AuditReport
    {
        double power_margin = 0.0;      // min_n (P_n - p_n) / P_n
        double modulus_margin = 0.0;    // -max | |F_RF|^2 - 1/N | * N
        double onehot_margin = 0.0;     // 0 when every selection column is one-hot, -1 otherwise
        double norm_margin = 0.0;       // -max | ||c||^2 - 4 pi | / 4 pi
        double positivity_min = 0.0;    // min synthesized gain over the grid (logged, not a pass criterion)

        bool feasible(double tol = 1e-9) const
        {
            return power_margin >= -tol && modulus_margin >= -tol && onehot_margin >= -tol && norm_margin >= -tol;
        }
    };

    struct AuditInput
    {
        CMat F;                    // composite precoder (F_D or F_RF F_BB)
        RVec budget;
        const CMat *F_RF = nullptr; // optional
        const RMat *V = nullptr;    // optional antenna vectors
        ChannelMode mode = ChannelMode::plain;
        int degree = 0;             // for cof
        const CandidateSet *set = nullptr; // for sel positivity
    };

    AuditReport audit_constraints(const AuditInput &in, const SphereGrid &grid = SphereGrid::default_grid());

    /// Per-antenna patterns implied by antenna vectors.
    std::vector<RadiationPattern> patterns_from_selection(const CandidateSet &set, const std::vector<int> &states);
    std::vector<RadiationPattern> patterns_from_coefficients(const RMat &V, int degree);

} // namespace trihybrid

#endif
