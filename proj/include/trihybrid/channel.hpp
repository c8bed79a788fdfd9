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

#ifndef TRIHYBRID_CHANNEL_HPP
#define TRIHYBRID_CHANNEL_HPP

#include "trihybrid/patterns.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace trihybrid
{
    using Vec3 = Eigen::Vector3d;

    /// Uniform planar array in the y-z plane of its body frame (broadside +x). Element
    /// n = ih * n_v + iv sits at origin + (0, ih d, iv d) - centroid offset, so the
    /// array centroid coincides with origin.
    struct ArrayLayout
    {
        int n_h = 1;
        int n_v = 1;
        double spacing = 0.0; // meters
        Vec3 origin = Vec3::Zero();
        std::vector<Vec3> positions; // world frame

        static ArrayLayout upa(int n_h, int n_v, double spacing, const Vec3 &origin);

        int size() const { return static_cast<int>(positions.size()); }
        Vec3 centroid() const;
    };

    /// Unit direction for inclination theta (from +z) and azimuth phi (from +x).
    Vec3 direction(double theta, double phi);

    /// Inverse of direction(); throws GenerationError for a zero vector.
    void direction_angles(const Vec3 &v, double &theta, double &phi);

    /// Propagation parameters of one user. Pair data are stored path-major and
    /// column-major within a path: index (l * N + n) * M + m.
    struct UserGeometry
    {
        int M = 0;
        int N = 0;
        int L = 0;
        double wavelength = 0.0;
        double zeta = 2.0;

        std::vector<double> distance;
        std::vector<double> aod_theta, aod_phi;
        std::vector<double> aoa_theta, aoa_phi; // direction toward the arriving wave's source
        std::vector<double> phase;
        std::vector<double> ref_distance; // one per path, centroid to centroid

        size_t pair(int l, int m, int n) const
        {
            return (static_cast<size_t>(l) * static_cast<size_t>(N) + static_cast<size_t>(n)) * static_cast<size_t>(M) +
                   static_cast<size_t>(m);
        }
    };

    /// Axis-aligned box for random placements.
    struct Box
    {
        Vec3 lo = Vec3::Zero();
        Vec3 hi = Vec3::Zero();
    };

    struct ScenarioConfig
    {
        double carrier_hz = 28e9;

        int bs_nh = 4;
        int bs_nv = 4;
        double bs_spacing_wl = 0.5;
        Vec3 bs_position = Vec3(0.0, 0.0, 15.0);

        int ue_nh = 1;
        int ue_nv = 2;
        double ue_spacing_wl = 0.5;

        int users = 2;
        std::vector<Vec3> user_positions; // drawn from user_box when empty
        Box user_box{Vec3(20.0, -40.0, 1.5), Vec3(80.0, 40.0, 1.5)};

        int paths = 4; // L_k including the line-of-sight path
        Box scatterer_box{Vec3(5.0, -60.0, 0.0), Vec3(100.0, 60.0, 25.0)};
        double zeta = 2.0;

        double wavelength() const { return speed_of_light / carrier_hz; }
    };

    struct ScenarioGeometry
    {
        ArrayLayout bs;
        std::vector<ArrayLayout> ues;
        std::vector<std::vector<Vec3>> scatterers; // per user, L_k - 1 points
        std::vector<UserGeometry> users;
        double wavelength = 0.0;

        int K() const { return static_cast<int>(users.size()); }
        int N() const { return bs.size(); }
    };

    /// Random single-bounce scenario; deterministic in (config, seed).
    ScenarioGeometry generate_scenario(const ScenarioConfig &config, std::uint64_t seed);

    /// Per-pair propagation geometry for given arrays and bounce points. An empty
    /// bounce list is the line-of-sight path.
    UserGeometry compute_user_geometry(const ArrayLayout &bs, const ArrayLayout &ue,
                                       const std::vector<std::vector<Vec3>> &bounces,
                                       const std::vector<double> &phases, double wavelength, double zeta);

    /// sqrt(NM/L) C A G^UE per pair, i.e. everything except the BS pattern.
    CVec pair_coefficients(const UserGeometry &g, const RadiationPattern &rx);

    /// M x N channel with per-antenna transmit patterns.
    CMat assemble_channel(const UserGeometry &g, const std::vector<RadiationPattern> &tx, const RadiationPattern &rx);

    /// M x NS channel lifted over the candidate set.
    CMat effective_channel_sel(const UserGeometry &g, const CandidateSet &set, const RadiationPattern &rx);

    /// M x NT channel lifted over real spherical harmonics up to degree U.
    CMat effective_channel_cof(const UserGeometry &g, int degree, const RadiationPattern &rx);

    /// Block-diagonal NW x N antenna precoder from per-antenna vectors (columns of v, W x N).
    CMat antenna_precoder(const RMat &v);

    /// W x N one-hot matrix for per-antenna state indices.
    RMat selection_matrix(const std::vector<int> &states, int S);

    /// Far-field array response of an N_h x N_v UPA, centered index convention.
    CVec upa_arv(double theta, double phi, int n_h, int n_v, double spacing, double wavelength);

    struct FarFieldPath
    {
        cplx gain;          // C_l
        double aod_theta, aod_phi;
        double aoa_theta, aoa_phi;
        double g_bs = 1.0;  // G^BS at the AoD
        double g_ue = 1.0;  // G^UE at the AoA
    };

    /// Plane-wave channel sqrt(NM/L) sum_l C_l G^UE G^BS conj(a_UE) a_BS^H. The UE response
    /// is conjugated because AoAs point toward the source.
    CMat far_field_channel(const std::vector<FarFieldPath> &paths, const ArrayLayout &bs, const ArrayLayout &ue,
                           double wavelength);

    enum class ChannelMode
    {
        plain,
        sel,
        cof
    };

    const char *mode_name(ChannelMode mode);

    /// Per-user lifted channels with block width S (sel), T (cof) or 1 (plain).
    struct EffectiveChannel
    {
        ChannelMode mode = ChannelMode::plain;
        int width = 1;
        int N = 0;
        std::vector<CMat> H;

        int K() const { return static_cast<int>(H.size()); }
    };

    EffectiveChannel build_sel_channels(const ScenarioGeometry &s, const CandidateSet &set, const RadiationPattern &rx);
    EffectiveChannel build_cof_channels(const ScenarioGeometry &s, int degree, const RadiationPattern &rx);

    // Text dump: "M N mode width" header, then M rows of 2*cols "re im" values.
    void write_channel(std::ostream &os, const CMat &H, ChannelMode mode, int width);
    CMat read_channel(std::istream &is, ChannelMode *mode = nullptr, int *width = nullptr);

} // namespace trihybrid

#endif
