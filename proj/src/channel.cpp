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

#include "trihybrid/channel.hpp"
#include "trihybrid/kernels.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace trihybrid
{
    ArrayLayout ArrayLayout::upa(int n_h, int n_v, double spacing, const Vec3 &origin)
    {
        if (n_h < 1 || n_v < 1)
            throw ConfigError("UPA dimensions must be positive");
        if (!(spacing > 0.0) && n_h * n_v > 1)
            throw ConfigError("UPA spacing must be positive");
        ArrayLayout a;
        a.n_h = n_h;
        a.n_v = n_v;
        a.spacing = spacing;
        a.origin = origin;
        const double ch = 0.5 * (n_h - 1) * spacing;
        const double cv = 0.5 * (n_v - 1) * spacing;
        a.positions.reserve(static_cast<size_t>(n_h * n_v));
        for (int ih = 0; ih < n_h; ++ih)
            for (int iv = 0; iv < n_v; ++iv)
                a.positions.push_back(origin + Vec3(0.0, ih * spacing - ch, iv * spacing - cv));
        return a;
    }

    Vec3 ArrayLayout::centroid() const
    {
        Vec3 c = Vec3::Zero();
        for (const auto &p : positions)
            c += p;
        return positions.empty() ? c : Vec3(c / static_cast<double>(positions.size()));
    }

    Vec3 direction(double theta, double phi)
    {
        return Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
    }

    void direction_angles(const Vec3 &v, double &theta, double &phi)
    {
        const double r = v.norm();
        if (!(r > 1e-12))
            throw GenerationError("zero-length propagation segment");
        theta = std::atan2(std::hypot(v.x(), v.y()), v.z());
        phi = std::atan2(v.y(), v.x());
    }

    namespace
    {
        double segment(const Vec3 &a, const Vec3 &b)
        {
            const double d = (b - a).norm();
            if (!(d > 1e-9))
                throw GenerationError("coincident points in scenario geometry");
            return d;
        }

        double path_length(const Vec3 &from, const std::vector<Vec3> &bounces, const Vec3 &to)
        {
            double d = 0.0;
            Vec3 prev = from;
            for (const auto &b : bounces)
            {
                d += segment(prev, b);
                prev = b;
            }
            return d + segment(prev, to);
        }

        Vec3 uniform_in(const Box &box, std::mt19937_64 &rng)
        {
            Vec3 p;
            for (int i = 0; i < 3; ++i)
            {
                std::uniform_real_distribution<double> u(box.lo(i), box.hi(i));
                p(i) = box.lo(i) == box.hi(i) ? box.lo(i) : u(rng);
            }
            return p;
        }
    } // namespace

    UserGeometry compute_user_geometry(const ArrayLayout &bs, const ArrayLayout &ue,
                                       const std::vector<std::vector<Vec3>> &bounces,
                                       const std::vector<double> &phases, double wavelength, double zeta)
    {
        if (bounces.empty())
            throw GenerationError("a user needs at least one path");
        if (phases.size() != bounces.size())
            throw ConfigError("one phase per path is required");

        UserGeometry g;
        g.M = ue.size();
        g.N = bs.size();
        g.L = static_cast<int>(bounces.size());
        g.wavelength = wavelength;
        g.zeta = zeta;

        const size_t total = static_cast<size_t>(g.L) * static_cast<size_t>(g.M) * static_cast<size_t>(g.N);
        g.distance.resize(total);
        g.aod_theta.resize(total);
        g.aod_phi.resize(total);
        g.aoa_theta.resize(total);
        g.aoa_phi.resize(total);
        g.phase.resize(total);
        g.ref_distance.resize(static_cast<size_t>(g.L));

        const Vec3 cb = bs.centroid(), cu = ue.centroid();
        for (int l = 0; l < g.L; ++l)
        {
            const auto &pts = bounces[static_cast<size_t>(l)];
            g.ref_distance[static_cast<size_t>(l)] = path_length(cb, pts, cu);
            for (int n = 0; n < g.N; ++n)
            {
                const Vec3 &p = bs.positions[static_cast<size_t>(n)];
                const Vec3 first = pts.empty() ? Vec3::Zero() : pts.front();
                for (int m = 0; m < g.M; ++m)
                {
                    const Vec3 &q = ue.positions[static_cast<size_t>(m)];
                    const size_t i = g.pair(l, m, n);
                    g.distance[i] = path_length(p, pts, q);
                    direction_angles((pts.empty() ? q : first) - p, g.aod_theta[i], g.aod_phi[i]);
                    direction_angles((pts.empty() ? p : pts.back()) - q, g.aoa_theta[i], g.aoa_phi[i]);
                    g.phase[i] = phases[static_cast<size_t>(l)];
                }
            }
        }
        return g;
    }

    ScenarioGeometry generate_scenario(const ScenarioConfig &config, std::uint64_t seed)
    {
        if (config.users < 1)
            throw ConfigError("scenario needs at least one user");
        if (config.paths < 1)
            throw ConfigError("scenario needs at least one path per user");
        if (!config.user_positions.empty() && static_cast<int>(config.user_positions.size()) != config.users)
            throw ConfigError("user_positions must list one position per user");
        if (!(config.carrier_hz > 0.0))
            throw ConfigError("carrier frequency must be positive");

        ScenarioGeometry s;
        s.wavelength = config.wavelength();
        s.bs = ArrayLayout::upa(config.bs_nh, config.bs_nv, config.bs_spacing_wl * s.wavelength, config.bs_position);

        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);

        for (int k = 0; k < config.users; ++k)
        {
            const Vec3 pos = config.user_positions.empty() ? uniform_in(config.user_box, rng)
                                                           : config.user_positions[static_cast<size_t>(k)];
            s.ues.push_back(ArrayLayout::upa(config.ue_nh, config.ue_nv, config.ue_spacing_wl * s.wavelength, pos));

            std::vector<std::vector<Vec3>> bounces(1); // line of sight first
            std::vector<Vec3> scat;
            for (int l = 1; l < config.paths; ++l)
            {
                scat.push_back(uniform_in(config.scatterer_box, rng));
                bounces.push_back({scat.back()});
            }
            std::vector<double> psi(static_cast<size_t>(config.paths));
            for (auto &p : psi)
                p = phase(rng);

            s.scatterers.push_back(scat);
            s.users.push_back(compute_user_geometry(s.bs, s.ues.back(), bounces, psi, s.wavelength, config.zeta));
        }
        return s;
    }

    CVec pair_coefficients(const UserGeometry &g, const RadiationPattern &rx)
    {
        CVec a(static_cast<Eigen::Index>(g.distance.size()));
        const double k0 = 2.0 * pi / g.wavelength;
        const double scale = 1.0 / std::sqrt(static_cast<double>(g.L));
        for (int l = 0; l < g.L; ++l)
            for (int n = 0; n < g.N; ++n)
                for (int m = 0; m < g.M; ++m)
                {
                    const size_t i = g.pair(l, m, n);
                    const double d = g.distance[i];
                    const double loss = std::pow(g.wavelength / (four_pi * d), 0.5 * g.zeta);
                    const double ph = g.phase[i] - k0 * (d - g.ref_distance[static_cast<size_t>(l)]);
                    a(static_cast<Eigen::Index>(i)) =
                        scale * loss * rx.gain(g.aoa_theta[i], g.aoa_phi[i]) * std::polar(1.0, ph);
                }
        return a;
    }

    CMat assemble_channel(const UserGeometry &g, const std::vector<RadiationPattern> &tx, const RadiationPattern &rx)
    {
        if (static_cast<int>(tx.size()) != g.N)
            throw ConfigError("assemble_channel: need one transmit pattern per BS antenna");
        return kernels::lift_channel_parallel(g, pair_coefficients(g, rx), 1,
                                              [&](int n, double t, double p, double *out)
                                              { out[0] = tx[static_cast<size_t>(n)].gain(t, p); });
    }

    CMat effective_channel_sel(const UserGeometry &g, const CandidateSet &set, const RadiationPattern &rx)
    {
        if (set.size() < 1)
            throw ConfigError("effective_channel_sel: empty candidate set");
        return kernels::lift_channel_parallel(g, pair_coefficients(g, rx), set.size(),
                                              [&](int, double t, double p, double *out)
                                              { candidate_gain_vector_into(set, t, p, out); });
    }

    CMat effective_channel_cof(const UserGeometry &g, int degree, const RadiationPattern &rx)
    {
        if (degree < 0)
            throw DomainError("effective_channel_cof: degree must be >= 0");
        return kernels::lift_channel_parallel(g, pair_coefficients(g, rx), sh_count(degree),
                                              [&](int, double t, double p, double *out)
                                              { basis_vector_into(t, p, degree, out); });
    }

    CMat antenna_precoder(const RMat &v)
    {
        const Eigen::Index W = v.rows(), N = v.cols();
        CMat F = CMat::Zero(W * N, N);
        for (Eigen::Index n = 0; n < N; ++n)
            F.block(n * W, n, W, 1) = v.col(n).cast<cplx>();
        return F;
    }

    RMat selection_matrix(const std::vector<int> &states, int S)
    {
        RMat b = RMat::Zero(S, static_cast<Eigen::Index>(states.size()));
        for (size_t n = 0; n < states.size(); ++n)
        {
            if (states[n] < 0 || states[n] >= S)
                throw ConfigError("selection state out of range");
            b(states[n], static_cast<Eigen::Index>(n)) = 1.0;
        }
        return b;
    }

    CVec upa_arv(double theta, double phi, int n_h, int n_v, double spacing, double wavelength)
    {
        const double wh = spacing / wavelength * std::sin(phi) * std::sin(theta);
        const double wv = spacing / wavelength * std::cos(theta);
        const double norm = 1.0 / std::sqrt(static_cast<double>(n_h * n_v));
        CVec a(n_h * n_v);
        for (int ih = 0; ih < n_h; ++ih)
            for (int iv = 0; iv < n_v; ++iv)
                a(ih * n_v + iv) = norm * std::polar(1.0, -2.0 * pi * (wh * ih + wv * iv));
        return a;
    }

    CMat far_field_channel(const std::vector<FarFieldPath> &paths, const ArrayLayout &bs, const ArrayLayout &ue,
                           double wavelength)
    {
        if (paths.empty())
            throw ConfigError("far_field_channel: no paths");
        const int N = bs.size(), M = ue.size();
        const double k0 = 2.0 * pi / wavelength;
        const double scale = std::sqrt(static_cast<double>(N) * M / static_cast<double>(paths.size()));
        const Vec3 bs_ref = bs.positions.front() - bs.centroid();
        const Vec3 ue_ref = ue.positions.front() - ue.centroid();

        CMat H = CMat::Zero(M, N);
        for (const auto &p : paths)
        {
            const Vec3 ud = direction(p.aod_theta, p.aod_phi);
            const Vec3 ua = direction(p.aoa_theta, p.aoa_phi);
            // The ARVs are referenced to element 0; shift them to the array centroids.
            const cplx shift = std::polar(1.0, k0 * (bs_ref.dot(ud) + ue_ref.dot(ua)));
            const CVec a_bs = upa_arv(p.aod_theta, p.aod_phi, bs.n_h, bs.n_v, bs.spacing, wavelength);
            const CVec a_ue = upa_arv(p.aoa_theta, p.aoa_phi, ue.n_h, ue.n_v, ue.spacing, wavelength);
            H += (scale * p.gain * p.g_bs * p.g_ue * shift) * a_ue.conjugate() * a_bs.adjoint();
        }
        return H;
    }

    const char *mode_name(ChannelMode mode)
    {
        switch (mode)
        {
        case ChannelMode::sel:
            return "sel";
        case ChannelMode::cof:
            return "cof";
        default:
            return "plain";
        }
    }

    EffectiveChannel build_sel_channels(const ScenarioGeometry &s, const CandidateSet &set, const RadiationPattern &rx)
    {
        EffectiveChannel e;
        e.mode = ChannelMode::sel;
        e.width = set.size();
        e.N = s.N();
        for (const auto &u : s.users)
            e.H.push_back(effective_channel_sel(u, set, rx));
        return e;
    }

    EffectiveChannel build_cof_channels(const ScenarioGeometry &s, int degree, const RadiationPattern &rx)
    {
        EffectiveChannel e;
        e.mode = ChannelMode::cof;
        e.width = sh_count(degree);
        e.N = s.N();
        for (const auto &u : s.users)
            e.H.push_back(effective_channel_cof(u, degree, rx));
        return e;
    }

    void write_channel(std::ostream &os, const CMat &H, ChannelMode mode, int width)
    {
        const Eigen::Index N = width > 0 ? H.cols() / width : H.cols();
        os << H.rows() << ' ' << N << ' ' << mode_name(mode) << ' ' << width << '\n' << std::setprecision(17);
        for (Eigen::Index m = 0; m < H.rows(); ++m)
        {
            for (Eigen::Index c = 0; c < H.cols(); ++c)
                os << (c ? " " : "") << H(m, c).real() << ' ' << H(m, c).imag();
            os << '\n';
        }
    }

    CMat read_channel(std::istream &is, ChannelMode *mode, int *width)
    {
        Eigen::Index M = 0, N = 0;
        std::string tag;
        int w = 0;
        if (!(is >> M >> N >> tag >> w) || M < 1 || N < 1 || w < 1)
            throw SchemaError("channel dump: bad header, expected 'M N mode width'");
        ChannelMode md;
        if (tag == "plain")
            md = ChannelMode::plain;
        else if (tag == "sel")
            md = ChannelMode::sel;
        else if (tag == "cof")
            md = ChannelMode::cof;
        else
            throw SchemaError("channel dump: unknown mode '" + tag + "'");
        CMat H(M, N * w);
        for (Eigen::Index m = 0; m < M; ++m)
            for (Eigen::Index c = 0; c < N * w; ++c)
            {
                double re = 0, im = 0;
                if (!(is >> re >> im))
                    throw SchemaError("channel dump: truncated matrix data");
                H(m, c) = cplx(re, im);
            }
        if (mode)
            *mode = md;
        if (width)
            *width = w;
        return H;
    }

} // namespace trihybrid
