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

#include "trihybrid/experiment.hpp"
#include "trihybrid/baselines.hpp"
#include "trihybrid/metrics.hpp"
#include "trihybrid/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

namespace trihybrid
{
    namespace fs = std::filesystem;

    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        std::vector<std::string> tokens(const std::string &s)
        {
            std::string t = s;
            std::replace(t.begin(), t.end(), ',', ' ');
            std::istringstream is(t);
            std::vector<std::string> out;
            std::string w;
            while (is >> w)
                out.push_back(w);
            return out;
        }

        double to_double(const std::string &s)
        {
            size_t pos = 0;
            double v = 0.0;
            try
            {
                v = std::stod(s, &pos);
            }
            catch (const std::exception &)
            {
                throw ConfigError("expected a number, got '" + s + "'");
            }
            if (pos != s.size() || !std::isfinite(v))
                throw ConfigError("expected a number, got '" + s + "'");
            return v;
        }

        long long to_int(const std::string &s)
        {
            size_t pos = 0;
            long long v = 0;
            try
            {
                v = std::stoll(s, &pos);
            }
            catch (const std::exception &)
            {
                throw ConfigError("expected an integer, got '" + s + "'");
            }
            if (pos != s.size())
                throw ConfigError("expected an integer, got '" + s + "'");
            return v;
        }

        double one_double(const std::string &v)
        {
            const auto t = tokens(v);
            if (t.size() != 1)
                throw ConfigError("expected a single number");
            return to_double(t[0]);
        }

        int one_int(const std::string &v)
        {
            const auto t = tokens(v);
            if (t.size() != 1)
                throw ConfigError("expected a single integer");
            const long long x = to_int(t[0]);
            if (x < -1000000000LL || x > 1000000000LL)
                throw ConfigError("integer out of range");
            return static_cast<int>(x);
        }

        bool one_bool(const std::string &v)
        {
            const std::string s = trim(v);
            if (s == "true" || s == "yes" || s == "on" || s == "1")
                return true;
            if (s == "false" || s == "no" || s == "off" || s == "0")
                return false;
            throw ConfigError("expected true/false, got '" + s + "'");
        }

        std::vector<double> number_list(const std::string &v)
        {
            const std::string s = trim(v);
            // start:step:stop
            if (std::count(s.begin(), s.end(), ':') == 2)
            {
                const auto a = s.find(':'), b = s.find(':', a + 1);
                const double lo = to_double(trim(s.substr(0, a)));
                const double step = to_double(trim(s.substr(a + 1, b - a - 1)));
                const double hi = to_double(trim(s.substr(b + 1)));
                if (!(step > 0.0) || hi < lo)
                    throw ConfigError("range needs a positive step and start <= stop");
                std::vector<double> out;
                const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
                for (int i = 0; i <= n; ++i)
                    out.push_back(lo + i * step);
                return out;
            }
            std::vector<double> out;
            for (const auto &t : tokens(s))
                out.push_back(to_double(t));
            return out;
        }

        Vec3 vec3(const std::string &v)
        {
            const auto x = number_list(v);
            if (x.size() != 3)
                throw ConfigError("expected three numbers");
            return Vec3(x[0], x[1], x[2]);
        }

        Box box(const std::string &v)
        {
            const auto x = number_list(v);
            if (x.size() != 6)
                throw ConfigError("expected six numbers: xmin xmax ymin ymax zmin zmax");
            Box b{Vec3(x[0], x[2], x[4]), Vec3(x[1], x[3], x[5])};
            if ((b.hi.array() < b.lo.array()).any())
                throw ConfigError("box minimum exceeds maximum");
            return b;
        }

        using Setter = std::function<void(ExperimentConfig &, const std::string &)>;

        const std::map<std::string, Setter> &setters()
        {
            static const std::map<std::string, Setter> table = {
                {"scenario.carrier_hz", [](auto &c, auto &v) { c.scenario.carrier_hz = one_double(v); }},
                {"scenario.bs_nh", [](auto &c, auto &v) { c.scenario.bs_nh = one_int(v); }},
                {"scenario.bs_nv", [](auto &c, auto &v) { c.scenario.bs_nv = one_int(v); }},
                {"scenario.bs_spacing_wl", [](auto &c, auto &v) { c.scenario.bs_spacing_wl = one_double(v); }},
                {"scenario.bs_position", [](auto &c, auto &v) { c.scenario.bs_position = vec3(v); }},
                {"scenario.ue_nh", [](auto &c, auto &v) { c.scenario.ue_nh = one_int(v); }},
                {"scenario.ue_nv", [](auto &c, auto &v) { c.scenario.ue_nv = one_int(v); }},
                {"scenario.ue_spacing_wl", [](auto &c, auto &v) { c.scenario.ue_spacing_wl = one_double(v); }},
                {"scenario.users", [](auto &c, auto &v) { c.scenario.users = one_int(v); }},
                {"scenario.user_box", [](auto &c, auto &v) { c.scenario.user_box = box(v); }},
                {"scenario.paths", [](auto &c, auto &v) { c.scenario.paths = one_int(v); }},
                {"scenario.scatterer_box", [](auto &c, auto &v) { c.scenario.scatterer_box = box(v); }},
                {"scenario.zeta", [](auto &c, auto &v) { c.scenario.zeta = one_double(v); }},

                {"solver.methods", [](auto &c, auto &v) { c.methods = tokens(v); }},
                {"solver.max_iterations", [](auto &c, auto &v) { c.max_iterations = one_int(v); }},
                {"solver.tolerance", [](auto &c, auto &v) { c.tolerance = one_double(v); }},
                {"solver.early_stop", [](auto &c, auto &v) { c.early_stop = one_bool(v); }},
                {"solver.rho", [](auto &c, auto &v) { c.rho = one_double(v); }},
                {"solver.degree", [](auto &c, auto &v) { c.degree = one_int(v); }},
                {"solver.candidates", [](auto &c, auto &v) { c.candidates = one_int(v); }},
                {"solver.beamwidth_deg", [](auto &c, auto &v) { c.beamwidth_deg = one_double(v); }},
                {"solver.beam_floor", [](auto &c, auto &v) { c.beam_floor = one_double(v); }},
                {"solver.streams", [](auto &c, auto &v) { c.streams = one_int(v); }},
                {"solver.power_dbm", [](auto &c, auto &v) { c.power_dbm = one_double(v); }},
                {"solver.noise_dbm", [](auto &c, auto &v) { c.noise_dbm = one_double(v); }},
                {"solver.rf_offset", [](auto &c, auto &v) { c.rf_offset = one_int(v); }},
                {"solver.decomposition_iterations", [](auto &c, auto &v) { c.decomposition_iterations = one_int(v); }},
                {"solver.manifold_restarts", [](auto &c, auto &v) { c.manifold_restarts = one_int(v); }},
                {"solver.manifold_max_iterations", [](auto &c, auto &v) { c.manifold_max_iterations = one_int(v); }},
                {"solver.manifold_tolerance", [](auto &c, auto &v) { c.manifold_tolerance = one_double(v); }},
                {"solver.warm_start", [](auto &c, auto &v) { c.warm_start = one_bool(v); }},
                {"solver.audit_blocks", [](auto &c, auto &v) { c.audit_blocks = one_bool(v); }},

                {"sweep.axis", [](auto &c, auto &v) { c.axis = parse_axis(trim(v)); }},
                {"sweep.values", [](auto &c, auto &v) { c.values = number_list(v); }},
                {"sweep.seeds", [](auto &c, auto &v) { c.seeds = one_int(v); }},
                {"sweep.base_seed",
                 [](auto &c, auto &v)
                 {
                     const auto t = tokens(v);
                     if (t.size() != 1)
                         throw ConfigError("expected a single integer");
                     const long long s = to_int(t[0]);
                     if (s < 0)
                         throw ConfigError("seed must be non-negative");
                     c.base_seed = static_cast<std::uint64_t>(s);
                 }},

                {"output.traces", [](auto &c, auto &v) { c.traces = one_bool(v); }},
                {"output.beampattern", [](auto &c, auto &v) { c.beampattern = one_bool(v); }},
            };
            return table;
        }

        std::string fmt(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.10g", v);
            return buf;
        }
    } // namespace

    SweepAxis parse_axis(const std::string &name)
    {
        if (name == "none")
            return SweepAxis::none;
        if (name == "power")
            return SweepAxis::power;
        if (name == "rfchains")
            return SweepAxis::rfchains;
        if (name == "antennas")
            return SweepAxis::antennas;
        throw ConfigError("unknown sweep axis '" + name + "' (none|power|rfchains|antennas)");
    }

    const char *axis_name(SweepAxis axis)
    {
        switch (axis)
        {
        case SweepAxis::power:
            return "power";
        case SweepAxis::rfchains:
            return "rfchains";
        case SweepAxis::antennas:
            return "antennas";
        default:
            return "none";
        }
    }

    std::pair<int, int> upa_factors(int N)
    {
        if (N < 1)
            throw ConfigError("antenna count must be positive");
        int nh = static_cast<int>(std::sqrt(static_cast<double>(N)));
        while (nh > 1 && N % nh != 0)
            --nh;
        return {nh, N / nh};
    }

    ExperimentConfig parse_config(std::istream &is, const std::string &source)
    {
        ExperimentConfig c;
        const std::set<std::string> sections = {"scenario", "solver", "sweep", "output"};
        std::string section;
        std::string line;
        int lineno = 0;
        while (std::getline(is, line))
        {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const std::string where = source + ":" + std::to_string(lineno) + ": ";
            if (line.front() == '[')
            {
                if (line.back() != ']')
                    throw ConfigError(where + "malformed section header");
                section = trim(line.substr(1, line.size() - 2));
                if (!sections.count(section))
                    throw ConfigError(where + "unknown section [" + section + "]");
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(where + "expected 'key = value'");
            if (section.empty())
                throw ConfigError(where + "key outside of any section");
            const std::string key = section + "." + trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            const auto it = setters().find(key);
            if (it == setters().end())
                throw ConfigError(where + "unknown key '" + key + "'");
            if (c.key_lines.count(key))
                throw ConfigError(where + "duplicate key '" + key + "'");
            try
            {
                it->second(c, value);
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(where + key + ": " + e.what());
            }
            c.key_lines[key] = lineno;
        }
        validate_config(c, source);
        return c;
    }

    ExperimentConfig load_config(const fs::path &path)
    {
        std::ifstream f(path);
        if (!f)
            throw ConfigError("cannot open config file " + path.string());
        return parse_config(f, path.string());
    }

    void validate_config(const ExperimentConfig &c, const std::string &source)
    {
        auto fail = [&](const std::string &key, const std::string &msg)
        {
            const auto it = c.key_lines.find(key);
            const std::string where = it == c.key_lines.end() ? source + ": " : source + ":" + std::to_string(it->second) + ": ";
            throw ConfigError(where + key + ": " + msg);
        };
        const auto &s = c.scenario;
        if (!(s.carrier_hz > 0.0))
            fail("scenario.carrier_hz", "must be positive");
        if (s.bs_nh < 1 || s.bs_nv < 1)
            fail("scenario.bs_nh", "BS array dimensions must be positive");
        if (s.ue_nh < 1 || s.ue_nv < 1)
            fail("scenario.ue_nh", "UE array dimensions must be positive");
        if (!(s.bs_spacing_wl > 0.0))
            fail("scenario.bs_spacing_wl", "must be positive");
        if (!(s.ue_spacing_wl > 0.0))
            fail("scenario.ue_spacing_wl", "must be positive");
        if (s.users < 1)
            fail("scenario.users", "must be >= 1");
        if (s.paths < 1)
            fail("scenario.paths", "must be >= 1");
        if (!(s.zeta > 0.0))
            fail("scenario.zeta", "must be positive");
        if (s.user_box.lo.x() <= s.bs_position.x())
            fail("scenario.user_box", "users must be in front of the BS array (x greater than the BS x)");

        const std::set<std::string> known = {"model1", "model2", "wmmse_fixed", "zf"};
        if (c.methods.empty())
            fail("solver.methods", "at least one method is required");
        std::set<std::string> seen;
        for (const auto &m : c.methods)
        {
            if (!known.count(m))
                fail("solver.methods", "unknown method '" + m + "'");
            if (!seen.insert(m).second)
                fail("solver.methods", "duplicate method '" + m + "'");
        }
        if (c.max_iterations < 1)
            fail("solver.max_iterations", "must be >= 1");
        if (!(c.tolerance >= 0.0))
            fail("solver.tolerance", "must be >= 0");
        if (!(c.rho > 0.0 && c.rho <= 1.0))
            fail("solver.rho", "must lie in (0, 1]");
        if (c.degree < 0 || c.degree > 15)
            fail("solver.degree", "must lie in [0, 15]");
        if (c.candidates < 1)
            fail("solver.candidates", "must be >= 1");
        if (!(c.beamwidth_deg > 0.0 && c.beamwidth_deg < 180.0))
            fail("solver.beamwidth_deg", "must lie in (0, 180)");
        if (!(c.beam_floor >= 0.0))
            fail("solver.beam_floor", "must be >= 0");
        if (c.streams < 1)
            fail("solver.streams", "must be >= 1");
        if (c.rf_offset < 0)
            fail("solver.rf_offset", "must be >= 0");
        if (c.decomposition_iterations < 0)
            fail("solver.decomposition_iterations", "must be >= 0");
        if (c.manifold_restarts < 1)
            fail("solver.manifold_restarts", "must be >= 1");
        if (c.manifold_max_iterations < 1)
            fail("solver.manifold_max_iterations", "must be >= 1");
        if (!(c.manifold_tolerance > 0.0))
            fail("solver.manifold_tolerance", "must be positive");
        if (c.seeds < 1)
            fail("sweep.seeds", "must be >= 1");
        if (c.axis != SweepAxis::none && c.values.empty())
            fail("sweep.values", "a sweep axis needs at least one value");
        if (c.axis == SweepAxis::none && !c.values.empty())
            fail("sweep.values", "values given but sweep.axis is none");

        // Dimensions at every sweep point.
        const int M = s.ue_nh * s.ue_nv;
        const int D = s.users * c.streams;
        std::vector<double> points = c.values;
        if (points.empty())
            points.push_back(0.0);
        for (double v : points)
        {
            int N = s.bs_nh * s.bs_nv;
            int rf = c.rf_offset;
            if (c.axis == SweepAxis::antennas)
            {
                if (v != std::floor(v) || v < 1)
                    fail("sweep.values", "antenna counts must be positive integers");
                N = static_cast<int>(v);
            }
            if (c.axis == SweepAxis::rfchains)
            {
                if (v != std::floor(v) || v < 0)
                    fail("sweep.values", "RF-chain offsets must be non-negative integers");
                rf = static_cast<int>(v);
            }
            if (D + rf > N)
                fail(c.axis == SweepAxis::none ? "solver.rf_offset" : "sweep.values",
                     "N_RF = D + offset = " + std::to_string(D + rf) + " exceeds N = " + std::to_string(N));
            if (seen.count("zf") && N - (s.users - 1) * M < c.streams)
                fail("solver.methods", "zf needs N - (K - 1) M >= streams per user at N = " + std::to_string(N));
        }
    }

    // ---- running -------------------------------------------------------------

    namespace
    {
        struct MethodOutput
        {
            ResultRow row;
            std::string trace_csv;
            std::string beampattern_csv;
            double seconds = 0.0;
            double mean_iteration_seconds = 0.0;
        };

        struct TaskOutput
        {
            std::vector<MethodOutput> methods;
        };

        std::string trace_string(const std::vector<TraceEntry> &trace)
        {
            std::ostringstream os;
            write_trace_csv(os, trace);
            return os.str();
        }

        double mean(const std::vector<double> &v)
        {
            double s = 0.0;
            for (double x : v)
                s += x;
            return v.empty() ? 0.0 : s / static_cast<double>(v.size());
        }

        std::string beampattern_string(const ScenarioGeometry &scen, const std::vector<RadiationPattern> &patterns,
                                       const CMat &F, const std::vector<int> &streams)
        {
            const double deg = pi / 180.0;
            const auto thetas = angle_grid(0.0, pi, deg);
            const auto phis = angle_grid(-pi, pi, deg);
            const RMat env = envelope_grid(scen.bs, patterns, F, streams, thetas, phis, scen.wavelength);
            std::ostringstream os;
            write_beampattern_csv(os, env, phis);
            return os.str();
        }

        TaskOutput run_task(const ExperimentConfig &base, const CandidateSet &set, int point, double value,
                            int seed_index)
        {
            ExperimentConfig cfg = base;
            if (cfg.axis == SweepAxis::power)
                cfg.power_dbm = value;
            else if (cfg.axis == SweepAxis::rfchains)
                cfg.rf_offset = static_cast<int>(value);
            else if (cfg.axis == SweepAxis::antennas)
                std::tie(cfg.scenario.bs_nh, cfg.scenario.bs_nv) = upa_factors(static_cast<int>(value));

            const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(seed_index);
            const ScenarioGeometry scen = generate_scenario(cfg.scenario, seed);
            const int K = scen.K(), N = scen.N();
            const int D = K * cfg.streams;
            const int n_rf = D + cfg.rf_offset;
            const RadiationPattern rx = RadiationPattern::isotropic();

            WmmseProblem templ;
            templ.streams.assign(static_cast<size_t>(K), cfg.streams);
            templ.beta = RVec::Constant(K, 1.0 / K);
            templ.noise = RVec::Constant(K, dbm_to_mw(cfg.noise_dbm));
            templ.budget = RVec::Constant(N, dbm_to_mw(cfg.power_dbm));

            SolverOptions opt;
            opt.max_iterations = cfg.max_iterations;
            opt.tolerance = cfg.tolerance;
            opt.early_stop = cfg.early_stop;
            opt.rho = cfg.rho;
            opt.manifold.restarts = cfg.manifold_restarts;
            opt.manifold.max_iterations = cfg.manifold_max_iterations;
            opt.manifold.tolerance = cfg.manifold_tolerance;
            opt.n_rf = n_rf;
            opt.init_rf = n_rf;
            opt.decomposition_iterations = cfg.decomposition_iterations;
            opt.seed = seed;
            opt.audit_blocks = cfg.audit_blocks;

            auto has = [&](const char *m) { return std::find(cfg.methods.begin(), cfg.methods.end(), m) != cfg.methods.end(); };
            const bool first = point == 0 && seed_index == 0;

            auto base_row = [&](const std::string &method)
            {
                ResultRow r;
                r.point = point;
                r.axis = axis_name(cfg.axis);
                r.value = cfg.axis == SweepAxis::none ? 0.0 : value;
                r.seed = seed;
                r.method = method;
                r.N = N;
                r.K = K;
                r.D = D;
                r.N_RF = n_rf;
                r.power_dbm = cfg.power_dbm;
                return r;
            };

            auto finish = [&](MethodOutput &out, const SolverResult &res, ChannelMode mode, const CandidateSet *cset,
                              int degree, const std::vector<RadiationPattern> &patterns, double seconds)
            {
                ResultRow &r = out.row;
                r.rate_digital = res.rate_digital;
                r.rate_hybrid = res.rate_hybrid;
                r.objective = res.trace.back().objective;
                r.has_objective = true;
                r.iterations = res.iterations;
                r.stopped_early = res.stopped_early;

                const CMat F = res.decomposition.F_RF * res.decomposition.F_BB;
                AuditInput in;
                in.F = F;
                in.budget = templ.budget;
                in.F_RF = &res.decomposition.F_RF;
                in.V = &res.state.V;
                in.mode = mode;
                in.degree = degree;
                in.set = cset;
                const AuditReport a = audit_constraints(in);
                r.power_margin = a.power_margin;
                r.modulus_margin = a.modulus_margin;
                r.constraint_margin = mode == ChannelMode::cof ? a.norm_margin : a.onehot_margin;
                r.positivity_min = a.positivity_min;

                std::vector<std::string> w;
                if (res.manifold_failures > 0)
                    w.push_back("manifold_nonconverged=" + std::to_string(res.manifold_failures));
                if (!(a.positivity_min > 0.0))
                    w.push_back("nonpositive_pattern");
                if (cfg.audit_blocks && (res.audit.max_relative_increase > 1e-9 || res.audit.max_power_violation > 1e-12))
                    w.push_back("block_audit");
                for (size_t i = 0; i < w.size(); ++i)
                    r.warnings += (i ? ";" : "") + w[i];

                if (cfg.traces)
                    out.trace_csv = trace_string(res.trace);
                if (cfg.beampattern && first)
                    out.beampattern_csv = beampattern_string(scen, patterns, F, templ.streams);
                out.seconds = seconds;
                out.mean_iteration_seconds = mean(res.iteration_seconds);
            };

            using clock = std::chrono::steady_clock;
            auto since = [](clock::time_point t) { return std::chrono::duration<double>(clock::now() - t).count(); };

            TaskOutput task;
            const std::vector<RadiationPattern> fixed_patterns(static_cast<size_t>(N), set[0]);

            SolverResult fixed;
            bool have_fixed = false;
            double fixed_seconds = 0.0;
            if (has("wmmse_fixed") || (has("model1") && cfg.warm_start))
            {
                const auto t0 = clock::now();
                fixed = fixed_pattern_wmmse(scen, set[0], rx, templ, opt);
                fixed_seconds = since(t0);
                have_fixed = true;
            }

            for (const auto &m : cfg.methods)
            {
                MethodOutput out;
                out.row = base_row(m);
                if (m == "wmmse_fixed")
                {
                    CandidateSet single;
                    single.patterns.push_back(set[0]);
                    out.row.S = 1;
                    finish(out, fixed, ChannelMode::sel, &single, 0, fixed_patterns, fixed_seconds);
                }
                else if (m == "model1")
                {
                    const auto t0 = clock::now();
                    WmmseProblem p = templ;
                    p.channels = build_sel_channels(scen, set, rx);
                    SolverResult res;
                    if (cfg.warm_start && have_fixed)
                    {
                        PrecoderState warm = fixed.state;
                        warm.V = RMat::Zero(set.size(), N);
                        warm.V.row(0).setOnes();
                        warm.states.assign(static_cast<size_t>(N), 0);
                        res = algorithm1(p, opt, &warm);
                    }
                    else
                        res = algorithm1(p, opt);
                    out.row.S = set.size();
                    finish(out, res, ChannelMode::sel, &set, 0, patterns_from_selection(set, res.state.states), since(t0));
                }
                else if (m == "model2")
                {
                    const auto t0 = clock::now();
                    WmmseProblem p = templ;
                    p.channels = build_cof_channels(scen, cfg.degree, rx);
                    const SolverResult res = algorithm2(p, opt);
                    out.row.T = sh_count(cfg.degree);
                    finish(out, res, ChannelMode::cof, nullptr, cfg.degree,
                           patterns_from_coefficients(res.state.V, cfg.degree), since(t0));
                }
                else if (m == "zf")
                {
                    const auto t0 = clock::now();
                    const auto chans = fixed_pattern_channels(scen, set[0], rx);
                    const auto H = apply_antenna_vectors(chans, RMat::Ones(1, N));
                    SolverResult res;
                    res.state.F_D = zf_precoder(H, templ.streams, templ.budget);
                    res.state.V = RMat::Ones(1, N);
                    res.rate_digital = sum_rate(H, res.state.F_D, templ.streams, templ.noise, templ.beta);
                    res.decomposition = decompose(res.state.F_D, n_rf, templ.budget, cfg.decomposition_iterations, seed);
                    res.decomposed = true;
                    res.rate_hybrid = sum_rate(H, res.decomposition.F_RF * res.decomposition.F_BB, templ.streams,
                                               templ.noise, templ.beta);
                    res.trace.push_back(TraceEntry{0, 0.0, res.rate_digital, 0.0});
                    CandidateSet single;
                    single.patterns.push_back(set[0]);
                    out.row.S = 1;
                    finish(out, res, ChannelMode::sel, &single, 0, fixed_patterns, since(t0));
                    out.row.has_objective = false;
                    out.trace_csv.clear();
                }
                task.methods.push_back(std::move(out));
            }
            return task;
        }
    } // namespace

    RunSummary run_experiment(const ExperimentConfig &config, const fs::path &out_dir, int workers)
    {
        validate_config(config);
        BeamGridOptions bo;
        bo.count = config.candidates;
        bo.beamwidth = config.beamwidth_deg * pi / 180.0;
        bo.floor = config.beam_floor;
        const CandidateSet set = fictitious_candidate_set(bo);

        std::vector<double> points = config.values;
        if (config.axis == SweepAxis::none)
            points = {0.0};
        const int P = static_cast<int>(points.size());
        const int tasks = P * config.seeds;

        std::vector<TaskOutput> outputs(static_cast<size_t>(tasks));
        parallel_for(tasks, workers,
                     [&](int i)
                     {
                         const int p = i / config.seeds, s = i % config.seeds;
                         outputs[static_cast<size_t>(i)] = run_task(config, set, p, points[static_cast<size_t>(p)], s);
                     });

        fs::create_directories(out_dir);
        RunSummary summary;
        std::ofstream timing(out_dir / "timing.csv");
        timing << "point,seed,method,seconds,mean_iteration_seconds\n";
        if (config.traces)
            fs::create_directories(out_dir / "traces");
        if (config.beampattern)
            fs::create_directories(out_dir / "beampattern");

        for (const auto &t : outputs)
            for (const auto &m : t.methods)
            {
                summary.rows.push_back(m.row);
                timing << m.row.point << ',' << m.row.seed << ',' << m.row.method << ',' << fmt(m.seconds) << ','
                       << fmt(m.mean_iteration_seconds) << '\n';
                if (!m.trace_csv.empty())
                {
                    std::ofstream f(out_dir / "traces" /
                                    ("p" + std::to_string(m.row.point) + "_s" + std::to_string(m.row.seed) + "_" +
                                     m.row.method + ".csv"));
                    f << m.trace_csv;
                }
                if (!m.beampattern_csv.empty())
                {
                    std::ofstream f(out_dir / "beampattern" / (m.row.method + ".csv"));
                    f << m.beampattern_csv;
                }
            }

        std::ofstream results(out_dir / "results.csv");
        write_results_csv(results, summary.rows);
        return summary;
    }

    // ---- results IO ------------------------------------------------------------

    namespace
    {
        const std::vector<std::string> &result_columns()
        {
            static const std::vector<std::string> cols = {
                "point", "axis", "value", "seed", "method", "N", "K", "D", "N_RF", "S", "T", "power_dbm",
                "sum_rate_digital", "sum_rate_hybrid", "objective", "iterations", "stopped_early", "power_margin",
                "modulus_margin", "constraint_margin", "positivity_min", "warnings"};
            return cols;
        }

        std::vector<std::string> split_csv(const std::string &line)
        {
            std::vector<std::string> out;
            std::string cur;
            for (char ch : line)
            {
                if (ch == ',')
                {
                    out.push_back(cur);
                    cur.clear();
                }
                else if (ch != '\r')
                    cur.push_back(ch);
            }
            out.push_back(cur);
            return out;
        }
    } // namespace

    void write_results_csv(std::ostream &os, const std::vector<ResultRow> &rows)
    {
        const auto &cols = result_columns();
        for (size_t i = 0; i < cols.size(); ++i)
            os << (i ? "," : "") << cols[i];
        os << '\n';
        for (const auto &r : rows)
        {
            os << r.point << ',' << r.axis << ',' << fmt(r.value) << ',' << r.seed << ',' << r.method << ',' << r.N
               << ',' << r.K << ',' << r.D << ',' << r.N_RF << ',' << r.S << ',' << r.T << ',' << fmt(r.power_dbm)
               << ',' << fmt(r.rate_digital) << ',' << fmt(r.rate_hybrid) << ','
               << (r.has_objective ? fmt(r.objective) : std::string()) << ',' << r.iterations << ','
               << (r.stopped_early ? 1 : 0) << ',' << fmt(r.power_margin) << ',' << fmt(r.modulus_margin) << ','
               << fmt(r.constraint_margin) << ',' << fmt(r.positivity_min) << ',' << r.warnings << '\n';
        }
    }

    std::vector<ResultRow> read_results_csv(std::istream &is)
    {
        std::string line;
        if (!std::getline(is, line))
            throw SchemaError("results file is empty");
        const auto header = split_csv(line);
        std::map<std::string, size_t> idx;
        for (size_t i = 0; i < header.size(); ++i)
            idx[header[i]] = i;
        for (const auto &c : result_columns())
            if (!idx.count(c))
                throw SchemaError("results file is missing column '" + c + "'");

        std::vector<ResultRow> rows;
        int lineno = 1;
        while (std::getline(is, line))
        {
            ++lineno;
            if (trim(line).empty())
                continue;
            const auto f = split_csv(line);
            if (f.size() != header.size())
                throw SchemaError("results line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(header.size()) + " fields");
            auto get = [&](const char *c) -> const std::string & { return f[idx.at(c)]; };
            auto num = [&](const char *c)
            {
                try
                {
                    return to_double(get(c));
                }
                catch (const ConfigError &)
                {
                    throw SchemaError("results line " + std::to_string(lineno) + ": bad value in column '" + c + "'");
                }
            };
            ResultRow r;
            r.point = static_cast<int>(num("point"));
            r.axis = get("axis");
            r.value = num("value");
            r.seed = static_cast<std::uint64_t>(num("seed"));
            r.method = get("method");
            r.N = static_cast<int>(num("N"));
            r.K = static_cast<int>(num("K"));
            r.D = static_cast<int>(num("D"));
            r.N_RF = static_cast<int>(num("N_RF"));
            r.S = static_cast<int>(num("S"));
            r.T = static_cast<int>(num("T"));
            r.power_dbm = num("power_dbm");
            r.rate_digital = num("sum_rate_digital");
            r.rate_hybrid = num("sum_rate_hybrid");
            r.has_objective = !get("objective").empty();
            if (r.has_objective)
                r.objective = num("objective");
            r.iterations = static_cast<int>(num("iterations"));
            r.stopped_early = num("stopped_early") != 0.0;
            r.power_margin = num("power_margin");
            r.modulus_margin = num("modulus_margin");
            r.constraint_margin = num("constraint_margin");
            r.positivity_min = num("positivity_min");
            r.warnings = get("warnings");
            rows.push_back(std::move(r));
        }
        return rows;
    }

    void emit_plotdata(const std::vector<ResultRow> &rows, SweepAxis figure, std::ostream &os)
    {
        if (figure == SweepAxis::none)
            throw ConfigError("plotdata needs a figure layout (power|rfchains|antennas)");

        auto x_of = [&](const ResultRow &r) -> double
        {
            switch (figure)
            {
            case SweepAxis::power:
                return r.power_dbm;
            case SweepAxis::rfchains:
                return r.N_RF - r.D;
            default:
                return r.N;
            }
        };
        auto label_of = [&](double x) -> std::string
        {
            if (figure == SweepAxis::rfchains)
                return x == 0.0 ? std::string("D") : "D+" + fmt(x);
            return fmt(x);
        };

        std::vector<std::string> methods;
        for (const auto &r : rows)
            if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
                methods.push_back(r.method);

        struct Acc
        {
            std::vector<double> hybrid, digital;
        };
        std::map<std::pair<double, size_t>, Acc> groups;
        for (const auto &r : rows)
        {
            const size_t mi = static_cast<size_t>(std::find(methods.begin(), methods.end(), r.method) - methods.begin());
            auto &g = groups[{x_of(r), mi}];
            g.hybrid.push_back(r.rate_hybrid);
            g.digital.push_back(r.rate_digital);
        }

        auto stats = [](const std::vector<double> &v)
        {
            const double n = static_cast<double>(v.size());
            double m = 0.0;
            for (double x : v)
                m += x;
            m /= n;
            double ss = 0.0;
            for (double x : v)
                ss += (x - m) * (x - m);
            const double se = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
            return std::pair<double, double>(m, se);
        };

        os << "figure,x,label,method,count,mean_sum_rate,stderr_sum_rate,mean_sum_rate_digital,stderr_sum_rate_digital\n";
        for (const auto &[key, acc] : groups)
        {
            const auto [mh, sh] = stats(acc.hybrid);
            const auto [md, sd] = stats(acc.digital);
            os << axis_name(figure) << ',' << fmt(key.first) << ',' << label_of(key.first) << ',' << methods[key.second]
               << ',' << acc.hybrid.size() << ',' << fmt(mh) << ',' << fmt(sh) << ',' << fmt(md) << ',' << fmt(sd)
               << '\n';
        }
    }

    int audit_results(const std::vector<ResultRow> &rows, std::ostream &os, double tol)
    {
        int failing = 0, nonpositive = 0;
        for (const auto &r : rows)
        {
            std::vector<std::string> why;
            if (r.power_margin < -tol)
                why.push_back("power_margin=" + fmt(r.power_margin));
            if (r.modulus_margin < -tol)
                why.push_back("modulus_margin=" + fmt(r.modulus_margin));
            if (r.constraint_margin < -tol)
                why.push_back("constraint_margin=" + fmt(r.constraint_margin));
            if (!(r.positivity_min > 0.0))
                ++nonpositive;
            if (!why.empty())
            {
                ++failing;
                os << "FAIL point=" << r.point << " seed=" << r.seed << " method=" << r.method;
                for (const auto &w : why)
                    os << ' ' << w;
                os << '\n';
            }
        }
        os << "rows=" << rows.size() << " failing=" << failing << " nonpositive_patterns=" << nonpositive << '\n';
        return failing;
    }

} // namespace trihybrid
