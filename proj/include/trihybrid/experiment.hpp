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

#ifndef TRIHYBRID_EXPERIMENT_HPP
#define TRIHYBRID_EXPERIMENT_HPP

#include "trihybrid/channel.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace trihybrid
{
    enum class SweepAxis
    {
        none,
        power,    // per-antenna budget in dBm
        rfchains, // N_RF - D
        antennas  // N
    };

    struct ExperimentConfig
    {
        ScenarioConfig scenario;

        std::vector<std::string> methods{"model1", "model2", "wmmse_fixed", "zf"};
        int max_iterations = 50;
        double tolerance = 1e-6;
        bool early_stop = true;
        double rho = 0.7;
        int degree = 6; // T = 49
        int candidates = 64;
        double beamwidth_deg = 85.0;
        double beam_floor = 1e-3;
        int streams = 2;
        double power_dbm = 0.0;
        double noise_dbm = -90.0;
        int rf_offset = 3;
        int decomposition_iterations = 30;
        int manifold_restarts = 1;
        int manifold_max_iterations = 500;
        double manifold_tolerance = 1e-8;
        bool warm_start = true;
        bool audit_blocks = false;

        SweepAxis axis = SweepAxis::none;
        std::vector<double> values;
        int seeds = 1;
        std::uint64_t base_seed = 1;

        bool traces = true;
        bool beampattern = false;

        /// Line of each key in the source file, for diagnostics.
        std::map<std::string, int> key_lines;
    };

    /// INI-style "key = value" parser with [scenario], [solver], [sweep] and [output]
    /// sections. Throws ConfigError with "source:line: message" diagnostics.
    ExperimentConfig parse_config(std::istream &is, const std::string &source = "config");
    ExperimentConfig load_config(const std::filesystem::path &path);

    /// Semantic checks that need several keys at once.
    void validate_config(const ExperimentConfig &config, const std::string &source = "config");

    /// One results.csv row.
    struct ResultRow
    {
        int point = 0;
        std::string axis;
        double value = 0.0;
        std::uint64_t seed = 0;
        std::string method;
        int N = 0, K = 0, D = 0, N_RF = 0, S = 0, T = 0;
        double power_dbm = 0.0;
        double rate_digital = 0.0;
        double rate_hybrid = 0.0;
        double objective = 0.0;
        bool has_objective = false;
        int iterations = 0;
        bool stopped_early = false;
        double power_margin = 0.0;
        double modulus_margin = 0.0;
        double constraint_margin = 0.0;
        double positivity_min = 0.0;
        std::string warnings;
    };

    struct RunSummary
    {
        std::vector<ResultRow> rows;
        int failures = 0;
    };

    /// Runs every sweep point x seed x method, writes results.csv, timing.csv,
    /// traces/ and (optionally) beampattern/ under out_dir.
    RunSummary run_experiment(const ExperimentConfig &config, const std::filesystem::path &out_dir, int workers);

    void write_results_csv(std::ostream &os, const std::vector<ResultRow> &rows);
    std::vector<ResultRow> read_results_csv(std::istream &is);

    /// Mean and standard error per (x, method) for one of the three figure layouts.
    void emit_plotdata(const std::vector<ResultRow> &rows, SweepAxis figure, std::ostream &os);

    SweepAxis parse_axis(const std::string &name);
    const char *axis_name(SweepAxis axis);

    /// Prints one line per failing row and a summary; returns the number of failing rows.
    int audit_results(const std::vector<ResultRow> &rows, std::ostream &os, double tol = 1e-9);

    /// N = N_h x N_v with N_h the largest divisor not above sqrt(N).
    std::pair<int, int> upa_factors(int N);

} // namespace trihybrid

#endif
