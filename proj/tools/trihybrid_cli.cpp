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
#include "trihybrid/parallel.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace trihybrid;

int main(int argc, char **argv)
{
    CLI::App app{"Tri-hybrid multi-user MIMO precoding experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "results";
    auto *run = app.add_subcommand("run", "Run every sweep point, seed and method of a config file");
    run->add_option("config", config_path, "Experiment config (INI-style)")->required();
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();

    std::string results_path, figure;
    auto *plot = app.add_subcommand("plotdata", "Aggregate a results CSV into plot-ready means and standard errors");
    plot->add_option("results", results_path, "results.csv from a run")->required();
    plot->add_option("--figure", figure, "Layout of the x axis")
        ->required()
        ->check(CLI::IsMember({"power", "rfchains", "antennas"}));

    std::string audit_path;
    auto *audit = app.add_subcommand("audit", "Check the constraint margins recorded in a results CSV");
    audit->add_option("results", audit_path, "results.csv from a run")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
        {
            const ExperimentConfig cfg = load_config(config_path);
            const int workers = worker_count();
            const RunSummary s = run_experiment(cfg, out_dir, workers);
            std::cout << "wrote " << s.rows.size() << " rows to " << (std::filesystem::path(out_dir) / "results.csv").string()
                      << '\n';
            return 0;
        }
        if (*plot)
        {
            std::ifstream f(results_path);
            if (!f)
                throw SchemaError("cannot open " + results_path);
            emit_plotdata(read_results_csv(f), parse_axis(figure), std::cout);
            return 0;
        }
        if (*audit)
        {
            std::ifstream f(audit_path);
            if (!f)
                throw SchemaError("cannot open " + audit_path);
            return audit_results(read_results_csv(f), std::cout) == 0 ? 0 : 1;
        }
    }
    catch (const ConfigError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    catch (const SchemaError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
