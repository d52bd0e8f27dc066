// Copyright 2026 The typlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "typlab/bounds.hpp"
#include "typlab/harness.hpp"

namespace {

int cmd_run(const std::string &config, std::optional<std::uint64_t> seed,
            std::optional<std::string> out, std::optional<int> workers) {
    const typlab::Config cfg = typlab::Config::load(config);
    typlab::RunOptions opts;
    opts.seed = seed;
    if (out) {
        opts.out_dir = *out;
    }
    opts.workers = workers;
    const typlab::RunResult run = typlab::run_suite(cfg, opts);
    for (const auto &r : run.experiments) {
        const auto &s = r.summary;
        std::printf("%-26s trials=%-6zu mean=%-12.6g violations=%zu vacuous=%zu  %.1fs\n",
                    r.experiment_id.c_str(), s.trials, s.mean_lhs, s.violations, s.vacuous,
                    r.wall_time_s);
    }
    std::printf("seed=%llu spec_hash=%s result_hash=%s\nmanifest: %s\n",
                static_cast<unsigned long long>(run.seed), run.spec_hash.c_str(),
                run.result_hash.c_str(), run.manifest_path.string().c_str());
    return run.violations == 0 ? 0 : 1;
}

int cmd_report(const std::string &dir) {
    const auto summaries = typlab::summarize(dir);
    std::size_t violations = 0;
    std::printf("%-26s %7s %14s %12s %9s %7s %6s\n", "experiment", "trials", "mean_lhs", "stderr",
                "violated", "vacuous", "checks");
    for (const auto &s : summaries) {
        std::printf("%-26s %7zu %14.6g %12.4g %9zu %7zu %6zu\n", s.experiment_id.c_str(), s.trials,
                    s.mean_lhs, s.std_error, s.violations, s.vacuous, s.checks);
        violations += s.violations;
    }
    std::printf("summary written to %s/summary.csv\n", dir.c_str());
    return violations == 0 ? 0 : 1;
}

int cmd_list() {
    std::printf("Bounds:\n");
    for (const auto id : typlab::all_theorems()) {
        const auto name = typlab::to_string(id);
        const auto sense = typlab::to_string(typlab::sense_of(id));
        const auto f = typlab::formula(id);
        std::printf("  %-26.*s %-12.*s %.*s\n", static_cast<int>(name.size()), name.data(),
                    static_cast<int>(sense.size()), sense.data(), static_cast<int>(f.size()), f.data());
    }
    std::printf("\nExperiments:\n");
    for (const auto &e : typlab::experiment_catalog()) {
        std::printf("  %-26.*s %.*s\n", static_cast<int>(e.id.size()), e.id.data(),
                    static_cast<int>(e.description.size()), e.description.data());
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"typlab: typicality and equilibration experiments"};
    app.require_subcommand(1);

    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> workers;
    auto *run = app.add_subcommand("run", "run the experiments selected by a config file");
    run->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "master seed (overrides the config)");
    run->add_option("--out", out, "output directory (overrides the config)");
    run->add_option("--workers", workers, "worker threads (default: TYPLAB_WORKERS or 1)")
        ->check(CLI::PositiveNumber);

    std::string in;
    auto *report = app.add_subcommand("report", "summarize the CSV files in a result directory");
    report->add_option("--in", in, "result directory")->required();

    auto *list = app.add_subcommand("list", "print the bound catalog and experiment ids");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run) {
            return cmd_run(config, seed, out, workers);
        }
        if (*report) {
            return cmd_report(in);
        }
        if (*list) {
            return cmd_list();
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
