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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "typlab/bounds.hpp"
#include "typlab/config.hpp"
#include "typlab/ensembles.hpp"
#include "typlab/stats.hpp"

namespace typlab {

/// Environment variable holding the worker count.
inline constexpr const char *kWorkersEnv = "TYPLAB_WORKERS";
/// Memory guard on the composite dimension.
inline constexpr Index kMaxDimension = 1024;

struct ExperimentSpec {
    std::string experiment_id;
    Dims dims;
    std::optional<EnsembleSpec> ensemble;
    long long trials = 1;
    /// Time horizon; unset means 1e4 / min_gap_difference per instance.
    std::optional<double> horizon;
    long long time_samples = 2000;
    /// Relative tolerance of approximate comparisons.
    double rel_tol = 0.1;
    std::uint64_t seed = 1;
    /// Empty: results are not persisted.
    std::filesystem::path output_dir;
    int workers = 1;
    /// Fully resolved experiment parameters (defaults overlaid with overrides).
    Config params;
};

/// One CSV row. `trial` is the trial index, or `agg:<name>` / `check:<name>`
/// for rows computed over all trials.
struct TrialRecord {
    std::string trial;
    double lhs = 0.0;
    double std_error = 0.0;
    double rhs = 0.0;
    /// Empty for per-sample rows of aggregate experiments (written as "-").
    std::optional<bool> satisfied;
    bool vacuous = false;

    [[nodiscard]] bool is_trial() const;
    [[nodiscard]] bool violation() const { return satisfied.has_value() && !*satisfied && !vacuous; }
};

struct ExperimentSummary {
    std::string experiment_id;
    std::size_t trials = 0;
    double mean_lhs = 0.0;
    double std_error = 0.0;
    Interval ci95;
    std::size_t violations = 0;
    std::size_t vacuous = 0;
    std::size_t checks = 0;
};

struct ExperimentResult {
    std::string experiment_id;
    std::vector<TrialRecord> records;
    ExperimentSummary summary;
    /// Extra data files (trajectories) as path relative to output_dir.
    std::vector<std::string> data_files;
    std::filesystem::path csv_path;
    std::string csv_hash;
    double wall_time_s = 0.0;
    Config params;

    [[nodiscard]] const TrialRecord *find(std::string_view label) const;
};

struct ExperimentInfo {
    std::string_view id;
    std::string_view description;
    /// Default parameters in config syntax.
    std::string_view defaults;
    std::optional<TheoremId> theorem;
};

[[nodiscard]] const std::vector<ExperimentInfo> &experiment_catalog();
[[nodiscard]] const ExperimentInfo *find_experiment(std::string_view id);

/// Resolves defaults + `cfg` (global keys and `ID.` overrides) into a spec.
[[nodiscard]] ExperimentSpec make_spec(std::string_view id, const Config &cfg, std::uint64_t seed,
                                       std::filesystem::path output_dir = {}, int workers = 1);

/// Runs one experiment; writes `<ID>.csv` (and data files) when output_dir is set.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentSpec &spec);

/// Pointer-basis demo; run_experiment dispatches here for EINSELECTION_DEMO.
[[nodiscard]] ExperimentResult run_einselection_demo(const ExperimentSpec &spec);

[[nodiscard]] ExperimentSummary summarize_records(std::string_view id,
                                                  const std::vector<TrialRecord> &records);

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out_dir;
    std::optional<int> workers;
};

struct RunResult {
    std::vector<ExperimentResult> experiments;
    std::uint64_t seed = 0;
    std::string spec_hash;
    std::string result_hash;
    std::filesystem::path manifest_path;
    std::size_t violations = 0;
};

/// Runs every experiment selected by `experiments` (comma list or "all"),
/// writes CSVs and manifest.json.
[[nodiscard]] RunResult run_suite(const Config &cfg, const RunOptions &opts);

/// Worker count from TYPLAB_WORKERS, else `fallback`.
[[nodiscard]] int workers_from_env(int fallback);

/// Reads `<ID>.csv` files in dir, writes summary.csv; throws if none exist.
[[nodiscard]] std::vector<ExperimentSummary> summarize(const std::filesystem::path &dir);

void write_records_csv(const std::filesystem::path &path, std::string_view id,
                       const std::vector<TrialRecord> &records);
[[nodiscard]] std::vector<TrialRecord> read_records_csv(const std::filesystem::path &path,
                                                        std::string *id = nullptr);

[[nodiscard]] std::string code_version();

} // namespace typlab
