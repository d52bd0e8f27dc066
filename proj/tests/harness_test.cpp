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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "typlab/harness.hpp"

namespace fs = std::filesystem;
using namespace typlab;

namespace {

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class TempDir {
  public:
    explicit TempDir(const std::string &name) : path_(fs::temp_directory_path() / name) {
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    [[nodiscard]] const fs::path &path() const { return path_; }

  private:
    fs::path path_;
};

ExperimentSpec small_spec(std::string_view id, const std::string &overrides, std::uint64_t seed = 7) {
    return make_spec(id, Config::parse(overrides), seed);
}

} // namespace

TEST(Config, ParsesAndRejects) {
    const Config c = Config::parse("# comment\nseed = 5\nMC.trials = 10 # trailing\nlist = a, b ,c\n");
    EXPECT_EQ(c.get_uint("seed", 0), 5u);
    EXPECT_EQ(c.scoped("MC").get_int("trials", 0), 10);
    EXPECT_EQ(c.get_list("list"), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_THROW((void)Config::parse("novalue\n"), ConfigError);
    EXPECT_THROW((void)Config::parse("a = 1\na = 2\n"), ConfigError);
    EXPECT_THROW((void)c.get_int("list", 0), ConfigError);
    EXPECT_EQ(Config::parse(c.canonical_text()).entries(), c.entries());
}

TEST(Catalog, KnownIds) {
    EXPECT_NE(find_experiment("EXPECTATION_EQUILIBRATION"), nullptr);
    EXPECT_EQ(find_experiment("NOPE"), nullptr);
    for (const auto &info : experiment_catalog()) {
        EXPECT_NO_THROW((void)make_spec(info.id, Config{}, 1)) << info.id;
    }
}

TEST(MakeSpec, Errors) {
    EXPECT_THROW((void)make_spec("NOPE", Config{}, 1), std::invalid_argument);
    EXPECT_THROW((void)small_spec("EXPECTATION_EQUILIBRATION", "EXPECTATION_EQUILIBRATION.d_b = 4096\n"),
                 DimensionError);
    EXPECT_THROW((void)small_spec("EXPECTATION_EQUILIBRATION", "EXPECTATION_EQUILIBRATION.trials = 0\n"),
                 std::invalid_argument);
}

TEST(MakeSpec, OverridesAreScoped) {
    const ExperimentSpec s = small_spec(
        "SPEED", "SPEED.trials = 3\nSPEED.horizon = 12.5\nPURITY_RATE_AVG.trials = 9\n", 11);
    EXPECT_EQ(s.trials, 3);
    ASSERT_TRUE(s.horizon.has_value());
    EXPECT_EQ(*s.horizon, 12.5);
    EXPECT_EQ(s.seed, 11u);
}

TEST(Csv, RoundTrip) {
    TempDir dir("typlab_csv_test");
    std::vector<TrialRecord> rows(3);
    rows[0] = {"0", 0.1, 0.01, 0.2, true, false};
    rows[1] = {"1", 1.0 / 3.0, 0.0, 2.0, std::nullopt, false};
    rows[2] = {"agg:tail", 0.5, 0.02, 1.5, true, true};
    const fs::path p = dir.path() / "X.csv";
    write_records_csv(p, "X", rows);
    std::string id;
    const auto back = read_records_csv(p, &id);
    EXPECT_EQ(id, "X");
    ASSERT_EQ(back.size(), 3u);
    EXPECT_EQ(back[1].lhs, 1.0 / 3.0);
    EXPECT_FALSE(back[1].satisfied.has_value());
    EXPECT_TRUE(back[2].vacuous);
    EXPECT_TRUE(back[0].is_trial());
    EXPECT_FALSE(back[2].is_trial());
    EXPECT_EQ(slurp(p).substr(0, 50), "experiment_id,trial,lhs,stderr,rhs,satisfied,vacuo");
}

TEST(RunExperiment, ExpectationEquilibrationHasNoViolations) {
    const ExperimentResult r = run_experiment(small_spec("EXPECTATION_EQUILIBRATION", ""));
    EXPECT_EQ(r.summary.trials, 50u);
    EXPECT_EQ(r.summary.violations, 0u);
}

TEST(RunExperiment, DeterministicAcrossRunsAndWorkers) {
    TempDir dir("typlab_det_test");
    const std::string ov = "SPEED.trials = 6\nSPEED.time_samples = 50\n";
    ExperimentSpec a = small_spec("SPEED", ov);
    a.output_dir = dir.path() / "a";
    ExperimentSpec b = a;
    b.output_dir = dir.path() / "b";
    b.workers = 3;
    ExperimentSpec c = a;
    c.output_dir = dir.path() / "c";
    const ExperimentResult ra = run_experiment(a);
    const ExperimentResult rb = run_experiment(b);
    const ExperimentResult rc = run_experiment(c);
    EXPECT_EQ(slurp(ra.csv_path), slurp(rb.csv_path));
    EXPECT_EQ(slurp(ra.csv_path), slurp(rc.csv_path));
    EXPECT_EQ(ra.csv_hash, rb.csv_hash);
    ExperimentSpec d = a;
    d.seed = 8;
    EXPECT_NE(run_experiment(d).csv_hash, ra.csv_hash);
}

TEST(Summarize, MissingFiles) {
    TempDir dir("typlab_empty_test");
    try {
        (void)summarize(dir.path());
        FAIL() << "expected an error";
    } catch (const std::runtime_error &e) {
        EXPECT_STREQ(e.what(), "missing result files");
    }
}

TEST(Suite, ManifestAndSummary) {
    TempDir dir("typlab_suite_test");
    const Config cfg = Config::parse(
        "experiments = SPEED, COMMUTATOR_LOWER, DEFF_PRODUCT_MEAN\n"
        "SPEED.trials = 3\nSPEED.time_samples = 40\n"
        "COMMUTATOR_LOWER.trials = 50\nDEFF_PRODUCT_MEAN.trials = 200\n");
    const RunResult one = run_suite(cfg, {3, dir.path() / "one", 1});
    const RunResult two = run_suite(cfg, {3, dir.path() / "two", 2});
    EXPECT_EQ(one.result_hash, two.result_hash);
    EXPECT_EQ(one.spec_hash, two.spec_hash);
    EXPECT_EQ(one.violations, 0u);
    EXPECT_TRUE(fs::exists(one.manifest_path));
    EXPECT_NE(slurp(one.manifest_path).find("\"result_hash\""), std::string::npos);

    const auto rows = summarize(dir.path() / "one");
    ASSERT_EQ(rows.size(), 3u);
    for (const auto &r : rows) EXPECT_EQ(r.violations, 0u);
    EXPECT_TRUE(fs::exists(dir.path() / "one" / "summary.csv"));
}

TEST(Suite, TrajectoryFileHasIncreasingTime) {
    TempDir dir("typlab_traj_suite");
    const Config cfg = Config::parse("experiments = DISTANCE_TRAJECTORY\nDISTANCE_TRAJECTORY.grid_points = 50\n");
    (void)run_suite(cfg, {5, dir.path(), 1});
    std::ifstream in(dir.path() / "DISTANCE_TRAJECTORY_trajectory.csv");
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "t,distance,bound");
    double prev = -1.0;
    int n = 0;
    while (std::getline(in, line)) {
        const double t = std::stod(line.substr(0, line.find(',')));
        EXPECT_GT(t, prev);
        prev = t;
        ++n;
    }
    EXPECT_EQ(n, 50);
}

TEST(Workers, FromEnvironment) {
    ::setenv(kWorkersEnv, "3", 1);
    EXPECT_EQ(workers_from_env(1), 3);
    ::setenv(kWorkersEnv, "zero", 1);
    EXPECT_THROW((void)workers_from_env(1), std::invalid_argument);
    ::unsetenv(kWorkersEnv);
    EXPECT_EQ(workers_from_env(2), 2);
}
