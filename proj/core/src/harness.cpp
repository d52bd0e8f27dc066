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

#include "typlab/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "harness_detail.hpp"
#include "typlab/error.hpp"

namespace typlab {

namespace {

constexpr const char *kCsvHeader = "experiment_id,trial,lhs,stderr,rhs,satisfied,vacuous";
constexpr int kBootstrapResamples = 200;

bool reserved_key(const std::string &key) {
    return key == "experiments" || key == "seed" || key == "workers" || key == "out";
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_text(std::string_view id, const std::vector<TrialRecord> &records) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto &r : records) {
        out += id;
        out += ',' + r.trial + ',' + num(r.lhs) + ',' + num(r.std_error) + ',' + num(r.rhs) + ',';
        out += r.satisfied ? (*r.satisfied ? "1" : "0") : "-";
        out += ',';
        out += r.vacuous ? "1" : "0";
        out += '\n';
    }
    return out;
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

double parse_double(const std::string &s, const std::filesystem::path &path) {
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw std::runtime_error("bad number '" + s + "' in " + path.string());
    }
    return v;
}

} // namespace

bool TrialRecord::is_trial() const {
    return !trial.empty() &&
           std::all_of(trial.begin(), trial.end(), [](unsigned char c) { return std::isdigit(c); });
}

const TrialRecord *ExperimentResult::find(std::string_view label) const {
    for (const auto &r : records) {
        if (r.trial == label) {
            return &r;
        }
    }
    return nullptr;
}

ExperimentSpec make_spec(std::string_view id, const Config &cfg, std::uint64_t seed,
                         std::filesystem::path output_dir, int workers) {
    const ExperimentInfo *info = find_experiment(id);
    if (info == nullptr) {
        throw std::invalid_argument("unknown experiment id '" + std::string(id) + "'");
    }
    Config params = Config::parse(info->defaults);
    const Config overrides = cfg.scoped(id);
    for (const auto &[k, v] : overrides.entries()) {
        if (!reserved_key(k)) {
            params.set(k, v);
        }
    }

    ExperimentSpec spec;
    spec.experiment_id = std::string(id);
    const long long ds = params.get_int("d_s", 1);
    const long long db = params.get_int("d_b", 1);
    if (ds < 1 || db < 1) {
        throw DimensionError("d_s and d_b must be positive");
    }
    spec.dims = Dims{ds, db};
    if (spec.dims.total() > kMaxDimension) {
        throw DimensionError("dimension " + std::to_string(spec.dims.total()) +
                             " exceeds the memory guard " + std::to_string(kMaxDimension));
    }
    spec.trials = params.get_int("trials", 1);
    if (spec.trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
    spec.time_samples = params.get_int("time_samples", 2000);
    if (spec.time_samples < 1) {
        throw std::invalid_argument("time_samples must be >= 1");
    }
    const std::string horizon = params.get_string("horizon", "auto");
    if (horizon != "auto") {
        spec.horizon = params.get_double("horizon", 0.0);
        if (!(*spec.horizon > 0.0)) {
            throw std::invalid_argument("horizon must be positive");
        }
    }
    spec.rel_tol = params.get_double("rel_tol", 0.1);
    if (params.contains("ensemble.kind")) {
        EnsembleSpec e = ensemble_spec_from_config(params, "ensemble");
        e.seed = seed;
        spec.ensemble = e;
    }
    spec.seed = seed;
    spec.output_dir = std::move(output_dir);
    spec.workers = std::max(1, workers);
    spec.params = std::move(params);
    return spec;
}

ExperimentSummary summarize_records(std::string_view id, const std::vector<TrialRecord> &records) {
    ExperimentSummary s;
    s.experiment_id = std::string(id);
    std::vector<double> lhs;
    for (const auto &r : records) {
        if (r.is_trial()) {
            lhs.push_back(r.lhs);
        } else {
            ++s.checks;
        }
        if (r.violation()) {
            ++s.violations;
        }
        if (r.vacuous) {
            ++s.vacuous;
        }
    }
    s.trials = lhs.size();
    if (!lhs.empty()) {
        s.mean_lhs = mean(lhs);
        s.ci95 = {s.mean_lhs, s.mean_lhs};
    }
    if (lhs.size() >= 2) {
        s.std_error = standard_error(lhs);
        s.ci95 = bootstrap(lhs, BootstrapStatistic::Mean, kBootstrapResamples, fnv1a64(id)).ci95;
    }
    return s;
}

void write_records_csv(const std::filesystem::path &path, std::string_view id,
                       const std::vector<TrialRecord> &records) {
    write_file(path, csv_text(id, records));
}

std::vector<TrialRecord> read_records_csv(const std::filesystem::path &path, std::string *id) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::runtime_error("not a result file: " + path.string());
    }
    std::vector<TrialRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            f.push_back(cell);
        }
        if (f.size() != 7) {
            throw std::runtime_error("malformed row in " + path.string() + ": " + line);
        }
        if (id != nullptr) {
            *id = f[0];
        }
        TrialRecord r;
        r.trial = f[1];
        r.lhs = parse_double(f[2], path);
        r.std_error = parse_double(f[3], path);
        r.rhs = parse_double(f[4], path);
        if (f[5] != "-") {
            r.satisfied = f[5] == "1";
        }
        r.vacuous = f[6] == "1";
        out.push_back(std::move(r));
    }
    return out;
}

std::string code_version() { return std::string("typlab ") + TYPLAB_VERSION; }

int workers_from_env(int fallback) {
    const char *v = std::getenv(kWorkersEnv);
    if (v == nullptr || *v == '\0') {
        return fallback;
    }
    char *end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1) {
        throw std::invalid_argument(std::string(kWorkersEnv) + " must be a positive integer");
    }
    return static_cast<int>(n);
}

namespace detail {

ExperimentResult finalize(const ExperimentSpec &spec, std::vector<TrialRecord> records,
                          std::vector<std::string> data_files, Clock::time_point start) {
    ExperimentResult res;
    res.experiment_id = spec.experiment_id;
    res.summary = summarize_records(spec.experiment_id, records);
    const std::string text = csv_text(spec.experiment_id, records);
    res.csv_hash = hex64(fnv1a64(text));
    res.records = std::move(records);
    res.data_files = std::move(data_files);
    res.params = spec.params;
    if (!spec.output_dir.empty()) {
        std::filesystem::create_directories(spec.output_dir);
        res.csv_path = spec.output_dir / (spec.experiment_id + ".csv");
        write_file(res.csv_path, text);
    }
    res.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
    return res;
}

} // namespace detail

ExperimentResult run_experiment(const ExperimentSpec &spec) {
    if (find_experiment(spec.experiment_id) == nullptr) {
        throw std::invalid_argument("unknown experiment id '" + spec.experiment_id + "'");
    }
    if (spec.trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
    if (spec.dims.total() > kMaxDimension) {
        throw DimensionError("dimension exceeds the memory guard");
    }
    if (!spec.output_dir.empty()) {
        std::filesystem::create_directories(spec.output_dir);
    }
    const auto start = detail::Clock::now();
    std::vector<std::string> files;
    auto records = spec.experiment_id == "EINSELECTION_DEMO"
                       ? detail::einselection_records(spec, files)
                       : detail::experiment_records(spec, files);
    return detail::finalize(spec, std::move(records), std::move(files), start);
}

ExperimentResult run_einselection_demo(const ExperimentSpec &spec) {
    if (spec.experiment_id != "EINSELECTION_DEMO") {
        throw std::invalid_argument("run_einselection_demo needs an EINSELECTION_DEMO spec");
    }
    return run_experiment(spec);
}

RunResult run_suite(const Config &cfg, const RunOptions &opts) {
    using nlohmann::ordered_json;
    const auto start = detail::Clock::now();
    RunResult run;
    run.seed = opts.seed ? *opts.seed : cfg.get_uint("seed", 1);
    const std::filesystem::path out =
        opts.out_dir ? *opts.out_dir : std::filesystem::path(cfg.get_string("out", "results"));
    const int workers = opts.workers ? *opts.workers : workers_from_env(cfg.get_int("workers", 1));

    std::vector<std::string> ids;
    const std::string selection = cfg.get_string("experiments", "all");
    if (selection == "all") {
        for (const auto &info : experiment_catalog()) {
            ids.emplace_back(info.id);
        }
    } else {
        ids = split_list(selection);
    }
    if (ids.empty()) {
        throw std::invalid_argument("no experiments selected");
    }
    // Validate every id before spending time on any of them.
    std::vector<ExperimentSpec> specs;
    for (const auto &id : ids) {
        specs.push_back(make_spec(id, cfg, run.seed, out, workers));
    }

    Config resolved = cfg;
    resolved.erase("workers");
    resolved.erase("out");
    resolved.set("seed", std::to_string(run.seed));
    resolved.set("experiments", selection);
    run.spec_hash = hex64(fnv1a64(resolved.canonical_text()));

    std::string result_input = run.spec_hash + '\n';
    ordered_json exps = ordered_json::array();
    for (const auto &spec : specs) {
        ExperimentResult r = run_experiment(spec);
        run.violations += r.summary.violations;
        result_input += r.experiment_id + ' ' + r.csv_hash + '\n';
        ordered_json files = ordered_json::array();
        for (const auto &f : r.data_files) {
            const std::string h = hex64(fnv1a64(read_file(out / f)));
            result_input += f + ' ' + h + '\n';
            files.push_back({{"path", f}, {"hash", h}});
        }
        ordered_json params = ordered_json::object();
        for (const auto &[k, v] : r.params.entries()) {
            params[k] = v;
        }
        exps.push_back({{"id", r.experiment_id},
                        {"csv", r.experiment_id + ".csv"},
                        {"csv_hash", r.csv_hash},
                        {"trials", r.summary.trials},
                        {"violations", r.summary.violations},
                        {"vacuous", r.summary.vacuous},
                        {"checks", r.summary.checks},
                        {"wall_time_s", r.wall_time_s},
                        {"params", params},
                        {"data_files", files}});
        run.experiments.push_back(std::move(r));
    }
    run.result_hash = hex64(fnv1a64(result_input));

    ordered_json manifest;
    manifest["code_version"] = code_version();
    manifest["seed"] = run.seed;
    manifest["spec_hash"] = run.spec_hash;
    manifest["result_hash"] = run.result_hash;
    manifest["workers"] = workers;
    manifest["config"] = resolved.canonical_text();
    manifest["violations"] = run.violations;
    manifest["wall_time_s"] = std::chrono::duration<double>(detail::Clock::now() - start).count();
    manifest["experiments"] = exps;
    std::filesystem::create_directories(out);
    run.manifest_path = out / "manifest.json";
    write_file(run.manifest_path, manifest.dump(2) + '\n');
    return run;
}

std::vector<ExperimentSummary> summarize(const std::filesystem::path &dir) {
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(dir)) {
        for (const auto &e : std::filesystem::directory_iterator(dir)) {
            if (!e.is_regular_file() || e.path().extension() != ".csv") {
                continue;
            }
            std::ifstream in(e.path());
            std::string first;
            std::getline(in, first);
            if (first == kCsvHeader) {
                files.push_back(e.path());
            }
        }
    }
    if (files.empty()) {
        throw std::runtime_error("missing result files");
    }
    std::sort(files.begin(), files.end());
    std::vector<ExperimentSummary> out;
    std::string text = "experiment_id,trials,mean_lhs,stderr,ci95_lo,ci95_hi,violations,vacuous,checks\n";
    for (const auto &f : files) {
        std::string id = f.stem().string();
        const auto records = read_records_csv(f, &id);
        ExperimentSummary s = summarize_records(id, records);
        text += s.experiment_id + ',' + std::to_string(s.trials) + ',' + num(s.mean_lhs) + ',' +
                num(s.std_error) + ',' + num(s.ci95.lo) + ',' + num(s.ci95.hi) + ',' +
                std::to_string(s.violations) + ',' + std::to_string(s.vacuous) + ',' +
                std::to_string(s.checks) + '\n';
        out.push_back(std::move(s));
    }
    write_file(dir / "summary.csv", text);
    return out;
}

} // namespace typlab
