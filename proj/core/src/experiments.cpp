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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "experiments_internal.hpp"
#include "typlab/error.hpp"

namespace typlab {

namespace detail {

namespace {

struct Entry {
    ExperimentInfo info;
    Runner run;
};

// Defaults shared by the time-average experiments on one random instance per trial.
#define TYPLAB_EQ_DEFAULTS                                                                     \
    "d_s = 2\nd_b = 32\ntrials = 50\ntime_samples = 2000\nhorizon = auto\nspectrum_lo = 0\n" \
    "spectrum_hi = 1\n"

const std::vector<Entry> &entries() {
    static const std::vector<Entry> table = {
        {{"MC_VARIANCE_IDENTITY", "variance of Tr[B psi] over Haar states in H_R",
          "d_s = 2\nd_b = 32\nd_r = 32\nrank = 16\ntrials = 100000\nbootstrap = 200\n",
          TheoremId::MC_VARIANCE_IDENTITY},
         run_mc_variance_identity},
        {{"MC_CONCENTRATION", "tail of |Tr[B psi] - <B>_mc|",
          "d_s = 2\nd_b = 32\nd_r = 32\nrank = 16\ntrials = 20000\nepsilon = 0.1\n",
          TheoremId::MC_CONCENTRATION},
         run_mc_concentration},
        {{"MC_VARIANCE_CONCENTRATION", "tail of the state variance around the microcanonical one",
          "d_s = 2\nd_b = 32\nd_r = 32\ntrials = 20000\nepsilon = 0.05\n",
          TheoremId::MC_VARIANCE_CONCENTRATION},
         run_mc_variance_concentration},
        {{"COARSE_GRAINED", "macroscopic pseudo distance from the microcanonical state",
          "d_s = 2\nd_b = 32\nd_r = 32\nm = 4\ntrials = 5000\nepsilon = 0.2\n",
          TheoremId::COARSE_GRAINED},
         run_coarse_grained},
        {{"CANONICAL_REDUCTION", "subsystem marginal of a Haar state in H_R",
          "d_s = 2\nd_b = 32\nd_r = 32\ntrials = 5000\nepsilon = 0.1\n",
          TheoremId::CANONICAL_REDUCTION},
         run_canonical_reduction},
        {{"DEFF_SUBSPACE_MEAN", "effective dimension of Haar states in a d_R subspace",
          "d_s = 1\nd_b = 1\nd_r = 64\npadding = 32\ntrials = 2000\nbootstrap = 200\n",
          TheoremId::DEFF_SUBSPACE_MEAN},
         run_deff_subspace_mean},
        {{"DEFF_SUBSPACE_TAIL", "probability of d_eff below d_R/4",
          "d_s = 1\nd_b = 1\nd_r = 64\npadding = 32\ntrials = 2000\n",
          TheoremId::DEFF_SUBSPACE_TAIL},
         run_deff_subspace_tail},
        {{"DEFF_PRODUCT_MEAN", "effective dimension of product initial states",
          "d_s = 4\nd_b = 32\nd_sr = 4\nd_br = 32\ntrials = 2000\nbootstrap = 200\n",
          TheoremId::DEFF_PRODUCT_MEAN},
         run_deff_product_mean},
        {{"DEFF_MEAN_ENERGY", "purity of the dephased state for the mean-energy ensemble",
          "d_s = 1\nd_b = 64\ntrials = 20000\nspectrum_lo = 1\nspectrum_hi = 2\nenergy = auto\n"
          "energy_rel_tol = 0.05\nfourth_moment_tol = 0.1\n",
          TheoremId::DEFF_MEAN_ENERGY},
         run_deff_mean_energy},
        {{"EXPECTATION_EQUILIBRATION", "time variance of an observable expectation",
          TYPLAB_EQ_DEFAULTS, TheoremId::EXPECTATION_EQUILIBRATION},
         run_expectation_equilibration},
        {{"SUBSYSTEM_EQUILIBRATION", "time-averaged distance of rho^S_t from omega^S",
          TYPLAB_EQ_DEFAULTS, TheoremId::SUBSYSTEM_EQUILIBRATION},
         run_subsystem_equilibration},
        {{"PURITY_EQUILIBRATION", "time-averaged subsystem purity versus p(omega^S)",
          TYPLAB_EQ_DEFAULTS, TheoremId::PURITY_EQUILIBRATION},
         run_purity_equilibration},
        {{"ERGODICITY", "infinite-time average of Tr[B psi_t] over Haar initial states",
          "d_s = 2\nd_b = 64\nd_r = 64\ntrials = 2000\nepsilon = 0.1\ncheck_states = 10\n"
          "check_time_samples = 20000\nhorizon = auto\n",
          TheoremId::ERGODICITY},
         run_ergodicity},
        {{"SPEED", "time-averaged subsystem speed", TYPLAB_EQ_DEFAULTS "fd_points = 5\n",
          TheoremId::SPEED},
         run_speed},
        {{"PURITY_RATE_AVG", "time-averaged |dp^S/dt|", TYPLAB_EQ_DEFAULTS "fd_points = 5\n",
          TheoremId::PURITY_RATE_AVG},
         run_purity_rate_avg},
        {{"PURITY_RATE_INSTANT", "pointwise purity-rate inequality",
          TYPLAB_EQ_DEFAULTS "mi_points = 5\n", TheoremId::PURITY_RATE_INSTANT},
         run_purity_rate_instant},
        {{"COMMUTATOR_LOWER", "trace norm of [rho, A] versus the pairing sum",
          "d_s = 1\nd_b = 4\ntrials = 1000\n", TheoremId::COMMUTATOR_LOWER},
         run_commutator_lower},
        {{"DECOHERENCE", "slow-state inequality along weak-coupling trajectories",
          "d_s = 3\nd_b = 32\ntrials = 20\ncoupling = 0.01\ntime_samples = 500\nt_max = 2000\n",
          TheoremId::DECOHERENCE},
         run_decoherence},
        {{"ISI", "distance of two initial states' marginals under entangled eigenstates",
          "d_s = 2\nd_b = 64\ntrials = 20\ntime_samples = 2000\nhorizon = auto\nkappa = 0.01\n"
          "delta_target = 0.05\n",
          TheoremId::ISI},
         run_isi},
        {{"ISI_LINDEN_DELTA", "equilibrium marginal versus the reduced microcanonical state",
          "d_s = 2\nd_b = 32\nd_r = 16\ntrials = 500\n", TheoremId::ISI_LINDEN_DELTA},
         run_isi_linden_delta},
        {{"ENTANGLED_STATE_TAIL", "distance of Haar marginals from I/d_S",
          "d_s = 2\nd_b = 64\ntrials = 1000\nepsilon = 0.25\nfraction_max = 0.01\n",
          TheoremId::ENTANGLED_STATE_TAIL},
         run_entangled_state_tail},
        {{"ENTANGLED_EIGS_TAIL", "largest eigenvector marginal distance from I/d_S",
          "d_s = 2\nd_b = 32\ntrials = 20\nepsilon = 0.35\n", TheoremId::ENTANGLED_EIGS_TAIL},
         run_entangled_eigs_tail},
        {{"LEVY", "concentration of a Lipschitz function on the sphere",
          "d_s = 1\nd_b = 32\ntrials = 20000\nepsilon = 0.1\n", TheoremId::LEVY},
         run_levy},
        {{"EQ_TIME_HEISENBERG", "first time the state leaves its initial neighbourhood",
          "d_s = 2\nd_b = 32\ntrials = 20\nwindow_start = 24\nwindow = 16\nthreshold = 0.5\n",
          TheoremId::EQ_TIME_HEISENBERG},
         run_eq_time_heisenberg},
        {{"EQ_TIME_PURITY", "first time the subsystem purity reaches p_eq",
          "d_s = 2\nd_b = 32\ntrials = 10\ncoupling = 0.1\np_eq = 0.8\ndt = 0.05\n",
          TheoremId::EQ_TIME_PURITY},
         run_eq_time_purity},
        {{"EINSELECTION_DEMO", "pointer-basis Hamiltonian: diagonal drift and suppression",
          "d_s = 2\nd_b = 64\ntrials = 5\nblocks = random\ntime_samples = 200\nt_max = 50\n"
          "suppression_max = 0.3\ncoupling = 0.01\npair_factor = 5\n",
          std::nullopt},
         nullptr},
        {{"SECOND_LAW_DEMO", "marginal of a product state approaching I/d_S",
          "d_s = 2\nd_b = 64\ntrials = 10\ntime_samples = 2000\nhorizon = auto\n",
          std::nullopt},
         run_second_law_demo},
        {{"DISTANCE_TRAJECTORY", "distance of rho^S_t from omega^S on a time grid",
          "d_s = 2\nd_b = 32\ntrials = 1\ntime_samples = 2000\nhorizon = auto\ngrid_points = 400\n"
          "t_max = 60\n",
          std::nullopt},
         run_distance_trajectory},
    };
    return table;
}

#undef TYPLAB_EQ_DEFAULTS

} // namespace

std::vector<TrialRecord> experiment_records(const ExperimentSpec &spec, Files &data_files) {
    for (const auto &e : entries()) {
        if (e.info.id == spec.experiment_id && e.run != nullptr) {
            return e.run(spec, data_files);
        }
    }
    throw std::invalid_argument("unknown experiment id '" + spec.experiment_id + "'");
}

std::string label(std::size_t i) { return std::to_string(i); }

TrialRecord sample_row(std::size_t i, double lhs, double rhs) {
    return {label(i), lhs, 0.0, rhs, std::nullopt, false};
}

TrialRecord report_row(std::string label, const BoundReport &r) {
    return {std::move(label), r.lhs, r.std_error, r.rhs, r.satisfied, r.vacuous};
}

TrialRecord judged_row(std::string label, Sense sense, Statistic lhs, double rhs, double rel_tol) {
    return {std::move(label), lhs.value, lhs.std_error, rhs, within(sense, lhs, rhs, rel_tol), false};
}

TrialRecord info_row(std::string label, double lhs, double std_error, double rhs) {
    return {std::move(label), lhs, std_error, rhs, std::nullopt, false};
}

Statistic mean_of(const std::vector<double> &x) {
    if (x.size() < 2) {
        return {x.empty() ? 0.0 : x.front(), 0.0};
    }
    return {mean(x), standard_error(x)};
}

Statistic frequency(std::size_t hits, std::size_t n) {
    const double f = static_cast<double>(hits) / static_cast<double>(n);
    return {f, frequency_std_error(f, n)};
}

std::uint64_t bootstrap_seed(const ExperimentSpec &spec) {
    return splitmix64(spec.seed ^ fnv1a64(spec.experiment_id));
}

std::size_t trial_count(const ExperimentSpec &spec) { return static_cast<std::size_t>(spec.trials); }

Index param_index(const ExperimentSpec &spec, const std::string &key, long long fallback) {
    const long long v = spec.params.get_int(key, fallback);
    if (v < 0) {
        throw std::invalid_argument("parameter " + key + " must be non-negative");
    }
    return static_cast<Index>(v);
}

void guard_dimension(Index d) {
    if (d < 1 || d > kMaxDimension) {
        throw DimensionError("dimension " + std::to_string(d) + " outside [1, " +
                             std::to_string(kMaxDimension) + "]");
    }
}

std::vector<Index> index_range(Index first, Index count) {
    std::vector<Index> out(static_cast<std::size_t>(count));
    for (Index k = 0; k < count; ++k) {
        out[static_cast<std::size_t>(k)] = first + k;
    }
    return out;
}

ComplexMatrix random_coupling(Dims dims, RngStream &rng, double norm) {
    const ComplexMatrix g = random_traceless_hermitian(dims.total(), rng, 1.0);
    ComplexMatrix sb = CompositeHamiltonian::decompose(g, dims).h_sb;
    sb = 0.5 * (sb + sb.adjoint()).eval();
    return sb * (norm / schatten_norm(sb, NormKind::Operator));
}

double marginal_distance_to_mixed(const ComplexVector &v, Dims dims) {
    const ComplexMatrix rs = reduced_from_pure(v, dims, Subsystem::S);
    const ComplexMatrix mixed =
        ComplexMatrix::Identity(dims.system, dims.system) / static_cast<double>(dims.system);
    return trace_distance(rs, mixed);
}

double horizon_for(const ExperimentSpec &spec, const Hamiltonian &h) {
    return spec.horizon ? *spec.horizon : default_horizon(h);
}

} // namespace detail

const std::vector<ExperimentInfo> &experiment_catalog() {
    static const std::vector<ExperimentInfo> out = [] {
        std::vector<ExperimentInfo> v;
        for (const auto &e : detail::entries()) {
            v.push_back(e.info);
        }
        return v;
    }();
    return out;
}

const ExperimentInfo *find_experiment(std::string_view id) {
    for (const auto &info : experiment_catalog()) {
        if (info.id == id) {
            return &info;
        }
    }
    return nullptr;
}

} // namespace typlab
