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

#include <cstddef>
#include <string>
#include <vector>

#include "harness_detail.hpp"
#include "parallel.hpp"
#include "typlab/bounds.hpp"
#include "typlab/dynamics.hpp"
#include "typlab/ensembles.hpp"
#include "typlab/harness.hpp"
#include "typlab/rng.hpp"
#include "typlab/states.hpp"
#include "typlab/stats.hpp"

namespace typlab::detail {

using Files = std::vector<std::string>;
using Records = std::vector<TrialRecord>;
using Runner = Records (*)(const ExperimentSpec &, Files &);

std::string label(std::size_t i);
/// Per-sample row of an aggregate experiment (satisfied left open).
TrialRecord sample_row(std::size_t i, double lhs, double rhs);
TrialRecord report_row(std::string label, const BoundReport &r);
TrialRecord judged_row(std::string label, Sense sense, Statistic lhs, double rhs,
                       double rel_tol = 0.1);
/// Informational row: no verdict.
TrialRecord info_row(std::string label, double lhs, double std_error, double rhs);

Statistic mean_of(const std::vector<double> &x);
Statistic frequency(std::size_t hits, std::size_t n);
std::uint64_t bootstrap_seed(const ExperimentSpec &spec);
std::size_t trial_count(const ExperimentSpec &spec);
Index param_index(const ExperimentSpec &spec, const std::string &key, long long fallback);
void guard_dimension(Index d);
std::vector<Index> index_range(Index first, Index count);

/// Traceless coupling with vanishing partial traces and operator norm `norm`.
ComplexMatrix random_coupling(Dims dims, RngStream &rng, double norm);
/// D(Tr_B |v><v|, I/d_S).
double marginal_distance_to_mixed(const ComplexVector &v, Dims dims);
/// Configured horizon, else 1e4 / min_gap_difference.
double horizon_for(const ExperimentSpec &spec, const Hamiltonian &h);

// Static (sampling) experiments.
Records run_mc_variance_identity(const ExperimentSpec &, Files &);
Records run_mc_concentration(const ExperimentSpec &, Files &);
Records run_mc_variance_concentration(const ExperimentSpec &, Files &);
Records run_coarse_grained(const ExperimentSpec &, Files &);
Records run_canonical_reduction(const ExperimentSpec &, Files &);
Records run_deff_subspace_mean(const ExperimentSpec &, Files &);
Records run_deff_subspace_tail(const ExperimentSpec &, Files &);
Records run_deff_product_mean(const ExperimentSpec &, Files &);
Records run_deff_mean_energy(const ExperimentSpec &, Files &);
Records run_ergodicity(const ExperimentSpec &, Files &);
Records run_commutator_lower(const ExperimentSpec &, Files &);
Records run_isi_linden_delta(const ExperimentSpec &, Files &);
Records run_entangled_state_tail(const ExperimentSpec &, Files &);
Records run_entangled_eigs_tail(const ExperimentSpec &, Files &);
Records run_levy(const ExperimentSpec &, Files &);

// Dynamical experiments.
Records run_expectation_equilibration(const ExperimentSpec &, Files &);
Records run_subsystem_equilibration(const ExperimentSpec &, Files &);
Records run_purity_equilibration(const ExperimentSpec &, Files &);
Records run_speed(const ExperimentSpec &, Files &);
Records run_purity_rate_avg(const ExperimentSpec &, Files &);
Records run_purity_rate_instant(const ExperimentSpec &, Files &);
Records run_decoherence(const ExperimentSpec &, Files &);
Records run_isi(const ExperimentSpec &, Files &);
Records run_eq_time_heisenberg(const ExperimentSpec &, Files &);
Records run_eq_time_purity(const ExperimentSpec &, Files &);
Records run_second_law_demo(const ExperimentSpec &, Files &);
Records run_distance_trajectory(const ExperimentSpec &, Files &);

} // namespace typlab::detail
