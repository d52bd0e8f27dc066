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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "typlab/linalg.hpp"
#include "typlab/matching.hpp"

namespace typlab {

enum class TheoremId {
    MC_VARIANCE_IDENTITY,
    MC_CONCENTRATION,
    MC_VARIANCE_CONCENTRATION,
    COARSE_GRAINED,
    CANONICAL_REDUCTION,
    DEFF_SUBSPACE_MEAN,
    DEFF_SUBSPACE_TAIL,
    DEFF_PRODUCT_MEAN,
    DEFF_MEAN_ENERGY,
    EXPECTATION_EQUILIBRATION,
    SUBSYSTEM_EQUILIBRATION,
    PURITY_EQUILIBRATION,
    ERGODICITY,
    SPEED,
    PURITY_RATE_AVG,
    PURITY_RATE_INSTANT,
    COMMUTATOR_LOWER,
    DECOHERENCE,
    ISI,
    ISI_LINDEN_DELTA,
    ENTANGLED_STATE_TAIL,
    ENTANGLED_EIGS_TAIL,
    LEVY,
    EQ_TIME_HEISENBERG,
    EQ_TIME_PURITY,
};

inline constexpr std::size_t kTheoremCount = 25;

[[nodiscard]] const std::array<TheoremId, kTheoremCount> &all_theorems();
[[nodiscard]] std::string_view to_string(TheoremId id);
[[nodiscard]] std::optional<TheoremId> parse_theorem_id(std::string_view text);
/// Human-readable formula of the evaluated right-hand side.
[[nodiscard]] std::string_view formula(TheoremId id);

/// How lhs is compared with rhs.
enum class Sense { Upper, Lower, Equality, Approximate };
[[nodiscard]] Sense sense_of(TheoremId id);
[[nodiscard]] std::string_view to_string(Sense s);

/// True when the rhs is a probability (and so vacuous once >= 1).
[[nodiscard]] bool is_probability_bound(TheoremId id);

namespace constants {
double c36();        // 1 / (36 pi^3)
double c18();        // 1 / (18 pi^3)
double c9();         // 1 / (9 pi^3)
double c_deff();     // ln(2)^2 / (72 pi^3)
double c_entangled(); // 1 / (14 ln 2)
} // namespace constants

struct BoundContext {
    std::optional<double> d, d_s, d_b, d_r, d_sr, d_br;
    std::optional<double> norm_a, norm_b, norm_hsb, norm_dephased_b, norm_hs_plus_hsb;
    std::optional<double> deff_omega, deff_omega_b, deff_omega_b_sigma;
    std::optional<double> epsilon, delta, m, eta;
    std::optional<double> energy, e0, e_mean;
    std::optional<std::vector<double>> spectrum;
    std::optional<double> p_eq, delta_e;
    /// <B>_mc and <B^2>_mc for the variance identity.
    std::optional<double> mc_b, mc_b2;
    /// Tr[(omega^B)^2] and Tr[omega^2] for purity equilibration.
    std::optional<double> purity_omega_b, purity_omega;
    /// Instantaneous quantities for the purity-rate and decoherence entries.
    std::optional<double> purity_s, mutual_information, entropy_s, norm_rho_s, speed_s;
    /// Observable eigenvalues and the state in that eigenbasis.
    std::optional<std::vector<double>> observable_values;
    std::optional<ComplexMatrix> state_in_observable_basis;
    /// Relative tolerance for Approximate entries (default 0.1).
    std::optional<double> relative_tolerance;
};

class MissingContextField : public std::invalid_argument {
  public:
    MissingContextField(TheoremId id, std::string_view field);
};

/// Primary analytic value of the catalog entry.
[[nodiscard]] double evaluate_bound(TheoremId id, const BoundContext &ctx);

/// Secondary forms where an entry lists two: MC_VARIANCE_CONCENTRATION closed
/// form, DEFF_MEAN_ENERGY crude d_eff bound, SUBSYSTEM_EQUILIBRATION and
/// PURITY_EQUILIBRATION dimension forms, PURITY_RATE_INSTANT pure-state form,
/// CANONICAL_REDUCTION deviation threshold.
[[nodiscard]] std::optional<double> evaluate_secondary(TheoremId id, const BoundContext &ctx);

/// min over delta in [0, eps] of 2 e^{-C d_R (eps - delta)} + 2 e^{-C d_R delta^2}.
[[nodiscard]] double variance_concentration_min_form(double d_r, double eps);
[[nodiscard]] double variance_concentration_closed_form(double d_r, double eps);

/// 2 ||rho^S||_inf sqrt(2 I) ||H_SB||: the form the pointwise argument supports.
[[nodiscard]] double purity_rate_operator_norm_form(const BoundContext &ctx);

struct Statistic {
    double value = 0.0;
    double std_error = 0.0;
};

struct BoundReport {
    TheoremId theorem{};
    Sense sense = Sense::Upper;
    double lhs = 0.0;
    double std_error = 0.0;
    double rhs = 0.0;
    /// Signed slack in the direction of the bound; negative means violated.
    double margin = 0.0;
    bool satisfied = false;
    bool vacuous = false;
};

inline constexpr double kExactAllowance = 1e-10;

/// lhs versus rhs under `sense`, with the allowance described at compare().
[[nodiscard]] bool within(Sense sense, Statistic lhs, double rhs, double rel_tol = 0.1);

/// Compares lhs with rhs under `sense` with allowance 3 stderr plus
/// kExactAllowance * max(1, |rhs|); Approximate adds rel_tol * |rhs|.
[[nodiscard]] BoundReport compare(TheoremId id, Sense sense, Statistic lhs, double rhs,
                                  double rel_tol = 0.1);

/// compare(id, sense_of(id), lhs, evaluate_bound(id, ctx)).
[[nodiscard]] BoundReport check_bound(TheoremId id, Statistic lhs, const BoundContext &ctx);

} // namespace typlab
