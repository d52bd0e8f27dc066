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

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "typlab/hamiltonian.hpp"
#include "typlab/rng.hpp"
#include "typlab/states.hpp"

namespace typlab {

[[nodiscard]] PureState evolve(const PureState &psi, const Hamiltonian &h, double t);
[[nodiscard]] DensityMatrix evolve(const DensityMatrix &rho, const Hamiltonian &h, double t);

/// Fast repeated evolution of one pure state: keeps c_k = <E_k|psi_0>.
class PureEvolution {
  public:
    PureEvolution(const Hamiltonian &h, const ComplexVector &psi0);

    [[nodiscard]] ComplexVector coefficients_at(double t) const;
    [[nodiscard]] ComplexVector state_at(double t) const;
    /// |c_k|^2, the diagonal of the dephased state in the eigenbasis.
    [[nodiscard]] const RealVector &populations() const { return populations_; }
    [[nodiscard]] const ComplexVector &coefficients() const { return c_; }
    [[nodiscard]] const Hamiltonian &hamiltonian() const { return *h_; }
    /// V diag(|c_k|^2) V^dagger.
    [[nodiscard]] ComplexMatrix dephased_state() const;

  private:
    const Hamiltonian *h_;
    ComplexVector c_;
    RealVector populations_;
};

enum class DephaseMode {
    /// Requires a non-resonant Hamiltonian; keeps the eigenbasis diagonal.
    Strict,
    /// Keeps blocks of degenerate clusters (eigenvalues closer than cluster_tol).
    DegenerateClusters,
};

/// Works for states and observables alike.
[[nodiscard]] ComplexMatrix dephase(const ComplexMatrix &x, const Hamiltonian &h,
                                    DephaseMode mode = DephaseMode::Strict,
                                    double cluster_tol = 1e-9);
[[nodiscard]] DensityMatrix dephase(const DensityMatrix &rho, const Hamiltonian &h,
                                    DephaseMode mode = DephaseMode::Strict);

/// Sorted uniform draws on [0, horizon].
[[nodiscard]] std::vector<double> sample_times(double horizon, Index n, RngStream &rng);

/// 1e4 / min_gap_difference, with fallbacks for d <= 2.
[[nodiscard]] double default_horizon(const Hamiltonian &h);

struct TimeAverageReport {
    DensityMatrix dephased;
    DensityMatrix empirical;
    double discrepancy = 0.0;
    double horizon = 0.0;
    Index n_samples = 0;
};

struct ScalarTimeStats {
    Index n = 0;
    double mean = 0.0;
    double second_moment = 0.0;
    /// Population variance about the sample mean.
    double variance = 0.0;
    /// sqrt(variance / n).
    double std_error = 0.0;
    std::vector<double> times;
    std::vector<double> values;
};

using TimeFunctional = std::function<double(double t, const ComplexVector &psi_t)>;

/// State average over n uniform times on [0, T], optionally reduced to S or B.
[[nodiscard]] TimeAverageReport empirical_time_average(const Hamiltonian &h, const PureState &psi0,
                                                       double horizon, Index n, RngStream &rng,
                                                       std::optional<Subsystem> reduce = {});

/// Scalar functional averaged over n uniform times on [0, T].
[[nodiscard]] ScalarTimeStats empirical_time_average(const Hamiltonian &h, const PureState &psi0,
                                                     double horizon, Index n, RngStream &rng,
                                                     const TimeFunctional &functional);

[[nodiscard]] ScalarTimeStats summarize_series(std::vector<double> times, std::vector<double> values);

/// d rho^S/dt = i[rho^S, H_S] + i Tr_B[rho, H_SB].
[[nodiscard]] ComplexMatrix subsystem_velocity(const ComplexMatrix &rho,
                                               const CompositeHamiltonian &parts);
/// Same for rho = |psi><psi| without forming rho.
[[nodiscard]] ComplexMatrix subsystem_velocity(const ComplexVector &psi,
                                               const CompositeHamiltonian &parts);

/// v_S = (1/2) || d rho^S/dt ||_1.
[[nodiscard]] double subsystem_speed(const DensityMatrix &rho, const CompositeHamiltonian &parts);
[[nodiscard]] double subsystem_speed(const ComplexVector &psi, const CompositeHamiltonian &parts);

struct PurityRate {
    double rate = 0.0;
    /// Tr[rho^S 2i Tr_B[rho^cor, H_SB]].
    double correlation_form = 0.0;
};

/// Signed dp^S/dt; throws NumericalError if the two forms differ by more
/// than 1e-9 (1 + ||H_SB||).
[[nodiscard]] PurityRate purity_rate(const DensityMatrix &rho, const CompositeHamiltonian &parts);
/// Direct form only, pure-state fast path.
[[nodiscard]] double purity_rate(const ComplexVector &psi, const CompositeHamiltonian &parts);

/// H = sum_p |p><p| (x) H^(p).
[[nodiscard]] CompositeHamiltonian pointer_hamiltonian(const std::vector<ComplexMatrix> &blocks);

/// <psi_B| U^(q)dagger U^(p) |psi_B> at time t.
[[nodiscard]] Complex suppression_factor(const std::vector<ComplexMatrix> &blocks,
                                         const ComplexVector &psi_b, Index p, Index q, double t);

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::optional<Subsystem> reduce;
};

/// States at the given strictly increasing times.
[[nodiscard]] Trajectory trajectory(const Hamiltonian &h, const PureState &psi0,
                                    const std::vector<double> &times,
                                    std::optional<Subsystem> reduce = {});

/// CSV with header `t,<names...>`, one row per time; values via %.17g.
void write_trajectory_csv(const std::filesystem::path &path, const std::vector<double> &times,
                          const std::vector<std::string> &names,
                          const std::vector<std::vector<double>> &columns);

} // namespace typlab
