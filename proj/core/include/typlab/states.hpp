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

#include <string>
#include <vector>

#include "typlab/hamiltonian.hpp"
#include "typlab/linalg.hpp"

namespace typlab {

inline constexpr double kNormTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;

/// Unit vector on the composite space.
class PureState {
  public:
    PureState() = default;

    /// Validates ||psi|| = 1 within kNormTol.
    static PureState make(ComplexVector amplitudes, Dims dims);
    /// Normalizes first; throws on a zero vector.
    static PureState normalized(ComplexVector amplitudes, Dims dims);

    [[nodiscard]] const ComplexVector &amplitudes() const { return amplitudes_; }
    [[nodiscard]] Dims dims() const { return dims_; }
    [[nodiscard]] Index dim() const { return amplitudes_.size(); }
    [[nodiscard]] ComplexMatrix projector() const;

  private:
    PureState(ComplexVector amplitudes, Dims dims)
        : amplitudes_(std::move(amplitudes)), dims_(dims) {}

    ComplexVector amplitudes_;
    Dims dims_;
};

/// Hermitian, positive semidefinite, unit trace.
class DensityMatrix {
  public:
    DensityMatrix() = default;

    /// Checks Hermiticity (kHermitianTol), trace (kTraceTol) and spectrum (kPsdTol).
    static DensityMatrix from_matrix(ComplexMatrix m, Dims dims);
    static DensityMatrix from_pure(const PureState &psi);
    static DensityMatrix maximally_mixed(Dims dims);

    [[nodiscard]] const ComplexMatrix &matrix() const { return m_; }
    [[nodiscard]] Dims dims() const { return dims_; }
    [[nodiscard]] Index dim() const { return m_.rows(); }

  private:
    DensityMatrix(ComplexMatrix m, Dims dims) : m_(std::move(m)), dims_(dims) {}

    ComplexMatrix m_;
    Dims dims_;
};

/// Orthogonal projectors with optional labels.
class MacroObservableSet {
  public:
    MacroObservableSet(std::vector<ComplexMatrix> projectors,
                       std::vector<std::string> labels = {}, double tol = 1e-9);

    [[nodiscard]] const std::vector<ComplexMatrix> &projectors() const { return projectors_; }
    [[nodiscard]] const std::vector<std::string> &labels() const { return labels_; }
    [[nodiscard]] std::size_t size() const { return projectors_.size(); }
    /// True when the projectors sum to the identity.
    [[nodiscard]] bool complete() const { return complete_; }

  private:
    std::vector<ComplexMatrix> projectors_;
    std::vector<std::string> labels_;
    bool complete_ = false;
};

// Matrix-level functions assume a Hermitian argument and skip validation.
[[nodiscard]] double purity(const ComplexMatrix &rho);
[[nodiscard]] double effective_dimension(const ComplexMatrix &rho);
[[nodiscard]] double von_neumann_entropy(const ComplexMatrix &rho);
[[nodiscard]] double trace_distance(const ComplexMatrix &rho, const ComplexMatrix &sigma);
[[nodiscard]] double expectation(const ComplexMatrix &a, const ComplexMatrix &rho);
[[nodiscard]] double expectation(const ComplexMatrix &a, const ComplexVector &psi);
/// Entropy in nats of a probability vector.
[[nodiscard]] double shannon_entropy(const RealVector &p);

[[nodiscard]] double purity(const DensityMatrix &rho);
[[nodiscard]] double effective_dimension(const DensityMatrix &rho);
[[nodiscard]] double von_neumann_entropy(const DensityMatrix &rho);
[[nodiscard]] double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma);
[[nodiscard]] double expectation(const ComplexMatrix &a, const DensityMatrix &rho);

[[nodiscard]] DensityMatrix reduced_state(const DensityMatrix &rho, Subsystem keep);
[[nodiscard]] DensityMatrix reduced_state(const PureState &psi, Subsystem keep);

/// S(rho^S) + S(rho^B) - S(rho), nats.
[[nodiscard]] double mutual_information(const DensityMatrix &rho);
[[nodiscard]] double mutual_information(const ComplexMatrix &rho, Dims dims);

/// rho - rho^S (x) rho^B.
[[nodiscard]] ComplexMatrix correlation_operator(const ComplexMatrix &rho, Dims dims);
[[nodiscard]] ComplexMatrix correlation_operator(const DensityMatrix &rho);

/// Tr[P+ (rho - sigma)] with P+ the projector onto the non-negative eigenspace
/// of rho - sigma. Equals the trace distance.
[[nodiscard]] double max_projector_distinguishability(const ComplexMatrix &rho,
                                                      const ComplexMatrix &sigma);
[[nodiscard]] double max_projector_distinguishability(const DensityMatrix &rho,
                                                      const DensityMatrix &sigma);

/// Pi_R / d_R for orthonormal columns of `basis`.
[[nodiscard]] DensityMatrix microcanonical_state(const ComplexMatrix &basis, Dims dims);
[[nodiscard]] DensityMatrix microcanonical_state(const ComplexMatrix &basis);

/// Gibbs state exp(-beta H)/Z, evaluated with exponents shifted by E_min.
[[nodiscard]] DensityMatrix canonical_state(const Hamiltonian &h, double beta);

/// max_r Tr[P_r (rho - sigma)].
[[nodiscard]] double macro_pseudo_distance(const ComplexMatrix &rho,
                                           const ComplexMatrix &sigma,
                                           const MacroObservableSet &set);
[[nodiscard]] double macro_pseudo_distance(const DensityMatrix &rho,
                                           const DensityMatrix &sigma,
                                           const MacroObservableSet &set);

} // namespace typlab
