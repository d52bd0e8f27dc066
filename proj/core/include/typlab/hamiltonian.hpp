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

#include "typlab/linalg.hpp"

namespace typlab {

inline constexpr double kGapTol = 1e-9;

struct GapReport {
    double min_gap = 0.0;
    /// Smallest |(E_k - E_l) - (E_m - E_n)| over distinct positive gaps.
    double min_gap_difference = 0.0;
    bool non_resonant = false;
    double tolerance = kGapTol;
};

/// Exhaustive pair scan for d <= 64, sorted adjacent differences above.
/// `eigenvalues` must be ascending.
[[nodiscard]] GapReport gap_analysis(const RealVector &eigenvalues, double tol = kGapTol);

class Hamiltonian {
  public:
    Hamiltonian() = default;

    static Hamiltonian from_matrix(const ComplexMatrix &h, Dims dims, double gap_tol = kGapTol);
    /// Columns of `eigenbasis` must be orthonormal within 1e-10.
    static Hamiltonian from_spectrum(RealVector eigenvalues, ComplexMatrix eigenbasis, Dims dims,
                                     double gap_tol = kGapTol);

    [[nodiscard]] const RealVector &eigenvalues() const { return eig_.eigenvalues; }
    [[nodiscard]] const ComplexMatrix &eigenbasis() const { return eig_.eigenbasis; }
    [[nodiscard]] const EigenDecomposition &decomposition() const { return eig_; }
    [[nodiscard]] const ComplexMatrix &matrix() const { return matrix_; }
    [[nodiscard]] const GapReport &gaps() const { return gaps_; }
    [[nodiscard]] Dims dims() const { return dims_; }
    [[nodiscard]] Index dim() const { return eig_.dim(); }
    [[nodiscard]] double operator_norm() const;
    [[nodiscard]] GapReport gap_analysis(double tol) const;

  private:
    EigenDecomposition eig_;
    ComplexMatrix matrix_;
    GapReport gaps_;
    Dims dims_;
};

[[nodiscard]] ComplexMatrix unitary_from_hamiltonian(const Hamiltonian &h, double t);
[[nodiscard]] GapReport gap_analysis(const Hamiltonian &h, double tol = kGapTol);

/// H = h0 I + H_S (x) I + I (x) H_B + H_SB with traceless H_S, H_B and H_SB
/// carrying zero partial traces.
struct CompositeHamiltonian {
    double h0_coefficient = 0.0;
    ComplexMatrix h_s;
    ComplexMatrix h_b;
    ComplexMatrix h_sb;
    Hamiltonian assembled;

    static CompositeHamiltonian decompose(const Hamiltonian &h);
    static CompositeHamiltonian decompose(const ComplexMatrix &h, Dims dims);
    /// Assembles from parts; throws if a part is not traceless within 1e-9 * dim.
    static CompositeHamiltonian from_parts(double h0, ComplexMatrix h_s, ComplexMatrix h_b,
                                           ComplexMatrix h_sb, double gap_tol = kGapTol);

    [[nodiscard]] Dims dims() const { return assembled.dims(); }
    /// H_S (x) I + H_SB.
    [[nodiscard]] ComplexMatrix system_generator() const;
};

} // namespace typlab
