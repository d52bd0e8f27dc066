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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "typlab/error.hpp"

namespace typlab {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Bipartite dimensions. Composite index is i_S * bath + i_B.
struct Dims {
    Index system = 1;
    Index bath = 1;

    [[nodiscard]] Index total() const { return system * bath; }
    bool operator==(const Dims &) const = default;
};

enum class Subsystem { S, B };

/// Eigenvalues ascending, eigenvectors in the matching columns.
struct EigenDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenbasis;

    [[nodiscard]] Index dim() const { return eigenvalues.size(); }
    [[nodiscard]] ComplexMatrix reconstruct() const;
};

enum class NormKind { Trace, HilbertSchmidt, Operator };

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kEigHermitianTol = 1e-12;

[[nodiscard]] bool is_hermitian(const ComplexMatrix &a, double tol = kHermitianTol);

/// Throws PreconditionError if `a` is not square and Hermitian within tol.
void require_hermitian(const ComplexMatrix &a, const char *what,
                       double tol = kHermitianTol);

/// Kronecker product with the first factor as the most significant index.
[[nodiscard]] ComplexMatrix tensor_product(const ComplexMatrix &a,
                                           const ComplexMatrix &b);
[[nodiscard]] ComplexVector tensor_product(const ComplexVector &a,
                                           const ComplexVector &b);

/// Tr_B (keep = S) or Tr_S (keep = B) of an operator on the composite space.
[[nodiscard]] ComplexMatrix partial_trace(const ComplexMatrix &rho, Dims dims,
                                          Subsystem keep);

/// Reduced state of |psi><psi| without forming the full projector.
[[nodiscard]] ComplexMatrix reduced_from_pure(const ComplexVector &psi, Dims dims,
                                              Subsystem keep);

[[nodiscard]] EigenDecomposition hermitian_eig(const ComplexMatrix &a);
[[nodiscard]] RealVector hermitian_eigenvalues(const ComplexMatrix &a);

/// Hermitian input only for Trace and Operator; multiply anti-Hermitian
/// arguments (commutators of Hermitian operators) by i first.
[[nodiscard]] double schatten_norm(const ComplexMatrix &a, NormKind kind);

[[nodiscard]] ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b);

/// e^{-iHt} from the eigen-decomposition of H. See also unitary_from_hamiltonian.
[[nodiscard]] ComplexMatrix unitary_from_spectrum(const EigenDecomposition &h,
                                                  double t);

/// SWAP on C^d (x) C^d.
[[nodiscard]] ComplexMatrix swap_operator(Index d);

/// Orthonormal columns spanning computational basis states [first, first+count).
[[nodiscard]] ComplexMatrix computational_block(Index d, Index first, Index count);

} // namespace typlab
