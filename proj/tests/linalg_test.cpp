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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "typlab/ensembles.hpp"
#include "typlab/linalg.hpp"
#include "typlab/rng.hpp"

using namespace typlab;

namespace {

ComplexMatrix random_hermitian(Index d, RngStream &rng) {
    const ComplexMatrix g = rng.ginibre(d, d);
    return 0.5 * (g + g.adjoint());
}

// Index-summation oracle for the S marginal, system-major layout.
ComplexMatrix naive_trace_b(const ComplexMatrix &rho, Index ds, Index db) {
    ComplexMatrix out = ComplexMatrix::Zero(ds, ds);
    for (Index i = 0; i < ds; ++i)
        for (Index j = 0; j < ds; ++j)
            for (Index b = 0; b < db; ++b) out(i, j) += rho(i * db + b, j * db + b);
    return out;
}

ComplexMatrix naive_trace_s(const ComplexMatrix &rho, Index ds, Index db) {
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (Index i = 0; i < db; ++i)
        for (Index j = 0; j < db; ++j)
            for (Index s = 0; s < ds; ++s) out(i, j) += rho(s * db + i, s * db + j);
    return out;
}

ComplexMatrix diag(std::initializer_list<double> v) {
    RealVector x(static_cast<Index>(v.size()));
    Index k = 0;
    for (double e : v) x(k++) = e;
    return x.cast<Complex>().asDiagonal();
}

} // namespace

TEST(HermitianEig, IdentityHasUnitSpectrum) {
    const EigenDecomposition e = hermitian_eig(ComplexMatrix::Identity(4, 4));
    for (Index k = 0; k < 4; ++k) EXPECT_NEAR(e.eigenvalues(k), 1.0, 1e-14);
    EXPECT_TRUE((e.eigenbasis.adjoint() * e.eigenbasis).isIdentity(1e-12));
}

TEST(HermitianEig, PauliX) {
    ComplexMatrix x(2, 2);
    x << 0, 1, 1, 0;
    const EigenDecomposition e = hermitian_eig(x);
    EXPECT_NEAR(e.eigenvalues(0), -1.0, 1e-14);
    EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-14);
}

TEST(HermitianEig, ReconstructsRandomMatrix) {
    RngStream rng(3, 0);
    const ComplexMatrix a = random_hermitian(8, rng);
    const EigenDecomposition e = hermitian_eig(a);
    EXPECT_LT((e.reconstruct() - a).cwiseAbs().maxCoeff(), 1e-9);
    for (Index k = 1; k < 8; ++k) EXPECT_LE(e.eigenvalues(k - 1), e.eigenvalues(k));
}

TEST(HermitianEig, RejectsNonHermitian) {
    ComplexMatrix a(2, 2);
    a << 0, 1, 0, 0;
    EXPECT_THROW((void)hermitian_eig(a), PreconditionError);
    EXPECT_THROW((void)hermitian_eig(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST(TensorProduct, Identities) {
    const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
    EXPECT_TRUE(tensor_product(id2, id2).isApprox(ComplexMatrix::Identity(4, 4)));
}

TEST(TensorProduct, Diagonals) {
    EXPECT_TRUE(tensor_product(diag({1, 2}), diag({3, 4})).isApprox(diag({3, 4, 6, 8})));
}

TEST(TensorProduct, SwapTraceIdentity) {
    RngStream rng(4, 0);
    const ComplexMatrix a = rng.ginibre(3, 3);
    const ComplexMatrix b = rng.ginibre(3, 3);
    const Complex lhs = (a * b).trace();
    const Complex rhs = (tensor_product(a, b) * swap_operator(3)).trace();
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
}

TEST(PartialTrace, BellStateIsMaximallyMixed) {
    ComplexVector psi = ComplexVector::Zero(4);
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
    const ComplexMatrix rho = psi * psi.adjoint();
    EXPECT_TRUE(partial_trace(rho, {2, 2}, Subsystem::S).isApprox(0.5 * ComplexMatrix::Identity(2, 2)));
    EXPECT_TRUE(partial_trace(rho, {2, 2}, Subsystem::B).isApprox(0.5 * ComplexMatrix::Identity(2, 2)));
}

TEST(PartialTrace, ProductFactorizes) {
    RngStream rng(5, 0);
    const ComplexMatrix rho = random_density_matrix(2, 2, rng);
    const ComplexMatrix sigma = 3.0 * random_density_matrix(3, 3, rng);
    const ComplexMatrix got = partial_trace(tensor_product(rho, sigma), {2, 3}, Subsystem::S);
    EXPECT_LT((got - rho * sigma.trace()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PartialTrace, MatchesIndexSummation) {
    RngStream rng(6, 0);
    ComplexVector psi = rng.complex_normal_vector(6);
    psi.normalize();
    const ComplexMatrix rho = psi * psi.adjoint();
    const Dims d{2, 3};
    EXPECT_LT((partial_trace(rho, d, Subsystem::S) - naive_trace_b(rho, 2, 3)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((partial_trace(rho, d, Subsystem::B) - naive_trace_s(rho, 2, 3)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((reduced_from_pure(psi, d, Subsystem::S) - naive_trace_b(rho, 2, 3)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((reduced_from_pure(psi, d, Subsystem::B) - naive_trace_s(rho, 2, 3)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PartialTrace, DimensionMismatch) {
    EXPECT_THROW((void)partial_trace(ComplexMatrix::Identity(6, 6), {2, 2}, Subsystem::S), DimensionError);
}

TEST(SchattenNorm, Identity) {
    const ComplexMatrix id = ComplexMatrix::Identity(5, 5);
    EXPECT_NEAR(schatten_norm(id, NormKind::Trace), 5.0, 1e-12);
    EXPECT_NEAR(schatten_norm(id, NormKind::HilbertSchmidt), std::sqrt(5.0), 1e-12);
    EXPECT_NEAR(schatten_norm(id, NormKind::Operator), 1.0, 1e-12);
}

TEST(SchattenNorm, SignedDiagonal) {
    const ComplexMatrix a = diag({0.7, -0.3});
    EXPECT_NEAR(schatten_norm(a, NormKind::Trace), 1.0, 1e-14);
    EXPECT_NEAR(schatten_norm(a, NormKind::Operator), 0.7, 1e-14);
}

TEST(SchattenNorm, RejectsNonHermitian) {
    ComplexMatrix a(2, 2);
    a << 0, 1, 0, 0;
    EXPECT_THROW((void)schatten_norm(a, NormKind::Trace), PreconditionError);
    EXPECT_NEAR(schatten_norm(a, NormKind::HilbertSchmidt), 1.0, 1e-15);
}

TEST(SchattenNorm, Ordering) {
    RngStream rng(7, 0);
    for (int i = 0; i < 10; ++i) {
        const ComplexMatrix a = random_hermitian(6, rng);
        const double t = schatten_norm(a, NormKind::Trace);
        const double h = schatten_norm(a, NormKind::HilbertSchmidt);
        const double o = schatten_norm(a, NormKind::Operator);
        EXPECT_LE(o, h + 1e-12);
        EXPECT_LE(h, t + 1e-12);
    }
}

TEST(Commutator, Basics) {
    RngStream rng(8, 0);
    const ComplexMatrix a = rng.ginibre(3, 3);
    EXPECT_LT(commutator(a, a).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(commutator(diag({1, 2, 3}), diag({4, -1, 0})).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Commutator, HandComputed) {
    ComplexMatrix rho(2, 2);
    rho << 0.5, 0.5, 0.5, 0.5;
    ComplexMatrix expected(2, 2);
    expected << 0, 0.5, -0.5, 0;
    const ComplexMatrix c = commutator(rho, diag({0, 1}));
    EXPECT_LT((c - expected).cwiseAbs().maxCoeff(), 1e-15);
    // i[rho, A] is Hermitian with the same singular values.
    EXPECT_NEAR(schatten_norm(Complex(0, 1) * c, NormKind::Trace), 1.0, 1e-12);
}

TEST(Unitary, DiagonalExponentiation) {
    const EigenDecomposition h = hermitian_eig(diag({0, 1}));
    EXPECT_TRUE(unitary_from_spectrum(h, 0.0).isIdentity(1e-15));
    const ComplexMatrix u = unitary_from_spectrum(h, std::numbers::pi);
    EXPECT_NEAR(std::abs(u(0, 0) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(u(1, 1) - std::exp(Complex(0, -std::numbers::pi))), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(u(0, 1)), 0.0, 1e-15);
}

TEST(Unitary, GroupProperty) {
    RngStream rng(9, 0);
    const EigenDecomposition h = hermitian_eig(random_hermitian(6, rng));
    const ComplexMatrix prod = unitary_from_spectrum(h, 1.7) * unitary_from_spectrum(h, -1.7);
    EXPECT_TRUE(prod.isIdentity(1e-12));
}
