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
#include "typlab/states.hpp"

using namespace typlab;

namespace {

ComplexMatrix diag(std::initializer_list<double> v) {
    RealVector x(static_cast<Index>(v.size()));
    Index k = 0;
    for (double e : v) x(k++) = e;
    return x.cast<Complex>().asDiagonal();
}

ComplexVector basis_vector(Index d, Index k) {
    ComplexVector v = ComplexVector::Zero(d);
    v(k) = 1.0;
    return v;
}

ComplexMatrix bell() {
    ComplexVector psi = ComplexVector::Zero(4);
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
    return psi * psi.adjoint();
}

} // namespace

TEST(DensityMatrix, Validation) {
    EXPECT_THROW((void)DensityMatrix::from_matrix(diag({0.5, 0.6}), {2, 1}), PreconditionError);
    EXPECT_THROW((void)DensityMatrix::from_matrix(diag({1.5, -0.5}), {2, 1}), PreconditionError);
    EXPECT_THROW((void)DensityMatrix::from_matrix(diag({0.5, 0.5}), {3, 1}), DimensionError);
    EXPECT_NO_THROW((void)DensityMatrix::from_matrix(diag({0.25, 0.75}), {2, 1}));
    EXPECT_THROW((void)PureState::make(ComplexVector::Ones(2), {2, 1}), PreconditionError);
}

TEST(TraceDistance, Examples) {
    const ComplexMatrix a = diag({0.7, 0.3});
    EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-15);
    EXPECT_NEAR(trace_distance(diag({1, 0}), diag({0, 1})), 1.0, 1e-15);
    EXPECT_NEAR(trace_distance(a, diag({0.4, 0.6})), 0.3, 1e-14);
}

TEST(MaxProjectorDistinguishability, EqualsTraceDistance) {
    EXPECT_NEAR(max_projector_distinguishability(diag({0.5, 0.5}), diag({0.5, 0.5})), 0.0, 1e-15);
    EXPECT_NEAR(max_projector_distinguishability(diag({1, 0}), diag({0, 1})), 1.0, 1e-14);
    RngStream rng(11, 0);
    for (int i = 0; i < 20; ++i) {
        const ComplexMatrix r = random_density_matrix(5, 5, rng);
        const ComplexMatrix s = random_density_matrix(5, 2, rng);
        EXPECT_NEAR(max_projector_distinguishability(r, s), trace_distance(r, s), 1e-10);
    }
}

TEST(Purity, Examples) {
    EXPECT_NEAR(purity(bell()), 1.0, 1e-14);
    EXPECT_NEAR(purity(ComplexMatrix::Identity(6, 6) / 6.0), 1.0 / 6.0, 1e-15);
}

TEST(EffectiveDimension, Examples) {
    EXPECT_NEAR(effective_dimension(bell()), 1.0, 1e-13);
    EXPECT_NEAR(effective_dimension(ComplexMatrix::Identity(7, 7) / 7.0), 7.0, 1e-12);
    // Dephasing an equal superposition of k eigenstates leaves I_k/k on that block.
    const Index k = 5;
    ComplexMatrix omega = ComplexMatrix::Zero(9, 9);
    for (Index i = 0; i < k; ++i) omega(i, i) = 1.0 / static_cast<double>(k);
    EXPECT_NEAR(effective_dimension(omega), 5.0, 1e-12);
}

TEST(Entropy, Examples) {
    EXPECT_NEAR(von_neumann_entropy(bell()), 0.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(ComplexMatrix::Identity(8, 8) / 8.0), std::log(8.0), 1e-12);
    EXPECT_NEAR(von_neumann_entropy(diag({0.5, 0.5})), std::numbers::ln2, 1e-14);
}

TEST(MutualInformation, Examples) {
    RngStream rng(12, 0);
    const ComplexMatrix prod =
        tensor_product(random_density_matrix(2, 2, rng), random_density_matrix(3, 3, rng));
    EXPECT_NEAR(mutual_information(prod, {2, 3}), 0.0, 1e-11);
    EXPECT_NEAR(mutual_information(bell(), {2, 2}), 2.0 * std::numbers::ln2, 1e-12);
    EXPECT_LT(correlation_operator(prod, {2, 3}).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Microcanonical, Examples) {
    EXPECT_TRUE(microcanonical_state(ComplexMatrix::Identity(4, 4)).matrix().isApprox(
        ComplexMatrix::Identity(4, 4) / 4.0));
    ComplexVector v(3);
    v << 1.0, Complex(0, 1), 0.0;
    v /= std::sqrt(2.0);
    const DensityMatrix rho = microcanonical_state(ComplexMatrix(v));
    EXPECT_LT((rho.matrix() - v * v.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW((void)microcanonical_state(2.0 * ComplexMatrix::Identity(2, 2)), PreconditionError);
}

TEST(Canonical, Examples) {
    const Hamiltonian h = Hamiltonian::from_matrix(diag({0, 1}), {2, 1});
    EXPECT_TRUE(canonical_state(h, 0.0).matrix().isApprox(0.5 * ComplexMatrix::Identity(2, 2)));
    const ComplexMatrix c = canonical_state(h, std::numbers::ln2).matrix();
    EXPECT_NEAR(c(0, 0).real(), 2.0 / 3.0, 1e-14);
    EXPECT_NEAR(c(1, 1).real(), 1.0 / 3.0, 1e-14);
    const ComplexMatrix cold = canonical_state(h, 200.0).matrix();
    EXPECT_LT((cold - diag({1, 0})).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_THROW((void)canonical_state(h, -1.0), PreconditionError);
}

TEST(MacroPseudoDistance, Examples) {
    std::vector<ComplexMatrix> ps;
    for (Index k = 0; k < 3; ++k) ps.push_back(basis_vector(3, k) * basis_vector(3, k).adjoint());
    const MacroObservableSet set(ps);
    EXPECT_TRUE(set.complete());
    const ComplexMatrix rho = diag({0.5, 0.2, 0.3});
    const ComplexMatrix sigma = diag({0.1, 0.6, 0.3});
    EXPECT_NEAR(macro_pseudo_distance(rho, rho, set), 0.0, 1e-15);
    EXPECT_NEAR(macro_pseudo_distance(rho, sigma, set), 0.4, 1e-15);
}

TEST(MacroPseudoDistance, BelowTraceDistance) {
    RngStream rng(13, 0);
    const ComplexMatrix b0 = computational_block(6, 0, 2);
    const ComplexMatrix b1 = computational_block(6, 2, 3);
    std::vector<ComplexMatrix> ps{b0 * b0.adjoint(), b1 * b1.adjoint()};
    const MacroObservableSet set(ps);
    EXPECT_FALSE(set.complete());
    for (int i = 0; i < 20; ++i) {
        const ComplexMatrix r = random_density_matrix(6, 6, rng);
        const ComplexMatrix s = random_density_matrix(6, 3, rng);
        EXPECT_LE(macro_pseudo_distance(r, s, set), trace_distance(r, s) + 1e-12);
    }
}

TEST(MacroObservableSet, RejectsOverlap) {
    const ComplexMatrix b0 = computational_block(4, 0, 2);
    const ComplexMatrix b1 = computational_block(4, 1, 2);
    std::vector<ComplexMatrix> ps{b0 * b0.adjoint(), b1 * b1.adjoint()};
    EXPECT_THROW((void)MacroObservableSet(ps), PreconditionError);
}
