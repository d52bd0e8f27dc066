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

#include <gtest/gtest.h>

#include "typlab/ensembles.hpp"

using namespace typlab;

namespace {

RealVector vec(std::initializer_list<double> v) {
    RealVector x(static_cast<Index>(v.size()));
    Index k = 0;
    for (double e : v) x(k++) = e;
    return x;
}

double harmonic(const RealVector &x) {
    double s = 0.0;
    for (Index k = 0; k < x.size(); ++k) s += 1.0 / x(k);
    return static_cast<double>(x.size()) / s;
}

} // namespace

TEST(HaarUnitary, IsUnitary) {
    RngStream rng(21, 0);
    const ComplexMatrix u = haar_unitary(10, rng);
    EXPECT_TRUE((u.adjoint() * u).isIdentity(1e-12));
}

TEST(HaarState, OneDimensionalSubspace) {
    RngStream a(22, 0), b(22, 1);
    const ComplexMatrix basis = computational_block(5, 3, 1);
    const ComplexMatrix pa = sample_haar_state(basis, a).projector();
    const ComplexMatrix pb = sample_haar_state(basis, b).projector();
    EXPECT_LT((pa - pb).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(pa(3, 3).real(), 1.0, 1e-14);
}

TEST(HaarState, MeanIsMicrocanonical) {
    const Index d = 12, d_r = 8;
    const int n = 20000;
    const ComplexMatrix basis = ComplexMatrix::Identity(d, d).leftCols(d_r);
    ComplexMatrix acc = ComplexMatrix::Zero(d, d);
    RngStream rng(23, 0);
    for (int i = 0; i < n; ++i) acc += sample_haar_state(basis, rng).projector();
    acc /= static_cast<double>(n);
    const ComplexMatrix expected = basis * basis.adjoint() / static_cast<double>(d_r);
    EXPECT_LE((acc - expected).cwiseAbs().maxCoeff(), 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST(ProductState, TrivialFactors) {
    RngStream rng(24, 0);
    const ComplexMatrix one = ComplexMatrix::Identity(1, 1);
    const PureState p = sample_product_state(one, one, rng);
    ASSERT_EQ(p.dim(), 1);
    EXPECT_NEAR(std::abs(p.amplitudes()(0)), 1.0, 1e-15);
}

TEST(ProductState, HasUnitPurityMarginal) {
    RngStream rng(25, 0);
    const PureState p = sample_product_state(ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(4, 4), rng);
    EXPECT_EQ(p.dims(), (Dims{3, 4}));
    EXPECT_NEAR(purity(reduced_from_pure(p.amplitudes(), p.dims(), Subsystem::S)), 1.0, 1e-12);
}

TEST(Spectrum, TwoLevels) {
    const GapReport g = gap_analysis(vec({0, 1}));
    EXPECT_NEAR(g.min_gap, 1.0, 1e-15);
    EXPECT_TRUE(g.non_resonant);
}

TEST(Spectrum, EquallySpacedIsJitteredApart) {
    SpectrumSpec spec;
    for (int k = 0; k < 16; ++k) spec.values.push_back(k / 15.0);
    RngStream rng(26, 0);
    const Hamiltonian h = sample_random_hamiltonian(spec, {16, 1}, rng);
    EXPECT_FALSE(gap_analysis(RealVector(Eigen::Map<const RealVector>(spec.values.data(), 16))).non_resonant);
    EXPECT_TRUE(gap_analysis(h.eigenvalues()).non_resonant);
    EXPECT_TRUE((h.eigenbasis().adjoint() * h.eigenbasis()).isIdentity(1e-10));
}

TEST(HarmonicShift, ConstantSpectrum) {
    EXPECT_EQ(shift_for_harmonic_mean(vec({2, 2, 2}), 2.0), 0.0);
}

TEST(HarmonicShift, AlreadyHarmonic) {
    EXPECT_NEAR(shift_for_harmonic_mean(vec({1, 3}), 1.5), 0.0, 1e-12);
}

TEST(HarmonicShift, SolvedBySubstitution) {
    const RealVector e = vec({1, 2, 3, 6});
    const double a = shift_for_harmonic_mean(e, 2.4);
    const RealVector shifted = (e.array() + a).matrix();
    EXPECT_NEAR(harmonic(shifted), 2.4 + a, 1e-9);
    EXPECT_NEAR(a, 1.9672684343250135, 1e-9);
}

TEST(HarmonicShift, OutOfRange) {
    EXPECT_THROW((void)shift_for_harmonic_mean(vec({1, 2, 3}), 5.0), PreconditionError);
}

TEST(MeanEnergy, Sigmas) {
    const RealVector s = mean_energy_sigmas(vec({1, 3}), 1.5);
    EXPECT_NEAR(s(0), std::sqrt(0.75), 1e-15);
    EXPECT_NEAR(s(1), 0.5, 1e-15);
    const RealVector flat = mean_energy_sigmas(vec({4, 4, 4}), 4.0);
    EXPECT_NEAR(flat.maxCoeff() - flat.minCoeff(), 0.0, 1e-15);
}

TEST(MeanEnergy, EnergyNearTarget) {
    const Index d = 128;
    RngStream setup(27, 0);
    SpectrumSpec spec;
    spec.lo = 1.0;
    spec.hi = 2.0;
    const Hamiltonian h = sample_random_hamiltonian(spec, {d, 1}, setup);
    const double e = harmonic(h.eigenvalues());
    RngStream rng(27, 1);
    double acc = 0.0;
    const int n = 2000;
    for (int i = 0; i < n; ++i) acc += expectation(h.matrix(), sample_mean_energy_state(h, e, rng).amplitudes());
    EXPECT_NEAR(acc / n, e, 0.05 * e);
}

TEST(EnsembleSpec, DeterministicStreams) {
    EnsembleSpec s;
    s.seed = 99;
    s.trial_index = 4;
    const PureState a = sample(s, {2, 8});
    const PureState b = sample(s, {2, 8});
    EXPECT_EQ(a.amplitudes(), b.amplitudes());
    s.trial_index = 5;
    EXPECT_NE(a.amplitudes(), sample(s, {2, 8}).amplitudes());
}

TEST(EnsembleSpec, ConfigRoundTrip) {
    EnsembleSpec s;
    s.kind = EnsembleKind::Product;
    s.subspace_s = {0, 1};
    s.subspace_b = {2, 3, 4};
    s.energy = 1.25;
    s.seed = 7;
    s.trial_index = 3;
    const EnsembleSpec back = ensemble_spec_from_config(Config::parse(to_config(s, "ens")), "ens");
    EXPECT_EQ(back.kind, s.kind);
    EXPECT_EQ(back.subspace_s, s.subspace_s);
    EXPECT_EQ(back.subspace_b, s.subspace_b);
    EXPECT_EQ(back.energy, s.energy);
    EXPECT_EQ(back.seed, s.seed);
    EXPECT_EQ(back.trial_index, s.trial_index);
}

TEST(EnsembleSpec, RangesAndErrors) {
    const EnsembleSpec s = ensemble_spec_from_config(Config::parse("e.subspace = 0:3, 7\n"), "e");
    EXPECT_EQ(s.subspace, (std::vector<Index>{0, 1, 2, 7}));
    EXPECT_THROW((void)parse_ensemble_kind("gibbs"), ConfigError);
    EXPECT_THROW((void)sample(EnsembleSpec{.kind = EnsembleKind::MeanEnergy}, {2, 2}), PreconditionError);
}
