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
#include <filesystem>
#include <fstream>
#include <numbers>

#include <gtest/gtest.h>

#include "typlab/dynamics.hpp"
#include "typlab/ensembles.hpp"

using namespace typlab;

namespace {

ComplexMatrix diag(std::initializer_list<double> v) {
    RealVector x(static_cast<Index>(v.size()));
    Index k = 0;
    for (double e : v) x(k++) = e;
    return x.cast<Complex>().asDiagonal();
}

RealVector vec(std::initializer_list<double> v) {
    RealVector x(static_cast<Index>(v.size()));
    Index k = 0;
    for (double e : v) x(k++) = e;
    return x;
}

Hamiltonian random_h(Dims dims, std::uint64_t seed) {
    RngStream rng(seed, 0);
    return sample_random_hamiltonian(SpectrumSpec{}, dims, rng);
}

PureState plus_state() {
    ComplexVector v(2);
    v << 1.0, 1.0;
    return PureState::normalized(v, {2, 1});
}

ComplexMatrix traceless(ComplexMatrix m) {
    const double d = static_cast<double>(m.rows());
    return m - (m.trace() / d) * ComplexMatrix::Identity(m.rows(), m.cols());
}

} // namespace

TEST(Evolve, ZeroTimeAndEigenstates) {
    const Hamiltonian h = random_h({2, 3}, 31);
    RngStream rng(31, 1);
    const PureState psi = sample_haar_state(ComplexMatrix::Identity(6, 6), rng, {2, 3});
    EXPECT_LT((evolve(psi, h, 0.0).amplitudes() - psi.amplitudes()).norm(), 1e-13);
    const PureState eig = PureState::make(h.eigenbasis().col(2), {2, 3});
    EXPECT_LT((evolve(eig, h, 17.3).projector() - eig.projector()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Evolve, TwoLevelHandComputed) {
    const Hamiltonian h = Hamiltonian::from_matrix(diag({0, 1}), {2, 1});
    ComplexVector minus(2);
    minus << 1.0, -1.0;
    minus /= std::sqrt(2.0);
    const ComplexMatrix got = evolve(plus_state(), h, std::numbers::pi).projector();
    EXPECT_LT((got - minus * minus.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    const DensityMatrix rho = DensityMatrix::from_pure(plus_state());
    EXPECT_LT((evolve(rho, h, std::numbers::pi).matrix() - got).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Dephase, Examples) {
    const Hamiltonian h = random_h({1, 4}, 32);
    const ComplexMatrix &v = h.eigenbasis();
    const ComplexMatrix diag_state = v * diag({0.1, 0.2, 0.3, 0.4}) * v.adjoint();
    EXPECT_LT((dephase(diag_state, h) - diag_state).cwiseAbs().maxCoeff(), 1e-14);
    const ComplexVector sup = (v.col(0) + v.col(3)) / std::sqrt(2.0);
    const ComplexMatrix expected = v * diag({0.5, 0, 0, 0.5}) * v.adjoint();
    EXPECT_LT((dephase(ComplexMatrix(sup * sup.adjoint()), h) - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Dephase, ResonantNeedsClusterMode) {
    const Hamiltonian h = Hamiltonian::from_matrix(diag({0, 1, 2}), {3, 1});
    EXPECT_THROW((void)dephase(ComplexMatrix::Identity(3, 3) / 3.0, h), PreconditionError);
    EXPECT_NO_THROW((void)dephase(ComplexMatrix::Identity(3, 3) / 3.0, h, DephaseMode::DegenerateClusters));
}

TEST(TimeAverage, StationaryStateIsExact) {
    const Hamiltonian h = random_h({2, 4}, 33);
    const PureState eig = PureState::make(h.eigenbasis().col(5), {2, 4});
    RngStream rng(33, 1);
    const TimeAverageReport r = empirical_time_average(h, eig, 100.0, 50, rng);
    EXPECT_LE(r.discrepancy, 1e-9);
}

TEST(TimeAverage, SuperpositionApproachesDephased) {
    const Hamiltonian h = random_h({1, 16}, 34);
    ComplexVector c = ComplexVector::Zero(16);
    for (Index k = 0; k < 8; ++k) c(2 * k) = 1.0 / std::sqrt(8.0);
    const PureState psi = PureState::make(h.eigenbasis() * c, {1, 16});
    RngStream rng(34, 1);
    const TimeAverageReport r = empirical_time_average(h, psi, default_horizon(h), 4000, rng);
    EXPECT_LE(r.discrepancy, 0.02);
}

TEST(TimeAverage, IdentityFunctionalIsConstant) {
    const Hamiltonian h = random_h({2, 2}, 35);
    RngStream rng(35, 1);
    const PureState psi = sample_haar_state(ComplexMatrix::Identity(4, 4), rng, {2, 2});
    const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
    const ScalarTimeStats s = empirical_time_average(
        h, psi, 50.0, 200, rng, [&](double, const ComplexVector &p) { return expectation(id, p); });
    EXPECT_NEAR(s.mean, 1.0, 1e-12);
    EXPECT_NEAR(s.variance, 0.0, 1e-20);
}

TEST(Speed, StationaryIsZero) {
    const Hamiltonian h = random_h({2, 3}, 36);
    const CompositeHamiltonian parts = CompositeHamiltonian::decompose(h);
    EXPECT_NEAR(subsystem_speed(ComplexVector(h.eigenbasis().col(1)), parts), 0.0, 1e-12);
}

TEST(Speed, UncoupledMatchesSystemCommutator) {
    RngStream rng(37, 0);
    const ComplexMatrix hs = traceless(random_observable(2, rng));
    const ComplexMatrix hb = traceless(random_observable(3, rng));
    const CompositeHamiltonian parts =
        CompositeHamiltonian::from_parts(0.0, hs, hb, ComplexMatrix::Zero(6, 6));
    const PureState psi = sample_haar_state(ComplexMatrix::Identity(6, 6), rng, {2, 3});
    const ComplexMatrix rs = reduced_from_pure(psi.amplitudes(), {2, 3}, Subsystem::S);
    const double expected = 0.5 * schatten_norm(Complex(0, 1) * commutator(rs, hs), NormKind::Trace);
    EXPECT_NEAR(subsystem_speed(psi.amplitudes(), parts), expected, 1e-12);
    EXPECT_NEAR(subsystem_speed(DensityMatrix::from_pure(psi), parts), expected, 1e-12);
}

TEST(Speed, MatchesFiniteDifference) {
    const Hamiltonian h = random_h({2, 4}, 38);
    const CompositeHamiltonian parts = CompositeHamiltonian::decompose(h);
    RngStream rng(38, 1);
    const PureState psi = sample_haar_state(ComplexMatrix::Identity(8, 8), rng, {2, 4});
    const double dt = 1e-5;
    const ComplexMatrix a = reduced_from_pure(evolve(psi, h, dt).amplitudes(), {2, 4}, Subsystem::S);
    const ComplexMatrix b = reduced_from_pure(evolve(psi, h, -dt).amplitudes(), {2, 4}, Subsystem::S);
    const double fd = 0.5 * schatten_norm((a - b) / (2 * dt), NormKind::Trace);
    EXPECT_NEAR(subsystem_speed(psi.amplitudes(), parts), fd, 1e-4 * fd);
}

TEST(PurityRate, ProductAndUncoupled) {
    RngStream rng(39, 0);
    const Hamiltonian h = random_h({2, 3}, 39);
    const CompositeHamiltonian parts = CompositeHamiltonian::decompose(h);
    const DensityMatrix prod = DensityMatrix::from_matrix(
        tensor_product(random_density_matrix(2, 2, rng), random_density_matrix(3, 3, rng)), {2, 3});
    const PurityRate r = purity_rate(prod, parts);
    EXPECT_NEAR(r.rate, 0.0, 1e-12);
    EXPECT_NEAR(r.correlation_form, 0.0, 1e-12);

    const CompositeHamiltonian free = CompositeHamiltonian::from_parts(
        0.0, traceless(random_observable(2, rng)), traceless(random_observable(3, rng)),
        ComplexMatrix::Zero(6, 6));
    const PureState psi = sample_haar_state(ComplexMatrix::Identity(6, 6), rng, {2, 3});
    EXPECT_NEAR(purity_rate(psi.amplitudes(), free), 0.0, 1e-12);
}

TEST(PurityRate, PureAndMixedFormsAgree) {
    const Hamiltonian h = random_h({2, 4}, 40);
    const CompositeHamiltonian parts = CompositeHamiltonian::decompose(h);
    RngStream rng(40, 1);
    const PureState psi = sample_haar_state(ComplexMatrix::Identity(8, 8), rng, {2, 4});
    const PurityRate r = purity_rate(DensityMatrix::from_pure(psi), parts);
    EXPECT_NEAR(purity_rate(psi.amplitudes(), parts), r.rate, 1e-12);
    EXPECT_NEAR(r.rate, r.correlation_form, 1e-12);
    const double dt = 1e-5;
    const auto p = [&](double t) {
        return purity(reduced_from_pure(evolve(psi, h, t).amplitudes(), {2, 4}, Subsystem::S));
    };
    const double fd = (p(dt) - p(-dt)) / (2 * dt);
    EXPECT_NEAR(r.rate, fd, 1e-4 * std::abs(fd));
}

TEST(GapAnalysis, Examples) {
    EXPECT_FALSE(gap_analysis(vec({0, 1, 2})).non_resonant);
    EXPECT_TRUE(gap_analysis(vec({0, 1, 3, 7})).non_resonant);
    SpectrumSpec spec;
    for (int k = 0; k < 32; ++k) spec.values.push_back(k);
    RngStream rng(41, 0);
    EXPECT_TRUE(gap_analysis(sample_non_resonant_spectrum(spec, 32, rng), 1e-9).non_resonant);
}

TEST(Pointer, EqualBlocksFreezeSystem) {
    RngStream rng(42, 0);
    const ComplexMatrix blk = random_observable(4, rng);
    const CompositeHamiltonian parts = pointer_hamiltonian({blk, blk});
    const ComplexMatrix rs0 = random_density_matrix(2, 2, rng);
    const ComplexMatrix rb0 = random_density_matrix(4, 4, rng);
    const DensityMatrix rho = DensityMatrix::from_matrix(tensor_product(rs0, rb0), {2, 4});
    for (const double t : {0.3, 2.0, 11.0}) {
        const ComplexMatrix rs = reduced_state(evolve(rho, parts.assembled, t), Subsystem::S).matrix();
        EXPECT_LT((rs - rs0).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Pointer, SuppressionFactorMatchesEvolution) {
    RngStream rng(43, 0);
    const std::vector<ComplexMatrix> blocks{random_observable(6, rng), random_observable(6, rng)};
    const CompositeHamiltonian parts = pointer_hamiltonian(blocks);
    const PureState pb = sample_haar_state(ComplexMatrix::Identity(6, 6), rng);
    const PureState psi = PureState::make(tensor_product(plus_state().amplitudes(), pb.amplitudes()), {2, 6});
    for (const double t : {0.5, 3.0}) {
        const ComplexMatrix rs = reduced_state(evolve(psi, parts.assembled, t), Subsystem::S).matrix();
        EXPECT_NEAR(rs(0, 0).real(), 0.5, 1e-12);
        EXPECT_NEAR(rs(1, 1).real(), 0.5, 1e-12);
        const Complex f = suppression_factor(blocks, pb.amplitudes(), 0, 1, t);
        EXPECT_LT(std::abs(rs(0, 1) - 0.5 * f), 1e-12);
    }
}

TEST(Trajectory, TimesAndCsv) {
    const Hamiltonian h = random_h({2, 2}, 44);
    RngStream rng(44, 1);
    const PureState psi = sample_haar_state(ComplexMatrix::Identity(4, 4), rng, {2, 2});
    const std::vector<double> ts{0.0, 0.5, 1.0, 2.0};
    const Trajectory tr = trajectory(h, psi, ts, Subsystem::S);
    ASSERT_EQ(tr.states.size(), ts.size());
    EXPECT_EQ(tr.states.front().dim(), 2);
    EXPECT_THROW((void)trajectory(h, psi, {1.0, 0.5}), PreconditionError);

    const auto path = std::filesystem::temp_directory_path() / "typlab_traj_test.csv";
    std::vector<double> pur;
    for (const auto &s : tr.states) pur.push_back(purity(s));
    write_trajectory_csv(path, ts, {"purity"}, {pur});
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "t,purity");
    double prev = -1.0;
    int rows = 0;
    while (std::getline(in, line)) {
        const double t = std::stod(line.substr(0, line.find(',')));
        EXPECT_GT(t, prev);
        prev = t;
        ++rows;
    }
    EXPECT_EQ(rows, 4);
    std::filesystem::remove(path);
}
