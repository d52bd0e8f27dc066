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

#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "typlab/bounds.hpp"
#include "typlab/matching.hpp"
#include "typlab/rng.hpp"
#include "typlab/stats.hpp"

using namespace typlab;

namespace {

// Exhaustive maximum over all matchings of a small weight matrix.
double brute_matching(const RealMatrix &w, std::vector<bool> &used, Index from) {
    const Index n = w.rows();
    while (from < n && used[static_cast<std::size_t>(from)]) ++from;
    if (from >= n) return 0.0;
    used[static_cast<std::size_t>(from)] = true;
    double best = brute_matching(w, used, from + 1);
    for (Index j = from + 1; j < n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        used[static_cast<std::size_t>(j)] = true;
        best = std::max(best, w(from, j) + brute_matching(w, used, from + 1));
        used[static_cast<std::size_t>(j)] = false;
    }
    used[static_cast<std::size_t>(from)] = false;
    return best;
}

ComplexMatrix plus_projector() {
    return ComplexMatrix::Constant(2, 2, 0.5);
}

} // namespace

TEST(Constants, Values) {
    EXPECT_NEAR(constants::c36(), 8.95875956477763588e-4, 1e-18);
    EXPECT_NEAR(constants::c_deff(), 2.15213151693296482e-4, 1e-18);
}

TEST(EvaluateBound, Examples) {
    BoundContext a;
    a.norm_a = 1.0;
    a.deff_omega = 100.0;
    EXPECT_NEAR(evaluate_bound(TheoremId::EXPECTATION_EQUILIBRATION, a), 0.01, 1e-15);

    BoundContext b;
    b.d_s = 2.0;
    b.deff_omega_b = 200.0;
    EXPECT_NEAR(evaluate_bound(TheoremId::SUBSYSTEM_EQUILIBRATION, b), 0.05, 1e-15);

    BoundContext c;
    c.d_r = 1000.0;
    c.epsilon = 0.1;
    c.norm_b = 1.0;
    EXPECT_NEAR(evaluate_bound(TheoremId::MC_CONCENTRATION, c), 1.98216250110441277, 1e-12);
    const BoundReport r = check_bound(TheoremId::MC_CONCENTRATION, {0.3, 0.01}, c);
    EXPECT_TRUE(r.vacuous);
    EXPECT_TRUE(r.satisfied);

    BoundContext d;
    d.d_r = 64.0;
    EXPECT_EQ(evaluate_bound(TheoremId::DEFF_SUBSPACE_MEAN, d), 32.0);
}

TEST(EvaluateBound, MissingField) {
    BoundContext a;
    a.norm_a = 1.0;
    EXPECT_THROW((void)evaluate_bound(TheoremId::EXPECTATION_EQUILIBRATION, a), MissingContextField);
}

TEST(EvaluateBound, VarianceIdentity) {
    BoundContext c;
    c.mc_b = 0.5;
    c.mc_b2 = 0.5;
    c.d_r = 32.0;
    EXPECT_NEAR(evaluate_bound(TheoremId::MC_VARIANCE_IDENTITY, c), 0.25 / 33.0, 1e-17);
}

namespace {

// Oracle: the two-term sum evaluated at the delta where both exponents coincide,
// delta^2 = eps - delta. The minimum can only be lower.
double balanced_two_term(double d_r, double eps) {
    const double delta = 0.5 * (std::sqrt(1.0 + 4.0 * eps) - 1.0);
    return 4.0 * std::exp(-constants::c36() * d_r * delta * delta);
}

} // namespace

TEST(EvaluateBound, VarianceTailForms) {
    for (const double d_r : {16.0, 1000.0, 1e6}) {
        for (const double eps : {0.01, 0.1, 0.5}) {
            const double m = variance_concentration_min_form(d_r, eps);
            EXPECT_LE(m, balanced_two_term(d_r, eps) * (1.0 + 1e-12));
            EXPECT_GE(m, 2.0 * std::exp(-constants::c36() * d_r * eps * eps) - 1e-15);
        }
    }
    // At desk dimensions the closed form as printed sits above the minimum.
    EXPECT_GE(variance_concentration_closed_form(64.0, 0.1), variance_concentration_min_form(64.0, 0.1));
    EXPECT_NEAR(variance_concentration_closed_form(1000.0, 0.1),
                4.0 * std::exp(-constants::c36() * 1000.0 * (1.2 - std::sqrt(1.4))), 1e-15);
}

TEST(EvaluateBound, CommutatorTwoLevel) {
    BoundContext c;
    c.observable_values = std::vector<double>{0.0, 1.0};
    c.state_in_observable_basis = plus_projector();
    EXPECT_NEAR(evaluate_bound(TheoremId::COMMUTATOR_LOWER, c), 1.0, 1e-15);
}

TEST(CheckBound, Comparisons) {
    BoundContext a;
    a.norm_a = 1.0;
    a.deff_omega = 100.0;
    const BoundReport r = check_bound(TheoremId::EXPECTATION_EQUILIBRATION, {0.008, 0.0}, a);
    EXPECT_TRUE(r.satisfied);
    EXPECT_FALSE(r.vacuous);
    EXPECT_NEAR(r.margin, 0.002, 1e-15);
    EXPECT_FALSE(check_bound(TheoremId::EXPECTATION_EQUILIBRATION, {0.02, 0.0}, a).satisfied);

    BoundContext c;
    c.mc_b = 0.5;
    c.mc_b2 = 0.5;
    c.d_r = 32.0;
    const BoundReport eq = check_bound(TheoremId::MC_VARIANCE_IDENTITY, {0.25 / 33.0, 0.0}, c);
    EXPECT_TRUE(eq.satisfied);
    EXPECT_EQ(eq.margin, 0.0);
}

TEST(CheckBound, StatisticalAllowance) {
    EXPECT_TRUE(within(Sense::Equality, {1.02, 0.01}, 1.0));
    EXPECT_FALSE(within(Sense::Equality, {1.05, 0.01}, 1.0));
    EXPECT_TRUE(within(Sense::Lower, {0.99, 0.005}, 1.0));
    EXPECT_TRUE(within(Sense::Approximate, {1.09, 0.0}, 1.0, 0.1));
    EXPECT_FALSE(within(Sense::Approximate, {1.2, 0.0}, 1.0, 0.1));
}

TEST(Theorems, NamesRoundTrip) {
    for (const TheoremId id : all_theorems()) {
        EXPECT_EQ(parse_theorem_id(to_string(id)), id);
        EXPECT_FALSE(formula(id).empty());
    }
    EXPECT_FALSE(parse_theorem_id("NOT_A_THEOREM").has_value());
}

TEST(Matching, Examples) {
    const RealVector a = (RealVector(3) << 0.0, 1.0, 3.0).finished();
    const ComplexMatrix diagonal = ComplexMatrix(RealVector::Constant(3, 1.0 / 3.0).cast<Complex>().asDiagonal());
    EXPECT_EQ(max_pairing_offdiagonal_sum(a, diagonal).value, 0.0);
    const RealVector two = (RealVector(2) << 0.0, 1.0).finished();
    EXPECT_NEAR(max_pairing_offdiagonal_sum(two, plus_projector()).value, 0.5, 1e-15);
}

TEST(Matching, ExactAgainstExhaustive) {
    RngStream rng(51, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const Index n = 2 + trial % 7;
        RealMatrix w = RealMatrix::Zero(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j) w(i, j) = w(j, i) = rng.uniform();
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        const PairingResult r = max_weight_matching(w);
        EXPECT_TRUE(r.exact);
        EXPECT_NEAR(r.value, brute_matching(w, used, 0), 1e-12);
        double from_pairs = 0.0;
        for (const auto &[i, j] : r.pairs) from_pairs += w(i, j);
        EXPECT_NEAR(from_pairs, r.value, 1e-12);
    }
}

TEST(Stats, Moments) {
    const std::vector<double> x{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(mean(x), 2.5);
    EXPECT_DOUBLE_EQ(sample_variance(x), 5.0 / 3.0);
    EXPECT_DOUBLE_EQ(standard_error(x), std::sqrt(5.0 / 3.0 / 4.0));
    EXPECT_DOUBLE_EQ(mean_square_deviation(x, 0.0), 7.5);
    EXPECT_NEAR(frequency_std_error(0.5, 100), 0.05, 1e-15);
}

TEST(Stats, BootstrapDeterministic) {
    RngStream rng(52, 0);
    std::vector<double> x(500);
    for (auto &v : x) v = rng.normal();
    const BootstrapSummary a = bootstrap(x, BootstrapStatistic::Mean, 300, 9);
    const BootstrapSummary b = bootstrap(x, BootstrapStatistic::Mean, 300, 9);
    EXPECT_EQ(a.std_error, b.std_error);
    EXPECT_EQ(a.ci95.lo, b.ci95.lo);
    EXPECT_LT(a.ci95.lo, a.estimate);
    EXPECT_GT(a.ci95.hi, a.estimate);
    EXPECT_NEAR(a.std_error, standard_error(x), 0.2 * standard_error(x));
}

TEST(Stats, KolmogorovSmirnov) {
    RngStream rng(53, 0);
    std::vector<double> a(2000), b(2000), c(2000);
    for (auto &v : a) v = rng.uniform();
    for (auto &v : b) v = rng.uniform();
    for (auto &v : c) v = rng.uniform() * 0.8;
    const double crit = ks_critical_value(2000, 2000, 0.001);
    EXPECT_LT(ks_statistic(a, b), crit);
    EXPECT_GT(ks_statistic(a, c), crit);
}

TEST(Rng, StreamsAreReproducible) {
    RngStream a(1, 2), b(1, 2), c(1, 3);
    const double x = a.normal();
    EXPECT_EQ(x, b.normal());
    EXPECT_NE(x, c.normal());
    EXPECT_NE(stream_seed(1, 2), stream_seed(2, 1));
}
