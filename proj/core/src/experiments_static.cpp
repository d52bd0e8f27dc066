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

// Sampling experiments: the state is drawn once per trial, no time evolution.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "experiments_internal.hpp"
#include "typlab/error.hpp"
#include "typlab/matching.hpp"

namespace typlab::detail {

namespace {

// A fixed observable on H_R = span of the first d_R computational states,
// block diagonal so that it commutes with Pi_R.
struct McSetup {
    Dims dims;
    Index d_r = 0;
    ComplexMatrix basis;
    ComplexMatrix b;
    double mc_b = 0.0;
    double mc_b2 = 0.0;
    double norm_b = 0.0;
};

McSetup mc_setup(const ExperimentSpec &spec, bool projector) {
    McSetup s;
    s.dims = spec.dims;
    const Index d = s.dims.total();
    s.d_r = param_index(spec, "d_r", 32);
    if (s.d_r < 1 || s.d_r > d) {
        throw DimensionError("d_r must lie in [1, d]");
    }
    RngStream rng = RngStream::setup(spec.seed, 0);
    s.basis = computational_block(d, 0, s.d_r);
    ComplexMatrix b_r;
    if (projector) {
        const Index rank = param_index(spec, "rank", s.d_r / 2);
        if (rank > s.d_r) {
            throw std::invalid_argument("rank exceeds d_r");
        }
        const ComplexMatrix u = haar_unitary(s.d_r, rng);
        b_r = u.leftCols(rank) * u.leftCols(rank).adjoint();
    } else {
        b_r = random_observable(s.d_r, rng, 1.0);
    }
    s.b = ComplexMatrix::Zero(d, d);
    s.b.topLeftCorner(s.d_r, s.d_r) = b_r;
    const double dr = static_cast<double>(s.d_r);
    s.mc_b = b_r.trace().real() / dr;
    s.mc_b2 = (b_r * b_r).trace().real() / dr;
    s.norm_b = schatten_norm(s.b, NormKind::Operator);
    return s;
}

std::vector<double> sample_expectations(const ExperimentSpec &spec, const McSetup &s) {
    return parallel_map<double>(trial_count(spec), spec.workers, [&](std::size_t i) {
        RngStream rng(spec.seed, i);
        const PureState psi = sample_haar_state(s.basis, rng, s.dims);
        return expectation(s.b, psi.amplitudes());
    });
}

// Haar-random subspace of dimension d_r drawn from the setup stream.
ComplexMatrix random_subspace(const ExperimentSpec &spec, Index d_r) {
    const Index d = spec.dims.total();
    if (d_r < 1 || d_r > d) {
        throw DimensionError("d_r must lie in [1, d]");
    }
    RngStream rng = RngStream::setup(spec.seed, 0);
    return haar_unitary(d, rng).leftCols(d_r);
}

struct DeffSamples {
    Index d_r = 0;
    std::vector<double> values;
};

DeffSamples deff_subspace_samples(const ExperimentSpec &spec) {
    DeffSamples out;
    out.d_r = param_index(spec, "d_r", 64);
    const Index pad = std::min(out.d_r, param_index(spec, "padding", 32));
    const Index d = out.d_r + pad;
    guard_dimension(d);
    const Dims dims{1, d};
    RngStream rng = RngStream::setup(spec.seed, 0);
    const Hamiltonian h = sample_random_hamiltonian(SpectrumSpec{}, dims, rng);
    const ComplexMatrix vh = h.eigenbasis().adjoint();
    out.values = parallel_map<double>(trial_count(spec), spec.workers, [&](std::size_t i) {
        EnsembleSpec e;
        e.kind = EnsembleKind::HaarSubspace;
        e.subspace = index_range(0, out.d_r);
        e.seed = spec.seed;
        e.trial_index = i;
        const ComplexVector c = vh * sample(e, dims, &h).amplitudes();
        return 1.0 / c.cwiseAbs2().cwiseAbs2().sum();
    });
    return out;
}

// Mean row with a bootstrap error, the lower CI end and the d_R/4 check.
void deff_mean_rows(const ExperimentSpec &spec, TheoremId id, const std::vector<double> &v,
                    double rhs, double quarter, Records &rows) {
    const auto bs = bootstrap(v, BootstrapStatistic::Mean,
                              static_cast<int>(spec.params.get_int("bootstrap", 200)),
                              bootstrap_seed(spec));
    rows.push_back(report_row("agg:mean", compare(id, Sense::Lower, {mean(v), bs.std_error}, rhs)));
    rows.push_back(judged_row("agg:ci95_lo", Sense::Lower, {bs.ci95.lo, 0.0}, rhs));
    if (quarter > 0.0) {
        const auto below = static_cast<std::size_t>(
            std::count_if(v.begin(), v.end(), [&](double x) { return x < quarter; }));
        rows.push_back(judged_row("check:fraction_below_quarter", Sense::Upper,
                                  {static_cast<double>(below) / static_cast<double>(v.size()), 0.0},
                                  0.0));
    }
}

} // namespace

Records run_mc_variance_identity(const ExperimentSpec &spec, Files &) {
    const McSetup s = mc_setup(spec, true);
    const std::vector<double> x = sample_expectations(spec, s);
    Records rows;
    rows.reserve(x.size() + 3);
    for (std::size_t i = 0; i < x.size(); ++i) {
        rows.push_back(sample_row(i, x[i], s.mc_b));
    }
    BoundContext ctx;
    ctx.mc_b = s.mc_b;
    ctx.mc_b2 = s.mc_b2;
    ctx.d_r = static_cast<double>(s.d_r);
    const double rhs = evaluate_bound(TheoremId::MC_VARIANCE_IDENTITY, ctx);
    const auto bs = bootstrap(x, BootstrapStatistic::Variance,
                              static_cast<int>(spec.params.get_int("bootstrap", 200)),
                              bootstrap_seed(spec));
    rows.push_back(report_row("agg:variance", compare(TheoremId::MC_VARIANCE_IDENTITY, Sense::Equality,
                                                      {sample_variance(x), bs.std_error}, rhs)));
    rows.push_back(report_row("agg:mean", compare(TheoremId::MC_VARIANCE_IDENTITY, Sense::Equality,
                                                  mean_of(x), s.mc_b)));
    std::vector<double> dev(x.size());
    std::transform(x.begin(), x.end(), dev.begin(), [&](double v) { return std::abs(v - s.mc_b); });
    const Statistic mad = mean_of(dev);
    rows.push_back(info_row("agg:mean_abs_deviation", mad.value, mad.std_error,
                            std::sqrt(2.0 / std::numbers::pi * rhs)));
    return rows;
}

Records run_mc_concentration(const ExperimentSpec &spec, Files &) {
    const McSetup s = mc_setup(spec, true);
    const double eps = spec.params.get_double("epsilon", 0.1);
    const std::vector<double> x = sample_expectations(spec, s);
    Records rows;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dev = std::abs(x[i] - s.mc_b);
        hits += dev >= eps ? 1 : 0;
        rows.push_back(sample_row(i, dev, eps));
    }
    BoundContext ctx;
    ctx.d_r = static_cast<double>(s.d_r);
    ctx.epsilon = eps;
    ctx.norm_b = s.norm_b;
    rows.push_back(report_row("agg:tail", check_bound(TheoremId::MC_CONCENTRATION,
                                                      frequency(hits, x.size()), ctx)));
    rows.push_back(judged_row("agg:mean", Sense::Equality, mean_of(x), s.mc_b));
    return rows;
}

Records run_mc_variance_concentration(const ExperimentSpec &spec, Files &) {
    const McSetup s = mc_setup(spec, false);
    const double eps = spec.params.get_double("epsilon", 0.05);
    const double var_mc = s.mc_b2 - s.mc_b * s.mc_b;
    const double scale = s.norm_b * s.norm_b;
    const std::vector<double> dev =
        parallel_map<double>(trial_count(spec), spec.workers, [&](std::size_t i) {
            RngStream rng(spec.seed, i);
            const ComplexVector psi = sample_haar_state(s.basis, rng, s.dims).amplitudes();
            const ComplexVector bpsi = s.b * psi;
            const double m1 = psi.dot(bpsi).real();
            const double var = bpsi.squaredNorm() - m1 * m1;
            return std::abs(var - var_mc) / scale;
        });
    Records rows;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < dev.size(); ++i) {
        hits += dev[i] >= eps ? 1 : 0;
        rows.push_back(sample_row(i, dev[i], eps));
    }
    BoundContext ctx;
    ctx.d_r = static_cast<double>(s.d_r);
    ctx.epsilon = eps;
    rows.push_back(report_row("agg:tail", check_bound(TheoremId::MC_VARIANCE_CONCENTRATION,
                                                      frequency(hits, dev.size()), ctx)));
    rows.push_back(judged_row("check:closed_form_dominates", Sense::Upper,
                              {evaluate_bound(TheoremId::MC_VARIANCE_CONCENTRATION, ctx), 0.0},
                              *evaluate_secondary(TheoremId::MC_VARIANCE_CONCENTRATION, ctx)));
    return rows;
}

Records run_coarse_grained(const ExperimentSpec &spec, Files &) {
    const Index d = spec.dims.total();
    const Index d_r = param_index(spec, "d_r", 32);
    const Index m = param_index(spec, "m", 4);
    if (m < 1 || d % m != 0) {
        throw std::invalid_argument("m must divide d");
    }
    const double eps = spec.params.get_double("epsilon", 0.2);
    const ComplexMatrix basis = random_subspace(spec, d_r);
    const ComplexMatrix rho_mc = basis * basis.adjoint() / static_cast<double>(d_r);
    std::vector<ComplexMatrix> projectors;
    std::vector<double> mc_weights;
    for (Index r = 0; r < m; ++r) {
        const ComplexMatrix blk = computational_block(d, r * (d / m), d / m);
        projectors.push_back(blk * blk.adjoint());
        mc_weights.push_back(expectation(projectors.back(), rho_mc));
    }
    const MacroObservableSet set(projectors);

    struct Sample {
        double total = 0.0;
        double excess = 0.0;
    };
    const auto samples = parallel_map<Sample>(trial_count(spec), spec.workers, [&](std::size_t i) {
        RngStream rng(spec.seed, i);
        const ComplexVector psi = sample_haar_state(basis, rng, spec.dims).amplitudes();
        Sample out;
        for (Index r = 0; r < m; ++r) {
            const double w = psi.segment(r * (d / m), d / m).squaredNorm();
            out.total += std::abs(w - mc_weights[static_cast<std::size_t>(r)]);
        }
        const ComplexMatrix rho = psi * psi.adjoint();
        out.excess = macro_pseudo_distance(rho, rho_mc, set) - trace_distance(rho, rho_mc);
        return out;
    });
    Records rows;
    std::size_t hits = 0;
    double worst = -1.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        hits += samples[i].total >= eps ? 1 : 0;
        worst = std::max(worst, samples[i].excess);
        rows.push_back(sample_row(i, samples[i].total, eps));
    }
    BoundContext ctx;
    ctx.d_r = static_cast<double>(d_r);
    ctx.epsilon = eps;
    ctx.m = static_cast<double>(m);
    ctx.norm_a = 1.0;
    rows.push_back(report_row("agg:tail", check_bound(TheoremId::COARSE_GRAINED,
                                                      frequency(hits, samples.size()), ctx)));
    rows.push_back(judged_row("check:pseudo_below_trace_distance", Sense::Upper, {worst, 0.0}, 0.0));
    return rows;
}

Records run_canonical_reduction(const ExperimentSpec &spec, Files &) {
    const Index d_r = param_index(spec, "d_r", 32);
    const double eps = spec.params.get_double("epsilon", 0.1);
    const ComplexMatrix basis = random_subspace(spec, d_r);
    const ComplexMatrix rho_mc = basis * basis.adjoint() / static_cast<double>(d_r);
    const ComplexMatrix mc_s = partial_trace(rho_mc, spec.dims, Subsystem::S);
    const double deff_b = effective_dimension(partial_trace(rho_mc, spec.dims, Subsystem::B));
    BoundContext ctx;
    ctx.d_r = static_cast<double>(d_r);
    ctx.d_s = static_cast<double>(spec.dims.system);
    ctx.epsilon = eps;
    ctx.deff_omega_b = deff_b;
    const double threshold = *evaluate_secondary(TheoremId::CANONICAL_REDUCTION, ctx);

    const std::vector<double> dist =
        parallel_map<double>(trial_count(spec), spec.workers, [&](std::size_t i) {
            RngStream rng(spec.seed, i);
            const ComplexVector psi = sample_haar_state(basis, rng, spec.dims).amplitudes();
            return trace_distance(reduced_from_pure(psi, spec.dims, Subsystem::S), mc_s);
        });
    Records rows;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        hits += dist[i] >= threshold ? 1 : 0;
        rows.push_back(sample_row(i, dist[i], threshold));
    }
    rows.push_back(report_row("agg:tail", check_bound(TheoremId::CANONICAL_REDUCTION,
                                                      frequency(hits, dist.size()), ctx)));
    rows.push_back(judged_row("check:deff_b_at_least_ratio", Sense::Lower, {deff_b, 0.0},
                              static_cast<double>(d_r) / static_cast<double>(spec.dims.system)));
    return rows;
}

Records run_deff_subspace_mean(const ExperimentSpec &spec, Files &) {
    const DeffSamples s = deff_subspace_samples(spec);
    BoundContext ctx;
    ctx.d_r = static_cast<double>(s.d_r);
    const double rhs = evaluate_bound(TheoremId::DEFF_SUBSPACE_MEAN, ctx);
    Records rows;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        rows.push_back(sample_row(i, s.values[i], rhs));
    }
    deff_mean_rows(spec, TheoremId::DEFF_SUBSPACE_MEAN, s.values, rhs,
                   static_cast<double>(s.d_r) / 4.0, rows);
    return rows;
}

Records run_deff_subspace_tail(const ExperimentSpec &spec, Files &) {
    const DeffSamples s = deff_subspace_samples(spec);
    const double quarter = static_cast<double>(s.d_r) / 4.0;
    Records rows;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        hits += s.values[i] < quarter ? 1 : 0;
        rows.push_back(sample_row(i, s.values[i], quarter));
    }
    BoundContext ctx;
    ctx.d_r = static_cast<double>(s.d_r);
    rows.push_back(report_row("agg:tail", check_bound(TheoremId::DEFF_SUBSPACE_TAIL,
                                                      frequency(hits, s.values.size()), ctx)));
    return rows;
}

Records run_deff_product_mean(const ExperimentSpec &spec, Files &) {
    const Index d_sr = param_index(spec, "d_sr", spec.dims.system);
    const Index d_br = param_index(spec, "d_br", spec.dims.bath);
    if (d_sr < 1 || d_sr > spec.dims.system || d_br < 1 || d_br > spec.dims.bath) {
        throw DimensionError("factor subspaces must fit the factors");
    }
    RngStream setup = RngStream::setup(spec.seed, 0);
    const Hamiltonian h = sample_random_hamiltonian(SpectrumSpec{}, spec.dims, setup);
    const ComplexMatrix vh = h.eigenbasis().adjoint();
    const std::vector<double> v =
        parallel_map<double>(trial_count(spec), spec.workers, [&](std::size_t i) {
            EnsembleSpec e;
            e.kind = EnsembleKind::Product;
            e.subspace_s = index_range(0, d_sr);
            e.subspace_b = index_range(0, d_br);
            e.seed = spec.seed;
            e.trial_index = i;
            const ComplexVector c = vh * sample(e, spec.dims, &h).amplitudes();
            return 1.0 / c.cwiseAbs2().cwiseAbs2().sum();
        });
    BoundContext ctx;
    ctx.d_sr = static_cast<double>(d_sr);
    ctx.d_br = static_cast<double>(d_br);
    const double rhs = evaluate_bound(TheoremId::DEFF_PRODUCT_MEAN, ctx);
    Records rows;
    for (std::size_t i = 0; i < v.size(); ++i) {
        rows.push_back(sample_row(i, v[i], rhs));
    }
    deff_mean_rows(spec, TheoremId::DEFF_PRODUCT_MEAN, v, rhs, 0.0, rows);
    return rows;
}

Records run_deff_mean_energy(const ExperimentSpec &spec, Files &) {
    const Dims dims = spec.dims;
    const Index d = dims.total();
    SpectrumSpec ss;
    ss.lo = spec.params.get_double("spectrum_lo", 1.0);
    ss.hi = spec.params.get_double("spectrum_hi", 2.0);
    RngStream setup = RngStream::setup(spec.seed, 0);
    Hamiltonian h = sample_random_hamiltonian(ss, dims, setup);
    double energy = harmonic_mean(h.eigenvalues());
    const std::string target = spec.params.get_string("energy", "auto");
    if (target != "auto") {
        const double e = spec.params.get_double("energy", 0.0);
        const double shift = shift_for_harmonic_mean(h.eigenvalues(), e);
        RealVector shifted = h.eigenvalues().array() + shift;
        h = Hamiltonian::from_spectrum(shifted, h.eigenbasis(), dims);
        energy = e + shift;
    }
    const RealVector &ek = h.eigenvalues();
    const ComplexMatrix vh = h.eigenbasis().adjoint();

    struct Sample {
        double purity = 0.0;
        double energy = 0.0;
        RealVector fourth;
    };
    const auto samples = parallel_map<Sample>(trial_count(spec), spec.workers, [&](std::size_t i) {
        EnsembleSpec e;
        e.kind = EnsembleKind::MeanEnergy;
        e.energy = energy;
        e.seed = spec.seed;
        e.trial_index = i;
        const RealVector p = (vh * sample(e, dims, &h).amplitudes()).cwiseAbs2();
        Sample out;
        out.fourth = p.cwiseAbs2();
        out.purity = out.fourth.sum();
        out.energy = p.dot(ek);
        return out;
    });

    BoundContext ctx;
    ctx.energy = energy;
    ctx.spectrum = std::vector<double>(ek.data(), ek.data() + ek.size());
    ctx.d = static_cast<double>(d);
    ctx.e0 = ek.minCoeff();
    ctx.e_mean = energy;
    const double rhs = evaluate_bound(TheoremId::DEFF_MEAN_ENERGY, ctx);
    Records rows;
    std::vector<double> purity, deff, en;
    RealVector fourth = RealVector::Zero(d);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        purity.push_back(samples[i].purity);
        deff.push_back(1.0 / samples[i].purity);
        en.push_back(samples[i].energy);
        fourth += samples[i].fourth;
        rows.push_back(sample_row(i, samples[i].purity, rhs));
    }
    fourth /= static_cast<double>(samples.size());
    double worst = 0.0;
    const double dd = static_cast<double>(d);
    for (Index k = 0; k < d; ++k) {
        const double predicted = 2.0 * energy * energy / (dd * dd * ek(k) * ek(k));
        worst = std::max(worst, std::abs(fourth(k) - predicted) / predicted);
    }
    rows.push_back(report_row("agg:purity", compare(TheoremId::DEFF_MEAN_ENERGY, Sense::Approximate,
                                                    mean_of(purity), rhs, spec.rel_tol)));
    rows.push_back(report_row("agg:deff_crude",
                              compare(TheoremId::DEFF_MEAN_ENERGY, Sense::Lower, mean_of(deff),
                                      *evaluate_secondary(TheoremId::DEFF_MEAN_ENERGY, ctx))));
    rows.push_back(judged_row("agg:energy", Sense::Approximate, mean_of(en), energy,
                              spec.params.get_double("energy_rel_tol", 0.05)));
    rows.push_back(judged_row("check:fourth_moment_max_rel_error", Sense::Upper, {worst, 0.0},
                              spec.params.get_double("fourth_moment_tol", 0.1)));
    return rows;
}

Records run_ergodicity(const ExperimentSpec &spec, Files &) {
    const Dims dims = spec.dims;
    const Index d = dims.total();
    const Index d_r = param_index(spec, "d_r", 64);
    if (d_r < 1 || d_r > d) {
        throw DimensionError("d_r must lie in [1, d]");
    }
    const double eps = spec.params.get_double("epsilon", 0.1);
    RngStream setup = RngStream::setup(spec.seed, 0);
    const Hamiltonian h = sample_random_hamiltonian(SpectrumSpec{}, dims, setup);
    const ComplexMatrix b = random_observable(d, setup, 1.0);
    const ComplexMatrix &v = h.eigenbasis();
    const ComplexMatrix basis = v.leftCols(d_r);
    // $[B] in the eigenbasis is diag(<E_k|B|E_k>).
    const RealVector b_diag = (v.adjoint() * b * v).diagonal().real();
    const double mc = b_diag.head(d_r).mean();
    const double norm_dephased = b_diag.cwiseAbs().maxCoeff();

    const std::vector<double> f =
        parallel_map<double>(trial_count(spec), spec.workers, [&](std::size_t i) {
            RngStream rng(spec.seed, i);
            const ComplexVector psi = sample_haar_state(basis, rng, dims).amplitudes();
            return (v.adjoint() * psi).cwiseAbs2().dot(b_diag);
        });

    // Empirical time sampling for the first few states.
    const std::size_t n_check =
        std::min<std::size_t>(f.size(), static_cast<std::size_t>(param_index(spec, "check_states", 10)));
    const Index n_times = param_index(spec, "check_time_samples", 20000);
    const double horizon = horizon_for(spec, h);
    const std::vector<double> diffs =
        parallel_map<double>(n_check, spec.workers, [&](std::size_t i) {
            RngStream rng(spec.seed, i);
            const PureState psi = sample_haar_state(basis, rng, dims);
            RngStream times_rng = RngStream::setup(spec.seed, 1 + i);
            const auto stats = empirical_time_average(
                h, psi, horizon, n_times, times_rng,
                [&](double, const ComplexVector &psi_t) { return expectation(b, psi_t); });
            return std::abs(stats.mean - f[i]);
        });

    Records rows;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        hits += std::abs(f[i] - mc) >= eps ? 1 : 0;
        rows.push_back(sample_row(i, f[i], mc));
    }
    BoundContext ctx;
    ctx.d_r = static_cast<double>(d_r);
    ctx.epsilon = eps;
    ctx.norm_dephased_b = norm_dephased;
    rows.push_back(judged_row("agg:mean", Sense::Equality, mean_of(f), mc));
    rows.push_back(report_row("agg:tail", check_bound(TheoremId::ERGODICITY, frequency(hits, f.size()), ctx)));
    const double worst = diffs.empty() ? 0.0 : *std::max_element(diffs.begin(), diffs.end());
    rows.push_back(judged_row("check:time_sampling", Sense::Upper, {worst, 0.0}, 1e-2));
    return rows;
}

Records run_commutator_lower(const ExperimentSpec &spec, Files &) {
    const Index d = spec.dims.total();
    const auto reports = parallel_map<BoundReport>(trial_count(spec), spec.workers, [&](std::size_t i) {
        RngStream rng(spec.seed, i);
        const ComplexMatrix a = random_observable(d, rng, 1.0);
        const ComplexMatrix rho = random_density_matrix(d, d, rng);
        const EigenDecomposition eig = hermitian_eig(a);
        BoundContext ctx;
        ctx.observable_values =
            std::vector<double>(eig.eigenvalues.data(), eig.eigenvalues.data() + d);
        ctx.state_in_observable_basis = eig.eigenbasis.adjoint() * rho * eig.eigenbasis;
        const ComplexMatrix c = Complex(0.0, 1.0) * commutator(rho, a);
        const ComplexMatrix herm = 0.5 * (c + c.adjoint());
        return check_bound(TheoremId::COMMUTATOR_LOWER, {schatten_norm(herm, NormKind::Trace), 0.0}, ctx);
    });
    Records rows;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        rows.push_back(report_row(label(i), reports[i]));
    }
    return rows;
}

Records run_isi_linden_delta(const ExperimentSpec &spec, Files &) {
    const Dims dims = spec.dims;
    const Index d = dims.total();
    const Index d_r = param_index(spec, "d_r", 16);
    if (d_r % dims.system != 0 || d_r / dims.system > dims.bath) {
        throw DimensionError("d_r must be d_S times a bath block size");
    }
    const Index bath_block = d_r / dims.system;
    RngStream setup = RngStream::setup(spec.seed, 0);
    const Hamiltonian h = sample_random_hamiltonian(SpectrumSpec{}, dims, setup);
    const ComplexMatrix &v = h.eigenbasis();

    // H_R = H_S (x) span{|0>, ..., |bath_block - 1>}.
    std::vector<Index> idx;
    for (Index s = 0; s < dims.system; ++s) {
        for (Index j = 0; j < bath_block; ++j) {
            idx.push_back(s * dims.bath + j);
        }
    }
    ComplexMatrix basis = ComplexMatrix::Zero(d, d_r);
    for (Index k = 0; k < d_r; ++k) {
        basis(idx[static_cast<std::size_t>(k)], k) = 1.0;
    }
    const ComplexMatrix rho_mc_s =
        partial_trace(basis * basis.adjoint() / static_cast<double>(d_r), dims, Subsystem::S);

    std::vector<ComplexMatrix> marginals;
    double delta = 0.0;
    for (Index k = 0; k < d; ++k) {
        marginals.push_back(reduced_from_pure(v.col(k), dims, Subsystem::S));
        double weight = 0.0;
        for (const Index r : idx) {
            weight += std::norm(v(r, k));
        }
        delta += weight / static_cast<double>(d_r) * purity(marginals.back());
    }
    const ComplexMatrix vh = v.adjoint();
    const std::vector<double> dist =
        parallel_map<double>(trial_count(spec), spec.workers, [&](std::size_t i) {
            RngStream rng(spec.seed, i);
            const RealVector p = (vh * sample_haar_state(basis, rng, dims).amplitudes()).cwiseAbs2();
            ComplexMatrix omega_s = ComplexMatrix::Zero(dims.system, dims.system);
            for (Index k = 0; k < d; ++k) {
                omega_s += p(k) * marginals[static_cast<std::size_t>(k)];
            }
            return trace_distance(omega_s, rho_mc_s);
        });
    BoundContext ctx;
    ctx.d_s = static_cast<double>(dims.system);
    ctx.d_r = static_cast<double>(d_r);
    ctx.delta = delta;
    const double rhs = evaluate_bound(TheoremId::ISI_LINDEN_DELTA, ctx);
    Records rows;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        rows.push_back(sample_row(i, dist[i], rhs));
    }
    rows.push_back(report_row("agg:mean", check_bound(TheoremId::ISI_LINDEN_DELTA, mean_of(dist), ctx)));
    rows.push_back(judged_row("check:delta_at_most_one", Sense::Upper, {delta, 0.0}, 1.0));
    return rows;
}

Records run_entangled_state_tail(const ExperimentSpec &spec, Files &) {
    const Dims dims = spec.dims;
    const double eps = spec.params.get_double("epsilon", 0.25);
    const ComplexMatrix id = ComplexMatrix::Identity(dims.total(), dims.total());
    const std::vector<double> dist =
        parallel_map<double>(trial_count(spec), spec.workers, [&](std::size_t i) {
            RngStream rng(spec.seed, i);
            return marginal_distance_to_mixed(sample_haar_state(id, rng, dims).amplitudes(), dims);
        });
    Records rows;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        hits += dist[i] >= eps ? 1 : 0;
        rows.push_back(sample_row(i, dist[i], eps));
    }
    BoundContext ctx;
    ctx.d_s = static_cast<double>(dims.system);
    ctx.d_b = static_cast<double>(dims.bath);
    ctx.epsilon = eps;
    const Statistic f = frequency(hits, dist.size());
    rows.push_back(report_row("agg:tail", check_bound(TheoremId::ENTANGLED_STATE_TAIL, f, ctx)));
    rows.push_back(judged_row("check:fraction_beyond_epsilon", Sense::Upper, {f.value, 0.0},
                              spec.params.get_double("fraction_max", 0.01)));
    return rows;
}

Records run_entangled_eigs_tail(const ExperimentSpec &spec, Files &) {
    const Dims dims = spec.dims;
    const double eps = spec.params.get_double("epsilon", 0.35);
    const std::vector<double> worst =
        parallel_map<double>(trial_count(spec), spec.workers, [&](std::size_t i) {
            RngStream rng(spec.seed, i);
            const Hamiltonian h = sample_random_hamiltonian(SpectrumSpec{}, dims, rng);
            double m = 0.0;
            for (Index k = 0; k < h.dim(); ++k) {
                m = std::max(m, marginal_distance_to_mixed(h.eigenbasis().col(k), dims));
            }
            return m;
        });
    Records rows;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < worst.size(); ++i) {
        hits += worst[i] >= eps ? 1 : 0;
        rows.push_back(sample_row(i, worst[i], eps));
    }
    BoundContext ctx;
    ctx.d = static_cast<double>(dims.total());
    ctx.d_s = static_cast<double>(dims.system);
    ctx.d_b = static_cast<double>(dims.bath);
    ctx.epsilon = eps;
    rows.push_back(report_row("agg:tail", check_bound(TheoremId::ENTANGLED_EIGS_TAIL,
                                                      frequency(hits, worst.size()), ctx)));
    return rows;
}

Records run_levy(const ExperimentSpec &spec, Files &) {
    const Index d = spec.dims.total();
    const double eps = spec.params.get_double("epsilon", 0.1);
    RngStream setup = RngStream::setup(spec.seed, 0);
    const ComplexMatrix b = random_observable(d, setup, 1.0);
    const double center = b.trace().real() / static_cast<double>(d);
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const std::vector<double> f =
        parallel_map<double>(trial_count(spec), spec.workers, [&](std::size_t i) {
            RngStream rng(spec.seed, i);
            return expectation(b, sample_haar_state(id, rng, spec.dims).amplitudes());
        });
    Records rows;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        hits += std::abs(f[i] - center) >= eps ? 1 : 0;
        rows.push_back(sample_row(i, f[i], center));
    }
    // Tr[B psi] on the real sphere S^{2d-1} is Lipschitz with constant 2 ||B||.
    BoundContext ctx;
    ctx.d = 2.0 * static_cast<double>(d);
    ctx.eta = 2.0 * schatten_norm(b, NormKind::Operator);
    ctx.epsilon = eps;
    rows.push_back(report_row("agg:tail", check_bound(TheoremId::LEVY, frequency(hits, f.size()), ctx)));
    rows.push_back(judged_row("agg:mean", Sense::Equality, mean_of(f), center));
    return rows;
}

} // namespace typlab::detail
