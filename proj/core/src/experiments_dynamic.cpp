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

// Experiments that evolve a state in time.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "experiments_internal.hpp"
#include "typlab/error.hpp"
#include "typlab/matching.hpp"

namespace typlab::detail {

namespace {

// Random non-resonant H, Haar psi_0 on the full space, ||A|| = 1 and sorted
// uniform sample times, all from the trial's stream. The six time-average
// experiments share it, so a given trial index sees the same instance in each.
struct EqInstance {
    Hamiltonian h;
    ComplexVector psi0;
    ComplexMatrix a;
    double horizon = 0.0;
    std::vector<double> times;
};

EqInstance eq_instance(const ExperimentSpec &spec, std::size_t trial) {
    RngStream rng(spec.seed, trial);
    SpectrumSpec ss;
    ss.lo = spec.params.get_double("spectrum_lo", 0.0);
    ss.hi = spec.params.get_double("spectrum_hi", 1.0);
    const Index d = spec.dims.total();
    EqInstance e;
    e.h = sample_random_hamiltonian(ss, spec.dims, rng);
    e.psi0 = sample_haar_state(ComplexMatrix::Identity(d, d), rng, spec.dims).amplitudes();
    e.a = random_observable(d, rng, 1.0);
    e.horizon = horizon_for(spec, e.h);
    e.times = sample_times(e.horizon, spec.time_samples, rng);
    return e;
}

// Phase rotation of eigenbasis coefficients by a small time step.
ComplexVector shifted(const Hamiltonian &h, const ComplexVector &c_t, double dt) {
    const RealVector &e = h.eigenvalues();
    ComplexVector out(c_t.size());
    for (Index k = 0; k < c_t.size(); ++k) {
        out(k) = c_t(k) * std::polar(1.0, -e(k) * dt);
    }
    return h.eigenbasis() * out;
}

double fd_step(const Hamiltonian &h) { return 1e-6 / std::max(1e-300, h.operator_norm()); }

double mixed_distance(const ComplexMatrix &rs) {
    const Index n = rs.rows();
    return trace_distance(rs, ComplexMatrix::Identity(n, n) / static_cast<double>(n));
}

double max_of(const std::vector<double> &v) {
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

struct Weak {
    CompositeHamiltonian parts;
    ComplexVector psi0;
    double norm_hsb = 0.0;
    RealVector es;
    ComplexMatrix vs;
};

// Weak coupling: ||H_SB|| = coupling * min gap of H_S, psi_0 an equal
// superposition of H_S eigenvectors times a Haar bath state.
Weak weak_coupling_instance(Dims dims, RngStream &rng, double coupling) {
    Weak w;
    const ComplexMatrix hs = random_traceless_hermitian(dims.system, rng, 1.0);
    const ComplexMatrix hb = random_traceless_hermitian(dims.bath, rng, 1.0);
    const EigenDecomposition es = hermitian_eig(hs);
    double gap = std::numeric_limits<double>::infinity();
    for (Index k = 1; k < es.dim(); ++k) {
        gap = std::min(gap, es.eigenvalues(k) - es.eigenvalues(k - 1));
    }
    w.norm_hsb = coupling * gap;
    const ComplexMatrix hsb = random_coupling(dims, rng, w.norm_hsb);
    w.parts = CompositeHamiltonian::from_parts(0.0, hs, hb, hsb);
    w.es = es.eigenvalues;
    w.vs = es.eigenbasis;
    const ComplexVector s = es.eigenbasis.rowwise().sum() / std::sqrt(static_cast<double>(dims.system));
    const ComplexVector b =
        sample_haar_state(ComplexMatrix::Identity(dims.bath, dims.bath), rng).amplitudes();
    w.psi0 = tensor_product(s, b);
    return w;
}

// Bisection for the first crossing in (lo, hi] of a function that is below
// the level at lo and at or above it at hi.
template <class F>
double first_crossing(F &&above, double lo, double hi) {
    for (int it = 0; it < 80 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (above(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

} // namespace

Records run_expectation_equilibration(const ExperimentSpec &spec, Files &) {
    const auto reports = parallel_map<BoundReport>(trial_count(spec), spec.workers, [&](std::size_t i) {
        const EqInstance e = eq_instance(spec, i);
        const PureEvolution evo(e.h, e.psi0);
        const double avg = expectation(e.a, evo.dephased_state());
        std::vector<double> dev;
        dev.reserve(e.times.size());
        for (const double t : e.times) {
            const double x = expectation(e.a, evo.state_at(t));
            dev.push_back((x - avg) * (x - avg));
        }
        BoundContext ctx;
        ctx.norm_a = schatten_norm(e.a, NormKind::Operator);
        ctx.deff_omega = 1.0 / evo.populations().cwiseAbs2().sum();
        return check_bound(TheoremId::EXPECTATION_EQUILIBRATION, mean_of(dev), ctx);
    });
    Records rows;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        rows.push_back(report_row(label(i), reports[i]));
    }
    return rows;
}

Records run_subsystem_equilibration(const ExperimentSpec &spec, Files &files) {
    struct Out {
        BoundReport report;
        double excess = 0.0;
        std::vector<double> times, dist;
    };
    const Dims dims = spec.dims;
    const auto out = parallel_map<Out>(trial_count(spec), spec.workers, [&](std::size_t i) {
        const EqInstance e = eq_instance(spec, i);
        const PureEvolution evo(e.h, e.psi0);
        const ComplexMatrix omega = evo.dephased_state();
        const ComplexMatrix omega_s = partial_trace(omega, dims, Subsystem::S);
        Out o;
        for (const double t : e.times) {
            o.dist.push_back(trace_distance(reduced_from_pure(evo.state_at(t), dims, Subsystem::S), omega_s));
        }
        BoundContext ctx;
        ctx.d_s = static_cast<double>(dims.system);
        ctx.deff_omega_b = effective_dimension(partial_trace(omega, dims, Subsystem::B));
        ctx.deff_omega = 1.0 / evo.populations().cwiseAbs2().sum();
        o.report = check_bound(TheoremId::SUBSYSTEM_EQUILIBRATION, mean_of(o.dist), ctx);
        o.excess = o.report.rhs - *evaluate_secondary(TheoremId::SUBSYSTEM_EQUILIBRATION, ctx);
        if (i == 0) {
            o.times = e.times;
        } else {
            o.dist.clear();
        }
        return o;
    });
    Records rows;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.size(); ++i) {
        rows.push_back(report_row(label(i), out[i].report));
        worst = std::max(worst, out[i].excess);
    }
    rows.push_back(judged_row("check:dimension_form_dominates", Sense::Upper, {worst, 0.0}, 0.0));
    if (!spec.output_dir.empty() && !out.empty()) {
        const std::string name = spec.experiment_id + "_trajectory.csv";
        write_trajectory_csv(spec.output_dir / name, out[0].times, {"distance", "bound"},
                             {out[0].dist, std::vector<double>(out[0].times.size(), out[0].report.rhs)});
        files.push_back(name);
    }
    return rows;
}

Records run_purity_equilibration(const ExperimentSpec &spec, Files &) {
    struct Out {
        BoundReport report;
        double excess = 0.0;
        double sb_gap = 0.0;
    };
    const Dims dims = spec.dims;
    const auto out = parallel_map<Out>(trial_count(spec), spec.workers, [&](std::size_t i) {
        const EqInstance e = eq_instance(spec, i);
        const PureEvolution evo(e.h, e.psi0);
        const ComplexMatrix omega = evo.dephased_state();
        const ComplexMatrix omega_s = partial_trace(omega, dims, Subsystem::S);
        const ComplexMatrix omega_b = partial_trace(omega, dims, Subsystem::B);
        Out o;
        std::vector<double> ps;
        for (const double t : e.times) {
            const ComplexVector psi = evo.state_at(t);
            const double p_s = purity(reduced_from_pure(psi, dims, Subsystem::S));
            const double p_b = purity(reduced_from_pure(psi, dims, Subsystem::B));
            o.sb_gap = std::max(o.sb_gap, std::abs(p_s - p_b));
            ps.push_back(p_s);
        }
        const Statistic avg = mean_of(ps);
        BoundContext ctx;
        ctx.purity_omega_b = purity(omega_b);
        ctx.purity_omega = evo.populations().cwiseAbs2().sum();
        ctx.d_s = static_cast<double>(dims.system);
        ctx.deff_omega = 1.0 / *ctx.purity_omega;
        o.report = check_bound(TheoremId::PURITY_EQUILIBRATION,
                               {std::abs(avg.value - purity(omega_s)), avg.std_error}, ctx);
        o.excess = o.report.rhs - *evaluate_secondary(TheoremId::PURITY_EQUILIBRATION, ctx);
        return o;
    });
    Records rows;
    double worst = -std::numeric_limits<double>::infinity();
    double sb = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        rows.push_back(report_row(label(i), out[i].report));
        worst = std::max(worst, out[i].excess);
        sb = std::max(sb, out[i].sb_gap);
    }
    rows.push_back(judged_row("check:dimension_form_dominates", Sense::Upper, {worst, 0.0}, 0.0));
    rows.push_back(judged_row("check:purity_s_equals_b", Sense::Upper, {sb, 0.0}, 1e-10));
    return rows;
}

Records run_speed(const ExperimentSpec &spec, Files &) {
    struct Out {
        BoundReport report;
        double fd_error = 0.0;
    };
    const Dims dims = spec.dims;
    const std::size_t fd_points = static_cast<std::size_t>(param_index(spec, "fd_points", 5));
    const auto out = parallel_map<Out>(trial_count(spec), spec.workers, [&](std::size_t i) {
        const EqInstance e = eq_instance(spec, i);
        const CompositeHamiltonian parts = CompositeHamiltonian::decompose(e.h);
        const PureEvolution evo(e.h, e.psi0);
        const double dt = fd_step(e.h);
        Out o;
        std::vector<double> v;
        for (std::size_t k = 0; k < e.times.size(); ++k) {
            const ComplexVector c = evo.coefficients_at(e.times[k]);
            const double speed = subsystem_speed(ComplexVector(e.h.eigenbasis() * c), parts);
            v.push_back(speed);
            if (k < fd_points) {
                const ComplexMatrix plus = reduced_from_pure(shifted(e.h, c, dt), dims, Subsystem::S);
                const ComplexMatrix minus = reduced_from_pure(shifted(e.h, c, -dt), dims, Subsystem::S);
                const double fd = trace_distance(plus, minus) / (2.0 * dt);
                o.fd_error = std::max(o.fd_error, std::abs(fd - speed) / std::max(speed, 1e-300));
            }
        }
        BoundContext ctx;
        ctx.d_s = static_cast<double>(dims.system);
        ctx.deff_omega = 1.0 / evo.populations().cwiseAbs2().sum();
        ctx.norm_hs_plus_hsb = schatten_norm(parts.system_generator(), NormKind::Operator);
        o.report = check_bound(TheoremId::SPEED, mean_of(v), ctx);
        return o;
    });
    Records rows;
    double worst = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        rows.push_back(report_row(label(i), out[i].report));
        worst = std::max(worst, out[i].fd_error);
    }
    rows.push_back(judged_row("check:finite_difference", Sense::Upper, {worst, 0.0}, 1e-4));
    return rows;
}

Records run_purity_rate_avg(const ExperimentSpec &spec, Files &) {
    struct Out {
        BoundReport report;
        double fd_error = 0.0;
        double form_gap = 0.0;
    };
    const Dims dims = spec.dims;
    const std::size_t fd_points = static_cast<std::size_t>(param_index(spec, "fd_points", 5));
    const auto out = parallel_map<Out>(trial_count(spec), spec.workers, [&](std::size_t i) {
        const EqInstance e = eq_instance(spec, i);
        const CompositeHamiltonian parts = CompositeHamiltonian::decompose(e.h);
        const PureEvolution evo(e.h, e.psi0);
        const double dt = fd_step(e.h);
        Out o;
        std::vector<double> r;
        for (std::size_t k = 0; k < e.times.size(); ++k) {
            const ComplexVector c = evo.coefficients_at(e.times[k]);
            const ComplexVector psi = e.h.eigenbasis() * c;
            const double rate = purity_rate(psi, parts);
            r.push_back(std::abs(rate));
            if (k < fd_points) {
                const double p_plus = purity(reduced_from_pure(shifted(e.h, c, dt), dims, Subsystem::S));
                const double p_minus = purity(reduced_from_pure(shifted(e.h, c, -dt), dims, Subsystem::S));
                const double fd = (p_plus - p_minus) / (2.0 * dt);
                o.fd_error = std::max(o.fd_error, std::abs(fd - rate) / std::max(std::abs(rate), 1e-300));
                const PurityRate both =
                    purity_rate(DensityMatrix::from_matrix(psi * psi.adjoint(), dims), parts);
                o.form_gap = std::max({o.form_gap, std::abs(both.rate - both.correlation_form),
                                       std::abs(both.rate - rate)});
            }
        }
        BoundContext ctx;
        ctx.d_s = static_cast<double>(dims.system);
        ctx.deff_omega = 1.0 / evo.populations().cwiseAbs2().sum();
        ctx.norm_hsb = schatten_norm(parts.h_sb, NormKind::Operator);
        o.report = check_bound(TheoremId::PURITY_RATE_AVG, mean_of(r), ctx);
        return o;
    });
    Records rows;
    double fd = 0.0;
    double forms = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        rows.push_back(report_row(label(i), out[i].report));
        fd = std::max(fd, out[i].fd_error);
        forms = std::max(forms, out[i].form_gap);
    }
    rows.push_back(judged_row("check:finite_difference", Sense::Upper, {fd, 0.0}, 1e-4));
    rows.push_back(judged_row("check:correlation_form", Sense::Upper, {forms, 0.0}, 1e-9));
    return rows;
}

Records run_purity_rate_instant(const ExperimentSpec &spec, Files &) {
    struct Out {
        TrialRecord row;
        double op_excess = -std::numeric_limits<double>::infinity();
        double pure_gap = 0.0;
        double mi_gap = 0.0;
    };
    const Dims dims = spec.dims;
    const std::size_t mi_points = static_cast<std::size_t>(param_index(spec, "mi_points", 5));
    const auto out = parallel_map<Out>(trial_count(spec), spec.workers, [&](std::size_t i) {
        const EqInstance e = eq_instance(spec, i);
        const CompositeHamiltonian parts = CompositeHamiltonian::decompose(e.h);
        const PureEvolution evo(e.h, e.psi0);
        const double norm_hsb = schatten_norm(parts.h_sb, NormKind::Operator);
        Out o;
        double worst_ratio = -1.0;
        bool all_ok = true;
        for (std::size_t k = 0; k < e.times.size(); ++k) {
            const ComplexVector psi = evo.state_at(e.times[k]);
            const ComplexMatrix rs = reduced_from_pure(psi, dims, Subsystem::S);
            const double rate = std::abs(purity_rate(psi, parts));
            const RealVector lambda = hermitian_eigenvalues(rs);
            BoundContext ctx;
            ctx.norm_hsb = norm_hsb;
            ctx.purity_s = purity(rs);
            ctx.entropy_s = von_neumann_entropy(rs);
            // The global state is pure, so I(S:B) = 2 S(rho^S).
            ctx.mutual_information = 2.0 * *ctx.entropy_s;
            ctx.norm_rho_s = lambda.maxCoeff();
            const BoundReport r = check_bound(TheoremId::PURITY_RATE_INSTANT, {rate, 0.0}, ctx);
            all_ok = all_ok && r.satisfied;
            const double ratio = r.rhs > 0.0 ? rate / r.rhs : (rate > 0.0 ? HUGE_VAL : 0.0);
            if (ratio > worst_ratio) {
                worst_ratio = ratio;
                o.row = report_row(label(i), r);
            }
            o.op_excess = std::max(o.op_excess, rate - purity_rate_operator_norm_form(ctx));
            o.pure_gap = std::max(
                o.pure_gap, std::abs(r.rhs - *evaluate_secondary(TheoremId::PURITY_RATE_INSTANT, ctx)));
            if (k < mi_points) {
                o.mi_gap = std::max(o.mi_gap, std::abs(mutual_information(psi * psi.adjoint(), dims) -
                                                       *ctx.mutual_information));
            }
        }
        o.row.satisfied = all_ok;
        return o;
    });
    Records rows;
    double op = -std::numeric_limits<double>::infinity();
    double pure = 0.0;
    double mi = 0.0;
    for (const auto &o : out) {
        rows.push_back(o.row);
        op = std::max(op, o.op_excess);
        pure = std::max(pure, o.pure_gap);
        mi = std::max(mi, o.mi_gap);
    }
    rows.push_back(judged_row("check:operator_norm_form", Sense::Upper, {op, 0.0}, 0.0));
    rows.push_back(judged_row("check:pure_form_agrees", Sense::Upper, {pure, 0.0}, 0.0));
    rows.push_back(judged_row("check:mutual_information_pure", Sense::Upper, {mi, 0.0}, 1e-9));
    return rows;
}

Records run_decoherence(const ExperimentSpec &spec, Files &) {
    const Dims dims = spec.dims;
    const double coupling = spec.params.get_double("coupling", 0.01);
    const double t_max = spec.params.get_double("t_max", 2000.0);
    const auto out = parallel_map<TrialRecord>(trial_count(spec), spec.workers, [&](std::size_t i) {
        RngStream rng(spec.seed, i);
        const Weak w = weak_coupling_instance(dims, rng, coupling);
        const std::vector<double> times = sample_times(t_max, spec.time_samples, rng);
        const PureEvolution evo(w.parts.assembled, w.psi0);
        TrialRecord row;
        double worst = -1.0;
        bool all_ok = true;
        for (const double t : times) {
            const ComplexVector psi = evo.state_at(t);
            const ComplexMatrix rs = reduced_from_pure(psi, dims, Subsystem::S);
            const double lhs = max_pairing_offdiagonal_sum(w.es, w.vs.adjoint() * rs * w.vs).value;
            BoundContext ctx;
            ctx.norm_hsb = w.norm_hsb;
            ctx.speed_s = subsystem_speed(psi, w.parts);
            const BoundReport r = check_bound(TheoremId::DECOHERENCE, {lhs, 0.0}, ctx);
            all_ok = all_ok && r.satisfied;
            if (lhs / r.rhs > worst) {
                worst = lhs / r.rhs;
                row = report_row(label(i), r);
            }
        }
        row.satisfied = all_ok;
        return row;
    });
    return out;
}

Records run_isi(const ExperimentSpec &spec, Files &) {
    struct Out {
        BoundReport report;
        double delta = 0.0;
    };
    const Dims dims = spec.dims;
    const Index ds = dims.system;
    const Index db = dims.bath;
    const Index d = dims.total();
    if (db % ds != 0) {
        throw DimensionError("ISI needs d_S dividing d_B");
    }
    const double kappa = spec.params.get_double("kappa", 0.01);
    const auto out = parallel_map<Out>(trial_count(spec), spec.workers, [&](std::size_t i) {
        RngStream rng(spec.seed, i);
        // Maximally entangled basis: (1/sqrt d_S) sum_s w^{ps} |s> (x) |(s+q) mod d_S, j>,
        // with the bath index split as (first factor of size d_S, rest).
        const Index rest = db / ds;
        ComplexMatrix bell = ComplexMatrix::Zero(d, d);
        Index col = 0;
        for (Index p = 0; p < ds; ++p) {
            for (Index q = 0; q < ds; ++q) {
                for (Index j = 0; j < rest; ++j, ++col) {
                    for (Index s = 0; s < ds; ++s) {
                        const Index b = ((s + q) % ds) * rest + j;
                        const double phase = 2.0 * std::numbers::pi * static_cast<double>(p * s) /
                                             static_cast<double>(ds);
                        bell(s * db + b, col) = std::polar(1.0 / std::sqrt(static_cast<double>(ds)), phase);
                    }
                }
            }
        }
        const ComplexMatrix local = tensor_product(haar_unitary(ds, rng), haar_unitary(db, rng));
        const ComplexMatrix k = random_traceless_hermitian(d, rng, 1.0);
        const ComplexMatrix tilt = unitary_from_spectrum(hermitian_eig(k), kappa);
        const ComplexMatrix v = tilt * local * bell;
        const RealVector e = sample_non_resonant_spectrum(SpectrumSpec{}, d, rng);
        const Hamiltonian h = Hamiltonian::from_spectrum(e, v, dims);

        Out o;
        for (Index c = 0; c < d; ++c) {
            o.delta = std::max(o.delta, 2.0 * marginal_distance_to_mixed(h.eigenbasis().col(c), dims));
        }
        const ComplexVector phi =
            sample_haar_state(ComplexMatrix::Identity(db, db), rng).amplitudes();
        ComplexVector s0 = ComplexVector::Zero(ds);
        ComplexVector s1 = ComplexVector::Zero(ds);
        s0(0) = 1.0;
        s1(1 % ds) = 1.0;
        const PureEvolution rho(h, tensor_product(s0, phi));
        const PureEvolution sigma(h, tensor_product(s1, phi));
        const std::vector<double> times = sample_times(horizon_for(spec, h), spec.time_samples, rng);
        std::vector<double> dist;
        for (const double t : times) {
            dist.push_back(trace_distance(reduced_from_pure(rho.state_at(t), dims, Subsystem::S),
                                          reduced_from_pure(sigma.state_at(t), dims, Subsystem::S)));
        }
        BoundContext ctx;
        ctx.d_s = static_cast<double>(ds);
        ctx.deff_omega_b = effective_dimension(partial_trace(rho.dephased_state(), dims, Subsystem::B));
        ctx.deff_omega_b_sigma =
            effective_dimension(partial_trace(sigma.dephased_state(), dims, Subsystem::B));
        ctx.delta = o.delta;
        o.report = check_bound(TheoremId::ISI, mean_of(dist), ctx);
        return o;
    });
    Records rows;
    double delta = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        rows.push_back(report_row(label(i), out[i].report));
        delta = std::max(delta, out[i].delta);
    }
    rows.push_back(judged_row("check:delta_target", Sense::Upper, {delta, 0.0},
                              spec.params.get_double("delta_target", 0.05)));
    return rows;
}

Records run_eq_time_heisenberg(const ExperimentSpec &spec, Files &) {
    const Dims dims = spec.dims;
    const Index start = param_index(spec, "window_start", 24);
    const Index width = param_index(spec, "window", 16);
    const double level = spec.params.get_double("threshold", 0.5);
    if (width < 2 || start + width > dims.total()) {
        throw DimensionError("energy window outside the spectrum");
    }
    return parallel_map<TrialRecord>(trial_count(spec), spec.workers, [&](std::size_t i) {
        RngStream rng(spec.seed, i);
        const Hamiltonian h = sample_random_hamiltonian(SpectrumSpec{}, dims, rng);
        const RealVector e = h.eigenvalues().segment(start, width);
        const RealVector p = sample_haar_state(ComplexMatrix::Identity(width, width), rng)
                                 .amplitudes()
                                 .cwiseAbs2();
        const double width_e = e(width - 1) - e(0);
        // Pure states: D(psi_0, psi_t) = sqrt(1 - |<psi_0|psi_t>|^2).
        const auto dist = [&](double t) {
            Complex overlap = 0.0;
            for (Index k = 0; k < width; ++k) {
                overlap += p(k) * std::polar(1.0, -e(k) * t);
            }
            return std::sqrt(std::max(0.0, 1.0 - std::norm(overlap)));
        };
        const double step = 0.02 / width_e;
        const double t_max = 200.0 / width_e;
        double t_hit = t_max;
        for (double t = step; t <= t_max; t += step) {
            if (dist(t) >= level) {
                t_hit = first_crossing([&](double x) { return dist(x) >= level; }, t - step, t);
                break;
            }
        }
        BoundContext ctx;
        ctx.delta_e = width_e;
        return report_row(label(i), check_bound(TheoremId::EQ_TIME_HEISENBERG, {t_hit, 0.0}, ctx));
    });
}

Records run_eq_time_purity(const ExperimentSpec &spec, Files &) {
    const Dims dims = spec.dims;
    const double g = spec.params.get_double("coupling", 0.1);
    const double p_eq = spec.params.get_double("p_eq", 0.8);
    const double dt = spec.params.get_double("dt", 0.05);
    const double t_max = spec.params.get_double("t_max", 100.0 / g);
    return parallel_map<TrialRecord>(trial_count(spec), spec.workers, [&](std::size_t i) {
        RngStream rng(spec.seed, i);
        const ComplexMatrix hs = random_traceless_hermitian(dims.system, rng, 1.0);
        const ComplexMatrix hb = random_traceless_hermitian(dims.bath, rng, 1.0);
        const ComplexMatrix hsb = random_coupling(dims, rng, g);
        const CompositeHamiltonian parts = CompositeHamiltonian::from_parts(0.0, hs, hb, hsb);
        const ComplexVector s =
            sample_haar_state(ComplexMatrix::Identity(dims.system, dims.system), rng).amplitudes();
        const ComplexVector b =
            sample_haar_state(ComplexMatrix::Identity(dims.bath, dims.bath), rng).amplitudes();
        const PureEvolution evo(parts.assembled, tensor_product(s, b));
        const auto reached = [&](double t) {
            return purity(reduced_from_pure(evo.state_at(t), dims, Subsystem::S)) <= p_eq;
        };
        double t_hit = t_max;
        for (double t = dt; t <= t_max; t += dt) {
            if (reached(t)) {
                t_hit = first_crossing(reached, t - dt, t);
                break;
            }
        }
        BoundContext ctx;
        ctx.p_eq = p_eq;
        ctx.d_s = static_cast<double>(dims.system);
        ctx.norm_hsb = schatten_norm(parts.h_sb, NormKind::Operator);
        return report_row(label(i), check_bound(TheoremId::EQ_TIME_PURITY, {t_hit, 0.0}, ctx));
    });
}

Records run_second_law_demo(const ExperimentSpec &spec, Files &) {
    struct Out {
        TrialRecord row;
        double gain = 0.0;
    };
    const Dims dims = spec.dims;
    const Index d = dims.total();
    const auto out = parallel_map<Out>(trial_count(spec), spec.workers, [&](std::size_t i) {
        RngStream rng(spec.seed, i);
        const Hamiltonian h = sample_random_hamiltonian(SpectrumSpec{}, dims, rng);
        ComplexVector psi0 = ComplexVector::Zero(d);
        psi0(0) = 1.0;
        const PureEvolution evo(h, psi0);
        const std::vector<double> times = sample_times(horizon_for(spec, h), spec.time_samples, rng);
        std::vector<double> dist, entropy;
        for (const double t : times) {
            const ComplexMatrix rs = reduced_from_pure(evo.state_at(t), dims, Subsystem::S);
            dist.push_back(mixed_distance(rs));
            entropy.push_back(von_neumann_entropy(rs));
        }
        double marg = 0.0;
        for (Index k = 0; k < d; ++k) {
            marg = std::max(marg, marginal_distance_to_mixed(h.eigenbasis().col(k), dims));
        }
        const double deff_b = effective_dimension(partial_trace(evo.dephased_state(), dims, Subsystem::B));
        const double rhs = 0.5 * std::sqrt(static_cast<double>(dims.system) / deff_b) + marg;
        Out o;
        o.row = judged_row(label(i), Sense::Upper, mean_of(dist), rhs);
        o.gain = mean(entropy) - von_neumann_entropy(reduced_from_pure(psi0, dims, Subsystem::S));
        return o;
    });
    Records rows;
    std::vector<double> gain;
    for (const auto &o : out) {
        rows.push_back(o.row);
        gain.push_back(o.gain);
    }
    rows.push_back(judged_row("agg:entropy_gain", Sense::Lower, mean_of(gain), 0.0));
    return rows;
}

Records run_distance_trajectory(const ExperimentSpec &spec, Files &files) {
    const Dims dims = spec.dims;
    const Index grid = param_index(spec, "grid_points", 400);
    const double t_max = spec.params.get_double("t_max", 60.0);
    if (grid < 2 || !(t_max > 0.0)) {
        throw std::invalid_argument("need grid_points >= 2 and t_max > 0");
    }
    struct Out {
        TrialRecord row;
        double late = 0.0;
        double bound = 0.0;
        std::vector<double> grid_dist;
    };
    const auto out = parallel_map<Out>(trial_count(spec), spec.workers, [&](std::size_t i) {
        RngStream rng(spec.seed, i);
        const Hamiltonian h = sample_random_hamiltonian(SpectrumSpec{}, dims, rng);
        ComplexVector s = ComplexVector::Zero(dims.system);
        s(0) = 1.0;
        const ComplexVector b =
            sample_haar_state(ComplexMatrix::Identity(dims.bath, dims.bath), rng).amplitudes();
        const PureEvolution evo(h, tensor_product(s, b));
        const ComplexMatrix omega = evo.dephased_state();
        const ComplexMatrix omega_s = partial_trace(omega, dims, Subsystem::S);
        BoundContext ctx;
        ctx.d_s = static_cast<double>(dims.system);
        ctx.deff_omega_b = effective_dimension(partial_trace(omega, dims, Subsystem::B));
        const auto distance = [&](double t) {
            return trace_distance(reduced_from_pure(evo.state_at(t), dims, Subsystem::S), omega_s);
        };
        const std::vector<double> times = sample_times(horizon_for(spec, h), spec.time_samples, rng);
        std::vector<double> dist;
        for (const double t : times) {
            dist.push_back(distance(t));
        }
        Out o;
        o.row = report_row(label(i), check_bound(TheoremId::SUBSYSTEM_EQUILIBRATION, mean_of(dist), ctx));
        o.bound = o.row.rhs;
        for (Index k = 0; k < grid; ++k) {
            o.grid_dist.push_back(distance(t_max * static_cast<double>(k) / static_cast<double>(grid - 1)));
        }
        const auto half = o.grid_dist.begin() + static_cast<std::ptrdiff_t>(grid / 2);
        o.late = mean(std::vector<double>(half, o.grid_dist.end()));
        return o;
    });
    Records rows;
    double excess = -std::numeric_limits<double>::infinity();
    for (const auto &o : out) {
        rows.push_back(o.row);
        excess = std::max(excess, o.late - o.bound);
    }
    rows.push_back(judged_row("check:late_window_below_bound", Sense::Upper, {excess, 0.0}, 0.0));
    if (!spec.output_dir.empty()) {
        std::vector<double> t(static_cast<std::size_t>(grid));
        for (Index k = 0; k < grid; ++k) {
            t[static_cast<std::size_t>(k)] = t_max * static_cast<double>(k) / static_cast<double>(grid - 1);
        }
        const std::string name = spec.experiment_id + "_trajectory.csv";
        write_trajectory_csv(spec.output_dir / name, t, {"distance", "bound"},
                             {out[0].grid_dist, std::vector<double>(t.size(), out[0].bound)});
        files.push_back(name);
    }
    return rows;
}

std::vector<TrialRecord> einselection_records(const ExperimentSpec &spec, Files &files) {
    struct Out {
        TrialRecord drift;
        double factor_gap = 0.0;
        double late_suppression = 0.0;
        double pair_excess = 0.0;
        std::vector<double> times, d0, d1, off, supp;
    };
    const Dims dims = spec.dims;
    const Index ds = dims.system;
    const std::string mode = spec.params.get_string("blocks", "random");
    if (mode != "random" && mode != "equal") {
        throw std::invalid_argument("blocks must be 'random' or 'equal'");
    }
    const bool equal = mode == "equal";
    const double t_max = spec.params.get_double("t_max", 50.0);
    const Index n = spec.time_samples;
    if (n < 4) {
        throw std::invalid_argument("time_samples must be >= 4");
    }
    const double coupling = spec.params.get_double("coupling", 0.01);
    const double pair_factor = spec.params.get_double("pair_factor", 5.0);

    const auto out = parallel_map<Out>(trial_count(spec), spec.workers, [&](std::size_t i) {
        RngStream rng(spec.seed, i);
        std::vector<ComplexMatrix> blocks;
        for (Index p = 0; p < ds; ++p) {
            if (equal && p > 0) {
                blocks.push_back(blocks.front());
            } else {
                blocks.push_back(random_observable(dims.bath, rng, 1.0));
            }
        }
        const CompositeHamiltonian parts = pointer_hamiltonian(blocks);
        const ComplexVector a = ComplexVector::Constant(ds, 1.0 / std::sqrt(static_cast<double>(ds)));
        const ComplexVector phi =
            sample_haar_state(ComplexMatrix::Identity(dims.bath, dims.bath), rng).amplitudes();
        const PureEvolution evo(parts.assembled, tensor_product(a, phi));
        const ComplexMatrix r0 = reduced_from_pure(tensor_product(a, phi), dims, Subsystem::S);

        Out o;
        double drift = 0.0;
        std::vector<double> abs_s;
        for (Index k = 0; k < n; ++k) {
            const double t = t_max * static_cast<double>(k) / static_cast<double>(n - 1);
            const ComplexMatrix rs = reduced_from_pure(evo.state_at(t), dims, Subsystem::S);
            for (Index p = 0; p < ds; ++p) {
                drift = std::max(drift, std::abs(rs(p, p).real() - r0(p, p).real()));
            }
            const Complex s = suppression_factor(blocks, phi, 0, 1 % ds, t);
            o.factor_gap = std::max(o.factor_gap, std::abs(rs(0, 1 % ds) - r0(0, 1 % ds) * s));
            abs_s.push_back(std::abs(s));
            if (i == 0) {
                o.times.push_back(t);
                o.d0.push_back(rs(0, 0).real());
                o.d1.push_back(rs(1 % ds, 1 % ds).real());
                o.off.push_back(std::abs(rs(0, 1 % ds)));
                o.supp.push_back(std::abs(s));
            }
        }
        o.drift = judged_row(label(i), Sense::Upper, {drift, 0.0}, 1e-10);
        const auto late = abs_s.begin() + static_cast<std::ptrdiff_t>(3 * abs_s.size() / 4);
        o.late_suppression = mean(std::vector<double>(late, abs_s.end()));

        // Weak-coupling variant: time-averaged |rho^S_kl| of the largest-gap pair.
        const Weak w = weak_coupling_instance(dims, rng, coupling);
        const PureEvolution wevo(w.parts.assembled, w.psi0);
        const Index kk = 0;
        const Index ll = w.es.size() - 1;
        const double gap = w.es(ll) - w.es(kk);
        double coh = 0.0;
        double speed = 0.0;
        for (Index k = 0; k < n; ++k) {
            const double t = t_max * static_cast<double>(k) / static_cast<double>(n - 1);
            const ComplexVector psi = wevo.state_at(t);
            const ComplexMatrix rs = w.vs.adjoint() * reduced_from_pure(psi, dims, Subsystem::S) * w.vs;
            coh += std::abs(rs(kk, ll));
            speed += subsystem_speed(psi, w.parts);
        }
        coh /= static_cast<double>(n);
        speed /= static_cast<double>(n);
        o.pair_excess = coh - pair_factor * (w.norm_hsb + speed) / gap;
        return o;
    });

    Records rows;
    double factor = 0.0;
    double excess = -std::numeric_limits<double>::infinity();
    std::vector<double> late;
    for (const auto &o : out) {
        rows.push_back(o.drift);
        factor = std::max(factor, o.factor_gap);
        excess = std::max(excess, o.pair_excess);
        late.push_back(o.late_suppression);
    }
    rows.push_back(judged_row("check:suppression_factor", Sense::Upper, {factor, 0.0}, 1e-9));
    if (equal) {
        rows.push_back(judged_row("check:equal_blocks_no_decay", Sense::Equality, {*std::min_element(late.begin(), late.end()), 0.0}, 1.0));
    } else {
        rows.push_back(judged_row("check:late_suppression", Sense::Upper, {max_of(late), 0.0},
                                  spec.params.get_double("suppression_max", 0.3)));
    }
    rows.push_back(judged_row("check:largest_gap_pair", Sense::Upper, {excess, 0.0}, 0.0));
    if (!spec.output_dir.empty()) {
        const std::string name = spec.experiment_id + "_trajectory.csv";
        write_trajectory_csv(spec.output_dir / name, out[0].times,
                             {"rho_00", "rho_11", "abs_rho_01", "abs_suppression"},
                             {out[0].d0, out[0].d1, out[0].off, out[0].supp});
        files.push_back(name);
    }
    return rows;
}

} // namespace typlab::detail
