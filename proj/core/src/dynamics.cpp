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

#include "typlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace typlab {

namespace {

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

void require_same_dim(Index n, const Hamiltonian &h, const char *what) {
    if (n != h.dim()) {
        throw DimensionError(std::string(what) + ": state and Hamiltonian sizes differ");
    }
}

ComplexVector phases(const RealVector &e, double t) {
    ComplexVector out(e.size());
    for (Index k = 0; k < e.size(); ++k) {
        out(k) = std::polar(1.0, -e(k) * t);
    }
    return out;
}

Dims reduced_dims(Dims d, Subsystem keep) {
    return keep == Subsystem::S ? Dims{d.system, 1} : Dims{d.bath, 1};
}

} // namespace

PureState evolve(const PureState &psi, const Hamiltonian &h, double t) {
    require_same_dim(psi.dim(), h, "evolve");
    const ComplexVector c = h.eigenbasis().adjoint() * psi.amplitudes();
    return PureState::normalized(h.eigenbasis() * (phases(h.eigenvalues(), t).cwiseProduct(c)),
                                 psi.dims());
}

DensityMatrix evolve(const DensityMatrix &rho, const Hamiltonian &h, double t) {
    require_same_dim(rho.dim(), h, "evolve");
    const ComplexMatrix u = unitary_from_hamiltonian(h, t);
    ComplexMatrix out = u * rho.matrix() * u.adjoint();
    return DensityMatrix::from_matrix(0.5 * (out + out.adjoint()), rho.dims());
}

PureEvolution::PureEvolution(const Hamiltonian &h, const ComplexVector &psi0) : h_(&h) {
    require_same_dim(psi0.size(), h, "PureEvolution");
    c_ = h.eigenbasis().adjoint() * psi0;
    populations_ = c_.cwiseAbs2();
}

ComplexVector PureEvolution::coefficients_at(double t) const {
    return phases(h_->eigenvalues(), t).cwiseProduct(c_);
}

ComplexVector PureEvolution::state_at(double t) const {
    return h_->eigenbasis() * coefficients_at(t);
}

ComplexMatrix PureEvolution::dephased_state() const {
    const ComplexMatrix &v = h_->eigenbasis();
    return v * populations_.cast<Complex>().asDiagonal() * v.adjoint();
}

ComplexMatrix dephase(const ComplexMatrix &x, const Hamiltonian &h, DephaseMode mode,
                      double cluster_tol) {
    if (x.rows() != h.dim() || x.cols() != h.dim()) {
        throw DimensionError("dephase: operand and Hamiltonian sizes differ");
    }
    if (mode == DephaseMode::Strict && !h.gaps().non_resonant) {
        throw PreconditionError("dephase: Hamiltonian is resonant; use degenerate-cluster mode");
    }
    const ComplexMatrix &v = h.eigenbasis();
    const ComplexMatrix xe = v.adjoint() * x * v;
    ComplexMatrix kept = ComplexMatrix::Zero(xe.rows(), xe.cols());
    const RealVector &e = h.eigenvalues();
    const double scale = std::max(1.0, h.operator_norm());
    Index start = 0;
    for (Index k = 1; k <= e.size(); ++k) {
        const bool split = mode == DephaseMode::Strict || k == e.size() ||
                           e(k) - e(k - 1) >= cluster_tol * scale;
        if (k == e.size() || split) {
            const Index len = k - start;
            kept.block(start, start, len, len) = xe.block(start, start, len, len);
            start = k;
        }
    }
    ComplexMatrix out = v * kept * v.adjoint();
    if (is_hermitian(x, kHermitianTol)) {
        out = 0.5 * (out + out.adjoint()).eval();
    }
    return out;
}

DensityMatrix dephase(const DensityMatrix &rho, const Hamiltonian &h, DephaseMode mode) {
    return DensityMatrix::from_matrix(dephase(rho.matrix(), h, mode), rho.dims());
}

std::vector<double> sample_times(double horizon, Index n, RngStream &rng) {
    if (!(horizon > 0.0) || n < 1) {
        throw PreconditionError("sample_times: need T > 0 and n >= 1");
    }
    std::vector<double> t(static_cast<std::size_t>(n));
    for (auto &x : t) {
        x = rng.uniform(0.0, horizon);
    }
    std::sort(t.begin(), t.end());
    return t;
}

double default_horizon(const Hamiltonian &h) {
    const GapReport &g = h.gaps();
    if (std::isfinite(g.min_gap_difference) && g.min_gap_difference > 0.0) {
        return 1e4 / g.min_gap_difference;
    }
    if (std::isfinite(g.min_gap) && g.min_gap > 0.0) {
        return 1e4 / g.min_gap;
    }
    return 1.0;
}

TimeAverageReport empirical_time_average(const Hamiltonian &h, const PureState &psi0,
                                         double horizon, Index n, RngStream &rng,
                                         std::optional<Subsystem> reduce) {
    if (!(horizon > 0.0) || n < 2) {
        throw PreconditionError("empirical_time_average: need T > 0 and n >= 2");
    }
    const PureEvolution evo(h, psi0.amplitudes());
    const std::vector<double> times = sample_times(horizon, n, rng);
    const Dims dims = psi0.dims();
    ComplexMatrix dephased = evo.dephased_state();
    Dims out_dims = dims;
    if (reduce) {
        dephased = partial_trace(dephased, dims, *reduce);
        out_dims = reduced_dims(dims, *reduce);
    }
    ComplexMatrix acc = ComplexMatrix::Zero(dephased.rows(), dephased.cols());
    for (const double t : times) {
        const ComplexVector psi = evo.state_at(t);
        if (reduce) {
            acc += reduced_from_pure(psi, dims, *reduce);
        } else {
            acc += psi * psi.adjoint();
        }
    }
    acc /= static_cast<double>(n);
    TimeAverageReport r;
    r.dephased = DensityMatrix::from_matrix(0.5 * (dephased + dephased.adjoint()), out_dims);
    r.empirical = DensityMatrix::from_matrix(0.5 * (acc + acc.adjoint()), out_dims);
    r.discrepancy = trace_distance(r.dephased, r.empirical);
    r.horizon = horizon;
    r.n_samples = n;
    return r;
}

ScalarTimeStats summarize_series(std::vector<double> times, std::vector<double> values) {
    ScalarTimeStats s;
    s.n = static_cast<Index>(values.size());
    if (s.n == 0) {
        return s;
    }
    double sum = 0.0;
    double sum2 = 0.0;
    for (const double x : values) {
        sum += x;
        sum2 += x * x;
    }
    s.mean = sum / static_cast<double>(s.n);
    s.second_moment = sum2 / static_cast<double>(s.n);
    double var = 0.0;
    for (const double x : values) {
        var += (x - s.mean) * (x - s.mean);
    }
    s.variance = var / static_cast<double>(s.n);
    s.std_error = std::sqrt(s.variance / static_cast<double>(s.n));
    s.times = std::move(times);
    s.values = std::move(values);
    return s;
}

ScalarTimeStats empirical_time_average(const Hamiltonian &h, const PureState &psi0,
                                       double horizon, Index n, RngStream &rng,
                                       const TimeFunctional &functional) {
    if (!(horizon > 0.0) || n < 2) {
        throw PreconditionError("empirical_time_average: need T > 0 and n >= 2");
    }
    const PureEvolution evo(h, psi0.amplitudes());
    std::vector<double> times = sample_times(horizon, n, rng);
    std::vector<double> values;
    values.reserve(times.size());
    for (const double t : times) {
        values.push_back(functional(t, evo.state_at(t)));
    }
    return summarize_series(std::move(times), std::move(values));
}

ComplexMatrix subsystem_velocity(const ComplexMatrix &rho, const CompositeHamiltonian &parts) {
    const Dims dims = parts.dims();
    if (rho.rows() != dims.total()) {
        throw DimensionError("subsystem_velocity: state and Hamiltonian sizes differ");
    }
    const Complex i(0.0, 1.0);
    const ComplexMatrix rs = partial_trace(rho, dims, Subsystem::S);
    ComplexMatrix v = i * commutator(rs, parts.h_s) +
                      i * partial_trace(commutator(rho, parts.h_sb), dims, Subsystem::S);
    return 0.5 * (v + v.adjoint());
}

ComplexMatrix subsystem_velocity(const ComplexVector &psi, const CompositeHamiltonian &parts) {
    const Dims dims = parts.dims();
    if (psi.size() != dims.total()) {
        throw DimensionError("subsystem_velocity: state and Hamiltonian sizes differ");
    }
    const Complex i(0.0, 1.0);
    const ComplexVector kpsi = parts.h_sb * psi;
    RowMajorMap m(psi.data(), dims.system, dims.bath);
    RowMajorMap k(kpsi.data(), dims.system, dims.bath);
    const ComplexMatrix rs = m * m.adjoint();
    const ComplexMatrix mk = m * k.adjoint();
    ComplexMatrix v = i * commutator(rs, parts.h_s) + i * (mk - mk.adjoint());
    return 0.5 * (v + v.adjoint());
}

double subsystem_speed(const DensityMatrix &rho, const CompositeHamiltonian &parts) {
    return 0.5 * schatten_norm(subsystem_velocity(rho.matrix(), parts), NormKind::Trace);
}

double subsystem_speed(const ComplexVector &psi, const CompositeHamiltonian &parts) {
    return 0.5 * schatten_norm(subsystem_velocity(psi, parts), NormKind::Trace);
}

PurityRate purity_rate(const DensityMatrix &rho, const CompositeHamiltonian &parts) {
    const Dims dims = parts.dims();
    if (rho.dim() != dims.total()) {
        throw DimensionError("purity_rate: state and Hamiltonian sizes differ");
    }
    const Complex two_i(0.0, 2.0);
    const ComplexMatrix &r = rho.matrix();
    const ComplexMatrix rs = partial_trace(r, dims, Subsystem::S);
    const ComplexMatrix direct = partial_trace(commutator(r, parts.h_sb), dims, Subsystem::S);
    const ComplexMatrix cor =
        partial_trace(commutator(correlation_operator(r, dims), parts.h_sb), dims, Subsystem::S);
    PurityRate out;
    out.rate = (two_i * (rs * direct).trace()).real();
    out.correlation_form = (two_i * (rs * cor).trace()).real();
    const double scale = 1.0 + schatten_norm(parts.h_sb, NormKind::Operator);
    if (std::abs(out.rate - out.correlation_form) > 1e-9 * scale) {
        throw NumericalError("purity_rate: direct and correlation forms disagree");
    }
    return out;
}

double purity_rate(const ComplexVector &psi, const CompositeHamiltonian &parts) {
    const Dims dims = parts.dims();
    if (psi.size() != dims.total()) {
        throw DimensionError("purity_rate: state and Hamiltonian sizes differ");
    }
    const ComplexVector kpsi = parts.h_sb * psi;
    RowMajorMap m(psi.data(), dims.system, dims.bath);
    RowMajorMap k(kpsi.data(), dims.system, dims.bath);
    const ComplexMatrix rs = m * m.adjoint();
    const ComplexMatrix mk = m * k.adjoint();
    return (Complex(0.0, 2.0) * (rs * (mk - mk.adjoint())).trace()).real();
}

CompositeHamiltonian pointer_hamiltonian(const std::vector<ComplexMatrix> &blocks) {
    if (blocks.empty()) {
        throw PreconditionError("pointer_hamiltonian: no blocks");
    }
    const Index ds = static_cast<Index>(blocks.size());
    const Index db = blocks.front().rows();
    ComplexMatrix h = ComplexMatrix::Zero(ds * db, ds * db);
    for (Index p = 0; p < ds; ++p) {
        const ComplexMatrix &b = blocks[static_cast<std::size_t>(p)];
        if (b.rows() != db || b.cols() != db) {
            throw DimensionError("pointer_hamiltonian: block sizes differ");
        }
        require_hermitian(b, "pointer_hamiltonian");
        h.block(p * db, p * db, db, db) = 0.5 * (b + b.adjoint());
    }
    return CompositeHamiltonian::decompose(h, Dims{ds, db});
}

Complex suppression_factor(const std::vector<ComplexMatrix> &blocks, const ComplexVector &psi_b,
                           Index p, Index q, double t) {
    const auto n = static_cast<Index>(blocks.size());
    if (p < 0 || q < 0 || p >= n || q >= n) {
        throw DimensionError("suppression_factor: pointer index out of range");
    }
    const EigenDecomposition ep = hermitian_eig(blocks[static_cast<std::size_t>(p)]);
    const EigenDecomposition eq = hermitian_eig(blocks[static_cast<std::size_t>(q)]);
    const ComplexVector up = unitary_from_spectrum(ep, t) * psi_b;
    const ComplexVector uq = unitary_from_spectrum(eq, t) * psi_b;
    return uq.dot(up);
}

Trajectory trajectory(const Hamiltonian &h, const PureState &psi0, const std::vector<double> &times,
                      std::optional<Subsystem> reduce) {
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw PreconditionError("trajectory: times must be strictly increasing");
        }
    }
    const PureEvolution evo(h, psi0.amplitudes());
    const Dims dims = psi0.dims();
    Trajectory out;
    out.times = times;
    out.reduce = reduce;
    out.states.reserve(times.size());
    for (const double t : times) {
        const ComplexVector psi = evo.state_at(t);
        if (reduce) {
            ComplexMatrix r = reduced_from_pure(psi, dims, *reduce);
            out.states.push_back(
                DensityMatrix::from_matrix(0.5 * (r + r.adjoint()), reduced_dims(dims, *reduce)));
        } else {
            out.states.push_back(DensityMatrix::from_matrix(psi * psi.adjoint(), dims));
        }
    }
    return out;
}

void write_trajectory_csv(const std::filesystem::path &path, const std::vector<double> &times,
                          const std::vector<std::string> &names,
                          const std::vector<std::vector<double>> &columns) {
    if (names.size() != columns.size()) {
        throw DimensionError("write_trajectory_csv: names and columns differ in count");
    }
    for (const auto &c : columns) {
        if (c.size() != times.size()) {
            throw DimensionError("write_trajectory_csv: column length differs from time count");
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << 't';
    for (const auto &n : names) {
        out << ',' << n;
    }
    out << '\n';
    char buf[32];
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", times[i]);
        out << buf;
        for (const auto &c : columns) {
            std::snprintf(buf, sizeof buf, "%.17g", c[i]);
            out << ',' << buf;
        }
        out << '\n';
    }
}

} // namespace typlab
