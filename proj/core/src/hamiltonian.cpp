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

#include "typlab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace typlab {

namespace {

constexpr Index kExhaustiveGapDim = 64;

std::vector<double> positive_gaps(const RealVector &e) {
    std::vector<double> gaps;
    const Index d = e.size();
    gaps.reserve(static_cast<std::size_t>(d * (d - 1) / 2));
    for (Index k = 0; k < d; ++k) {
        for (Index l = 0; l < k; ++l) {
            gaps.push_back(e(k) - e(l));
        }
    }
    return gaps;
}

void require_orthonormal(const ComplexMatrix &v, const char *what) {
    const Index n = v.cols();
    if ((v.adjoint() * v - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
        throw PreconditionError(std::string(what) + ": eigenbasis is not unitary");
    }
}

ComplexMatrix kron_identity_left(const ComplexMatrix &a, Index d) {
    return tensor_product(ComplexMatrix::Identity(d, d), a);
}

ComplexMatrix kron_identity_right(const ComplexMatrix &a, Index d) {
    return tensor_product(a, ComplexMatrix::Identity(d, d));
}

} // namespace

GapReport gap_analysis(const RealVector &e, double tol) {
    GapReport r;
    r.tolerance = tol;
    const Index d = e.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    r.min_gap = inf;
    r.min_gap_difference = inf;
    for (Index k = 1; k < d; ++k) {
        if (e(k) < e(k - 1)) {
            throw PreconditionError("gap_analysis: eigenvalues are not ascending");
        }
        r.min_gap = std::min(r.min_gap, e(k) - e(k - 1));
    }
    std::vector<double> gaps = positive_gaps(e);
    if (d <= kExhaustiveGapDim) {
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                r.min_gap_difference = std::min(r.min_gap_difference, std::abs(gaps[i] - gaps[j]));
            }
        }
    } else {
        std::sort(gaps.begin(), gaps.end());
        for (std::size_t i = 1; i < gaps.size(); ++i) {
            r.min_gap_difference = std::min(r.min_gap_difference, gaps[i] - gaps[i - 1]);
        }
    }
    r.non_resonant = r.min_gap > tol && r.min_gap_difference > tol;
    return r;
}

Hamiltonian Hamiltonian::from_matrix(const ComplexMatrix &h, Dims dims, double gap_tol) {
    if (h.rows() != dims.total()) {
        throw DimensionError("Hamiltonian: matrix size does not match dims");
    }
    Hamiltonian out;
    out.eig_ = hermitian_eig(h);
    out.matrix_ = 0.5 * (h + h.adjoint());
    out.dims_ = dims;
    out.gaps_ = typlab::gap_analysis(out.eig_.eigenvalues, gap_tol);
    return out;
}

Hamiltonian Hamiltonian::from_spectrum(RealVector eigenvalues, ComplexMatrix eigenbasis, Dims dims,
                                       double gap_tol) {
    const Index d = eigenvalues.size();
    if (eigenbasis.rows() != d || eigenbasis.cols() != d || d != dims.total()) {
        throw DimensionError("Hamiltonian: spectrum, basis and dims disagree");
    }
    require_orthonormal(eigenbasis, "Hamiltonian");
    std::vector<Index> order(static_cast<std::size_t>(d));
    for (Index k = 0; k < d; ++k) {
        order[static_cast<std::size_t>(k)] = k;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return eigenvalues(a) < eigenvalues(b); });
    Hamiltonian out;
    out.eig_.eigenvalues.resize(d);
    out.eig_.eigenbasis.resize(d, d);
    for (Index k = 0; k < d; ++k) {
        out.eig_.eigenvalues(k) = eigenvalues(order[static_cast<std::size_t>(k)]);
        out.eig_.eigenbasis.col(k) = eigenbasis.col(order[static_cast<std::size_t>(k)]);
    }
    out.matrix_ = out.eig_.reconstruct();
    out.matrix_ = 0.5 * (out.matrix_ + out.matrix_.adjoint()).eval();
    out.dims_ = dims;
    out.gaps_ = typlab::gap_analysis(out.eig_.eigenvalues, gap_tol);
    return out;
}

double Hamiltonian::operator_norm() const {
    if (dim() == 0) {
        return 0.0;
    }
    return std::max(std::abs(eig_.eigenvalues(0)), std::abs(eig_.eigenvalues(dim() - 1)));
}

GapReport Hamiltonian::gap_analysis(double tol) const {
    return typlab::gap_analysis(eig_.eigenvalues, tol);
}

ComplexMatrix unitary_from_hamiltonian(const Hamiltonian &h, double t) {
    return unitary_from_spectrum(h.decomposition(), t);
}

GapReport gap_analysis(const Hamiltonian &h, double tol) { return h.gap_analysis(tol); }

CompositeHamiltonian CompositeHamiltonian::decompose(const ComplexMatrix &h, Dims dims) {
    require_hermitian(h, "CompositeHamiltonian::decompose");
    const Index ds = dims.system;
    const Index db = dims.bath;
    const double d = static_cast<double>(dims.total());
    CompositeHamiltonian c;
    c.h0_coefficient = h.trace().real() / d;
    c.h_s = partial_trace(h, dims, Subsystem::S) / static_cast<double>(db);
    c.h_s -= c.h0_coefficient * ComplexMatrix::Identity(ds, ds);
    c.h_b = partial_trace(h, dims, Subsystem::B) / static_cast<double>(ds);
    c.h_b -= c.h0_coefficient * ComplexMatrix::Identity(db, db);
    c.h_sb = h - c.h0_coefficient * ComplexMatrix::Identity(dims.total(), dims.total()) -
             kron_identity_right(c.h_s, db) - kron_identity_left(c.h_b, ds);
    c.assembled = Hamiltonian::from_matrix(h, dims);
    return c;
}

CompositeHamiltonian CompositeHamiltonian::decompose(const Hamiltonian &h) {
    CompositeHamiltonian c = decompose(h.matrix(), h.dims());
    c.assembled = h;
    return c;
}

CompositeHamiltonian CompositeHamiltonian::from_parts(double h0, ComplexMatrix h_s,
                                                      ComplexMatrix h_b, ComplexMatrix h_sb,
                                                      double gap_tol) {
    const Index ds = h_s.rows();
    const Index db = h_b.rows();
    const Dims dims{ds, db};
    require_hermitian(h_s, "CompositeHamiltonian: H_S");
    require_hermitian(h_b, "CompositeHamiltonian: H_B");
    require_hermitian(h_sb, "CompositeHamiltonian: H_SB");
    if (h_sb.rows() != dims.total()) {
        throw DimensionError("CompositeHamiltonian: H_SB size is not d_S*d_B");
    }
    const auto traceless = [](const ComplexMatrix &m) {
        return std::abs(m.trace()) <= 1e-9 * static_cast<double>(m.rows());
    };
    if (!traceless(h_s) || !traceless(h_b) || !traceless(h_sb)) {
        throw PreconditionError("CompositeHamiltonian: parts must be traceless");
    }
    CompositeHamiltonian c;
    c.h0_coefficient = h0;
    c.h_s = std::move(h_s);
    c.h_b = std::move(h_b);
    c.h_sb = std::move(h_sb);
    const ComplexMatrix total = h0 * ComplexMatrix::Identity(dims.total(), dims.total()) +
                                kron_identity_right(c.h_s, db) + kron_identity_left(c.h_b, ds) +
                                c.h_sb;
    c.assembled = Hamiltonian::from_matrix(total, dims, gap_tol);
    return c;
}

ComplexMatrix CompositeHamiltonian::system_generator() const {
    return kron_identity_right(h_s, dims().bath) + h_sb;
}

} // namespace typlab
