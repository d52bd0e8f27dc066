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

#include "typlab/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace typlab {

namespace {

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": operand sizes differ");
    }
}

double entropy_of_spectrum(const RealVector &lambda) {
    double s = 0.0;
    for (Index i = 0; i < lambda.size(); ++i) {
        const double x = lambda(i);
        if (x > 0.0) {
            s -= x * std::log(x);
        }
    }
    return s;
}

} // namespace

PureState PureState::make(ComplexVector amplitudes, Dims dims) {
    if (amplitudes.size() != dims.total()) {
        throw DimensionError("PureState: vector size does not match dims");
    }
    if (std::abs(amplitudes.norm() - 1.0) > kNormTol) {
        throw PreconditionError("PureState: vector is not normalized");
    }
    return {std::move(amplitudes), dims};
}

PureState PureState::normalized(ComplexVector amplitudes, Dims dims) {
    const double n = amplitudes.norm();
    if (n == 0.0) {
        throw PreconditionError("PureState: zero vector");
    }
    amplitudes /= n;
    return make(std::move(amplitudes), dims);
}

ComplexMatrix PureState::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, Dims dims) {
    if (m.rows() != m.cols() || m.rows() != dims.total()) {
        throw DimensionError("DensityMatrix: matrix size does not match dims");
    }
    if (!is_hermitian(m, kHermitianTol)) {
        throw PreconditionError("DensityMatrix: not Hermitian");
    }
    if (std::abs(m.trace().real() - 1.0) > kTraceTol) {
        throw PreconditionError("DensityMatrix: trace is not 1");
    }
    m = 0.5 * (m + m.adjoint()).eval();
    if (hermitian_eigenvalues(m).minCoeff() < -kPsdTol) {
        throw PreconditionError("DensityMatrix: not positive semidefinite");
    }
    return {std::move(m), dims};
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
    return {psi.projector(), psi.dims()};
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
    const Index d = dims.total();
    return {ComplexMatrix::Identity(d, d) / static_cast<double>(d), dims};
}

MacroObservableSet::MacroObservableSet(std::vector<ComplexMatrix> projectors,
                                       std::vector<std::string> labels, double tol)
    : projectors_(std::move(projectors)), labels_(std::move(labels)) {
    if (projectors_.empty()) {
        throw PreconditionError("MacroObservableSet: empty set");
    }
    if (!labels_.empty() && labels_.size() != projectors_.size()) {
        throw DimensionError("MacroObservableSet: label count differs from projector count");
    }
    const Index d = projectors_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t r = 0; r < projectors_.size(); ++r) {
        const ComplexMatrix &p = projectors_[r];
        if (p.rows() != d || p.cols() != d) {
            throw DimensionError("MacroObservableSet: projector sizes differ");
        }
        if (!is_hermitian(p, tol) || (p * p - p).cwiseAbs().maxCoeff() > tol) {
            throw PreconditionError("MacroObservableSet: element is not a projector");
        }
        for (std::size_t q = 0; q < r; ++q) {
            if ((p * projectors_[q]).cwiseAbs().maxCoeff() > tol) {
                throw PreconditionError("MacroObservableSet: projectors are not orthogonal");
            }
        }
        sum += p;
    }
    complete_ = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol;
}

double purity(const ComplexMatrix &rho) { return rho.squaredNorm(); }

double effective_dimension(const ComplexMatrix &rho) { return 1.0 / purity(rho); }

double von_neumann_entropy(const ComplexMatrix &rho) {
    return entropy_of_spectrum(hermitian_eigenvalues(rho));
}

double shannon_entropy(const RealVector &p) { return entropy_of_spectrum(p); }

double trace_distance(const ComplexMatrix &rho, const ComplexMatrix &sigma) {
    require_same_shape(rho, sigma, "trace_distance");
    return 0.5 * hermitian_eigenvalues(rho - sigma).cwiseAbs().sum();
}

double expectation(const ComplexMatrix &a, const ComplexMatrix &rho) {
    require_same_shape(a, rho, "expectation");
    // Tr[A rho] = sum_ij A_ij rho_ji
    return a.cwiseProduct(rho.transpose()).sum().real();
}

double expectation(const ComplexMatrix &a, const ComplexVector &psi) {
    if (a.cols() != psi.size()) {
        throw DimensionError("expectation: operand sizes differ");
    }
    return psi.dot(a * psi).real();
}

double purity(const DensityMatrix &rho) { return purity(rho.matrix()); }
double effective_dimension(const DensityMatrix &rho) { return effective_dimension(rho.matrix()); }
double von_neumann_entropy(const DensityMatrix &rho) { return von_neumann_entropy(rho.matrix()); }

double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    return trace_distance(rho.matrix(), sigma.matrix());
}

double expectation(const ComplexMatrix &a, const DensityMatrix &rho) {
    return expectation(a, rho.matrix());
}

DensityMatrix reduced_state(const DensityMatrix &rho, Subsystem keep) {
    const Dims d = rho.dims();
    const Dims out = keep == Subsystem::S ? Dims{d.system, 1} : Dims{d.bath, 1};
    return DensityMatrix::from_matrix(partial_trace(rho.matrix(), d, keep), out);
}

DensityMatrix reduced_state(const PureState &psi, Subsystem keep) {
    const Dims d = psi.dims();
    const Dims out = keep == Subsystem::S ? Dims{d.system, 1} : Dims{d.bath, 1};
    return DensityMatrix::from_matrix(reduced_from_pure(psi.amplitudes(), d, keep), out);
}

double mutual_information(const ComplexMatrix &rho, Dims dims) {
    const ComplexMatrix rs = partial_trace(rho, dims, Subsystem::S);
    const ComplexMatrix rb = partial_trace(rho, dims, Subsystem::B);
    return von_neumann_entropy(rs) + von_neumann_entropy(rb) - von_neumann_entropy(rho);
}

double mutual_information(const DensityMatrix &rho) {
    return mutual_information(rho.matrix(), rho.dims());
}

ComplexMatrix correlation_operator(const ComplexMatrix &rho, Dims dims) {
    return rho - tensor_product(partial_trace(rho, dims, Subsystem::S),
                                partial_trace(rho, dims, Subsystem::B));
}

ComplexMatrix correlation_operator(const DensityMatrix &rho) {
    return correlation_operator(rho.matrix(), rho.dims());
}

double max_projector_distinguishability(const ComplexMatrix &rho, const ComplexMatrix &sigma) {
    require_same_shape(rho, sigma, "max_projector_distinguishability");
    const ComplexMatrix diff = rho - sigma;
    const EigenDecomposition eig = hermitian_eig(0.5 * (diff + diff.adjoint()));
    const Index d = eig.dim();
    Index first = 0;
    while (first < d && eig.eigenvalues(first) < 0.0) {
        ++first;
    }
    if (first == d) {
        return 0.0;
    }
    const ComplexMatrix v = eig.eigenbasis.rightCols(d - first);
    return expectation(v * v.adjoint(), diff);
}

double max_projector_distinguishability(const DensityMatrix &rho, const DensityMatrix &sigma) {
    return max_projector_distinguishability(rho.matrix(), sigma.matrix());
}

DensityMatrix microcanonical_state(const ComplexMatrix &basis, Dims dims) {
    if (basis.cols() < 1) {
        throw PreconditionError("microcanonical_state: empty basis");
    }
    const Index dr = basis.cols();
    const ComplexMatrix gram = basis.adjoint() * basis;
    if ((gram - ComplexMatrix::Identity(dr, dr)).cwiseAbs().maxCoeff() > 1e-10) {
        throw PreconditionError("microcanonical_state: basis is not orthonormal");
    }
    return DensityMatrix::from_matrix(basis * basis.adjoint() / static_cast<double>(dr), dims);
}

DensityMatrix microcanonical_state(const ComplexMatrix &basis) {
    return microcanonical_state(basis, Dims{basis.rows(), 1});
}

DensityMatrix canonical_state(const Hamiltonian &h, double beta) {
    if (!std::isfinite(beta) || beta < 0.0) {
        throw PreconditionError("canonical_state: beta must be finite and non-negative");
    }
    const RealVector &e = h.eigenvalues();
    const double e_min = e.minCoeff();
    RealVector w(e.size());
    for (Index k = 0; k < e.size(); ++k) {
        w(k) = std::exp(-beta * (e(k) - e_min));
    }
    w /= w.sum();
    const ComplexMatrix &v = h.eigenbasis();
    ComplexMatrix m = v * w.cast<Complex>().asDiagonal() * v.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    return DensityMatrix::from_matrix(std::move(m), h.dims());
}

double macro_pseudo_distance(const ComplexMatrix &rho, const ComplexMatrix &sigma,
                             const MacroObservableSet &set) {
    require_same_shape(rho, sigma, "macro_pseudo_distance");
    if (set.projectors().front().rows() != rho.rows()) {
        throw DimensionError("macro_pseudo_distance: projector size differs from state size");
    }
    const ComplexMatrix diff = rho - sigma;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto &p : set.projectors()) {
        best = std::max(best, expectation(p, diff));
    }
    return best;
}

double macro_pseudo_distance(const DensityMatrix &rho, const DensityMatrix &sigma,
                             const MacroObservableSet &set) {
    return macro_pseudo_distance(rho.matrix(), sigma.matrix(), set);
}

} // namespace typlab
