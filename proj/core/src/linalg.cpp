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

#include "typlab/linalg.hpp"

#include <cmath>
#include <string>

namespace typlab {

namespace {

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

void require_square(const ComplexMatrix &a, const char *what) {
    if (a.rows() != a.cols()) {
        throw DimensionError(std::string(what) + ": matrix is not square");
    }
}

void require_dims(Index n, Dims dims, const char *what) {
    if (dims.system < 1 || dims.bath < 1 || n != dims.total()) {
        throw DimensionError(std::string(what) + ": size " + std::to_string(n) +
                             " does not match d_S*d_B = " +
                             std::to_string(dims.system) + "*" +
                             std::to_string(dims.bath));
    }
}

} // namespace

ComplexMatrix EigenDecomposition::reconstruct() const {
    return eigenbasis * eigenvalues.cast<Complex>().asDiagonal() * eigenbasis.adjoint();
}

bool is_hermitian(const ComplexMatrix &a, double tol) {
    if (a.rows() != a.cols()) {
        return false;
    }
    if (a.size() == 0) {
        return true;
    }
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

void require_hermitian(const ComplexMatrix &a, const char *what, double tol) {
    require_square(a, what);
    if (!is_hermitian(a, tol)) {
        throw PreconditionError(std::string(what) + ": matrix is not Hermitian");
    }
}

ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector tensor_product(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, Dims dims, Subsystem keep) {
    require_square(rho, "partial_trace");
    require_dims(rho.rows(), dims, "partial_trace");
    const Index ds = dims.system;
    const Index db = dims.bath;
    if (keep == Subsystem::S) {
        ComplexMatrix out(ds, ds);
        for (Index i = 0; i < ds; ++i) {
            for (Index j = 0; j < ds; ++j) {
                out(i, j) = rho.block(i * db, j * db, db, db).trace();
            }
        }
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (Index s = 0; s < ds; ++s) {
        out += rho.block(s * db, s * db, db, db);
    }
    return out;
}

ComplexMatrix reduced_from_pure(const ComplexVector &psi, Dims dims, Subsystem keep) {
    require_dims(psi.size(), dims, "reduced_from_pure");
    RowMajorMap m(psi.data(), dims.system, dims.bath);
    if (keep == Subsystem::S) {
        return m * m.adjoint();
    }
    return m.transpose() * m.conjugate();
}

EigenDecomposition hermitian_eig(const ComplexMatrix &a) {
    require_hermitian(a, "hermitian_eig", kEigHermitianTol);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("hermitian_eig: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix &a) {
    require_square(a, "hermitian_eigenvalues");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("hermitian_eigenvalues: eigensolver did not converge");
    }
    return solver.eigenvalues();
}

double schatten_norm(const ComplexMatrix &a, NormKind kind) {
    if (a.size() == 0) {
        return 0.0;
    }
    if (kind == NormKind::HilbertSchmidt) {
        return a.norm();
    }
    require_hermitian(a, "schatten_norm", 1e-10);
    const RealVector values = hermitian_eigenvalues(a).cwiseAbs();
    return kind == NormKind::Trace ? values.sum() : values.maxCoeff();
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_square(a, "commutator");
    if (a.rows() != b.rows() || b.rows() != b.cols()) {
        throw DimensionError("commutator: operand sizes differ");
    }
    return a * b - b * a;
}

ComplexMatrix unitary_from_spectrum(const EigenDecomposition &h, double t) {
    ComplexVector phases(h.dim());
    for (Index k = 0; k < h.dim(); ++k) {
        phases(k) = std::polar(1.0, -h.eigenvalues(k) * t);
    }
    return h.eigenbasis * phases.asDiagonal() * h.eigenbasis.adjoint();
}

ComplexMatrix swap_operator(Index d) {
    ComplexMatrix out = ComplexMatrix::Zero(d * d, d * d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            out(j * d + i, i * d + j) = 1.0;
        }
    }
    return out;
}

ComplexMatrix computational_block(Index d, Index first, Index count) {
    if (first < 0 || count < 1 || first + count > d) {
        throw DimensionError("computational_block: range outside [0, d)");
    }
    ComplexMatrix out = ComplexMatrix::Zero(d, count);
    for (Index k = 0; k < count; ++k) {
        out(first + k, k) = 1.0;
    }
    return out;
}

} // namespace typlab
