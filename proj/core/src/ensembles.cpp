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

#include "typlab/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace typlab {

ComplexMatrix haar_unitary(Index d, RngStream &rng) {
    if (d < 1) {
        throw DimensionError("haar_unitary: d must be positive");
    }
    const ComplexMatrix g = rng.ginibre(d, d);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (Index j = 0; j < d; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) {
            q.col(j) *= r(j, j) / mag;
        }
    }
    return q;
}

PureState sample_haar_state(const ComplexMatrix &basis, RngStream &rng, Dims dims) {
    if (basis.cols() < 1) {
        throw PreconditionError("sample_haar_state: empty basis");
    }
    ComplexVector c = rng.complex_normal_vector(basis.cols());
    c /= c.norm();
    return PureState::normalized(basis * c, dims);
}

PureState sample_haar_state(const ComplexMatrix &basis, RngStream &rng) {
    return sample_haar_state(basis, rng, Dims{basis.rows(), 1});
}

PureState sample_product_state(const ComplexMatrix &basis_s, const ComplexMatrix &basis_b,
                               RngStream &rng) {
    if (basis_s.cols() < 1 || basis_b.cols() < 1) {
        throw PreconditionError("sample_product_state: empty basis");
    }
    const PureState s = sample_haar_state(basis_s, rng);
    const PureState b = sample_haar_state(basis_b, rng);
    return PureState::normalized(tensor_product(s.amplitudes(), b.amplitudes()),
                                 Dims{basis_s.rows(), basis_b.rows()});
}

RealVector sample_non_resonant_spectrum(const SpectrumSpec &spec, Index d, RngStream &rng) {
    RealVector e(d);
    if (!spec.values.empty()) {
        if (static_cast<Index>(spec.values.size()) != d) {
            throw DimensionError("sample_random_hamiltonian: spectrum size differs from d");
        }
        for (Index k = 0; k < d; ++k) {
            e(k) = spec.values[static_cast<std::size_t>(k)];
        }
    } else {
        for (Index k = 0; k < d; ++k) {
            e(k) = rng.uniform(spec.lo, spec.hi);
        }
    }
    std::sort(e.data(), e.data() + d);
    const double width = d > 1 && e(d - 1) > e(0) ? e(d - 1) - e(0) : 1.0;
    for (int round = 0; round <= spec.max_jitter_rounds; ++round) {
        if (gap_analysis(e, spec.gap_tol).non_resonant) {
            return e;
        }
        if (round == spec.max_jitter_rounds) {
            break;
        }
        for (Index k = 0; k < d; ++k) {
            e(k) += spec.jitter_scale * width * rng.uniform(-1.0, 1.0);
        }
        std::sort(e.data(), e.data() + d);
    }
    throw NumericalError("sample_random_hamiltonian: spectrum still resonant after " +
                         std::to_string(spec.max_jitter_rounds) + " jitter rounds");
}

Hamiltonian sample_random_hamiltonian(const SpectrumSpec &spec, Dims dims, RngStream &rng) {
    const Index d = dims.total();
    RealVector e = sample_non_resonant_spectrum(spec, d, rng);
    ComplexMatrix v = haar_unitary(d, rng);
    return Hamiltonian::from_spectrum(std::move(e), std::move(v), dims, spec.gap_tol);
}

ComplexMatrix random_observable(Index d, RngStream &rng, double norm) {
    RealVector lambda(d);
    for (Index k = 0; k < d; ++k) {
        lambda(k) = rng.uniform(-1.0, 1.0);
    }
    const double scale = lambda.cwiseAbs().maxCoeff();
    lambda *= norm / scale;
    const ComplexMatrix u = haar_unitary(d, rng);
    ComplexMatrix a = u * lambda.cast<Complex>().asDiagonal() * u.adjoint();
    return 0.5 * (a + a.adjoint());
}

ComplexMatrix random_traceless_hermitian(Index d, RngStream &rng, double norm) {
    const ComplexMatrix g = rng.ginibre(d, d);
    ComplexMatrix h = 0.5 * (g + g.adjoint());
    h -= (h.trace() / static_cast<double>(d)) * ComplexMatrix::Identity(d, d);
    h = 0.5 * (h + h.adjoint()).eval();
    const double n = schatten_norm(h, NormKind::Operator);
    return n > 0.0 ? ComplexMatrix(h * (norm / n)) : h;
}

ComplexMatrix random_density_matrix(Index d, Index rank, RngStream &rng) {
    const ComplexMatrix g = rng.ginibre(d, rank);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

double harmonic_mean(const RealVector &spectrum) {
    return static_cast<double>(spectrum.size()) / spectrum.cwiseInverse().sum();
}

double shift_for_harmonic_mean(const RealVector &spectrum, double e) {
    if (spectrum.size() < 1) {
        throw PreconditionError("shift_for_harmonic_mean: empty spectrum");
    }
    const double e0 = spectrum.minCoeff();
    const double emax = spectrum.maxCoeff();
    const double mean = spectrum.mean();
    if (emax - e0 <= 1e-15 * std::max(1.0, std::abs(e0))) {
        if (std::abs(e - e0) <= 1e-12 * std::max(1.0, std::abs(e0))) {
            return 0.0;
        }
        throw PreconditionError("shift_for_harmonic_mean: E differs from the constant spectrum");
    }
    if (!(e > e0 && e < mean)) {
        throw PreconditionError("shift_for_harmonic_mean: E must lie strictly between E_0 and the "
                                "mean energy");
    }
    const auto f = [&](double a) {
        return harmonic_mean((spectrum.array() + a).matrix()) - (e + a);
    };
    const double width = emax - e0;
    double lo = -e0 + 1e-12 * width;
    double hi = -e0 + width;
    while (f(hi) <= 0.0) {
        hi = -e0 + 2.0 * (hi + e0);
        if (hi > 1e15 * width) {
            throw NumericalError("shift_for_harmonic_mean: no sign change found");
        }
    }
    if (f(lo) >= 0.0) {
        return lo;
    }
    for (int it = 0; it < 400 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

RealVector mean_energy_sigmas(const RealVector &spectrum, double e) {
    const double d = static_cast<double>(spectrum.size());
    RealVector sigma(spectrum.size());
    for (Index k = 0; k < spectrum.size(); ++k) {
        sigma(k) = std::sqrt(e / (d * spectrum(k)));
    }
    return sigma;
}

PureState sample_mean_energy_state(const Hamiltonian &h, double e, RngStream &rng) {
    const RealVector &spec = h.eigenvalues();
    if (spec.minCoeff() <= 0.0 || e <= 0.0) {
        throw PreconditionError("sample_mean_energy_state: energies must be positive (shift first)");
    }
    const double eh = harmonic_mean(spec);
    if (std::abs(e - eh) > 1e-6 * e) {
        throw PreconditionError("sample_mean_energy_state: E is not the harmonic mean energy "
                                "(shift the spectrum first)");
    }
    const RealVector sigma = mean_energy_sigmas(spec, e);
    ComplexVector c(spec.size());
    for (Index k = 0; k < spec.size(); ++k) {
        c(k) = rng.complex_normal(sigma(k));
    }
    c /= c.norm();
    return PureState::normalized(h.eigenbasis() * c, h.dims());
}

const char *to_string(EnsembleKind kind) {
    switch (kind) {
    case EnsembleKind::HaarSubspace:
        return "haar_subspace";
    case EnsembleKind::Product:
        return "product";
    case EnsembleKind::MeanEnergy:
        return "mean_energy";
    }
    return "?";
}

EnsembleKind parse_ensemble_kind(const std::string &text) {
    if (text == "haar_subspace") {
        return EnsembleKind::HaarSubspace;
    }
    if (text == "product") {
        return EnsembleKind::Product;
    }
    if (text == "mean_energy") {
        return EnsembleKind::MeanEnergy;
    }
    throw ConfigError("unknown ensemble kind '" + text + "'");
}

ComplexMatrix subspace_basis(const std::vector<Index> &indices, SubspaceBasis basis, Index d,
                             const Hamiltonian *h) {
    if (basis == SubspaceBasis::Energy && h == nullptr) {
        throw PreconditionError("subspace_basis: energy basis requires a Hamiltonian");
    }
    if (indices.empty()) {
        return basis == SubspaceBasis::Energy ? h->eigenbasis()
                                              : ComplexMatrix(ComplexMatrix::Identity(d, d));
    }
    ComplexMatrix out(d, static_cast<Index>(indices.size()));
    for (std::size_t j = 0; j < indices.size(); ++j) {
        const Index k = indices[j];
        if (k < 0 || k >= d) {
            throw DimensionError("subspace_basis: index out of range");
        }
        if (basis == SubspaceBasis::Energy) {
            out.col(static_cast<Index>(j)) = h->eigenbasis().col(k);
        } else {
            out.col(static_cast<Index>(j)).setZero();
            out(k, static_cast<Index>(j)) = 1.0;
        }
    }
    return out;
}

PureState sample(const EnsembleSpec &spec, Dims dims, const Hamiltonian *h) {
    RngStream rng(spec.seed, spec.trial_index);
    switch (spec.kind) {
    case EnsembleKind::HaarSubspace:
        return sample_haar_state(subspace_basis(spec.subspace, spec.basis, dims.total(), h), rng,
                                 dims);
    case EnsembleKind::Product:
        return sample_product_state(
            subspace_basis(spec.subspace_s, SubspaceBasis::Computational, dims.system, nullptr),
            subspace_basis(spec.subspace_b, SubspaceBasis::Computational, dims.bath, nullptr), rng);
    case EnsembleKind::MeanEnergy: {
        if (h == nullptr) {
            throw PreconditionError("sample: mean_energy ensemble requires a Hamiltonian");
        }
        const double e = spec.energy ? *spec.energy : harmonic_mean(h->eigenvalues());
        return sample_mean_energy_state(*h, e, rng);
    }
    }
    throw PreconditionError("sample: unknown ensemble kind");
}

namespace {

std::string join_indices(const std::vector<Index> &v) {
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out << (i ? "," : "") << v[i];
    }
    return out.str();
}

std::vector<Index> parse_indices(const Config &cfg, const std::string &key) {
    std::vector<Index> out;
    for (const auto &item : cfg.get_list(key)) {
        // "a:b" is the half-open range [a, b).
        const std::size_t colon = item.find(':');
        try {
            if (colon == std::string::npos) {
                out.push_back(std::stoll(item));
            } else {
                const Index a = std::stoll(item.substr(0, colon));
                const Index b = std::stoll(item.substr(colon + 1));
                for (Index k = a; k < b; ++k) {
                    out.push_back(k);
                }
            }
        } catch (const std::logic_error &) {
            throw ConfigError("config key '" + key + "': bad index '" + item + "'");
        }
    }
    return out;
}

} // namespace

std::string to_config(const EnsembleSpec &spec, const std::string &prefix) {
    std::ostringstream out;
    out.precision(17);
    out << prefix << ".kind = " << to_string(spec.kind) << '\n';
    out << prefix << ".basis = "
        << (spec.basis == SubspaceBasis::Energy ? "energy" : "computational") << '\n';
    if (!spec.subspace.empty()) {
        out << prefix << ".subspace = " << join_indices(spec.subspace) << '\n';
    }
    if (!spec.subspace_s.empty()) {
        out << prefix << ".subspace_s = " << join_indices(spec.subspace_s) << '\n';
    }
    if (!spec.subspace_b.empty()) {
        out << prefix << ".subspace_b = " << join_indices(spec.subspace_b) << '\n';
    }
    if (spec.energy) {
        out << prefix << ".energy = " << *spec.energy << '\n';
    }
    out << prefix << ".seed = " << spec.seed << '\n';
    out << prefix << ".trial = " << spec.trial_index << '\n';
    return out.str();
}

EnsembleSpec ensemble_spec_from_config(const Config &cfg, const std::string &prefix) {
    const std::string p = prefix + ".";
    EnsembleSpec spec;
    spec.kind = parse_ensemble_kind(cfg.get_string(p + "kind", "haar_subspace"));
    const std::string basis = cfg.get_string(p + "basis", "computational");
    if (basis == "energy") {
        spec.basis = SubspaceBasis::Energy;
    } else if (basis != "computational") {
        throw ConfigError("config key '" + p + "basis': expected computational or energy");
    }
    spec.subspace = parse_indices(cfg, p + "subspace");
    spec.subspace_s = parse_indices(cfg, p + "subspace_s");
    spec.subspace_b = parse_indices(cfg, p + "subspace_b");
    if (cfg.contains(p + "energy")) {
        spec.energy = cfg.get_double(p + "energy", 0.0);
    }
    spec.seed = cfg.get_uint(p + "seed", 0);
    spec.trial_index = cfg.get_uint(p + "trial", 0);
    return spec;
}

} // namespace typlab
