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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "typlab/config.hpp"
#include "typlab/hamiltonian.hpp"
#include "typlab/rng.hpp"
#include "typlab/states.hpp"

namespace typlab {

/// Haar unitary: QR of a complex Ginibre matrix with diag(R) made real positive.
[[nodiscard]] ComplexMatrix haar_unitary(Index d, RngStream &rng);

/// Uniform on the unit sphere of span(basis); `dims` describes the ambient space.
[[nodiscard]] PureState sample_haar_state(const ComplexMatrix &basis, RngStream &rng, Dims dims);
[[nodiscard]] PureState sample_haar_state(const ComplexMatrix &basis, RngStream &rng);

/// psi_S (x) psi_B with each factor Haar on its subspace.
[[nodiscard]] PureState sample_product_state(const ComplexMatrix &basis_s,
                                             const ComplexMatrix &basis_b, RngStream &rng);

struct SpectrumSpec {
    /// Explicit eigenvalues; if empty, d i.i.d. uniform draws on [lo, hi].
    std::vector<double> values;
    double lo = 0.0;
    double hi = 1.0;
    double gap_tol = kGapTol;
    int max_jitter_rounds = 100;
    double jitter_scale = 1e-6;
};

/// Sorted spectrum jittered until non-resonant at spec.gap_tol.
/// Throws NumericalError after spec.max_jitter_rounds failed rounds.
[[nodiscard]] RealVector sample_non_resonant_spectrum(const SpectrumSpec &spec, Index d,
                                                      RngStream &rng);

/// Haar eigenbasis with a spectrum from sample_non_resonant_spectrum.
[[nodiscard]] Hamiltonian sample_random_hamiltonian(const SpectrumSpec &spec, Dims dims,
                                                    RngStream &rng);

/// Hermitian with Haar eigenbasis, eigenvalues uniform on [-1, 1], rescaled to
/// operator norm `norm`.
[[nodiscard]] ComplexMatrix random_observable(Index d, RngStream &rng, double norm = 1.0);

/// GUE-type traceless Hermitian matrix rescaled to operator norm `norm`.
[[nodiscard]] ComplexMatrix random_traceless_hermitian(Index d, RngStream &rng, double norm = 1.0);

/// G G^dagger / Tr for a d x rank Ginibre G.
[[nodiscard]] ComplexMatrix random_density_matrix(Index d, Index rank, RngStream &rng);

/// Shift a with harmonic_mean(E_k + a) = E + a, found by bisection.
/// Requires E in (min E_k, mean E_k); returns 0 for a constant spectrum with E equal to it.
[[nodiscard]] double shift_for_harmonic_mean(const RealVector &spectrum, double e);

[[nodiscard]] double harmonic_mean(const RealVector &spectrum);

/// Per-component standard deviations sqrt(E / (d E_k)).
[[nodiscard]] RealVector mean_energy_sigmas(const RealVector &spectrum, double e);

/// Gaussian coefficients in the eigenbasis of h with component std sigma_k,
/// normalized. Requires positive eigenvalues and e equal to their harmonic
/// mean within 1e-6 relative (shift first).
[[nodiscard]] PureState sample_mean_energy_state(const Hamiltonian &h, double e, RngStream &rng);

enum class EnsembleKind { HaarSubspace, Product, MeanEnergy };
enum class SubspaceBasis { Computational, Energy };

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::HaarSubspace;
    SubspaceBasis basis = SubspaceBasis::Computational;
    /// Basis indices spanning H_R (HaarSubspace); empty means the whole space.
    std::vector<Index> subspace;
    /// Factor subspaces for Product; empty means the whole factor.
    std::vector<Index> subspace_s;
    std::vector<Index> subspace_b;
    /// Target energy for MeanEnergy; unset means the harmonic mean.
    std::optional<double> energy;
    std::uint64_t seed = 0;
    std::uint64_t trial_index = 0;
};

[[nodiscard]] const char *to_string(EnsembleKind kind);
[[nodiscard]] EnsembleKind parse_ensemble_kind(const std::string &text);

/// Columns of the chosen basis selected by `indices` (all if empty).
[[nodiscard]] ComplexMatrix subspace_basis(const std::vector<Index> &indices, SubspaceBasis basis,
                                           Index d, const Hamiltonian *h);

/// Draws one state for spec on the stream (spec.seed, spec.trial_index).
/// `h` is required for energy-basis subspaces and MeanEnergy.
[[nodiscard]] PureState sample(const EnsembleSpec &spec, Dims dims, const Hamiltonian *h = nullptr);

/// Config lines `prefix.kind = ...` etc.; round-trips through ensemble_spec_from_config.
[[nodiscard]] std::string to_config(const EnsembleSpec &spec, const std::string &prefix);
[[nodiscard]] EnsembleSpec ensemble_spec_from_config(const Config &cfg, const std::string &prefix);

} // namespace typlab
