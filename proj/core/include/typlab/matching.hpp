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

#include <utility>
#include <vector>

#include "typlab/linalg.hpp"

namespace typlab {

inline constexpr Index kExactMatchingMaxDim = 20;

struct PairingResult {
    double value = 0.0;
    /// False when the greedy fallback was used; value is then a lower bound.
    bool exact = true;
    std::vector<std::pair<Index, Index>> pairs;
};

/// Maximum-weight matching on the complete graph with weights w(k, l) = w(l, k).
/// Subset DP for d <= kExactMatchingMaxDim, greedy otherwise.
[[nodiscard]] PairingResult max_weight_matching(const RealMatrix &weights);

/// max over disjoint pairs of sum |a_k - a_l| |rho_kl|, rho in the a-basis.
[[nodiscard]] PairingResult max_pairing_offdiagonal_sum(const RealVector &values,
                                                        const ComplexMatrix &rho);

} // namespace typlab
