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

#include "typlab/matching.hpp"

#include <algorithm>
#include <cstdint>
#include <tuple>

namespace typlab {

namespace {

PairingResult exact_matching(const RealMatrix &w) {
    const auto n = static_cast<int>(w.rows());
    const std::uint32_t full = (n == 32) ? 0xFFFFFFFFu : ((1u << n) - 1u);
    // best[mask]: optimum over the vertices not in mask.
    std::vector<double> best(static_cast<std::size_t>(full) + 1, 0.0);
    std::vector<std::int8_t> partner(best.size(), -1);
    for (std::uint32_t mask = full; mask-- > 0;) {
        int i = 0;
        while (mask & (1u << i)) {
            ++i;
        }
        const std::uint32_t with_i = mask | (1u << i);
        double value = best[with_i];
        std::int8_t choice = -1;
        for (int j = i + 1; j < n; ++j) {
            if (mask & (1u << j)) {
                continue;
            }
            const double cand = w(i, j) + best[with_i | (1u << j)];
            if (cand > value) {
                value = cand;
                choice = static_cast<std::int8_t>(j);
            }
        }
        best[mask] = value;
        partner[mask] = choice;
    }
    PairingResult r;
    r.value = best[0];
    std::uint32_t mask = 0;
    while (mask != full) {
        int i = 0;
        while (mask & (1u << i)) {
            ++i;
        }
        const int j = partner[mask];
        mask |= 1u << i;
        if (j >= 0) {
            r.pairs.emplace_back(i, j);
            mask |= 1u << j;
        }
    }
    return r;
}

PairingResult greedy_matching(const RealMatrix &w) {
    const Index n = w.rows();
    std::vector<std::tuple<double, Index, Index>> edges;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (w(i, j) > 0.0) {
                edges.emplace_back(w(i, j), i, j);
            }
        }
    }
    std::sort(edges.begin(), edges.end(),
              [](const auto &a, const auto &b) { return std::get<0>(a) > std::get<0>(b); });
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    PairingResult r;
    r.exact = false;
    for (const auto &[wt, i, j] : edges) {
        if (!used[static_cast<std::size_t>(i)] && !used[static_cast<std::size_t>(j)]) {
            used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = true;
            r.value += wt;
            r.pairs.emplace_back(i, j);
        }
    }
    return r;
}

} // namespace

PairingResult max_weight_matching(const RealMatrix &weights) {
    if (weights.rows() != weights.cols()) {
        throw DimensionError("max_weight_matching: weight matrix is not square");
    }
    if (weights.rows() < 2) {
        return {};
    }
    return weights.rows() <= kExactMatchingMaxDim ? exact_matching(weights)
                                                  : greedy_matching(weights);
}

PairingResult max_pairing_offdiagonal_sum(const RealVector &values, const ComplexMatrix &rho) {
    const Index n = values.size();
    if (rho.rows() != n || rho.cols() != n) {
        throw DimensionError("max_pairing_offdiagonal_sum: sizes differ");
    }
    RealMatrix w = RealMatrix::Zero(n, n);
    for (Index k = 0; k < n; ++k) {
        for (Index l = k + 1; l < n; ++l) {
            w(k, l) = w(l, k) = std::abs(values(k) - values(l)) * std::abs(rho(k, l));
        }
    }
    return max_weight_matching(w);
}

} // namespace typlab
