// Copyright 2026 The otoc-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OTOC_LAB_STRATEGIES_H
#define OTOC_LAB_STRATEGIES_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "otoc_lab/learning_tree.h"

namespace otoc_lab {

struct StrategyInfo {
    std::string name;
    std::string description;
    bool time_ordered;
    /// Set for strategies whose depth is part of their definition.
    std::optional<std::size_t> fixed_depth;
};

std::vector<StrategyInfo> list_strategies();

/// Builds a registered strategy on n qubits. `depth` is ignored (and may be 0)
/// for fixed-depth strategies; any other mismatch throws. `seed` feeds the
/// randomized strategies only.
Strategy make_strategy(const std::string &name, std::size_t n, std::size_t depth, std::uint64_t seed = 0);

/// Every round measures {I}: one transcript, no information.
Strategy identity_strategy(std::size_t dim, std::size_t depth);

/// Computational-basis measurement every round, forward queries only.
Strategy computational_basis_strategy(std::size_t n, std::size_t depth);

/// Fixed Haar-random orthonormal basis (drawn from `seed`) every round.
Strategy random_basis_strategy(std::size_t n, std::size_t depth, std::uint64_t seed);

/// depth-1 rounds of {I}, then one computational-basis measurement.
Strategy identity_then_measure_strategy(std::size_t n, std::size_t depth);

/// Forward query, X on qubit 1 as a single-element POVM, inverse query, then
/// a projective measurement of the second block. Transcript (0, b); the
/// all-zero acceptance rule declares ProductHaar on b == 0.
Strategy oto_distinguisher_strategy(std::size_t n);

/// Fully adaptive strategy whose POVM at each prefix is the column basis of a
/// Haar unitary seeded by (seed, prefix). Unless time-ordered, the query kind
/// is also drawn per prefix.
Strategy random_rank_one_strategy(std::size_t dim, std::size_t depth, std::uint64_t seed, bool time_ordered);

/// Class of a computational-basis transcript under independent permutations
/// of each block's basis that fix |0>: the pair of first-occurrence patterns
/// of the block digits of (0, i_1, ..., i_T). Requires depth <= 8.
std::uint64_t block_pattern_label(std::span<const std::uint32_t> transcript, std::size_t n);

}  // namespace otoc_lab

#endif
