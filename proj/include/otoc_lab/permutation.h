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

#ifndef OTOC_LAB_PERMUTATION_H
#define OTOC_LAB_PERMUTATION_H

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace otoc_lab {

/// Largest k for which the full group S_k may be enumerated (8! = 40320).
inline constexpr std::size_t kMaxGroupOrder = 8;

/// Element of S_k in zero-indexed one-line notation: position i maps to images[i].
class Permutation {
   public:
    /// Validates that images is a bijection on {0, ..., k-1}.
    explicit Permutation(std::vector<std::uint8_t> images);
    static Permutation identity(std::size_t k);
    /// Swaps a and b, fixes everything else.
    static Permutation transposition(std::size_t k, std::size_t a, std::size_t b);
    /// Builds from disjoint cycles, e.g. {{0, 1, 2}} maps 0->1->2->0.
    static Permutation from_cycles(std::size_t k, const std::vector<std::vector<std::size_t>> &cycles);

    std::size_t size() const { return images_.size(); }
    std::size_t operator()(std::size_t i) const { return images_[i]; }
    const std::vector<std::uint8_t> &images() const { return images_; }
    bool is_identity() const;

    std::string to_string() const;

    auto operator<=>(const Permutation &) const = default;

   private:
    std::vector<std::uint8_t> images_;
};

/// Cycle lengths sorted descending; they sum to k.
using CycleType = std::vector<std::size_t>;

/// result(i) = sigma(tau(i)).
Permutation compose(const Permutation &sigma, const Permutation &tau);
Permutation inverse(const Permutation &sigma);
CycleType cycle_type(const Permutation &sigma);
std::size_t num_cycles(const Permutation &sigma);
std::size_t longest_cycle(const Permutation &sigma);

/// All k! permutations in lexicographic order of their image arrays; identity first.
std::vector<Permutation> enumerate_group(std::size_t k);

/// Position of sigma in enumerate_group(sigma.size()).
std::size_t lexicographic_rank(const Permutation &sigma);

std::uint64_t factorial(std::size_t n);

/// N(T, L): number of permutations of S_T whose longest cycle has length L.
std::map<std::size_t, std::uint64_t> longest_cycle_census(std::size_t t);

/// The counting bound T! / (T - L)! that the census is compared against.
std::uint64_t longest_cycle_census_bound(std::size_t t, std::size_t l);

}  // namespace otoc_lab

#endif
