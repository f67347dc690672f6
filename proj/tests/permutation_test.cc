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

#include "otoc_lab/permutation.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace otoc_lab {
namespace {

// Minimum number of transpositions whose product is sigma, by breadth-first
// search over S_k from the identity.
std::map<std::vector<std::uint8_t>, std::size_t> transposition_distances(std::size_t k) {
    std::map<std::vector<std::uint8_t>, std::size_t> dist;
    std::vector<std::uint8_t> start(k);
    std::iota(start.begin(), start.end(), 0);
    dist[start] = 0;
    std::queue<std::vector<std::uint8_t>> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
        auto current = frontier.front();
        frontier.pop();
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                auto next = current;
                std::swap(next[a], next[b]);
                if (dist.emplace(next, dist[current] + 1).second) {
                    frontier.push(next);
                }
            }
        }
    }
    return dist;
}

TEST(Permutation, RejectsNonBijections) {
    EXPECT_THROW(Permutation({0, 0}), std::invalid_argument);
    EXPECT_THROW(Permutation({0, 2}), std::invalid_argument);
    EXPECT_NO_THROW(Permutation({1, 0}));
}

TEST(Permutation, FromCyclesAndTransposition) {
    Permutation c = Permutation::from_cycles(4, {{0, 1, 2}});
    EXPECT_EQ(c(0), 1u);
    EXPECT_EQ(c(1), 2u);
    EXPECT_EQ(c(2), 0u);
    EXPECT_EQ(c(3), 3u);
    Permutation t = Permutation::transposition(3, 0, 2);
    EXPECT_EQ(t.images(), (std::vector<std::uint8_t>{2, 1, 0}));
    EXPECT_THROW(Permutation::from_cycles(3, {{0, 1}, {1, 2}}), std::invalid_argument);
}

TEST(Permutation, ComposeAppliesRightFactorFirst) {
    Permutation sigma = Permutation::transposition(3, 0, 1);
    Permutation tau = Permutation::transposition(3, 1, 2);
    Permutation st = compose(sigma, tau);
    // st(1) = sigma(tau(1)) = sigma(2) = 2; st(2) = sigma(1) = 0.
    EXPECT_EQ(st(1), 2u);
    EXPECT_EQ(st(2), 0u);
    EXPECT_EQ(st(0), 1u);
    EXPECT_THROW(compose(sigma, Permutation::identity(2)), std::invalid_argument);
}

TEST(Permutation, GroupAxiomsOnS4) {
    std::vector<Permutation> group = enumerate_group(4);
    Permutation e = Permutation::identity(4);
    for (const Permutation &a : group) {
        EXPECT_EQ(compose(a, inverse(a)), e);
        EXPECT_EQ(compose(inverse(a), a), e);
        for (const Permutation &b : group) {
            for (const Permutation &c : {group[5], group[17]}) {
                EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
            }
        }
    }
}

TEST(Permutation, EnumerationIsLexicographicAndRanked) {
    for (std::size_t k = 1; k <= 6; ++k) {
        std::vector<Permutation> group = enumerate_group(k);
        ASSERT_EQ(group.size(), factorial(k));
        EXPECT_TRUE(group.front().is_identity());
        EXPECT_TRUE(std::is_sorted(group.begin(), group.end(),
                                   [](const Permutation &a, const Permutation &b) { return a.images() < b.images(); }));
        for (std::size_t r = 0; r < group.size(); ++r) {
            ASSERT_EQ(lexicographic_rank(group[r]), r);
        }
    }
    EXPECT_THROW(enumerate_group(9), std::invalid_argument);
}

TEST(Permutation, CycleCountMatchesTranspositionDistance) {
    for (std::size_t k = 2; k <= 5; ++k) {
        auto dist = transposition_distances(k);
        for (const Permutation &sigma : enumerate_group(k)) {
            ASSERT_EQ(num_cycles(sigma), k - dist.at(sigma.images())) << sigma.to_string();
        }
    }
}

TEST(Permutation, CycleTypeIsConjugationInvariantPartition) {
    std::vector<Permutation> group = enumerate_group(5);
    for (const Permutation &sigma : group) {
        CycleType type = cycle_type(sigma);
        EXPECT_EQ(std::accumulate(type.begin(), type.end(), std::size_t{0}), 5u);
        EXPECT_TRUE(std::is_sorted(type.rbegin(), type.rend()));
        EXPECT_EQ(type.size(), num_cycles(sigma));
        EXPECT_EQ(type.front(), longest_cycle(sigma));
        for (const Permutation &pi : {group[7], group[61], group[119]}) {
            EXPECT_EQ(cycle_type(compose(compose(pi, sigma), inverse(pi))), type);
        }
    }
    EXPECT_EQ(cycle_type(Permutation::from_cycles(6, {{0, 3}, {1, 4, 5}})), (CycleType{3, 2, 1}));
}

// Class sizes of S_5 by cycle type: the number of partitions of 5 is 7.
TEST(Permutation, ConjugacyClassSizesOfS5) {
    std::map<CycleType, std::size_t> sizes;
    for (const Permutation &sigma : enumerate_group(5)) {
        ++sizes[cycle_type(sigma)];
    }
    std::map<CycleType, std::size_t> expected = {{{1, 1, 1, 1, 1}, 1}, {{2, 1, 1, 1}, 10}, {{2, 2, 1}, 15},
                                                 {{3, 1, 1}, 20},       {{3, 2}, 20},        {{4, 1}, 30},
                                                 {{5}, 24}};
    EXPECT_EQ(sizes, expected);
}

TEST(LongestCycleCensus, MatchesDirectCount) {
    for (std::size_t t = 1; t <= 7; ++t) {
        std::map<std::size_t, std::uint64_t> direct;
        std::vector<std::uint8_t> images(t);
        std::iota(images.begin(), images.end(), 0);
        do {
            std::vector<bool> seen(t, false);
            std::size_t longest = 0;
            for (std::size_t s = 0; s < t; ++s) {
                std::size_t length = 0;
                for (std::size_t i = s; !seen[i]; i = images[i]) {
                    seen[i] = true;
                    ++length;
                }
                longest = std::max(longest, length);
            }
            ++direct[longest];
        } while (std::next_permutation(images.begin(), images.end()));
        EXPECT_EQ(longest_cycle_census(t), direct) << "T = " << t;
    }
}

TEST(LongestCycleCensus, KnownSmallCases) {
    using Census = std::map<std::size_t, std::uint64_t>;
    EXPECT_EQ(longest_cycle_census(3), (Census{{1, 1}, {2, 3}, {3, 2}}));
    EXPECT_EQ(longest_cycle_census(4), (Census{{1, 1}, {2, 9}, {3, 8}, {4, 6}}));
    EXPECT_EQ(longest_cycle_census(5), (Census{{1, 1}, {2, 25}, {3, 40}, {4, 30}, {5, 24}}));
}

TEST(LongestCycleCensus, BoundValues) {
    EXPECT_EQ(longest_cycle_census_bound(5, 2), 20u);
    EXPECT_EQ(longest_cycle_census_bound(7, 7), 5040u);
    EXPECT_EQ(longest_cycle_census_bound(4, 1), 4u);
}

}  // namespace
}  // namespace otoc_lab
