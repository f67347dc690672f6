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

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace otoc_lab {

namespace {

void check_group_order(std::size_t k, const char *op) {
    if (k == 0) {
        throw std::invalid_argument(std::string(op) + ": group order must be positive");
    }
    if (k > kMaxGroupOrder) {
        throw std::invalid_argument(std::string(op) + ": k = " + std::to_string(k) + " exceeds the factorial guard k <= " +
                                    std::to_string(kMaxGroupOrder) + " (" + std::to_string(k) +
                                    "! elements would be enumerated)");
    }
}

}  // namespace

Permutation::Permutation(std::vector<std::uint8_t> images) : images_(std::move(images)) {
    if (images_.empty()) {
        throw std::invalid_argument("permutation must act on at least one point");
    }
    if (images_.size() > 255) {
        throw std::invalid_argument("permutation size exceeds 255");
    }
    std::vector<bool> seen(images_.size());
    for (std::uint8_t image : images_) {
        if (image >= images_.size() || seen[image]) {
            throw std::invalid_argument("images are not a bijection on {0..k-1}");
        }
        seen[image] = true;
    }
}

Permutation Permutation::identity(std::size_t k) {
    std::vector<std::uint8_t> images(k);
    std::iota(images.begin(), images.end(), std::uint8_t{0});
    return Permutation(std::move(images));
}

Permutation Permutation::transposition(std::size_t k, std::size_t a, std::size_t b) {
    Permutation result = identity(k);
    if (a >= k || b >= k || a == b) {
        throw std::invalid_argument("transposition needs two distinct points below k");
    }
    std::swap(result.images_[a], result.images_[b]);
    return result;
}

Permutation Permutation::from_cycles(std::size_t k, const std::vector<std::vector<std::size_t>> &cycles) {
    std::vector<std::uint8_t> images(k);
    std::iota(images.begin(), images.end(), std::uint8_t{0});
    for (const auto &cycle : cycles) {
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (cycle[i] >= k) {
                throw std::invalid_argument("cycle entry out of range");
            }
            images[cycle[i]] = static_cast<std::uint8_t>(cycle[(i + 1) % cycle.size()]);
        }
    }
    return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i] != i) {
            return false;
        }
    }
    return true;
}

std::string Permutation::to_string() const {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < images_.size(); ++i) {
        out << (i ? " " : "") << static_cast<int>(images_[i]);
    }
    out << "]";
    return out.str();
}

Permutation compose(const Permutation &sigma, const Permutation &tau) {
    if (sigma.size() != tau.size()) {
        throw std::invalid_argument("compose: sizes differ (" + std::to_string(sigma.size()) + " vs " +
                                    std::to_string(tau.size()) + ")");
    }
    std::vector<std::uint8_t> images(sigma.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
        images[i] = static_cast<std::uint8_t>(sigma(tau(i)));
    }
    return Permutation(std::move(images));
}

Permutation inverse(const Permutation &sigma) {
    std::vector<std::uint8_t> images(sigma.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
        images[sigma(i)] = static_cast<std::uint8_t>(i);
    }
    return Permutation(std::move(images));
}

CycleType cycle_type(const Permutation &sigma) {
    CycleType parts;
    std::vector<bool> seen(sigma.size());
    for (std::size_t start = 0; start < sigma.size(); ++start) {
        if (seen[start]) {
            continue;
        }
        std::size_t length = 0;
        for (std::size_t i = start; !seen[i]; i = sigma(i)) {
            seen[i] = true;
            ++length;
        }
        parts.push_back(length);
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return parts;
}

std::size_t num_cycles(const Permutation &sigma) { return cycle_type(sigma).size(); }

std::size_t longest_cycle(const Permutation &sigma) { return cycle_type(sigma).front(); }

std::vector<Permutation> enumerate_group(std::size_t k) {
    check_group_order(k, "enumerate_group");
    std::vector<std::uint8_t> images(k);
    std::iota(images.begin(), images.end(), std::uint8_t{0});
    std::vector<Permutation> group;
    group.reserve(factorial(k));
    do {
        group.emplace_back(images);
    } while (std::next_permutation(images.begin(), images.end()));
    return group;
}

std::size_t lexicographic_rank(const Permutation &sigma) {
    std::size_t k = sigma.size();
    std::size_t rank = 0;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t smaller = 0;
        for (std::size_t j = i + 1; j < k; ++j) {
            if (sigma(j) < sigma(i)) {
                ++smaller;
            }
        }
        rank += smaller * factorial(k - 1 - i);
    }
    return rank;
}

std::uint64_t factorial(std::size_t n) {
    if (n > 20) {
        throw std::overflow_error("factorial overflows 64 bits beyond 20");
    }
    std::uint64_t result = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        result *= i;
    }
    return result;
}

std::map<std::size_t, std::uint64_t> longest_cycle_census(std::size_t t) {
    check_group_order(t, "longest_cycle_census");
    std::map<std::size_t, std::uint64_t> census;
    for (const Permutation &sigma : enumerate_group(t)) {
        ++census[longest_cycle(sigma)];
    }
    return census;
}

std::uint64_t longest_cycle_census_bound(std::size_t t, std::size_t l) {
    if (l == 0 || l > t) {
        throw std::invalid_argument("longest_cycle_census_bound: need 1 <= L <= T");
    }
    return factorial(t) / factorial(t - l);
}

}  // namespace otoc_lab
