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

#include "otoc_lab/strategies.h"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "otoc_lab/otoc.h"
#include "otoc_lab/random.h"

namespace otoc_lab {

namespace {

constexpr std::size_t kMaxLabelDepth = 8;

std::size_t qubit_dimension(std::size_t n) {
    if (n == 0 || n > 12) {
        throw std::invalid_argument("strategy qubit count must be in [1, 12], got " + std::to_string(n));
    }
    return std::size_t{1} << n;
}

Strategy::Chooser constant_chooser(QueryKind query, std::shared_ptr<const Povm> povm) {
    return [query, povm](std::span<const std::uint32_t>) { return Round{query, povm}; };
}

// Writes the first-occurrence pattern of `digits` as base-`radix` digits of `code`.
void append_pattern(const std::vector<std::uint32_t> &digits, std::uint64_t radix, std::uint64_t &code) {
    std::map<std::uint32_t, std::uint64_t> seen{{digits[0], 0}};
    for (std::size_t i = 1; i < digits.size(); ++i) {
        auto [it, inserted] = seen.emplace(digits[i], seen.size());
        code = code * radix + it->second;
    }
}

std::uint64_t prefix_hash(std::span<const std::uint32_t> prefix) {
    std::uint64_t h = splitmix64(prefix.size());
    for (std::uint32_t outcome : prefix) {
        h = splitmix64(h ^ (outcome + 0x9e3779b97f4a7c15ULL));
    }
    return h;
}

}  // namespace

std::uint64_t block_pattern_label(std::span<const std::uint32_t> transcript, std::size_t n) {
    if (transcript.size() > kMaxLabelDepth) {
        throw std::invalid_argument("block_pattern_label supports depth <= 8");
    }
    std::size_t half = n / 2;
    std::uint32_t low_mask = (std::uint32_t{1} << half) - 1;
    std::vector<std::uint32_t> high{0};
    std::vector<std::uint32_t> low{0};
    for (std::uint32_t outcome : transcript) {
        high.push_back(outcome >> half);
        low.push_back(outcome & low_mask);
    }
    std::uint64_t radix = transcript.size() + 1;
    std::uint64_t code = 0;
    append_pattern(high, radix, code);
    append_pattern(low, radix, code);
    return code;
}

Strategy identity_strategy(std::size_t dim, std::size_t depth) {
    auto povm = std::make_shared<const Povm>(Povm::unitary(ComplexMatrix::identity(dim)));
    return Strategy("identity", "measure {I} every round", dim, depth, true,
                    constant_chooser(QueryKind::Forward, povm));
}

Strategy computational_basis_strategy(std::size_t n, std::size_t depth) {
    std::size_t dim = qubit_dimension(n);
    auto povm = std::make_shared<const Povm>(Povm::computational_basis(dim));
    Strategy::Labeler labeler;
    if (n % 2 == 0 && depth <= kMaxLabelDepth) {
        labeler = [n](std::span<const std::uint32_t> t) { return block_pattern_label(t, n); };
    }
    return Strategy("comp-basis", "forward query, computational-basis measurement every round", dim, depth, true,
                    constant_chooser(QueryKind::Forward, povm), std::move(labeler));
}

Strategy random_basis_strategy(std::size_t n, std::size_t depth, std::uint64_t seed) {
    std::size_t dim = qubit_dimension(n);
    RandomSource rng(seed, 0x6261736973ULL);
    auto povm = std::make_shared<const Povm>(Povm::orthonormal_basis(sample_haar_unitary(dim, rng).matrix()));
    return Strategy("random-basis", "forward query, fixed Haar-random basis measurement every round", dim, depth,
                    true, constant_chooser(QueryKind::Forward, povm));
}

Strategy identity_then_measure_strategy(std::size_t n, std::size_t depth) {
    std::size_t dim = qubit_dimension(n);
    auto identity = std::make_shared<const Povm>(Povm::unitary(ComplexMatrix::identity(dim)));
    auto basis = std::make_shared<const Povm>(Povm::computational_basis(dim));
    Strategy::Chooser chooser = [identity, basis, depth](std::span<const std::uint32_t> prefix) {
        return Round{QueryKind::Forward, prefix.size() + 1 == depth ? basis : identity};
    };
    Strategy::Labeler labeler;
    if (n % 2 == 0 && depth <= kMaxLabelDepth) {
        // Identity rounds always report 0, so only the final outcome carries information.
        labeler = [n](std::span<const std::uint32_t> t) { return block_pattern_label(t.last(1), n); };
    }
    return Strategy("identity-then-measure", "depth-1 forward queries without measurement, then a computational-basis measurement",
                    dim, depth, true, std::move(chooser), std::move(labeler));
}

Strategy oto_distinguisher_strategy(std::size_t n) {
    OtocInstance instance(n);
    std::size_t dim = instance.dimension();
    std::size_t block = instance.block_dimension();
    ComplexMatrix flip(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        flip(i ^ (dim / 2), i) = 1.0;
    }
    auto conjugation = std::make_shared<const Povm>(Povm::unitary(flip));
    std::vector<ComplexMatrix> projectors;
    for (std::size_t b = 0; b < block; ++b) {
        ComplexMatrix p(dim, dim);
        for (std::size_t a = 0; a < block; ++a) {
            p(a * block + b, a * block + b) = 1.0;
        }
        projectors.push_back(std::move(p));
    }
    auto second_block = std::make_shared<const Povm>(Povm::dense(std::move(projectors)));
    Strategy::Chooser chooser = [conjugation, second_block](std::span<const std::uint32_t> prefix) {
        return prefix.empty() ? Round{QueryKind::Forward, conjugation} : Round{QueryKind::Inverse, second_block};
    };
    return Strategy("oto-theorem1",
                    "forward query, X on qubit 1, inverse query, second-block measurement; accepts product on 0",
                    dim, 2, false, std::move(chooser));
}

Strategy random_rank_one_strategy(std::size_t dim, std::size_t depth, std::uint64_t seed, bool time_ordered) {
    struct Cache {
        std::mutex mutex;
        std::map<Transcript, Round> rounds;
    };
    auto cache = std::make_shared<Cache>();
    Strategy::Chooser chooser = [cache, dim, seed, time_ordered](std::span<const std::uint32_t> prefix) {
        Transcript key(prefix.begin(), prefix.end());
        {
            std::lock_guard lock(cache->mutex);
            auto it = cache->rounds.find(key);
            if (it != cache->rounds.end()) {
                return it->second;
            }
        }
        RandomSource rng(seed, prefix_hash(prefix));
        QueryKind query = time_ordered || rng.bernoulli(0.5) ? QueryKind::Forward : QueryKind::Inverse;
        auto povm = std::make_shared<const Povm>(Povm::orthonormal_basis(sample_haar_unitary(dim, rng).matrix()));
        Round round{query, std::move(povm)};
        std::lock_guard lock(cache->mutex);
        return cache->rounds.emplace(std::move(key), round).first->second;
    };
    return Strategy(time_ordered ? "random-adaptive" : "random-adaptive-oto",
                    "Haar-random rank-one basis chosen per transcript prefix", dim, depth, time_ordered,
                    std::move(chooser));
}

std::vector<StrategyInfo> list_strategies() {
    return {
        {"comp-basis", "forward query, computational-basis measurement every round", true, std::nullopt},
        {"random-basis", "forward query, fixed Haar-random basis (from the seed) every round", true, std::nullopt},
        {"identity-then-measure", "depth-1 unmeasured forward queries, then a computational-basis measurement",
         true, std::nullopt},
        {"oto-theorem1", "forward query, X on qubit 1, inverse query, second-block measurement", false, 2},
        {"random-adaptive", "Haar-random basis per transcript prefix, forward queries only", true, std::nullopt},
        {"random-adaptive-oto", "Haar-random basis and query direction per transcript prefix", false,
         std::nullopt},
    };
}

Strategy make_strategy(const std::string &name, std::size_t n, std::size_t depth, std::uint64_t seed) {
    if (name == "oto-theorem1") {
        if (depth != 0 && depth != 2) {
            throw std::invalid_argument("strategy 'oto-theorem1' has fixed depth 2, got " + std::to_string(depth));
        }
        return oto_distinguisher_strategy(n);
    }
    if (depth == 0) {
        throw std::invalid_argument("strategy '" + name + "' needs a positive depth");
    }
    if (name == "comp-basis") {
        return computational_basis_strategy(n, depth);
    }
    if (name == "random-basis") {
        return random_basis_strategy(n, depth, seed);
    }
    if (name == "identity-then-measure") {
        return identity_then_measure_strategy(n, depth);
    }
    if (name == "random-adaptive") {
        return random_rank_one_strategy(qubit_dimension(n), depth, seed, true);
    }
    if (name == "random-adaptive-oto") {
        return random_rank_one_strategy(qubit_dimension(n), depth, seed, false);
    }
    std::string known;
    for (const StrategyInfo &info : list_strategies()) {
        known += (known.empty() ? "" : ", ") + info.name;
    }
    throw std::invalid_argument("unknown strategy '" + name + "'; known: " + known);
}

}  // namespace otoc_lab
