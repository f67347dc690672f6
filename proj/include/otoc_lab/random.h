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

#ifndef OTOC_LAB_RANDOM_H
#define OTOC_LAB_RANDOM_H

#include <cstdint>
#include <optional>

#include "otoc_lab/matrix.h"

namespace otoc_lab {

/// Counter-based pseudo-random stream keyed by (seed, stream).
///
/// Draw i of a stream is splitmix64(key + (i + 1) * golden), where the key is
/// derived from the seed and the stream index. Identical (seed, stream) pairs
/// produce identical sequences on every platform. Gaussians use the
/// Box-Muller transform; the second variate of each pair is cached.
class RandomSource {
   public:
    explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    std::uint64_t counter() const { return counter_; }

    std::uint64_t next_u64();
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal N(0, 1).
    double normal();
    /// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
    Complex complex_normal();
    bool bernoulli(double p) { return uniform() < p; }

    /// Independent stream for worker or sample `index`. Does not advance this
    /// stream, so children are stable regardless of how many draws were made.
    RandomSource child(std::uint64_t index) const;

   private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::optional<double> spare_normal_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Haar-random unitary: Ginibre matrix, QR, then Q * diag(r_jj / |r_jj|).
UnitaryMatrix sample_haar_unitary(std::size_t dim, RandomSource &rng);

}  // namespace otoc_lab

#endif
