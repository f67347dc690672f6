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

#include "otoc_lab/random.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <set>

#include "otoc_lab/parallel.h"

namespace otoc_lab {
namespace {

TEST(RandomSource, SameSeedSameStream) {
    RandomSource a(42);
    RandomSource b(42);
    for (int i = 0; i < 100; ++i) {
        ASSERT_EQ(a.next_u64(), b.next_u64());
    }
}

TEST(RandomSource, StreamsAndChildrenDiffer) {
    RandomSource root(42);
    std::set<std::uint64_t> firsts;
    firsts.insert(RandomSource(42, 1).next_u64());
    firsts.insert(RandomSource(43).next_u64());
    for (std::uint64_t i = 0; i < 50; ++i) {
        firsts.insert(root.child(i).next_u64());
    }
    firsts.insert(RandomSource(42).next_u64());
    EXPECT_EQ(firsts.size(), 53u);
}

TEST(RandomSource, ChildDoesNotDependOnParentPosition) {
    RandomSource a(9);
    RandomSource b(9);
    b.next_u64();
    b.normal();
    EXPECT_EQ(a.child(3).next_u64(), b.child(3).next_u64());
}

TEST(RandomSource, UniformMoments) {
    RandomSource rng(1);
    const int n = 200000;
    double sum = 0;
    double sum_sq = 0;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sum_sq += u * u;
    }
    // Mean 1/2 with sd sqrt(1/12 / n); second moment 1/3 with sd sqrt(4/45 / n).
    EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(sum_sq / n, 1.0 / 3, 4 * std::sqrt(4.0 / 45 / n));
}

TEST(RandomSource, NormalMoments) {
    RandomSource rng(2);
    const int n = 200000;
    double sum = 0;
    double sum_sq = 0;
    double sum_4 = 0;
    for (int i = 0; i < n; ++i) {
        double x = rng.normal();
        sum += x;
        sum_sq += x * x;
        sum_4 += x * x * x * x;
    }
    EXPECT_NEAR(sum / n, 0.0, 4 / std::sqrt(n));
    EXPECT_NEAR(sum_sq / n, 1.0, 4 * std::sqrt(2.0 / n));
    EXPECT_NEAR(sum_4 / n, 3.0, 4 * std::sqrt(96.0 / n));
}

TEST(RandomSource, ComplexNormalHasUnitVariance) {
    RandomSource rng(3);
    const int n = 100000;
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        sum += std::norm(rng.complex_normal());
    }
    // |z|^2 is exponential with mean 1 and sd 1.
    EXPECT_NEAR(sum / n, 1.0, 4 / std::sqrt(n));
}

TEST(HaarSampling, ProducesUnitaries) {
    RandomSource rng(4);
    for (std::size_t dim : {1u, 2u, 3u, 8u, 64u}) {
        UnitaryMatrix u = sample_haar_unitary(dim, rng);
        EXPECT_LT(unitarity_defect(u.matrix()), 1e-12) << "dim " << dim;
    }
    EXPECT_THROW(sample_haar_unitary(0, rng), std::invalid_argument);
}

TEST(HaarSampling, Deterministic) {
    RandomSource a(5);
    RandomSource b(5);
    EXPECT_EQ(sample_haar_unitary(6, a).matrix(), sample_haar_unitary(6, b).matrix());
}

// Entry moments of Haar(d): E|U_00|^2 = 1/d, E|U_00|^4 = 2/(d(d+1)), and the
// phase of U_00 is uniform, so E[U_00] = 0. QR without the phase fix fails
// the last check: its diagonal is real positive.
TEST(HaarSampling, EntryMoments) {
    const std::size_t dim = 4;
    const int n = 40000;
    RandomSource rng(6);
    double second = 0;
    double fourth = 0;
    Complex first = 0;
    for (int i = 0; i < n; ++i) {
        UnitaryMatrix u = sample_haar_unitary(dim, rng);
        Complex z = u.matrix()(0, 0);
        first += z;
        second += std::norm(z);
        fourth += std::norm(z) * std::norm(z);
    }
    double d = dim;
    // |U_00|^2 ~ Beta(1, d-1): variance (d-1)/(d^2(d+1)).
    EXPECT_NEAR(second / n, 1 / d, 4 * std::sqrt((d - 1) / (d * d * (d + 1)) / n));
    // E|U_00|^8 = 24/(d(d+1)(d+2)(d+3)).
    double m4 = 2 / (d * (d + 1));
    double m8 = 24 / (d * (d + 1) * (d + 2) * (d + 3));
    EXPECT_NEAR(fourth / n, m4, 4 * std::sqrt((m8 - m4 * m4) / n));
    EXPECT_NEAR(first.real() / n, 0.0, 4 * std::sqrt(0.5 / d / n));
    EXPECT_NEAR(first.imag() / n, 0.0, 4 * std::sqrt(0.5 / d / n));
}

TEST(Parallel, RunsEveryIndexOnceAndRethrows) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) {
        ASSERT_EQ(h, 1);
    }
    EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                     if (i == 7) {
                         throw std::runtime_error("boom");
                     }
                 }),
                 std::runtime_error);
}

TEST(Parallel, ThreadCapFromEnvironment) {
    setenv("OTOC_LAB_THREADS", "1", 1);
    EXPECT_EQ(worker_count(), 1u);
    unsetenv("OTOC_LAB_THREADS");
    EXPECT_GE(worker_count(), 1u);
}

}  // namespace
}  // namespace otoc_lab
