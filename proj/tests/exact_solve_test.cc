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

#include "otoc_lab/exact_solve.h"

#include <gtest/gtest.h>

#include "otoc_lab/permutation.h"
#include "otoc_lab/random.h"

namespace otoc_lab {
namespace {

IntegerMatrix from_rows(std::vector<std::vector<long>> rows) {
    IntegerMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

IntegerMatrix random_integer_matrix(std::size_t n, RandomSource &rng) {
    IntegerMatrix m(n, n);
    for (BigInteger &x : m.entries) {
        x = static_cast<long>(rng.next_u64() % 41) - 20;
    }
    return m;
}

// Leibniz expansion over S_n.
BigInteger leibniz_determinant(const IntegerMatrix &a) {
    BigInteger total = 0;
    for (const Permutation &sigma : enumerate_group(a.rows)) {
        BigInteger term = (a.rows - num_cycles(sigma)) % 2 == 0 ? 1 : -1;
        for (std::size_t i = 0; i < a.rows; ++i) {
            term *= a(i, sigma(i));
        }
        total += term;
    }
    return total;
}

TEST(ExactSolve, TwoByTwoInverseByHand) {
    // [[2, 1], [1, 1]]^{-1} = [[1, -1], [-1, 2]]; [[1, 2], [3, 4]]^{-1} = [[-2, 1], [3/2, -1/2]].
    RationalMatrix inv = exact_inverse(from_rows({{2, 1}, {1, 1}}));
    EXPECT_EQ(inv(0, 0), 1);
    EXPECT_EQ(inv(0, 1), -1);
    EXPECT_EQ(inv(1, 0), -1);
    EXPECT_EQ(inv(1, 1), 2);
    RationalMatrix inv2 = exact_inverse(from_rows({{1, 2}, {3, 4}}));
    EXPECT_EQ(inv2(0, 0), -2);
    EXPECT_EQ(inv2(0, 1), 1);
    EXPECT_EQ(inv2(1, 0), BigRational(3, 2));
    EXPECT_EQ(inv2(1, 1), BigRational(-1, 2));
}

TEST(ExactSolve, NeedsPivoting) {
    RationalMatrix inv = exact_inverse(from_rows({{0, 1}, {1, 0}}));
    EXPECT_EQ(inv(0, 1), 1);
    EXPECT_EQ(inv(1, 0), 1);
    EXPECT_EQ(inv(0, 0), 0);
}

TEST(ExactSolve, SingularThrows) {
    EXPECT_THROW(exact_inverse(from_rows({{1, 2}, {2, 4}})), std::domain_error);
    EXPECT_EQ(bareiss_determinant(from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})), 0);
    EXPECT_THROW(bareiss_solve(IntegerMatrix(), IntegerMatrix()), std::invalid_argument);
    EXPECT_THROW(bareiss_solve(IntegerMatrix(2, 3), IntegerMatrix(2, 1)), std::invalid_argument);
}

TEST(ExactSolve, DeterminantMatchesLeibniz) {
    RandomSource rng(17);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 3; ++trial) {
            IntegerMatrix a = random_integer_matrix(n, rng);
            EXPECT_EQ(bareiss_determinant(a), leibniz_determinant(a)) << "n = " << n;
        }
    }
}

TEST(ExactSolve, ResidualIsExactlyZero) {
    RandomSource rng(19);
    for (std::size_t n : {3u, 7u, 12u}) {
        IntegerMatrix a = random_integer_matrix(n, rng);
        IntegerMatrix rhs(n, 2);
        for (BigInteger &x : rhs.entries) {
            x = static_cast<long>(rng.next_u64() % 11) - 5;
        }
        RationalMatrix x = bareiss_solve(a, rhs);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                BigRational sum = 0;
                for (std::size_t k = 0; k < n; ++k) {
                    sum += a(r, k) * x(k, c);
                }
                ASSERT_EQ(sum, BigRational(rhs(r, c)));
            }
        }
    }
}

// The Hilbert-like matrix 1/(i+j+1) scaled to integers is badly conditioned
// in floating point but exact here.
TEST(ExactSolve, IllConditionedInverse) {
    const std::size_t n = 8;
    IntegerMatrix a(n, n);
    BigInteger scale = 1;
    for (std::size_t i = 1; i < 2 * n; ++i) {
        scale = lcm(scale, BigInteger(static_cast<unsigned long>(i)));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = scale / static_cast<unsigned long>(i + j + 1);
        }
    }
    RationalMatrix inv = exact_inverse(a);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            BigRational sum = 0;
            for (std::size_t k = 0; k < n; ++k) {
                sum += a(i, k) * inv(k, j);
            }
            ASSERT_EQ(sum, i == j ? 1 : 0);
        }
    }
}

}  // namespace
}  // namespace otoc_lab
