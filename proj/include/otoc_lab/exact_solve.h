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

#ifndef OTOC_LAB_EXACT_SOLVE_H
#define OTOC_LAB_EXACT_SOLVE_H

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace otoc_lab {

using BigInteger = mpz_class;
using BigRational = mpq_class;

/// Square or rectangular integer matrix, row-major.
struct IntegerMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<BigInteger> entries;

    IntegerMatrix() = default;
    IntegerMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

    BigInteger &operator()(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const BigInteger &operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

struct RationalMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<BigRational> entries;

    RationalMatrix() = default;
    RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

    BigRational &operator()(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const BigRational &operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

/// Solves a * x = rhs exactly with fraction-free (Bareiss) elimination.
///
/// `a` must be square and `rhs` must have a.rows rows; each column of rhs is an
/// independent right-hand side. Throws std::domain_error if `a` is singular.
RationalMatrix bareiss_solve(IntegerMatrix a, IntegerMatrix rhs);

/// Exact inverse of a nonsingular integer matrix.
RationalMatrix exact_inverse(const IntegerMatrix &a);

/// Determinant via the same elimination; zero for singular input.
BigInteger bareiss_determinant(IntegerMatrix a);

}  // namespace otoc_lab

#endif
