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

#include <stdexcept>
#include <string>
#include <utility>

namespace otoc_lab {

namespace {

void swap_rows(IntegerMatrix &m, std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < m.cols; ++c) {
        mpz_swap(m(a, c).get_mpz_t(), m(b, c).get_mpz_t());
    }
}

// Brings `a` to upper-triangular form in place, applying the same row
// operations to `rhs`. After step k every entry below the pivot row is the
// (k+2)-order leading minor of the row-permuted input, so each division by the
// previous pivot is exact. Returns false if `a` is singular.
bool eliminate(IntegerMatrix &a, IntegerMatrix &rhs, bool &negated) {
    std::size_t n = a.rows;
    BigInteger previous = 1;
    BigInteger scratch;
    negated = false;
    for (std::size_t k = 0; k < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t pivot = k + 1;
            while (pivot < n && a(pivot, k) == 0) {
                ++pivot;
            }
            if (pivot == n) {
                return false;
            }
            swap_rows(a, k, pivot);
            swap_rows(rhs, k, pivot);
            negated = !negated;
        }
        mpz_srcptr akk = a(k, k).get_mpz_t();
        for (std::size_t i = k + 1; i < n; ++i) {
            mpz_srcptr aik = a(i, k).get_mpz_t();
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_mul(scratch.get_mpz_t(), a(i, j).get_mpz_t(), akk);
                mpz_submul(scratch.get_mpz_t(), aik, a(k, j).get_mpz_t());
                mpz_divexact(a(i, j).get_mpz_t(), scratch.get_mpz_t(), previous.get_mpz_t());
            }
            for (std::size_t j = 0; j < rhs.cols; ++j) {
                mpz_mul(scratch.get_mpz_t(), rhs(i, j).get_mpz_t(), akk);
                mpz_submul(scratch.get_mpz_t(), aik, rhs(k, j).get_mpz_t());
                mpz_divexact(rhs(i, j).get_mpz_t(), scratch.get_mpz_t(), previous.get_mpz_t());
            }
            a(i, k) = 0;
        }
        previous = a(k, k);
    }
    return true;
}

}  // namespace

RationalMatrix bareiss_solve(IntegerMatrix a, IntegerMatrix rhs) {
    if (a.rows != a.cols) {
        throw std::invalid_argument("bareiss_solve: matrix must be square");
    }
    if (rhs.rows != a.rows) {
        throw std::invalid_argument("bareiss_solve: right-hand side has " + std::to_string(rhs.rows) +
                                    " rows, expected " + std::to_string(a.rows));
    }
    std::size_t n = a.rows;
    if (n == 0) {
        throw std::invalid_argument("bareiss_solve: empty matrix");
    }
    bool negated = false;
    if (!eliminate(a, rhs, negated)) {
        throw std::domain_error("bareiss_solve: matrix is singular");
    }
    // By Cramer's rule det * x is integral; recover it row by row from the
    // bottom with exact divisions by the diagonal.
    const BigInteger det = a(n - 1, n - 1);
    RationalMatrix solution(n, rhs.cols);
    std::vector<BigInteger> scaled(n);
    BigInteger acc;
    for (std::size_t col = 0; col < rhs.cols; ++col) {
        for (std::size_t ii = n; ii-- > 0;) {
            mpz_mul(acc.get_mpz_t(), det.get_mpz_t(), rhs(ii, col).get_mpz_t());
            for (std::size_t j = ii + 1; j < n; ++j) {
                mpz_submul(acc.get_mpz_t(), a(ii, j).get_mpz_t(), scaled[j].get_mpz_t());
            }
            mpz_divexact(scaled[ii].get_mpz_t(), acc.get_mpz_t(), a(ii, ii).get_mpz_t());
        }
        for (std::size_t i = 0; i < n; ++i) {
            BigRational value(scaled[i], det);
            value.canonicalize();
            solution(i, col) = std::move(value);
        }
    }
    return solution;
}

RationalMatrix exact_inverse(const IntegerMatrix &a) {
    IntegerMatrix identity(a.rows, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        identity(i, i) = 1;
    }
    return bareiss_solve(a, std::move(identity));
}

BigInteger bareiss_determinant(IntegerMatrix a) {
    if (a.rows != a.cols) {
        throw std::invalid_argument("bareiss_determinant: matrix must be square");
    }
    if (a.rows == 0) {
        return 1;
    }
    IntegerMatrix none(a.rows, 0);
    bool negated = false;
    if (!eliminate(a, none, negated)) {
        return 0;
    }
    BigInteger det = a(a.rows - 1, a.rows - 1);
    return negated ? BigInteger(-det) : det;
}

}  // namespace otoc_lab
