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

#include "otoc_lab/matrix.h"

#include <gtest/gtest.h>

#include <cmath>

#include "otoc_lab/random.h"

namespace otoc_lab {
namespace {

using namespace std::complex_literals;

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, RandomSource &rng) {
    ComplexMatrix m(rows, cols);
    for (Complex &z : m.entries()) {
        z = rng.complex_normal();
    }
    return m;
}

// Reference product straight from the definition.
ComplexMatrix naive_multiply(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex sum = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                sum += a(i, k) * b(k, j);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

TEST(ComplexMatrix, RejectsNonFiniteEntries) {
    EXPECT_THROW(ComplexMatrix(1, 1, {Complex(NAN, 0)}), std::invalid_argument);
    EXPECT_THROW(ComplexMatrix(1, 1, {Complex(0, INFINITY)}), std::invalid_argument);
    EXPECT_THROW(ComplexMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
}

TEST(ComplexMatrix, MultiplyMatchesDefinition) {
    RandomSource rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        ComplexMatrix a = random_matrix(3, 5, rng);
        ComplexMatrix b = random_matrix(5, 4, rng);
        EXPECT_LT(max_abs_difference(multiply(a, b), naive_multiply(a, b)), 1e-12);
    }
}

TEST(ComplexMatrix, MultiplyShapeMismatchNamesBothShapes) {
    try {
        multiply(ComplexMatrix(2, 3), ComplexMatrix(2, 3));
        FAIL() << "expected a throw";
    } catch (const std::invalid_argument &e) {
        std::string what = e.what();
        EXPECT_NE(what.find("2x3"), std::string::npos) << what;
    }
}

TEST(ComplexMatrix, PauliAlgebra) {
    ComplexMatrix x = pauli_x();
    ComplexMatrix y = pauli_y();
    ComplexMatrix z = pauli_z();
    EXPECT_EQ(multiply(x, x), ComplexMatrix::identity(2));
    // XY = iZ.
    EXPECT_LT(max_abs_difference(multiply(x, y), 1i * z), 1e-15);
    EXPECT_EQ(adjoint(y), y);
}

TEST(ComplexMatrix, TensorProductIndexing) {
    ComplexMatrix a = ComplexMatrix::from_rows({{1, 2}, {3, 4}});
    ComplexMatrix b = ComplexMatrix::from_rows({{0, 5}, {6, 7}});
    ComplexMatrix ab = tensor_product(a, b);
    ASSERT_EQ(ab.rows(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            EXPECT_EQ(ab(i, j), a(i / 2, j / 2) * b(i % 2, j % 2));
        }
    }
}

TEST(ComplexMatrix, TensorProductIsMultiplicative) {
    RandomSource rng(3);
    ComplexMatrix a = random_matrix(2, 2, rng);
    ComplexMatrix b = random_matrix(3, 3, rng);
    ComplexMatrix c = random_matrix(2, 2, rng);
    ComplexMatrix d = random_matrix(3, 3, rng);
    ComplexMatrix lhs = multiply(tensor_product(a, b), tensor_product(c, d));
    ComplexMatrix rhs = tensor_product(multiply(a, c), multiply(b, d));
    EXPECT_LT(max_abs_difference(lhs, rhs), 1e-12);
}

TEST(ComplexMatrix, ApplyAndAdjointAgreeWithMultiply) {
    RandomSource rng(5);
    ComplexMatrix m = random_matrix(4, 4, rng);
    ComplexMatrix v = random_matrix(4, 1, rng);
    ComplexVector direct = otoc_lab::apply(m, v.entries());
    ComplexVector via_adjoint = apply_adjoint(m, v.entries());
    ComplexMatrix expected = multiply(m, v);
    ComplexMatrix expected_adjoint = multiply(adjoint(m), v);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_LT(std::abs(direct[i] - expected(i, 0)), 1e-12);
        EXPECT_LT(std::abs(via_adjoint[i] - expected_adjoint(i, 0)), 1e-12);
    }
}

TEST(ComplexMatrix, ConjugateByMatchesTripleProduct) {
    RandomSource rng(6);
    ComplexMatrix m = random_matrix(3, 3, rng);
    ComplexMatrix rho = random_matrix(3, 3, rng);
    EXPECT_LT(max_abs_difference(conjugate_by(m, rho), multiply(multiply(m, rho), adjoint(m))), 1e-12);
}

TEST(ComplexMatrix, InnerProductConjugatesBra) {
    ComplexVector a{1i, 2};
    ComplexVector b{1, 1i};
    // conj(i) * 1 + 2 * i = -i + 2i = i.
    EXPECT_LT(std::abs(inner_product(a, b) - 1i), 1e-15);
    EXPECT_DOUBLE_EQ(norm_squared(a), 5.0);
}

TEST(UnitaryMatrix, RejectsNonUnitary) {
    EXPECT_NO_THROW(UnitaryMatrix{pauli_x()});
    EXPECT_THROW(UnitaryMatrix(ComplexMatrix::from_rows({{1, 1}, {0, 1}})), std::invalid_argument);
    EXPECT_THROW(UnitaryMatrix(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST(UnitaryMatrix, TensorProductStaysUnitary) {
    RandomSource rng(8);
    UnitaryMatrix u = tensor_product(sample_haar_unitary(4, rng), sample_haar_unitary(2, rng));
    EXPECT_EQ(u.dimension(), 8u);
    EXPECT_LT(unitarity_defect(u.matrix()), 1e-12);
}

TEST(QuantumState, PureStateMustBeNormalized) {
    EXPECT_NO_THROW(QuantumState::pure({1, 0}));
    EXPECT_THROW(QuantumState::pure({1, 1}), std::invalid_argument);
    EXPECT_THROW(QuantumState::pure({}), std::invalid_argument);
}

TEST(QuantumState, DensityChecks) {
    EXPECT_NO_THROW(QuantumState::density(ComplexMatrix::from_rows({{0.5, 0}, {0, 0.5}})));
    // Trace 2.
    EXPECT_THROW(QuantumState::density(ComplexMatrix::identity(2)), std::invalid_argument);
    // Not Hermitian.
    EXPECT_THROW(QuantumState::density(ComplexMatrix::from_rows({{0.5, 0.1}, {0.3, 0.5}})), std::invalid_argument);
    // Hermitian, trace one, eigenvalues 1.5 and -0.5.
    EXPECT_THROW(QuantumState::density(ComplexMatrix::from_rows({{0.5, 1}, {1, 0.5}})), std::invalid_argument);
}

TEST(QuantumState, BasisStateDensityMatrix) {
    QuantumState s = QuantumState::basis(4, 2);
    EXPECT_TRUE(s.is_pure());
    ComplexMatrix rho = s.density_matrix();
    EXPECT_EQ(rho(2, 2), Complex(1));
    EXPECT_EQ(rho.trace(), Complex(1));
    EXPECT_THROW(QuantumState::basis(4, 4), std::invalid_argument);
}

}  // namespace
}  // namespace otoc_lab
