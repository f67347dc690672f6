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

#ifndef OTOC_LAB_MATRIX_H
#define OTOC_LAB_MATRIX_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace otoc_lab {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense complex matrix stored in row-major order.
///
/// Entries are always finite; constructors reject NaN and Inf.
class ComplexMatrix {
   public:
    /// Zero matrix. Both dimensions must be positive.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    /// Outer product |ket><bra|.
    static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex &operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<Complex> entries() { return entries_; }
    std::span<const Complex> entries() const { return entries_; }
    std::span<const Complex> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
    ComplexVector column(std::size_t c) const;

    Complex trace() const;
    std::string shape_string() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);

/// Matrix product. Throws std::invalid_argument naming both shapes on mismatch.
ComplexMatrix multiply(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix adjoint(const ComplexMatrix &a);
/// Kronecker product; row index of the result is (row_a * b.rows() + row_b).
ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b);

/// m * v.
ComplexVector apply(const ComplexMatrix &m, std::span<const Complex> v);
/// adjoint(m) * v without materializing the adjoint.
ComplexVector apply_adjoint(const ComplexMatrix &m, std::span<const Complex> v);
/// m * rho * adjoint(m).
ComplexMatrix conjugate_by(const ComplexMatrix &m, const ComplexMatrix &rho);

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket);
double norm_squared(std::span<const Complex> v);

double max_abs_entry(const ComplexMatrix &a);
double max_abs_difference(const ComplexMatrix &a, const ComplexMatrix &b);

/// ||U U^dagger - I||_max. Throws on non-square input.
double unitarity_defect(const ComplexMatrix &u);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexVector basis_vector(std::size_t dim, std::size_t index);

/// A square matrix verified unitary (defect <= 1e-10) at construction.
class UnitaryMatrix {
   public:
    static constexpr double kTolerance = 1e-10;

    explicit UnitaryMatrix(ComplexMatrix matrix);
    static UnitaryMatrix identity(std::size_t dim);

    const ComplexMatrix &matrix() const { return matrix_; }
    std::size_t dimension() const { return matrix_.rows(); }

   private:
    ComplexMatrix matrix_;
};

UnitaryMatrix tensor_product(const UnitaryMatrix &a, const UnitaryMatrix &b);

/// Pure state vector or density operator on a finite-dimensional space.
class QuantumState {
   public:
    enum class Kind { Pure, Density };
    static constexpr double kTolerance = 1e-10;

    static QuantumState pure(ComplexVector amplitudes);
    static QuantumState density(ComplexMatrix rho);
    /// |index><index| as a pure state.
    static QuantumState basis(std::size_t dim, std::size_t index);

    Kind kind() const { return kind_; }
    bool is_pure() const { return kind_ == Kind::Pure; }
    std::size_t dimension() const { return dimension_; }

    /// Amplitudes; only valid for pure states.
    const ComplexVector &amplitudes() const;
    /// Density operator; materialized from the amplitudes for pure states.
    ComplexMatrix density_matrix() const;

   private:
    QuantumState(Kind kind, std::size_t dimension, ComplexVector amplitudes, std::optional<ComplexMatrix> rho);

    Kind kind_;
    std::size_t dimension_;
    ComplexVector amplitudes_;
    std::optional<ComplexMatrix> rho_;
};

}  // namespace otoc_lab

#endif
