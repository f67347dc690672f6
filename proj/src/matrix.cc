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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace otoc_lab {

namespace {

void require_finite(std::span<const Complex> entries) {
    for (const Complex &z : entries) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("matrix entries must be finite");
        }
    }
}

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch " + a.shape_string() + " vs " +
                                    b.shape_string());
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("matrix dimensions must be positive");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("matrix dimensions must be positive");
    }
    if (entries_.size() != rows * cols) {
        throw std::invalid_argument("matrix entry count " + std::to_string(entries_.size()) +
                                    " does not match shape " + shape_string());
    }
    require_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix result(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        result(i, i) = 1.0;
    }
    return result;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    std::vector<Complex> entries;
    for (const auto &row : rows) {
        if (row.size() != cols) {
            throw std::invalid_argument("ragged row list");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(rows.size(), cols, std::move(entries));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
    ComplexMatrix result(ket.size(), bra.size());
    for (std::size_t r = 0; r < ket.size(); ++r) {
        for (std::size_t c = 0; c < bra.size(); ++c) {
            result(r, c) = ket[r] * std::conj(bra[c]);
        }
    }
    return result;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
    ComplexVector result(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        result[r] = (*this)(r, c);
    }
    return result;
}

Complex ComplexMatrix::trace() const {
    Complex total = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
        total += (*this)(i, i);
    }
    return total;
}

std::string ComplexMatrix::shape_string() const {
    std::ostringstream out;
    out << rows_ << "x" << cols_;
    return out.str();
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "add");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "subtract");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] -= other.entries_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (Complex &z : entries_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
ComplexMatrix operator*(Complex scale, ComplexMatrix a) { return a *= scale; }

ComplexMatrix multiply(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("multiply: inner dimensions differ for " + a.shape_string() + " * " +
                                    b.shape_string());
    }
    ComplexMatrix result(a.rows(), b.cols());
    // i-k-j order keeps the inner loop contiguous in both b and result.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex *out = &result(i, 0);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            const Complex *brow = &b(k, 0);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out[j] += aik * brow[j];
            }
        }
    }
    return result;
}

ComplexMatrix adjoint(const ComplexMatrix &a) {
    ComplexMatrix result(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            result(c, r) = std::conj(a(r, c));
        }
    }
    return result;
}

ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix result(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ra = 0; ra < a.rows(); ++ra) {
        for (std::size_t ca = 0; ca < a.cols(); ++ca) {
            Complex s = a(ra, ca);
            for (std::size_t rb = 0; rb < b.rows(); ++rb) {
                for (std::size_t cb = 0; cb < b.cols(); ++cb) {
                    result(ra * b.rows() + rb, ca * b.cols() + cb) = s * b(rb, cb);
                }
            }
        }
    }
    return result;
}

ComplexVector apply(const ComplexMatrix &m, std::span<const Complex> v) {
    if (m.cols() != v.size()) {
        throw std::invalid_argument("apply: matrix " + m.shape_string() + " vs vector of length " +
                                    std::to_string(v.size()));
    }
    ComplexVector result(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const Complex *row = &m(r, 0);
        Complex total = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            total += row[c] * v[c];
        }
        result[r] = total;
    }
    return result;
}

ComplexVector apply_adjoint(const ComplexMatrix &m, std::span<const Complex> v) {
    if (m.rows() != v.size()) {
        throw std::invalid_argument("apply_adjoint: matrix " + m.shape_string() + " vs vector of length " +
                                    std::to_string(v.size()));
    }
    ComplexVector result(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const Complex *row = &m(r, 0);
        Complex vr = v[r];
        for (std::size_t c = 0; c < m.cols(); ++c) {
            result[c] += std::conj(row[c]) * vr;
        }
    }
    return result;
}

ComplexMatrix conjugate_by(const ComplexMatrix &m, const ComplexMatrix &rho) {
    return multiply(multiply(m, rho), adjoint(m));
}

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket) {
    if (bra.size() != ket.size()) {
        throw std::invalid_argument("inner_product: length mismatch");
    }
    Complex total = 0;
    for (std::size_t i = 0; i < bra.size(); ++i) {
        total += std::conj(bra[i]) * ket[i];
    }
    return total;
}

double norm_squared(std::span<const Complex> v) {
    double total = 0;
    for (const Complex &z : v) {
        total += std::norm(z);
    }
    return total;
}

double max_abs_entry(const ComplexMatrix &a) {
    double best = 0;
    for (const Complex &z : a.entries()) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

double max_abs_difference(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_difference");
    double best = 0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        best = std::max(best, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return best;
}

double unitarity_defect(const ComplexMatrix &u) {
    if (!u.is_square()) {
        throw std::invalid_argument("unitarity_defect: matrix " + u.shape_string() + " is not square");
    }
    std::size_t dim = u.rows();
    double best = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            Complex total = inner_product(u.row(j), u.row(i));
            if (i == j) {
                total -= 1.0;
            }
            best = std::max(best, std::abs(total));
        }
    }
    return best;
}

ComplexMatrix pauli_x() { return ComplexMatrix::from_rows({{0, 1}, {1, 0}}); }
ComplexMatrix pauli_y() { return ComplexMatrix::from_rows({{0, Complex(0, -1)}, {Complex(0, 1), 0}}); }
ComplexMatrix pauli_z() { return ComplexMatrix::from_rows({{1, 0}, {0, -1}}); }

ComplexVector basis_vector(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw std::invalid_argument("basis index out of range");
    }
    ComplexVector result(dim);
    result[index] = 1.0;
    return result;
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    double defect = unitarity_defect(matrix_);
    if (defect > kTolerance) {
        throw std::invalid_argument("matrix is not unitary: defect " + std::to_string(defect));
    }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) { return UnitaryMatrix(ComplexMatrix::identity(dim)); }

UnitaryMatrix tensor_product(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    return UnitaryMatrix(tensor_product(a.matrix(), b.matrix()));
}

QuantumState::QuantumState(Kind kind, std::size_t dimension, ComplexVector amplitudes,
                           std::optional<ComplexMatrix> rho)
    : kind_(kind), dimension_(dimension), amplitudes_(std::move(amplitudes)), rho_(std::move(rho)) {}

QuantumState QuantumState::pure(ComplexVector amplitudes) {
    if (amplitudes.empty()) {
        throw std::invalid_argument("pure state must have positive dimension");
    }
    require_finite(amplitudes);
    double norm = std::sqrt(norm_squared(amplitudes));
    if (std::abs(norm - 1.0) > kTolerance) {
        throw std::invalid_argument("pure state norm " + std::to_string(norm) + " is not 1");
    }
    std::size_t dim = amplitudes.size();
    return QuantumState(Kind::Pure, dim, std::move(amplitudes), std::nullopt);
}

QuantumState QuantumState::density(ComplexMatrix rho) {
    if (!rho.is_square()) {
        throw std::invalid_argument("density matrix must be square, got " + rho.shape_string());
    }
    double trace_error = std::abs(rho.trace() - 1.0);
    if (trace_error > kTolerance) {
        throw std::invalid_argument("density matrix trace differs from 1 by " + std::to_string(trace_error));
    }
    double hermiticity = max_abs_difference(rho, adjoint(rho));
    if (hermiticity > kTolerance) {
        throw std::invalid_argument("density matrix is not Hermitian (defect " + std::to_string(hermiticity) + ")");
    }
    std::size_t dim = rho.rows();
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> view(
        rho.entries().data(), dim, dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(view, Eigen::EigenvaluesOnly);
    double smallest = solver.eigenvalues().minCoeff();
    if (smallest < -kTolerance) {
        throw std::invalid_argument("density matrix has negative eigenvalue " + std::to_string(smallest));
    }
    return QuantumState(Kind::Density, dim, {}, std::move(rho));
}

QuantumState QuantumState::basis(std::size_t dim, std::size_t index) { return pure(basis_vector(dim, index)); }

const ComplexVector &QuantumState::amplitudes() const {
    if (kind_ != Kind::Pure) {
        throw std::logic_error("amplitudes requested from a mixed state");
    }
    return amplitudes_;
}

ComplexMatrix QuantumState::density_matrix() const {
    if (rho_) {
        return *rho_;
    }
    return ComplexMatrix::outer(amplitudes_, amplitudes_);
}

}  // namespace otoc_lab
