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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace otoc_lab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ (stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), key_(derive_key(seed, stream)) {}

std::uint64_t RandomSource::next_u64() {
    ++counter_;
    return splitmix64(key_ + counter_ * kGolden);
}

double RandomSource::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RandomSource::normal() {
    if (spare_normal_) {
        double value = *spare_normal_;
        spare_normal_.reset();
        return value;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_normal_ = radius * std::sin(angle);
    return radius * std::cos(angle);
}

Complex RandomSource::complex_normal() {
    double re = normal();
    double im = normal();
    return Complex(re, im) * std::numbers::sqrt2 * 0.5;
}

RandomSource RandomSource::child(std::uint64_t index) const {
    return RandomSource(seed_, splitmix64(stream_ ^ splitmix64(index + 1)));
}

UnitaryMatrix sample_haar_unitary(std::size_t dim, RandomSource &rng) {
    if (dim == 0) {
        throw std::invalid_argument("sample_haar_unitary: dimension must be positive");
    }
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    RowMajor ginibre(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            ginibre(r, c) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd &packed = qr.matrixQR();
    // Plain QR leaves a phase bias on each column; rotating column j by
    // r_jj / |r_jj| makes the result exactly Haar distributed.
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        Complex rjj = packed(j, j);
        double magnitude = std::abs(rjj);
        if (magnitude > 0) {
            q.col(j) *= rjj / magnitude;
        }
    }
    std::vector<Complex> entries(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            entries[r * dim + c] = q(r, c);
        }
    }
    return UnitaryMatrix(ComplexMatrix(dim, dim, std::move(entries)));
}

}  // namespace otoc_lab
