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

#include "otoc_lab/otoc.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "otoc_lab/parallel.h"
#include "otoc_lab/permutation.h"
#include "otoc_lab/weingarten.h"

namespace otoc_lab {

std::string_view to_string(EnsembleKind kind) {
    return kind == EnsembleKind::GlobalHaar ? "GlobalHaar" : "ProductHaar";
}

OtocInstance::OtocInstance(std::size_t n) : n_(n) {
    if (n == 0 || n % 2 != 0) {
        throw std::invalid_argument("n must be even and positive, got " + std::to_string(n));
    }
    if (n > kMaxQubits) {
        throw std::invalid_argument("n = " + std::to_string(n) + " exceeds the limit of " +
                                    std::to_string(kMaxQubits) + " qubits");
    }
}

UnitaryMatrix sample_ensemble(EnsembleKind kind, std::size_t n, RandomSource &rng) {
    OtocInstance instance(n);
    if (kind == EnsembleKind::GlobalHaar) {
        return sample_haar_unitary(instance.dimension(), rng);
    }
    UnitaryMatrix first = sample_haar_unitary(instance.block_dimension(), rng);
    UnitaryMatrix second = sample_haar_unitary(instance.block_dimension(), rng);
    return tensor_product(first, second);
}

double otoc_value(const UnitaryMatrix &v, std::size_t n) {
    OtocInstance instance(n);
    std::size_t dim = instance.dimension();
    if (v.dimension() != dim) {
        throw std::invalid_argument("otoc_value: unitary has dimension " + std::to_string(v.dimension()) +
                                    ", expected 2^" + std::to_string(n) + " = " + std::to_string(dim));
    }
    ComplexVector evolved = v.matrix().column(0);
    // X on qubit 1 flips the most significant bit of the basis index.
    std::size_t flip = dim / 2;
    ComplexVector flipped(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        flipped[i ^ flip] = evolved[i];
    }
    ComplexVector returned = apply_adjoint(v.matrix(), flipped);
    std::size_t block = instance.block_dimension();
    double probability = 0;
    for (std::size_t a = 0; a < block; ++a) {
        probability += std::norm(returned[a * block]);
    }
    return probability;
}

BigRational expected_otoc_exact(std::size_t n) {
    OtocInstance instance(n);
    BigInteger num;
    BigInteger den;
    mpz_ui_pow_ui(num.get_mpz_t(), 2, 3 * n / 2);
    mpz_ui_pow_ui(den.get_mpz_t(), 2, 2 * n);
    BigRational result(num - 1, den - 1);
    result.canonicalize();
    return result;
}

BigRational expected_otoc_weingarten(std::size_t n) {
    OtocInstance instance(n);
    if (n > 6) {
        throw std::invalid_argument("expected_otoc_weingarten: n <= 6 required, got " + std::to_string(n));
    }
    std::size_t dim = instance.dimension();
    std::size_t block = instance.block_dimension();
    std::size_t flip = dim / 2;
    WeingartenTable table = weingarten_table(2, dim);
    std::vector<Permutation> group = enumerate_group(2);

    // OTOC(U) = sum_a |<a,0| U^dag X U |0>|^2
    //         = sum_{a,i,i'} U_{x(i),0} U_{i',m} conj(U_{i,m} U_{x(i'),0}),  m = a * block,
    // a second moment with I = (x(i), i'), J = (0, m), I' = (i, x(i')), J' = (m, 0).
    // tally[s][t] is the number of (a, i, i') whose deltas survive under (sigma_s, tau_t).
    std::vector<std::vector<unsigned long>> tally(2, std::vector<unsigned long>(2, 0));
    for (std::size_t a = 0; a < block; ++a) {
        std::size_t m = a * block;
        IndexTuple j{0, m};
        IndexTuple j_prime{m, 0};
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t ip = 0; ip < dim; ++ip) {
                IndexTuple in{i ^ flip, ip};
                IndexTuple out{i, ip ^ flip};
                for (std::size_t s = 0; s < 2; ++s) {
                    const Permutation &sigma = group[s];
                    if (in[sigma(0)] != out[0] || in[sigma(1)] != out[1]) {
                        continue;
                    }
                    for (std::size_t t = 0; t < 2; ++t) {
                        const Permutation &tau = group[t];
                        if (j[tau(0)] == j_prime[0] && j[tau(1)] == j_prime[1]) {
                            ++tally[s][t];
                        }
                    }
                }
            }
        }
    }
    BigRational total = 0;
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t t = 0; t < 2; ++t) {
            total += table(compose(group[s], inverse(group[t]))) * tally[s][t];
        }
    }
    return total;
}

MeanEstimate monte_carlo_expected_otoc(std::size_t n, std::size_t samples, const RandomSource &rng) {
    OtocInstance instance(n);
    if (samples < 100) {
        throw std::invalid_argument("monte_carlo_expected_otoc: need at least 100 samples");
    }
    std::vector<double> values(samples);
    parallel_for(samples, [&](std::size_t s) {
        RandomSource stream = rng.child(s);
        values[s] = otoc_value(sample_haar_unitary(instance.dimension(), stream), n);
    });
    double mean = 0;
    for (double x : values) {
        mean += x;
    }
    mean /= static_cast<double>(samples);
    double spread = 0;
    for (double x : values) {
        spread += (x - mean) * (x - mean);
    }
    double variance = spread / static_cast<double>(samples - 1);
    return {mean, std::sqrt(variance / static_cast<double>(samples))};
}

TrialOutcome single_query_trial(EnsembleKind kind, std::size_t n, RandomSource &rng, std::size_t shots) {
    if (shots == 0) {
        throw std::invalid_argument("single_query_trial: shots must be positive");
    }
    UnitaryMatrix hidden = sample_ensemble(kind, n, rng);
    double acceptance = otoc_value(hidden, n);
    std::size_t accepted = 0;
    for (std::size_t shot = 0; shot < shots; ++shot) {
        if (rng.bernoulli(acceptance)) {
            ++accepted;
        }
    }
    EnsembleKind declared = 2 * accepted > shots ? EnsembleKind::ProductHaar : EnsembleKind::GlobalHaar;
    return {declared, declared == kind, acceptance};
}

SuccessEstimate success_probability(std::size_t n, std::size_t trials, const RandomSource &rng, std::size_t shots) {
    OtocInstance instance(n);
    if (trials < 100) {
        throw std::invalid_argument("success_probability: need at least 100 trials");
    }
    std::vector<char> correct(trials);
    parallel_for(trials, [&](std::size_t t) {
        RandomSource stream = rng.child(t);
        EnsembleKind kind = stream.bernoulli(0.5) ? EnsembleKind::ProductHaar : EnsembleKind::GlobalHaar;
        correct[t] = single_query_trial(kind, n, stream, shots).correct ? 1 : 0;
    });
    std::size_t wins = 0;
    for (char c : correct) {
        wins += c;
    }
    double rate = static_cast<double>(wins) / static_cast<double>(trials);
    double halfwidth = 1.96 * std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
    return {trials, rate, halfwidth};
}

}  // namespace otoc_lab
