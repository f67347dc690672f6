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

#ifndef OTOC_LAB_OTOC_H
#define OTOC_LAB_OTOC_H

#include <cstddef>
#include <string_view>

#include "otoc_lab/exact_solve.h"
#include "otoc_lab/matrix.h"
#include "otoc_lab/random.h"

namespace otoc_lab {

/// The two hypotheses of the distinguishing task: one Haar unitary on all n
/// qubits, or U1 (x) U2 with independent Haar factors on each half.
enum class EnsembleKind { GlobalHaar, ProductHaar };

std::string_view to_string(EnsembleKind kind);

/// n-qubit register with n even and 2 <= n <= 10. Qubit 1 is the most
/// significant tensor factor; the second block is the trailing n/2 qubits.
class OtocInstance {
   public:
    static constexpr std::size_t kMaxQubits = 10;

    explicit OtocInstance(std::size_t n);

    std::size_t qubits() const { return n_; }
    std::size_t dimension() const { return std::size_t{1} << n_; }
    std::size_t block_dimension() const { return std::size_t{1} << (n_ / 2); }

   private:
    std::size_t n_;
};

/// Draws the hidden unitary for an ensemble on n qubits.
UnitaryMatrix sample_ensemble(EnsembleKind kind, std::size_t n, RandomSource &rng);

/// Probability that the trailing n/2 qubits return to |0...0> after
/// |0>^n -> V -> X on qubit 1 -> V^dagger.
double otoc_value(const UnitaryMatrix &v, std::size_t n);

/// Closed-form Haar average (2^{3n/2} - 1) / (2^{2n} - 1).
BigRational expected_otoc_exact(std::size_t n);

/// Haar average of otoc_value from the second-moment Weingarten formula.
///
/// The correlator is a k = 2 moment of U. For each of the four (sigma, tau)
/// pairs the index deltas against the fixed X and projector tensors are
/// counted exactly, then weighted by Wg(sigma tau^{-1}, 2^n). Requires n <= 6.
BigRational expected_otoc_weingarten(std::size_t n);

struct MeanEstimate {
    double estimate;
    double standard_error;
};

/// Sample mean and standard error of otoc_value over global Haar draws.
MeanEstimate monte_carlo_expected_otoc(std::size_t n, std::size_t samples, const RandomSource &rng);

struct TrialOutcome {
    EnsembleKind declared;
    bool correct;
    /// Exact acceptance probability otoc_value(V) of the drawn unitary.
    double acceptance_probability;
};

/// One run of the single-query protocol. Each shot measures the second block
/// and accepts on the all-zero outcome; ProductHaar is declared iff a strict
/// majority of `shots` accept (shots = 1 is the single-query protocol).
TrialOutcome single_query_trial(EnsembleKind kind, std::size_t n, RandomSource &rng, std::size_t shots = 1);

struct SuccessEstimate {
    std::size_t trials;
    double success_rate;
    /// 95% normal-approximation binomial half-width.
    double ci_halfwidth;
};

/// Balanced experiment: each trial draws the hidden ensemble with probability 1/2.
SuccessEstimate success_probability(std::size_t n, std::size_t trials, const RandomSource &rng,
                                    std::size_t shots = 1);

}  // namespace otoc_lab

#endif
