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

#ifndef OTOC_LAB_WEINGARTEN_H
#define OTOC_LAB_WEINGARTEN_H

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "otoc_lab/exact_solve.h"
#include "otoc_lab/permutation.h"
#include "otoc_lab/random.h"

namespace otoc_lab {

/// Gram matrix of the permutation operators of S_k acting on (C^d)^{tensor k}:
/// entry (sigma, tau) = tr(sigma tau^{-1}) = d^{#cycles(sigma tau^{-1})}.
/// Rows and columns follow the lexicographic order of enumerate_group(k).
class GramMatrix {
   public:
    GramMatrix(std::size_t k, std::size_t d);

    std::size_t k() const { return k_; }
    std::size_t d() const { return d_; }
    std::size_t order() const { return group_.size(); }
    const std::vector<Permutation> &group() const { return group_; }
    const IntegerMatrix &matrix() const { return matrix_; }
    const BigInteger &operator()(std::size_t row, std::size_t col) const { return matrix_(row, col); }

   private:
    std::size_t k_;
    std::size_t d_;
    std::vector<Permutation> group_;
    IntegerMatrix matrix_;
};

/// Builds the Gram matrix. Requires 1 <= k <= 8 and d >= 1.
GramMatrix gram_matrix(std::size_t k, std::size_t d);

/// Exact unitary Weingarten function Wg(., d) on S_k, stored per cycle type.
class WeingartenTable {
   public:
    WeingartenTable(std::size_t k, std::size_t d, std::map<CycleType, BigRational> values,
                    std::map<CycleType, std::uint64_t> class_sizes);

    std::size_t k() const { return k_; }
    std::size_t d() const { return d_; }
    const std::map<CycleType, BigRational> &values() const { return values_; }
    /// Number of permutations in each conjugacy class.
    const std::map<CycleType, std::uint64_t> &class_sizes() const { return class_sizes_; }

    const BigRational &operator()(const Permutation &sigma) const { return value(cycle_type(sigma)); }
    const BigRational &value(const CycleType &type) const;

   private:
    std::size_t k_;
    std::size_t d_;
    std::map<CycleType, BigRational> values_;
    std::map<CycleType, std::uint64_t> class_sizes_;
};

/// Computes Wg(., d) as the inverse of the Gram matrix.
///
/// Requires d >= k: below that the permutation operators are linearly
/// dependent and the Gram matrix has no inverse. For k <= 4 the per-class
/// values are cross-checked against a full-matrix inversion, which also
/// confirms that Wg is a class function; a mismatch throws std::logic_error.
WeingartenTable weingarten_table(std::size_t k, std::size_t d);

/// True iff sum_tau Wg(sigma^{-1} tau) G(tau^{-1} pi) == delta(sigma, pi) for
/// every sigma, pi in S_k, evaluated in exact arithmetic.
bool orthogonality_holds(const WeingartenTable &table);

using IndexTuple = std::vector<std::size_t>;

/// E_U[ U_{i1 j1} ... U_{ik jk} conj(U_{i'1 j'1} ... U_{i'k j'k}) ] over Haar(d),
/// as sum_{sigma, tau} [I'(m) == I(sigma(m)) for all m] [J'(m) == J(tau(m)) for all m] Wg(sigma tau^{-1}).
BigRational weingarten_moment(const WeingartenTable &table, const IndexTuple &i, const IndexTuple &j,
                              const IndexTuple &i_prime, const IndexTuple &j_prime);
BigRational weingarten_moment(std::size_t k, std::size_t d, const IndexTuple &i, const IndexTuple &j,
                              const IndexTuple &i_prime, const IndexTuple &j_prime);

struct MomentEstimate {
    Complex estimate;
    /// Standard error of the complex mean: sqrt(sample variance of |x - mean| / samples).
    double standard_error;
};

/// Monte Carlo estimate of the same moment from `samples` Haar draws.
/// Draw s uses rng.child(s), so the result does not depend on the thread count.
MomentEstimate monte_carlo_moment(std::size_t k, std::size_t d, const IndexTuple &i, const IndexTuple &j,
                                  const IndexTuple &i_prime, const IndexTuple &j_prime, std::size_t samples,
                                  const RandomSource &rng);

/// sum_{tau in S_k} |Wg(tau, d)|. Requires d >= k.
BigRational absolute_weingarten_sum(std::size_t k, std::size_t d);
BigRational absolute_weingarten_sum(const WeingartenTable &table);

/// (d - k)! / d!.
BigRational falling_factorial_reciprocal(std::size_t k, std::size_t d);

struct CycleTypeAsymptotics {
    CycleType cycle_type;
    BigRational wg;
    /// (-1)^{k - #sigma} d^{2k - #sigma} Wg(sigma, d) / prod_i (2 l_i - 2)! / ((l_i - 1)! l_i!).
    BigRational normalized_ratio;
    /// 1 / (1 - (k - 1) / d).
    BigRational lower_value;
    /// 1 / (1 - 6 k^{7/2} / d^2); only defined for d > sqrt(6) k^{7/4}.
    std::optional<double> upper_value;
    bool lower_holds;
    std::optional<bool> upper_holds;
};

struct WgAsymptoticReport {
    std::size_t k;
    std::size_t d;
    std::vector<CycleTypeAsymptotics> entries;
    /// |Wg(e, d) - d^{-k}|.
    BigRational identity_defect;
    /// identity_defect * d^{k+2} / k^{7/2}.
    double identity_defect_scaled;
};

/// Evaluates the sandwich values around the leading-order Weingarten
/// asymptotics for every cycle type. Records whether each side holds without
/// asserting either.
WgAsymptoticReport wg_asymptotic_report(std::size_t k, std::size_t d);

/// {k, d, entries: [{cycle_type, value}]}; rationals are {num, den} decimal strings.
nlohmann::json to_json(const WeingartenTable &table);
nlohmann::json to_json(const WgAsymptoticReport &report);
/// {"num": "...", "den": "..."}.
nlohmann::json rational_to_json(const BigRational &value);

}  // namespace otoc_lab

#endif
