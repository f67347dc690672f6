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

#include "otoc_lab/weingarten.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "otoc_lab/parallel.h"

namespace otoc_lab {

namespace {

void check_order(std::size_t k, std::size_t d, const char *op) {
    if (k == 0 || k > kMaxGroupOrder) {
        throw std::invalid_argument(std::string(op) + ": k must be in [1, " + std::to_string(kMaxGroupOrder) +
                                    "], got " + std::to_string(k));
    }
    if (d == 0) {
        throw std::invalid_argument(std::string(op) + ": d must be positive");
    }
}

void check_invertible(std::size_t k, std::size_t d, const char *op) {
    check_order(k, d, op);
    if (d < k) {
        throw std::invalid_argument(std::string(op) + ": d = " + std::to_string(d) + " < k = " + std::to_string(k) +
                                    "; the " + std::to_string(k) +
                                    "! permutation operators on (C^d)^k are linearly dependent, so the Gram "
                                    "matrix is rank deficient and has no inverse");
    }
}

BigInteger power(std::size_t base, std::size_t exponent) {
    BigInteger result;
    mpz_ui_pow_ui(result.get_mpz_t(), base, exponent);
    return result;
}

// Dense index tables over the lexicographic enumeration of S_k.
struct GroupTables {
    std::vector<Permutation> group;
    std::vector<CycleType> class_of;        // cycle type of each element
    std::vector<std::size_t> inverse_index;  // index of sigma^{-1}
    std::vector<std::size_t> product_index;  // index of sigma_a * sigma_b, row-major

    explicit GroupTables(std::size_t k) : group(enumerate_group(k)) {
        std::size_t n = group.size();
        class_of.reserve(n);
        inverse_index.reserve(n);
        for (const Permutation &sigma : group) {
            class_of.push_back(cycle_type(sigma));
            inverse_index.push_back(lexicographic_rank(inverse(sigma)));
        }
        product_index.resize(n * n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                product_index[a * n + b] = lexicographic_rank(compose(group[a], group[b]));
            }
        }
    }

    std::size_t product(std::size_t a, std::size_t b) const { return product_index[a * group.size() + b]; }
};

std::map<CycleType, std::uint64_t> class_sizes_of(const std::vector<CycleType> &classes) {
    std::map<CycleType, std::uint64_t> sizes;
    for (const CycleType &type : classes) {
        ++sizes[type];
    }
    return sizes;
}

// True iff out(m) == in(perm(m)) for every position m.
bool matches(const Permutation &perm, const IndexTuple &in, const IndexTuple &out) {
    for (std::size_t m = 0; m < perm.size(); ++m) {
        if (in[perm(m)] != out[m]) {
            return false;
        }
    }
    return true;
}

void check_tuples(std::size_t k, std::size_t d, const IndexTuple &i, const IndexTuple &j,
                  const IndexTuple &i_prime, const IndexTuple &j_prime) {
    for (const IndexTuple *tuple : {&i, &j, &i_prime, &j_prime}) {
        if (tuple->size() != k) {
            throw std::invalid_argument("moment index tuple has length " + std::to_string(tuple->size()) +
                                        ", expected k = " + std::to_string(k));
        }
        for (std::size_t index : *tuple) {
            if (index >= d) {
                throw std::invalid_argument("moment index " + std::to_string(index) + " out of range for d = " +
                                            std::to_string(d));
            }
        }
    }
}

BigRational catalan_factor(const CycleType &type) {
    // prod_i (2l - 2)! / ((l - 1)! l!), the Catalan number C_{l-1} per cycle.
    BigRational result = 1;
    for (std::size_t length : type) {
        BigInteger num;
        BigInteger den1;
        BigInteger den2;
        mpz_fac_ui(num.get_mpz_t(), 2 * length - 2);
        mpz_fac_ui(den1.get_mpz_t(), length - 1);
        mpz_fac_ui(den2.get_mpz_t(), length);
        result *= BigRational(num, den1 * den2);
    }
    result.canonicalize();
    return result;
}

}  // namespace

GramMatrix::GramMatrix(std::size_t k, std::size_t d) : k_(k), d_(d), group_(enumerate_group(k)) {
    std::size_t n = group_.size();
    std::vector<BigInteger> powers(k + 1);
    for (std::size_t c = 0; c <= k; ++c) {
        powers[c] = power(d, c);
    }
    matrix_ = IntegerMatrix(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            matrix_(r, c) = powers[num_cycles(compose(group_[r], inverse(group_[c])))];
        }
    }
}

GramMatrix gram_matrix(std::size_t k, std::size_t d) {
    check_order(k, d, "gram_matrix");
    return GramMatrix(k, d);
}

WeingartenTable::WeingartenTable(std::size_t k, std::size_t d, std::map<CycleType, BigRational> values,
                                 std::map<CycleType, std::uint64_t> class_sizes)
    : k_(k), d_(d), values_(std::move(values)), class_sizes_(std::move(class_sizes)) {}

const BigRational &WeingartenTable::value(const CycleType &type) const {
    auto it = values_.find(type);
    if (it == values_.end()) {
        throw std::out_of_range("cycle type is not a partition of k = " + std::to_string(k_));
    }
    return it->second;
}

WeingartenTable weingarten_table(std::size_t k, std::size_t d) {
    check_invertible(k, d, "weingarten_table");
    std::vector<Permutation> group = enumerate_group(k);
    std::vector<CycleType> classes;
    classes.reserve(group.size());
    for (const Permutation &sigma : group) {
        classes.push_back(cycle_type(sigma));
    }
    std::map<CycleType, std::uint64_t> sizes = class_sizes_of(classes);

    // Wg is the row of G^{-1} at the identity: sum_tau Wg(tau) G(tau^{-1} pi) = delta(e, pi).
    // Restricting pi to one representative per class and grouping tau by class
    // gives a square system in the per-class unknowns.
    std::vector<CycleType> types;
    std::map<CycleType, std::size_t> column_of;
    std::vector<std::size_t> representative;
    for (std::size_t idx = 0; idx < group.size(); ++idx) {
        if (!column_of.contains(classes[idx])) {
            column_of[classes[idx]] = types.size();
            types.push_back(classes[idx]);
            representative.push_back(idx);
        }
    }
    std::size_t p = types.size();
    std::vector<BigInteger> powers(k + 1);
    for (std::size_t c = 0; c <= k; ++c) {
        powers[c] = power(d, c);
    }
    IntegerMatrix reduced(p, p);
    IntegerMatrix rhs(p, 1);
    for (std::size_t row = 0; row < p; ++row) {
        const Permutation &pi = group[representative[row]];
        for (std::size_t idx = 0; idx < group.size(); ++idx) {
            std::size_t cycles = num_cycles(compose(inverse(group[idx]), pi));
            reduced(row, column_of[classes[idx]]) += powers[cycles];
        }
        rhs(row, 0) = pi.is_identity() ? 1 : 0;
    }
    RationalMatrix solution = bareiss_solve(std::move(reduced), std::move(rhs));
    std::map<CycleType, BigRational> values;
    for (std::size_t col = 0; col < p; ++col) {
        values[types[col]] = solution(col, 0);
    }

    if (k <= 4) {
        // Full inversion: entry (sigma, tau) of G^{-1} must equal Wg(sigma^{-1} tau).
        GramMatrix gram(k, d);
        RationalMatrix inverse_gram = exact_inverse(gram.matrix());
        for (std::size_t r = 0; r < group.size(); ++r) {
            for (std::size_t c = 0; c < group.size(); ++c) {
                const CycleType type = cycle_type(compose(inverse(group[r]), group[c]));
                if (inverse_gram(r, c) != values[type]) {
                    throw std::logic_error("Weingarten function is not constant on the class of " +
                                           compose(inverse(group[r]), group[c]).to_string());
                }
            }
        }
    }
    return WeingartenTable(k, d, std::move(values), std::move(sizes));
}

bool orthogonality_holds(const WeingartenTable &table) {
    std::size_t k = table.k();
    std::size_t d = table.d();
    GroupTables tables(k);
    std::size_t n = tables.group.size();

    // Scale every value by the common denominator so the check runs on integers.
    BigInteger common = 1;
    for (const auto &[type, value] : table.values()) {
        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), value.get_den_mpz_t());
    }
    std::vector<BigInteger> scaled(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        BigRational product = table.value(tables.class_of[idx]) * common;
        if (product.get_den() != 1) {
            return false;
        }
        scaled[idx] = product.get_num();
    }
    std::vector<unsigned long> gram_entry(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        BigInteger value = power(d, tables.class_of[idx].size());
        if (!value.fits_ulong_p()) {
            throw std::overflow_error("orthogonality_holds: d^k exceeds machine word");
        }
        gram_entry[idx] = value.get_ui();
    }

    BigInteger acc;
    for (std::size_t sigma = 0; sigma < n; ++sigma) {
        std::size_t sigma_inv = tables.inverse_index[sigma];
        for (std::size_t pi = 0; pi < n; ++pi) {
            acc = 0;
            for (std::size_t tau = 0; tau < n; ++tau) {
                std::size_t left = tables.product(sigma_inv, tau);
                std::size_t right = tables.product(tables.inverse_index[tau], pi);
                mpz_addmul_ui(acc.get_mpz_t(), scaled[left].get_mpz_t(), gram_entry[right]);
            }
            if (acc != (sigma == pi ? common : BigInteger(0))) {
                return false;
            }
        }
    }
    return true;
}

BigRational weingarten_moment(const WeingartenTable &table, const IndexTuple &i, const IndexTuple &j,
                              const IndexTuple &i_prime, const IndexTuple &j_prime) {
    std::size_t k = table.k();
    check_tuples(k, table.d(), i, j, i_prime, j_prime);
    std::vector<Permutation> group = enumerate_group(k);
    std::vector<const Permutation *> sigmas;
    std::vector<const Permutation *> taus;
    for (const Permutation &perm : group) {
        if (matches(perm, i, i_prime)) {
            sigmas.push_back(&perm);
        }
        if (matches(perm, j, j_prime)) {
            taus.push_back(&perm);
        }
    }
    BigRational total = 0;
    for (const Permutation *sigma : sigmas) {
        for (const Permutation *tau : taus) {
            total += table(compose(*sigma, inverse(*tau)));
        }
    }
    return total;
}

BigRational weingarten_moment(std::size_t k, std::size_t d, const IndexTuple &i, const IndexTuple &j,
                              const IndexTuple &i_prime, const IndexTuple &j_prime) {
    check_order(k, d, "weingarten_moment");
    check_tuples(k, d, i, j, i_prime, j_prime);
    return weingarten_moment(weingarten_table(k, d), i, j, i_prime, j_prime);
}

MomentEstimate monte_carlo_moment(std::size_t k, std::size_t d, const IndexTuple &i, const IndexTuple &j,
                                  const IndexTuple &i_prime, const IndexTuple &j_prime, std::size_t samples,
                                  const RandomSource &rng) {
    check_order(k, d, "monte_carlo_moment");
    check_tuples(k, d, i, j, i_prime, j_prime);
    if (samples < 100) {
        throw std::invalid_argument("monte_carlo_moment: need at least 100 samples");
    }
    std::vector<Complex> draws(samples);
    parallel_for(samples, [&](std::size_t s) {
        RandomSource stream = rng.child(s);
        UnitaryMatrix u = sample_haar_unitary(d, stream);
        const ComplexMatrix &m = u.matrix();
        Complex value = 1;
        for (std::size_t idx = 0; idx < k; ++idx) {
            value *= m(i[idx], j[idx]) * std::conj(m(i_prime[idx], j_prime[idx]));
        }
        draws[s] = value;
    });
    Complex mean = 0;
    for (const Complex &x : draws) {
        mean += x;
    }
    mean /= static_cast<double>(samples);
    double spread = 0;
    for (const Complex &x : draws) {
        spread += std::norm(x - mean);
    }
    double variance = spread / static_cast<double>(samples - 1);
    return {mean, std::sqrt(variance / static_cast<double>(samples))};
}

BigRational absolute_weingarten_sum(const WeingartenTable &table) {
    BigRational total = 0;
    for (const auto &[type, value] : table.values()) {
        total += abs(value) * table.class_sizes().at(type);
    }
    return total;
}

BigRational absolute_weingarten_sum(std::size_t k, std::size_t d) {
    check_invertible(k, d, "absolute_weingarten_sum");
    return absolute_weingarten_sum(weingarten_table(k, d));
}

BigRational falling_factorial_reciprocal(std::size_t k, std::size_t d) {
    if (d < k) {
        throw std::invalid_argument("falling_factorial_reciprocal: need d >= k");
    }
    BigInteger product = 1;
    for (std::size_t m = 0; m < k; ++m) {
        product *= static_cast<unsigned long>(d - m);
    }
    return BigRational(BigInteger(1), product);
}

WgAsymptoticReport wg_asymptotic_report(std::size_t k, std::size_t d) {
    check_invertible(k, d, "wg_asymptotic_report");
    WeingartenTable table = weingarten_table(k, d);
    WgAsymptoticReport report{k, d, {}, 0, 0.0};

    BigRational lower(BigInteger(static_cast<unsigned long>(d)), BigInteger(static_cast<unsigned long>(d - k + 1)));
    lower.canonicalize();
    double k_power = std::pow(static_cast<double>(k), 3.5);
    double upper_denominator = 1.0 - 6.0 * k_power / (static_cast<double>(d) * static_cast<double>(d));
    bool upper_defined = static_cast<double>(d) > std::sqrt(6.0) * std::pow(static_cast<double>(k), 1.75);

    for (const auto &[type, wg] : table.values()) {
        std::size_t cycles = type.size();
        BigRational ratio = wg * BigRational(power(d, 2 * k - cycles)) / catalan_factor(type);
        if ((k - cycles) % 2 == 1) {
            ratio = -ratio;
        }
        ratio.canonicalize();
        CycleTypeAsymptotics entry{type, wg, ratio, lower, std::nullopt, lower <= ratio, std::nullopt};
        if (upper_defined && upper_denominator > 0) {
            double upper = 1.0 / upper_denominator;
            entry.upper_value = upper;
            entry.upper_holds = ratio.get_d() <= upper;
        }
        report.entries.push_back(std::move(entry));
    }

    CycleType identity_type(k, 1);
    BigRational defect = table.value(identity_type) - BigRational(BigInteger(1), power(d, k));
    report.identity_defect = abs(defect);
    report.identity_defect_scaled = BigRational(report.identity_defect * power(d, k + 2)).get_d() / k_power;
    return report;
}

nlohmann::json rational_to_json(const BigRational &value) {
    return {{"num", value.get_num().get_str()}, {"den", value.get_den().get_str()}};
}

nlohmann::json to_json(const WeingartenTable &table) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto &[type, value] : table.values()) {
        entries.push_back({{"cycle_type", type}, {"value", rational_to_json(value)}});
    }
    return {{"k", table.k()}, {"d", table.d()}, {"entries", entries}};
}

nlohmann::json to_json(const WgAsymptoticReport &report) {
    nlohmann::json entries = nlohmann::json::array();
    for (const CycleTypeAsymptotics &entry : report.entries) {
        nlohmann::json item = {{"cycle_type", entry.cycle_type},
                               {"wg", rational_to_json(entry.wg)},
                               {"normalized_ratio", rational_to_json(entry.normalized_ratio)},
                               {"normalized_ratio_value", entry.normalized_ratio.get_d()},
                               {"lower_value", rational_to_json(entry.lower_value)},
                               {"lower_holds", entry.lower_holds}};
        item["upper_value"] = entry.upper_value ? nlohmann::json(*entry.upper_value) : nlohmann::json(nullptr);
        item["upper_holds"] = entry.upper_holds ? nlohmann::json(*entry.upper_holds) : nlohmann::json(nullptr);
        entries.push_back(std::move(item));
    }
    return {{"k", report.k},
            {"d", report.d},
            {"entries", entries},
            {"identity_defect", rational_to_json(report.identity_defect)},
            {"identity_defect_scaled", report.identity_defect_scaled}};
}

}  // namespace otoc_lab
