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

#ifndef OTOC_LAB_LEARNING_TREE_H
#define OTOC_LAB_LEARNING_TREE_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "otoc_lab/matrix.h"
#include "otoc_lab/otoc.h"
#include "otoc_lab/random.h"

namespace otoc_lab {

/// Completeness tolerance for POVMs encountered while walking a tree.
inline constexpr double kPovmTolerance = 1e-9;
/// Exact enumeration refuses transcript spaces larger than this.
inline constexpr std::size_t kMaxExactLeaves = 1'000'000;

/// Which channel a round queries: the unknown unitary or its inverse.
enum class QueryKind { Forward, Inverse };

/// Measurement operators {F_i}. Elements are held either densely or in
/// rank-one form F_i = |ket_i><bra_i|; the latter avoids d^3 storage for
/// basis measurements.
class Povm {
   public:
    /// Throws on an empty list or elements of differing or non-square shape.
    static Povm dense(std::vector<ComplexMatrix> elements);
    static Povm rank_one(std::vector<ComplexVector> kets, std::vector<ComplexVector> bras);
    /// {|i><i|}.
    static Povm computational_basis(std::size_t dim);
    /// {|b_i><b_i|} for the columns b_i of `basis`.
    static Povm orthonormal_basis(const ComplexMatrix &basis);
    /// The single-element POVM {v}; measuring applies v with certainty.
    static Povm unitary(const ComplexMatrix &v);

    std::size_t size() const { return rank_one_ ? kets_.size() : elements_.size(); }
    std::size_t dimension() const { return dimension_; }
    bool is_rank_one() const { return rank_one_; }

    ComplexMatrix element(std::size_t i) const;
    /// F_i^dagger F_i.
    ComplexMatrix effect(std::size_t i) const;
    double effect_trace(std::size_t i) const;
    /// tr(F_i^dagger F_i * probe).
    Complex effect_overlap(std::size_t i, const ComplexMatrix &probe) const;

    /// ||F_i psi||^2.
    double outcome_weight(std::size_t i, std::span<const Complex> psi) const;
    /// F_i psi.
    ComplexVector apply(std::size_t i, std::span<const Complex> psi) const;
    /// F_i rho F_i^dagger.
    ComplexMatrix apply(std::size_t i, const ComplexMatrix &rho) const;

   private:
    Povm() = default;

    std::size_t dimension_ = 0;
    bool rank_one_ = false;
    std::vector<ComplexMatrix> elements_;
    std::vector<ComplexVector> kets_;
    std::vector<ComplexVector> bras_;
};

/// ||sum_i F_i^dagger F_i - I||_max. Callers treat values above 1e-9 as invalid.
double validate_povm(const Povm &povm);
/// Same check on raw matrices; throws on an empty list or mixed dimensions.
double validate_povm(std::span<const ComplexMatrix> elements);

using Transcript = std::vector<std::uint32_t>;

std::string transcript_string(std::span<const std::uint32_t> transcript);

/// What a strategy does in one round: which channel to query, then which POVM to measure.
struct Round {
    QueryKind query;
    std::shared_ptr<const Povm> povm;
};

/// Adaptive measurement protocol without quantum memory.
///
/// The tree is implicit: the chooser maps the outcomes observed so far to the
/// next round. Choosers must be deterministic functions of the prefix. A
/// time-ordered strategy may only emit Forward queries; choose() enforces it.
class Strategy {
   public:
    using Chooser = std::function<Round(std::span<const std::uint32_t> prefix)>;
    /// Maps a complete transcript to a symmetry class. Used only when both
    /// ensemble-averaged leaf distributions are constant on each class, which
    /// lets ensemble comparisons run on classes instead of leaves.
    using Labeler = std::function<std::uint64_t(std::span<const std::uint32_t> transcript)>;

    Strategy(std::string name, std::string description, std::size_t dimension, std::size_t depth,
             bool time_ordered, Chooser chooser, Labeler labeler = {});

    const std::string &name() const { return name_; }
    const std::string &description() const { return description_; }
    std::size_t dimension() const { return dimension_; }
    std::size_t depth() const { return depth_; }
    bool time_ordered() const { return time_ordered_; }
    const Labeler &labeler() const { return labeler_; }

    Round choose(std::span<const std::uint32_t> prefix) const;

   private:
    std::string name_;
    std::string description_;
    std::size_t dimension_;
    std::size_t depth_;
    bool time_ordered_;
    Chooser chooser_;
    Labeler labeler_;
};

/// Probability mass over complete transcripts, sorted lexicographically.
class LeafDistribution {
   public:
    LeafDistribution() = default;
    /// Entries must be sorted by transcript without duplicates.
    LeafDistribution(std::vector<Transcript> transcripts, std::vector<double> probabilities);

    std::size_t size() const { return transcripts_.size(); }
    const std::vector<Transcript> &transcripts() const { return transcripts_; }
    const std::vector<double> &probabilities() const { return probabilities_; }
    /// Zero for transcripts outside the support.
    double probability(std::span<const std::uint32_t> transcript) const;
    double total_mass() const;

    /// {"0.3.1": p, ...}.
    nlohmann::json to_json() const;

   private:
    std::vector<Transcript> transcripts_;
    std::vector<double> probabilities_;
};

/// Enumerates every transcript and its probability under unitary u.
///
/// The unnormalized state is propagated as rho(v) = F (Q rho Q^dagger) F^dagger
/// with Q = u or u^dagger per round; pure inputs are propagated as vectors.
/// Throws if a POVM fails completeness (naming the transcript prefix) or if the
/// transcript space exceeds kMaxExactLeaves.
LeafDistribution run_tree_exact(const Strategy &strategy, const UnitaryMatrix &u, const QuantumState &rho0);

/// One root-to-leaf path drawn with the exact path probabilities.
Transcript sample_trajectory(const Strategy &strategy, const UnitaryMatrix &u, const QuantumState &rho0,
                             RandomSource &rng);

/// Mean of run_tree_exact over `samples` unitaries drawn from the ensemble on
/// n qubits. Draw s uses rng.child(s).
LeafDistribution ensemble_leaf_distribution(const Strategy &strategy, EnsembleKind ensemble, std::size_t n,
                                            const QuantumState &rho0, std::size_t samples, const RandomSource &rng);

/// Leaf distribution when every query is the maximally depolarizing channel
/// rho -> tr(rho) I / d. Each round contributes tr(F^dagger F) / d.
LeafDistribution depolarizing_reference(const Strategy &strategy, const QuantumState &rho0);

/// 1/2 sum |p - q| over the union of supports.
double tv_distance(const LeafDistribution &p, const LeafDistribution &q);
double tv_distance(std::span<const double> p, std::span<const double> q);

/// Largest success probability of any rule distinguishing two hypotheses whose
/// outcome distributions are at total variation distance tv: (1 + tv) / 2.
double lecam_success_bound(double tv);

/// Max over every node of the tree of |sum_child tr(F^dag F probe) - tr(probe)|
/// and |sum_child tr(F^dag F) - d|.
double child_sum_check(const Strategy &strategy, const ComplexMatrix &probe);

/// Number of leaves of the tree, or nullopt once it exceeds `cap`.
std::optional<std::size_t> count_leaves(const Strategy &strategy, std::size_t cap = kMaxExactLeaves);

struct HardnessOptions {
    std::size_t bootstrap_replicates = 200;
    /// Trajectories per unitary when the tree is too large to enumerate.
    std::size_t shots_per_unitary = 200;
};

struct HardnessReport {
    std::size_t n;
    std::size_t samples;
    /// TV between the two sample-mean distributions.
    double tv_plugin;
    /// Bootstrap bias-corrected TV, clamped to [0, 1].
    double tv_estimate;
    /// 95% basic bootstrap interval over unitary draws.
    double ci_low;
    double ci_high;
    double lecam_bound;
    /// True when leaf distributions were enumerated; false when sampled.
    bool exact;
    /// Number of symmetry classes (or leaves) compared.
    std::size_t cells;
};

/// Estimates the total variation distance between the GlobalHaar and
/// ProductHaar ensemble-averaged leaf distributions of `strategy` on n qubits,
/// with a bootstrap interval over unitary draws and the implied Le Cam bound. When the strategy has a labeler and rho0 is |0...0>, the
/// comparison runs on symmetry classes, which leaves the distance unchanged.
HardnessReport hardness_experiment(const Strategy &strategy, std::size_t n, const QuantumState &rho0,
                                   std::size_t samples, const RandomSource &rng, const HardnessOptions &options = {});

}  // namespace otoc_lab

#endif
