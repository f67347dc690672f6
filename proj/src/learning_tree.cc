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

#include "otoc_lab/learning_tree.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "otoc_lab/parallel.h"

namespace otoc_lab {

// ---------------------------------------------------------------------------
// Povm

Povm Povm::dense(std::vector<ComplexMatrix> elements) {
    validate_povm(elements);  // shape checks only; completeness is the caller's call
    Povm povm;
    povm.dimension_ = elements.front().rows();
    povm.elements_ = std::move(elements);
    return povm;
}

Povm Povm::rank_one(std::vector<ComplexVector> kets, std::vector<ComplexVector> bras) {
    if (kets.empty() || kets.size() != bras.size()) {
        throw std::invalid_argument("rank-one POVM needs matching, nonempty ket and bra lists");
    }
    std::size_t dim = kets.front().size();
    for (std::size_t i = 0; i < kets.size(); ++i) {
        if (kets[i].size() != dim || bras[i].size() != dim || dim == 0) {
            throw std::invalid_argument("rank-one POVM elements have mixed dimensions");
        }
    }
    Povm povm;
    povm.dimension_ = dim;
    povm.rank_one_ = true;
    povm.kets_ = std::move(kets);
    povm.bras_ = std::move(bras);
    return povm;
}

Povm Povm::computational_basis(std::size_t dim) {
    std::vector<ComplexVector> kets;
    kets.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        kets.push_back(basis_vector(dim, i));
    }
    std::vector<ComplexVector> bras = kets;
    return rank_one(std::move(kets), std::move(bras));
}

Povm Povm::orthonormal_basis(const ComplexMatrix &basis) {
    if (!basis.is_square()) {
        throw std::invalid_argument("basis matrix must be square");
    }
    std::vector<ComplexVector> kets;
    kets.reserve(basis.cols());
    for (std::size_t c = 0; c < basis.cols(); ++c) {
        kets.push_back(basis.column(c));
    }
    std::vector<ComplexVector> bras = kets;
    return rank_one(std::move(kets), std::move(bras));
}

Povm Povm::unitary(const ComplexMatrix &v) { return dense({v}); }

ComplexMatrix Povm::element(std::size_t i) const {
    if (rank_one_) {
        return ComplexMatrix::outer(kets_.at(i), bras_.at(i));
    }
    return elements_.at(i);
}

ComplexMatrix Povm::effect(std::size_t i) const {
    if (rank_one_) {
        ComplexMatrix result = ComplexMatrix::outer(bras_.at(i), bras_.at(i));
        result *= norm_squared(kets_[i]);
        return result;
    }
    return multiply(adjoint(elements_.at(i)), elements_.at(i));
}

double Povm::effect_trace(std::size_t i) const {
    if (rank_one_) {
        return norm_squared(kets_.at(i)) * norm_squared(bras_.at(i));
    }
    return norm_squared(elements_.at(i).entries());
}

Complex Povm::effect_overlap(std::size_t i, const ComplexMatrix &probe) const {
    if (probe.rows() != dimension_ || probe.cols() != dimension_) {
        throw std::invalid_argument("probe shape " + probe.shape_string() + " does not match POVM dimension " +
                                    std::to_string(dimension_));
    }
    if (rank_one_) {
        ComplexVector probed = otoc_lab::apply(probe, bras_.at(i));
        return norm_squared(kets_[i]) * inner_product(bras_[i], probed);
    }
    return conjugate_by(elements_.at(i), probe).trace();
}

ComplexVector Povm::apply(std::size_t i, std::span<const Complex> psi) const {
    if (rank_one_) {
        Complex amplitude = inner_product(bras_.at(i), psi);
        ComplexVector result = kets_[i];
        for (Complex &z : result) {
            z *= amplitude;
        }
        return result;
    }
    return otoc_lab::apply(elements_.at(i), psi);
}

double Povm::outcome_weight(std::size_t i, std::span<const Complex> psi) const {
    if (rank_one_) {
        return norm_squared(kets_.at(i)) * std::norm(inner_product(bras_.at(i), psi));
    }
    return norm_squared(otoc_lab::apply(elements_.at(i), psi));
}

ComplexMatrix Povm::apply(std::size_t i, const ComplexMatrix &rho) const {
    if (rank_one_) {
        ComplexVector probed = otoc_lab::apply(rho, bras_.at(i));
        Complex weight = inner_product(bras_[i], probed);
        ComplexMatrix result = ComplexMatrix::outer(kets_[i], kets_[i]);
        result *= weight;
        return result;
    }
    return conjugate_by(elements_.at(i), rho);
}

double validate_povm(std::span<const ComplexMatrix> elements) {
    if (elements.empty()) {
        throw std::invalid_argument("POVM has no elements");
    }
    std::size_t dim = elements.front().rows();
    for (const ComplexMatrix &f : elements) {
        if (!f.is_square() || f.rows() != dim) {
            throw std::invalid_argument("POVM elements must be square with one common dimension; found " +
                                        f.shape_string() + " alongside " + std::to_string(dim) + "x" +
                                        std::to_string(dim));
        }
    }
    ComplexMatrix total(dim, dim);
    for (const ComplexMatrix &f : elements) {
        total += multiply(adjoint(f), f);
    }
    return max_abs_difference(total, ComplexMatrix::identity(dim));
}

double validate_povm(const Povm &povm) {
    std::size_t dim = povm.dimension();
    ComplexMatrix total(dim, dim);
    for (std::size_t i = 0; i < povm.size(); ++i) {
        total += povm.effect(i);
    }
    return max_abs_difference(total, ComplexMatrix::identity(dim));
}

// ---------------------------------------------------------------------------
// Strategy and LeafDistribution

std::string transcript_string(std::span<const std::uint32_t> transcript) {
    std::ostringstream out;
    for (std::size_t i = 0; i < transcript.size(); ++i) {
        out << (i ? "." : "") << transcript[i];
    }
    return out.str();
}

Strategy::Strategy(std::string name, std::string description, std::size_t dimension, std::size_t depth,
                   bool time_ordered, Chooser chooser, Labeler labeler)
    : name_(std::move(name)),
      description_(std::move(description)),
      dimension_(dimension),
      depth_(depth),
      time_ordered_(time_ordered),
      chooser_(std::move(chooser)),
      labeler_(std::move(labeler)) {
    if (dimension_ == 0 || depth_ == 0) {
        throw std::invalid_argument("strategy needs positive dimension and depth");
    }
    if (!chooser_) {
        throw std::invalid_argument("strategy needs a chooser");
    }
}

Round Strategy::choose(std::span<const std::uint32_t> prefix) const {
    Round round = chooser_(prefix);
    if (!round.povm) {
        throw std::logic_error("strategy '" + name_ + "' returned no POVM at prefix (" + transcript_string(prefix) +
                               ")");
    }
    if (time_ordered_ && round.query != QueryKind::Forward) {
        throw std::logic_error("time-ordered strategy '" + name_ + "' queried the inverse at prefix (" +
                               transcript_string(prefix) + ")");
    }
    if (round.povm->dimension() != dimension_) {
        throw std::invalid_argument("strategy '" + name_ + "' emitted a POVM of dimension " +
                                    std::to_string(round.povm->dimension()) + ", expected " +
                                    std::to_string(dimension_));
    }
    return round;
}

LeafDistribution::LeafDistribution(std::vector<Transcript> transcripts, std::vector<double> probabilities)
    : transcripts_(std::move(transcripts)), probabilities_(std::move(probabilities)) {
    if (transcripts_.size() != probabilities_.size()) {
        throw std::invalid_argument("leaf distribution: transcript and probability counts differ");
    }
    for (std::size_t i = 1; i < transcripts_.size(); ++i) {
        if (!(transcripts_[i - 1] < transcripts_[i])) {
            throw std::invalid_argument("leaf distribution: transcripts must be sorted and unique");
        }
    }
}

double LeafDistribution::probability(std::span<const std::uint32_t> transcript) const {
    Transcript key(transcript.begin(), transcript.end());
    auto it = std::lower_bound(transcripts_.begin(), transcripts_.end(), key);
    if (it == transcripts_.end() || *it != key) {
        return 0.0;
    }
    return probabilities_[static_cast<std::size_t>(it - transcripts_.begin())];
}

double LeafDistribution::total_mass() const {
    double total = 0;
    for (double p : probabilities_) {
        total += p;
    }
    return total;
}

nlohmann::json LeafDistribution::to_json() const {
    nlohmann::json out = nlohmann::json::object();
    for (std::size_t i = 0; i < transcripts_.size(); ++i) {
        out[transcript_string(transcripts_[i])] = probabilities_[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tree walks

namespace {

class TreeWalker {
   public:
    TreeWalker(const Strategy &strategy, std::size_t cap) : strategy_(strategy), cap_(cap) {}

    Round fetch() {
        Round round = strategy_.choose(prefix_);
        if (!validated_.contains(round.povm)) {
            double defect = validate_povm(*round.povm);
            if (defect > kPovmTolerance) {
                std::ostringstream out;
                out << "POVM at transcript prefix (" << transcript_string(prefix_)
                    << ") violates completeness: ||sum F^dag F - I||_max = " << defect;
                throw std::invalid_argument(out.str());
            }
            validated_.insert(round.povm);
        }
        return round;
    }

    void count_leaf() {
        if (++leaves_ > cap_) {
            throw std::length_error("transcript space of strategy '" + strategy_.name() + "' exceeds " +
                                    std::to_string(cap_) + " leaves; use sample_trajectory instead");
        }
    }

    void reset() { prefix_.clear(); }
    bool at_leaf() const { return prefix_.size() == strategy_.depth(); }
    void push(std::uint32_t outcome) { prefix_.push_back(outcome); }
    void pop() { prefix_.pop_back(); }
    const Transcript &prefix() const { return prefix_; }
    std::size_t leaves() const { return leaves_; }

   private:
    const Strategy &strategy_;
    std::size_t cap_;
    Transcript prefix_;
    std::size_t leaves_ = 0;
    std::set<std::shared_ptr<const Povm>> validated_;  // owning, so addresses are never reused
};

struct LeafSink {
    std::vector<double> *probabilities;
    std::vector<Transcript> *transcripts;  // may be null

    void emit(const Transcript &prefix, double p) const {
        probabilities->push_back(p);
        if (transcripts) {
            transcripts->push_back(prefix);
        }
    }
};

void walk_pure(TreeWalker &walker, const ComplexMatrix &u, std::span<const Complex> psi, const LeafSink &sink) {
    Round round = walker.fetch();
    ComplexVector evolved = round.query == QueryKind::Forward ? otoc_lab::apply(u, psi) : apply_adjoint(u, psi);
    for (std::uint32_t i = 0; i < round.povm->size(); ++i) {
        ComplexVector child = round.povm->apply(i, evolved);
        walker.push(i);
        if (walker.at_leaf()) {
            walker.count_leaf();
            sink.emit(walker.prefix(), norm_squared(child));
        } else {
            walk_pure(walker, u, child, sink);
        }
        walker.pop();
    }
}

void walk_mixed(TreeWalker &walker, const ComplexMatrix &u, const ComplexMatrix &rho, const LeafSink &sink) {
    Round round = walker.fetch();
    ComplexMatrix evolved =
        round.query == QueryKind::Forward ? conjugate_by(u, rho) : conjugate_by(adjoint(u), rho);
    for (std::uint32_t i = 0; i < round.povm->size(); ++i) {
        ComplexMatrix child = round.povm->apply(i, evolved);
        walker.push(i);
        if (walker.at_leaf()) {
            walker.count_leaf();
            sink.emit(walker.prefix(), child.trace().real());
        } else {
            walk_mixed(walker, u, child, sink);
        }
        walker.pop();
    }
}

// Visits every internal node; fn(round) runs once per node before its children.
template <typename Fn>
void walk_structure(TreeWalker &walker, Fn &fn) {
    Round round = walker.fetch();
    fn(walker, round);
    for (std::uint32_t i = 0; i < round.povm->size(); ++i) {
        walker.push(i);
        if (walker.at_leaf()) {
            walker.count_leaf();
        } else {
            walk_structure(walker, fn);
        }
        walker.pop();
    }
}

void check_inputs(const Strategy &strategy, std::size_t u_dim, const QuantumState &rho0) {
    if (u_dim != strategy.dimension()) {
        throw std::invalid_argument("unitary dimension " + std::to_string(u_dim) + " does not match strategy '" +
                                    strategy.name() + "' dimension " + std::to_string(strategy.dimension()));
    }
    if (rho0.dimension() != strategy.dimension()) {
        throw std::invalid_argument("initial state dimension " + std::to_string(rho0.dimension()) +
                                    " does not match strategy dimension " + std::to_string(strategy.dimension()));
    }
}

std::vector<double> leaf_probabilities(const Strategy &strategy, const UnitaryMatrix &u, const QuantumState &rho0,
                                       std::vector<Transcript> *transcripts) {
    check_inputs(strategy, u.dimension(), rho0);
    TreeWalker walker(strategy, kMaxExactLeaves);
    std::vector<double> probabilities;
    LeafSink sink{&probabilities, transcripts};
    if (rho0.is_pure()) {
        walk_pure(walker, u.matrix(), rho0.amplitudes(), sink);
    } else {
        walk_mixed(walker, u.matrix(), rho0.density_matrix(), sink);
    }
    return probabilities;
}

std::vector<Transcript> enumerate_transcripts(const Strategy &strategy) {
    std::vector<Transcript> transcripts;
    TreeWalker walker(strategy, kMaxExactLeaves);
    auto collect = [&](TreeWalker &w, const Round &round) {
        if (w.prefix().size() + 1 == strategy.depth()) {
            Transcript leaf = w.prefix();
            leaf.push_back(0);
            for (std::uint32_t i = 0; i < round.povm->size(); ++i) {
                leaf.back() = i;
                transcripts.push_back(leaf);
            }
        }
    };
    walk_structure(walker, collect);
    return transcripts;
}

std::size_t sample_index(std::span<const double> weights, RandomSource &rng) {
    double total = 0;
    for (double w : weights) {
        total += w;
    }
    double target = rng.uniform() * total;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0) {
            last_positive = i;
            if (target < weights[i]) {
                return i;
            }
            target -= weights[i];
        }
    }
    return last_positive;
}

// Draws one path; the walker's validation cache is reused across calls.
Transcript sample_path(TreeWalker &walker, const ComplexMatrix &m, const QuantumState &rho0, RandomSource &rng) {
    walker.reset();
    std::vector<double> weights;
    if (rho0.is_pure()) {
        ComplexVector psi = rho0.amplitudes();
        while (!walker.at_leaf()) {
            Round round = walker.fetch();
            ComplexVector evolved =
                round.query == QueryKind::Forward ? otoc_lab::apply(m, psi) : apply_adjoint(m, psi);
            weights.resize(round.povm->size());
            for (std::size_t i = 0; i < weights.size(); ++i) {
                weights[i] = round.povm->outcome_weight(i, evolved);
            }
            std::size_t outcome = sample_index(weights, rng);
            double scale = weights[outcome] > 0 ? 1.0 / std::sqrt(weights[outcome]) : 0.0;
            psi = round.povm->apply(outcome, evolved);
            for (Complex &z : psi) {
                z *= scale;
            }
            walker.push(static_cast<std::uint32_t>(outcome));
        }
    } else {
        ComplexMatrix rho = rho0.density_matrix();
        while (!walker.at_leaf()) {
            Round round = walker.fetch();
            ComplexMatrix evolved =
                round.query == QueryKind::Forward ? conjugate_by(m, rho) : conjugate_by(adjoint(m), rho);
            std::vector<ComplexMatrix> children;
            weights.clear();
            for (std::size_t i = 0; i < round.povm->size(); ++i) {
                children.push_back(round.povm->apply(i, evolved));
                weights.push_back(std::max(0.0, children.back().trace().real()));
            }
            std::size_t outcome = sample_index(weights, rng);
            rho = std::move(children[outcome]);
            if (weights[outcome] > 0) {
                rho *= 1.0 / weights[outcome];
            }
            walker.push(static_cast<std::uint32_t>(outcome));
        }
    }
    return walker.prefix();
}

bool is_zero_state(const QuantumState &rho0) {
    if (!rho0.is_pure()) {
        return false;
    }
    const ComplexVector &amplitudes = rho0.amplitudes();
    if (std::abs(amplitudes[0] - Complex(1.0)) > 1e-12) {
        return false;
    }
    for (std::size_t i = 1; i < amplitudes.size(); ++i) {
        if (amplitudes[i] != Complex{}) {
            return false;
        }
    }
    return true;
}

using SparseHistogram = std::vector<std::pair<std::size_t, double>>;

}  // namespace

LeafDistribution run_tree_exact(const Strategy &strategy, const UnitaryMatrix &u, const QuantumState &rho0) {
    std::vector<Transcript> transcripts;
    std::vector<double> probabilities = leaf_probabilities(strategy, u, rho0, &transcripts);
    return LeafDistribution(std::move(transcripts), std::move(probabilities));
}

Transcript sample_trajectory(const Strategy &strategy, const UnitaryMatrix &u, const QuantumState &rho0,
                             RandomSource &rng) {
    check_inputs(strategy, u.dimension(), rho0);
    TreeWalker walker(strategy, std::numeric_limits<std::size_t>::max());
    return sample_path(walker, u.matrix(), rho0, rng);
}

LeafDistribution ensemble_leaf_distribution(const Strategy &strategy, EnsembleKind ensemble, std::size_t n,
                                            const QuantumState &rho0, std::size_t samples, const RandomSource &rng) {
    OtocInstance instance(n);
    if (samples < 10) {
        throw std::invalid_argument("ensemble_leaf_distribution: need at least 10 samples");
    }
    check_inputs(strategy, instance.dimension(), rho0);
    std::vector<Transcript> transcripts = enumerate_transcripts(strategy);
    std::vector<double> total(transcripts.size(), 0.0);
    // Blocks are summed in draw order so the result is independent of threading.
    std::size_t block = std::max<std::size_t>(16, 2 * worker_count());
    for (std::size_t start = 0; start < samples; start += block) {
        std::size_t count = std::min(block, samples - start);
        std::vector<std::vector<double>> results(count);
        parallel_for(count, [&](std::size_t offset) {
            RandomSource stream = rng.child(start + offset);
            UnitaryMatrix u = sample_ensemble(ensemble, n, stream);
            results[offset] = leaf_probabilities(strategy, u, rho0, nullptr);
        });
        for (const std::vector<double> &probabilities : results) {
            for (std::size_t i = 0; i < total.size(); ++i) {
                total[i] += probabilities[i];
            }
        }
    }
    for (double &p : total) {
        p /= static_cast<double>(samples);
    }
    return LeafDistribution(std::move(transcripts), std::move(total));
}

LeafDistribution depolarizing_reference(const Strategy &strategy, const QuantumState &rho0) {
    check_inputs(strategy, strategy.dimension(), rho0);
    double dim = static_cast<double>(strategy.dimension());
    std::vector<Transcript> transcripts;
    std::vector<double> probabilities;
    TreeWalker walker(strategy, kMaxExactLeaves);
    std::vector<double> mass{1.0};  // mass of each prefix on the current path
    auto visit = [&](auto &self) -> void {
        Round round = walker.fetch();
        for (std::uint32_t i = 0; i < round.povm->size(); ++i) {
            double p = mass.back() * round.povm->effect_trace(i) / dim;
            walker.push(i);
            if (walker.at_leaf()) {
                walker.count_leaf();
                transcripts.push_back(walker.prefix());
                probabilities.push_back(p);
            } else {
                mass.push_back(p);
                self(self);
                mass.pop_back();
            }
            walker.pop();
        }
    };
    visit(visit);
    return LeafDistribution(std::move(transcripts), std::move(probabilities));
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("tv_distance: distributions over different cell counts");
    }
    double total = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        total += std::abs(p[i] - q[i]);
    }
    return 0.5 * total;
}

double tv_distance(const LeafDistribution &p, const LeafDistribution &q) {
    const auto &pt = p.transcripts();
    const auto &qt = q.transcripts();
    const auto &pp = p.probabilities();
    const auto &qp = q.probabilities();
    std::size_t i = 0;
    std::size_t j = 0;
    double total = 0;
    while (i < pt.size() || j < qt.size()) {
        if (j == qt.size() || (i < pt.size() && pt[i] < qt[j])) {
            total += std::abs(pp[i++]);
        } else if (i == pt.size() || qt[j] < pt[i]) {
            total += std::abs(qp[j++]);
        } else {
            total += std::abs(pp[i++] - qp[j++]);
        }
    }
    return 0.5 * total;
}

double lecam_success_bound(double tv) {
    if (!(tv >= 0.0 && tv <= 1.0)) {
        throw std::invalid_argument("lecam_success_bound: total variation " + std::to_string(tv) +
                                    " is outside [0, 1]");
    }
    return 0.5 * (1.0 + tv);
}

double child_sum_check(const Strategy &strategy, const ComplexMatrix &probe) {
    if (probe.rows() != strategy.dimension() || probe.cols() != strategy.dimension()) {
        throw std::invalid_argument("probe shape " + probe.shape_string() + " does not match strategy dimension " +
                                    std::to_string(strategy.dimension()));
    }
    double probe_trace = probe.trace().real();
    double dim = static_cast<double>(strategy.dimension());
    double worst = 0;
    TreeWalker walker(strategy, kMaxExactLeaves);
    auto check = [&](TreeWalker &, const Round &round) {
        Complex overlap = 0;
        double traces = 0;
        for (std::size_t i = 0; i < round.povm->size(); ++i) {
            overlap += round.povm->effect_overlap(i, probe);
            traces += round.povm->effect_trace(i);
        }
        worst = std::max({worst, std::abs(overlap - probe_trace), std::abs(traces - dim)});
    };
    walk_structure(walker, check);
    return worst;
}

std::optional<std::size_t> count_leaves(const Strategy &strategy, std::size_t cap) {
    // Only the last level needs visiting per node; count children there
    // instead of walking every leaf.
    std::size_t leaves = 0;
    Transcript prefix;
    auto visit = [&](auto &self) -> bool {
        Round round = strategy.choose(prefix);
        if (prefix.size() + 1 == strategy.depth()) {
            leaves += round.povm->size();
            return leaves <= cap;
        }
        for (std::uint32_t i = 0; i < round.povm->size(); ++i) {
            prefix.push_back(i);
            bool ok = self(self);
            prefix.pop_back();
            if (!ok) {
                return false;
            }
        }
        return true;
    };
    if (!visit(visit)) {
        return std::nullopt;
    }
    return leaves;
}

HardnessReport hardness_experiment(const Strategy &strategy, std::size_t n, const QuantumState &rho0,
                                   std::size_t samples, const RandomSource &rng, const HardnessOptions &options) {
    OtocInstance instance(n);
    check_inputs(strategy, instance.dimension(), rho0);
    if (samples < 10) {
        throw std::invalid_argument("hardness_experiment: need at least 10 samples per ensemble");
    }
    if (options.bootstrap_replicates < 20 || options.shots_per_unitary == 0) {
        throw std::invalid_argument("hardness_experiment: need >= 20 bootstrap replicates and positive shots");
    }
    const bool use_labels = static_cast<bool>(strategy.labeler()) && is_zero_state(rho0);
    const bool exact = count_leaves(strategy).has_value();

    // Cell keys: the symmetry label (split into two words) or the transcript itself.
    auto key_of = [&](const Transcript &transcript) -> Transcript {
        if (!use_labels) {
            return transcript;
        }
        std::uint64_t label = strategy.labeler()(transcript);
        return {static_cast<std::uint32_t>(label >> 32), static_cast<std::uint32_t>(label)};
    };

    std::map<Transcript, std::size_t> cell_of;
    std::vector<std::size_t> leaf_cell;
    if (exact) {
        std::vector<Transcript> transcripts = enumerate_transcripts(strategy);
        std::vector<Transcript> keys;
        keys.reserve(transcripts.size());
        for (const Transcript &t : transcripts) {
            keys.push_back(key_of(t));
            cell_of.emplace(keys.back(), 0);
        }
        std::size_t next = 0;
        for (auto &[key, index] : cell_of) {
            index = next++;
        }
        leaf_cell.reserve(keys.size());
        for (const Transcript &key : keys) {
            leaf_cell.push_back(cell_of[key]);
        }
    }

    // Per-draw histograms. In sampled mode cells are keyed by transcript until
    // every draw is in, then renumbered.
    const EnsembleKind kinds[2] = {EnsembleKind::GlobalHaar, EnsembleKind::ProductHaar};
    std::vector<SparseHistogram> histograms[2];
    std::vector<std::map<Transcript, double>> sampled[2];
    for (int e = 0; e < 2; ++e) {
        histograms[e].resize(samples);
        if (!exact) {
            sampled[e].resize(samples);
        }
        RandomSource ensemble_rng = rng.child(static_cast<std::uint64_t>(e));
        parallel_for(samples, [&](std::size_t s) {
            RandomSource stream = ensemble_rng.child(s);
            UnitaryMatrix u = sample_ensemble(kinds[e], n, stream);
            if (exact) {
                std::vector<double> probabilities = leaf_probabilities(strategy, u, rho0, nullptr);
                std::vector<double> dense(cell_of.size(), 0.0);
                for (std::size_t leaf = 0; leaf < probabilities.size(); ++leaf) {
                    dense[leaf_cell[leaf]] += probabilities[leaf];
                }
                SparseHistogram &h = histograms[e][s];
                for (std::size_t c = 0; c < dense.size(); ++c) {
                    if (dense[c] != 0.0) {
                        h.emplace_back(c, dense[c]);
                    }
                }
            } else {
                double weight = 1.0 / static_cast<double>(options.shots_per_unitary);
                TreeWalker walker(strategy, std::numeric_limits<std::size_t>::max());
                for (std::size_t shot = 0; shot < options.shots_per_unitary; ++shot) {
                    sampled[e][s][key_of(sample_path(walker, u.matrix(), rho0, stream))] += weight;
                }
            }
        });
    }
    if (!exact) {
        for (int e = 0; e < 2; ++e) {
            for (const auto &h : sampled[e]) {
                for (const auto &[key, weight] : h) {
                    cell_of.emplace(key, 0);
                }
            }
        }
        std::size_t next = 0;
        for (auto &[key, index] : cell_of) {
            index = next++;
        }
        for (int e = 0; e < 2; ++e) {
            for (std::size_t s = 0; s < samples; ++s) {
                for (const auto &[key, weight] : sampled[e][s]) {
                    histograms[e][s].emplace_back(cell_of[key], weight);
                }
            }
        }
    }
    const std::size_t cells = cell_of.size();

    auto mean_of = [&](int e, const std::vector<std::size_t> &draws) {
        std::vector<double> mean(cells, 0.0);
        for (std::size_t s : draws) {
            for (const auto &[cell, weight] : histograms[e][s]) {
                mean[cell] += weight;
            }
        }
        for (double &m : mean) {
            m /= static_cast<double>(draws.size());
        }
        return mean;
    };

    std::vector<std::size_t> all(samples);
    for (std::size_t s = 0; s < samples; ++s) {
        all[s] = s;
    }
    double estimate = tv_distance(mean_of(0, all), mean_of(1, all));

    std::vector<double> replicates(options.bootstrap_replicates);
    RandomSource bootstrap_rng = rng.child(2);
    parallel_for(options.bootstrap_replicates, [&](std::size_t r) {
        RandomSource stream = bootstrap_rng.child(r);
        std::vector<std::size_t> draws[2];
        for (int e = 0; e < 2; ++e) {
            draws[e].resize(samples);
            for (std::size_t &s : draws[e]) {
                s = static_cast<std::size_t>(stream.next_u64() % samples);
            }
        }
        replicates[r] = tv_distance(mean_of(0, draws[0]), mean_of(1, draws[1]));
    });
    // The plug-in distance is biased upward by the noise in both mean
    // histograms, so report the bootstrap bias-corrected value with the basic
    // (reverse percentile) interval around it.
    std::sort(replicates.begin(), replicates.end());
    std::size_t b = replicates.size();
    double replicate_mean = 0;
    for (double r : replicates) {
        replicate_mean += r;
    }
    replicate_mean /= static_cast<double>(b);
    std::size_t low_index = static_cast<std::size_t>(std::floor(0.025 * static_cast<double>(b)));
    std::size_t high_index = std::min(b - 1, static_cast<std::size_t>(std::ceil(0.975 * static_cast<double>(b))) - 1);
    auto unit = [](double x) { return std::clamp(x, 0.0, 1.0); };

    HardnessReport report;
    report.n = n;
    report.samples = samples;
    report.tv_plugin = estimate;
    report.tv_estimate = unit(2 * estimate - replicate_mean);
    report.ci_low = unit(2 * estimate - replicates[high_index]);
    report.ci_high = unit(2 * estimate - replicates[low_index]);
    report.lecam_bound = lecam_success_bound(report.tv_estimate);
    report.exact = exact;
    report.cells = cells;
    return report;
}

}  // namespace otoc_lab
