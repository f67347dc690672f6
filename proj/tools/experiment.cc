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

#include "experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <set>
#include <sstream>

#include "otoc_lab/learning_tree.h"
#include "otoc_lab/otoc.h"
#include "otoc_lab/permutation.h"
#include "otoc_lab/strategies.h"
#include "otoc_lab/weingarten.h"
#include "report_schema.inc"

namespace otoc_lab::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxListedLeaves = 4096;
constexpr std::size_t kMaxOrthogonalityOrder = 6;

std::string join_lines(const std::vector<std::string> &problems) {
    std::string out = "invalid config:";
    for (const std::string &p : problems) {
        out += "\n  - " + p;
    }
    return out;
}

bool is_known_experiment(const std::string &name) {
    return std::find(std::begin(kExperiments), std::end(kExperiments), name) != std::end(kExperiments);
}

void check_qubits(std::size_t n, const std::string &field, std::vector<std::string> &problems) {
    if (n % 2 != 0) {
        problems.push_back(field + ": n must be even, got " + std::to_string(n));
    } else if (n < 2 || n > OtocInstance::kMaxQubits) {
        problems.push_back(field + ": n must be in [2, 10], got " + std::to_string(n));
    }
}

void check_strategy(const ExperimentConfig &config, std::vector<std::string> &problems) {
    std::vector<StrategyInfo> known = list_strategies();
    auto it = std::find_if(known.begin(), known.end(), [&](const StrategyInfo &s) { return s.name == config.strategy; });
    if (it == known.end()) {
        problems.push_back("strategy: unknown strategy '" + config.strategy + "' (see list-strategies)");
        return;
    }
    if (it->fixed_depth) {
        if (config.depth && *config.depth != *it->fixed_depth) {
            problems.push_back("depth: strategy '" + config.strategy + "' has fixed depth " +
                               std::to_string(*it->fixed_depth));
        }
    } else if (!config.depth) {
        problems.push_back("depth: required for strategy '" + config.strategy + "'");
    } else if (*config.depth == 0) {
        problems.push_back("depth: must be positive");
    }
}

void check_minimum(const std::optional<std::size_t> &value, std::size_t minimum, const std::string &field,
                   std::vector<std::string> &problems) {
    if (value && *value < minimum) {
        problems.push_back(field + ": must be at least " + std::to_string(minimum) + ", got " +
                           std::to_string(*value));
    }
}

std::size_t value_or(const std::optional<std::size_t> &value, std::size_t fallback) {
    return value.value_or(fallback);
}

json confidence_interval(double center, double halfwidth) { return json::array({center - halfwidth, center + halfwidth}); }

QuantumState zero_state(std::size_t n) { return QuantumState::basis(std::size_t{1} << n, 0); }

// ---------------------------------------------------------------------------

json run_weingarten(const ExperimentConfig &config) {
    std::size_t k = *config.k;
    std::size_t d = *config.d;
    WeingartenTable table = weingarten_table(k, d);
    BigRational absolute_sum = absolute_weingarten_sum(table);
    BigRational expected = falling_factorial_reciprocal(k, d);
    json out;
    out["k"] = k;
    out["d"] = d;
    out["table"] = to_json(table);
    out["orthogonality"] = k <= kMaxOrthogonalityOrder ? json(orthogonality_holds(table)) : json(nullptr);
    out["absolute_sum"] = {{"value", rational_to_json(absolute_sum)},
                     {"expected", rational_to_json(expected)},
                     {"equal", absolute_sum == expected}};
    out["asymptotics"] = to_json(wg_asymptotic_report(k, d));
    return out;
}

json run_otoc_expectation(const ExperimentConfig &config) {
    std::size_t n = *config.n;
    std::size_t samples = value_or(config.samples, 10000);
    BigRational exact = expected_otoc_exact(n);
    json out;
    out["n"] = n;
    out["exact"] = rational_to_json(exact);
    out["exact_value"] = exact.get_d();
    if (n <= 6) {
        BigRational via_moments = expected_otoc_weingarten(n);
        out["weingarten"] = rational_to_json(via_moments);
        out["cross_check"] = via_moments == exact;
    } else {
        out["weingarten"] = nullptr;
        out["cross_check"] = nullptr;
    }
    MeanEstimate mc = monte_carlo_expected_otoc(n, samples, RandomSource(config.seed));
    double deviation = mc.standard_error > 0 ? std::abs(mc.estimate - exact.get_d()) / mc.standard_error : 0.0;
    out["monte_carlo"] = {{"samples", samples},
                          {"estimate", mc.estimate},
                          {"standard_error", mc.standard_error},
                          {"deviation_sigma", deviation}};
    return out;
}

json run_distinguish(const ExperimentConfig &config) {
    std::size_t n = *config.n;
    std::size_t trials = value_or(config.trials, 2000);
    std::size_t shots = value_or(config.shots, 1);
    SuccessEstimate estimate = success_probability(n, trials, RandomSource(config.seed), shots);
    return {{"n", n},
            {"trials", estimate.trials},
            {"shots", shots},
            {"success_rate", estimate.success_rate},
            {"ci", confidence_interval(estimate.success_rate, estimate.ci_halfwidth)},
            {"seed", config.seed}};
}

json run_learning_tree(const ExperimentConfig &config) {
    std::size_t n = *config.n;
    std::size_t samples = value_or(config.samples, 100);
    Strategy strategy = make_strategy(config.strategy, n, value_or(config.depth, 0), config.seed);
    std::optional<std::size_t> leaves = count_leaves(strategy);
    if (!leaves) {
        throw std::invalid_argument("strategy '" + strategy.name() + "' at n=" + std::to_string(n) +
                                    " has more than " + std::to_string(kMaxExactLeaves) +
                                    " transcripts; use hardness-sweep, which samples trajectories");
    }
    QuantumState rho0 = zero_state(n);
    RandomSource rng(config.seed);
    LeafDistribution global = ensemble_leaf_distribution(strategy, EnsembleKind::GlobalHaar, n, rho0, samples, rng.child(0));
    LeafDistribution product = ensemble_leaf_distribution(strategy, EnsembleKind::ProductHaar, n, rho0, samples, rng.child(1));
    LeafDistribution depolarized = depolarizing_reference(strategy, rho0);
    json out;
    out["n"] = n;
    out["strategy"] = strategy.name();
    out["depth"] = strategy.depth();
    out["time_ordered"] = strategy.time_ordered();
    out["samples"] = samples;
    out["leaves"] = *leaves;
    out["tv_global_product"] = tv_distance(global, product);
    out["tv_global_depolarizing"] = tv_distance(global, depolarized);
    out["tv_product_depolarizing"] = tv_distance(product, depolarized);
    if (*leaves <= kMaxListedLeaves) {
        out["distributions"] = {{"global_haar", global.to_json()},
                                {"product_haar", product.to_json()},
                                {"depolarizing", depolarized.to_json()}};
    } else {
        out["distributions"] = nullptr;
    }
    return out;
}

json run_hardness_sweep(const ExperimentConfig &config) {
    std::vector<std::size_t> qubits = config.n_values.empty() ? std::vector<std::size_t>{2, 4, 6} : config.n_values;
    HardnessOptions options;
    options.bootstrap_replicates = value_or(config.bootstrap, options.bootstrap_replicates);
    options.shots_per_unitary = value_or(config.shots, options.shots_per_unitary);
    std::size_t samples = value_or(config.samples, 500);
    RandomSource rng(config.seed);
    json series = json::array();
    std::size_t depth = 0;
    for (std::size_t n : qubits) {
        Strategy strategy = make_strategy(config.strategy, n, value_or(config.depth, 0), config.seed);
        depth = strategy.depth();
        HardnessReport report = hardness_experiment(strategy, n, zero_state(n), samples, rng.child(n), options);
        series.push_back({{"n", n},
                          {"tv", report.tv_estimate},
                          {"tv_plugin", report.tv_plugin},
                          {"ci_low", report.ci_low},
                          {"ci_high", report.ci_high},
                          {"lecam_bound", report.lecam_bound},
                          {"exact", report.exact},
                          {"cells", report.cells}});
    }
    return {{"strategy", config.strategy},
            {"depth", depth},
            {"samples", samples},
            {"bootstrap_replicates", options.bootstrap_replicates},
            {"shots_per_unitary", options.shots_per_unitary},
            {"series", series}};
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm parts{};
    gmtime_r(&now, &parts);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &parts);
    return buffer;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::invalid_argument(join_lines(problems)), problems_(std::move(problems)) {}

json ExperimentConfig::to_json() const {
    json out;
    out["experiment"] = experiment;
    out["seed"] = seed;
    auto put = [&](const char *key, const std::optional<std::size_t> &value) {
        if (value) {
            out[key] = *value;
        }
    };
    put("n", n);
    put("k", k);
    put("d", d);
    put("samples", samples);
    put("trials", trials);
    put("depth", depth);
    put("shots", shots);
    put("bootstrap", bootstrap);
    if (!n_values.empty()) {
        out["n_values"] = n_values;
    }
    if (!strategy.empty()) {
        out["strategy"] = strategy;
    }
    if (!output_path.empty()) {
        out["output_path"] = output_path;
    }
    if (!csv_path.empty()) {
        out["csv_path"] = csv_path;
    }
    return out;
}

ExperimentConfig parse_config(std::string_view text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        throw ConfigError({"config is not valid JSON"});
    }
    if (!doc.is_object()) {
        throw ConfigError({"config must be a JSON object"});
    }
    std::vector<std::string> problems;
    ExperimentConfig config;

    auto read_count = [&](const char *key, std::optional<std::size_t> &target) {
        if (!doc.contains(key)) {
            return;
        }
        const json &value = doc[key];
        if (!value.is_number_unsigned()) {
            problems.push_back(std::string(key) + ": expected a non-negative integer");
            return;
        }
        target = value.get<std::size_t>();
    };
    auto read_string = [&](const char *key, std::string &target) {
        if (!doc.contains(key)) {
            return;
        }
        if (!doc[key].is_string()) {
            problems.push_back(std::string(key) + ": expected a string");
            return;
        }
        target = doc[key].get<std::string>();
    };

    static const std::set<std::string> known_keys = {"experiment", "seed",  "n",         "k",        "d",
                                                     "samples",    "trials", "depth",    "shots",    "bootstrap",
                                                     "n_values",   "strategy", "output_path", "csv_path"};
    for (const auto &item : doc.items()) {
        if (!known_keys.contains(item.key())) {
            problems.push_back(item.key() + ": unknown field");
        }
    }

    if (!doc.contains("experiment")) {
        problems.push_back("experiment: missing");
    } else {
        read_string("experiment", config.experiment);
    }
    if (!doc.contains("seed")) {
        problems.push_back("seed: missing");
    } else if (!doc["seed"].is_number_unsigned()) {
        problems.push_back("seed: expected an unsigned 64-bit integer");
    } else {
        config.seed = doc["seed"].get<std::uint64_t>();
    }
    read_count("n", config.n);
    read_count("k", config.k);
    read_count("d", config.d);
    read_count("samples", config.samples);
    read_count("trials", config.trials);
    read_count("depth", config.depth);
    read_count("shots", config.shots);
    read_count("bootstrap", config.bootstrap);
    read_string("strategy", config.strategy);
    read_string("output_path", config.output_path);
    read_string("csv_path", config.csv_path);
    if (doc.contains("n_values")) {
        const json &values = doc["n_values"];
        bool ok = values.is_array() && !values.empty();
        for (const json &v : values) {
            ok = ok && v.is_number_unsigned();
        }
        if (ok) {
            config.n_values = values.get<std::vector<std::size_t>>();
        } else {
            problems.push_back("n_values: expected a nonempty array of non-negative integers");
        }
    }

    try {
        validate_config(config);
    } catch (const ConfigError &e) {
        // Keep field-level problems from parsing, then add guard violations.
        for (const std::string &p : e.problems()) {
            if (std::find(problems.begin(), problems.end(), p) == problems.end()) {
                problems.push_back(p);
            }
        }
    }
    if (!problems.empty()) {
        throw ConfigError(std::move(problems));
    }
    return config;
}

void validate_config(const ExperimentConfig &config) {
    std::vector<std::string> problems;
    const std::string &e = config.experiment;
    if (e.empty()) {
        // Missing experiment is reported by the parser.
    } else if (!is_known_experiment(e)) {
        std::string names;
        for (const char *name : kExperiments) {
            names += (names.empty() ? "" : ", ") + std::string(name);
        }
        problems.push_back("experiment: unknown experiment '" + e + "' (expected one of " + names + ")");
    }
    auto require = [&](const std::optional<std::size_t> &value, const char *field) {
        if (!value) {
            problems.push_back(std::string(field) + ": required for experiment '" + e + "'");
            return false;
        }
        return true;
    };

    if (e == "weingarten-verify") {
        if (require(config.k, "k") && (*config.k == 0 || *config.k > kMaxGroupOrder)) {
            problems.push_back("k: must be in [1, 8], got " + std::to_string(*config.k));
        }
        if (require(config.d, "d") && config.k && *config.d < *config.k) {
            problems.push_back("d: d < k (d=" + std::to_string(*config.d) + ", k=" + std::to_string(*config.k) +
                               ") makes the Gram matrix singular");
        }
    } else if (e == "otoc-expectation" || e == "distinguish" || e == "learning-tree") {
        if (require(config.n, "n")) {
            check_qubits(*config.n, "n", problems);
        }
    } else if (e == "hardness-sweep") {
        for (std::size_t n : config.n_values) {
            check_qubits(n, "n_values", problems);
        }
        if (config.n) {
            problems.push_back("n: hardness-sweep takes n_values instead");
        }
    }
    if (e == "learning-tree" || e == "hardness-sweep") {
        ExperimentConfig with_default = config;
        if (with_default.strategy.empty()) {
            with_default.strategy = "comp-basis";
        }
        check_strategy(with_default, problems);
    }
    check_minimum(config.samples, e == "otoc-expectation" ? 100 : 10, "samples", problems);
    check_minimum(config.trials, 100, "trials", problems);
    check_minimum(config.shots, 1, "shots", problems);
    check_minimum(config.bootstrap, 20, "bootstrap", problems);
    if (!problems.empty()) {
        throw ConfigError(std::move(problems));
    }
}

json run_experiment(const ExperimentConfig &config) {
    validate_config(config);
    ExperimentConfig resolved = config;
    if (resolved.strategy.empty()) {
        resolved.strategy = "comp-basis";
    }
    const std::string &e = resolved.experiment;
    if (e == "weingarten-verify") {
        return run_weingarten(resolved);
    }
    if (e == "otoc-expectation") {
        return run_otoc_expectation(resolved);
    }
    if (e == "distinguish") {
        return run_distinguish(resolved);
    }
    if (e == "learning-tree") {
        return run_learning_tree(resolved);
    }
    return run_hardness_sweep(resolved);
}

json execute(const ExperimentConfig &config) {
    auto start = std::chrono::steady_clock::now();
    json results = run_experiment(config);
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return {{"config", config.to_json()},
            {"results", std::move(results)},
            {"wall_time_ms", elapsed},
            {"tool_version", tool_version()},
            {"timestamp", utc_timestamp()}};
}

std::string sweep_csv(const json &results) {
    std::ostringstream out;
    out.precision(17);
    out << "n,tv,ci_low,ci_high\n";
    for (const json &row : results.at("series")) {
        out << row.at("n").get<std::size_t>() << ',' << row.at("tv").get<double>() << ','
            << row.at("ci_low").get<double>() << ',' << row.at("ci_high").get<double>() << '\n';
    }
    return out.str();
}

std::string_view report_schema() { return kReportSchema; }

std::string_view tool_version() { return OTOC_LAB_VERSION; }

}  // namespace otoc_lab::cli
