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

#ifndef OTOC_LAB_TOOLS_EXPERIMENT_H
#define OTOC_LAB_TOOLS_EXPERIMENT_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace otoc_lab::cli {

inline constexpr const char *kExperiments[] = {"weingarten-verify", "otoc-expectation", "distinguish",
                                               "learning-tree", "hardness-sweep"};

/// Thrown by parse_config; what() lists every problem, one per line.
class ConfigError : public std::invalid_argument {
   public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string> &problems() const { return problems_; }

   private:
    std::vector<std::string> problems_;
};

struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    std::optional<std::size_t> n;
    std::optional<std::size_t> k;
    std::optional<std::size_t> d;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> depth;
    std::optional<std::size_t> shots;
    std::optional<std::size_t> bootstrap;
    std::vector<std::size_t> n_values;
    std::string strategy;
    std::string output_path;
    std::string csv_path;

    nlohmann::json to_json() const;
};

ExperimentConfig parse_config(std::string_view text);
/// Re-runs every guard; parse_config calls this after reading fields, and the
/// CLI calls it again after applying flag overrides.
void validate_config(const ExperimentConfig &config);

/// The experiment-specific record. Depends only on the config.
nlohmann::json run_experiment(const ExperimentConfig &config);

/// {config, results, wall_time_ms, tool_version, timestamp}.
nlohmann::json execute(const ExperimentConfig &config);

/// Rows "n,tv,ci_low,ci_high" for a hardness-sweep result.
std::string sweep_csv(const nlohmann::json &results);

std::string_view report_schema();
std::string_view tool_version();

}  // namespace otoc_lab::cli

#endif
