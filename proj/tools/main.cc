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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "experiment.h"
#include "otoc_lab/strategies.h"

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open config '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary);
    out << contents;
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
}

}  // namespace

int main(int argc, char **argv) {
    using namespace otoc_lab;

    CLI::App app{"Haar-ensemble OTOC experiments: Weingarten tables, correlators, learning trees"};
    app.set_version_flag("--version", std::string(cli::tool_version()));
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::string out_path;
    CLI::App *run = app.add_subcommand("run", "run the experiment described by a JSON config");
    run->add_option("config", config_path, "path to the config file")->required();
    run->add_option("--seed", seed, "override the config seed");
    run->add_option("--samples", samples, "override the config sample count");
    run->add_option("--out", out_path, "write the report here instead of output_path or stdout");

    CLI::App *list = app.add_subcommand("list-strategies", "list the registered learning-tree strategies");
    CLI::App *schema = app.add_subcommand("schema", "print the JSON schema of run reports");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        for (const StrategyInfo &info : list_strategies()) {
            std::cout << info.name << (info.time_ordered ? "  [time-ordered]" : "  [out-of-time-order]");
            if (info.fixed_depth) {
                std::cout << "  [depth " << *info.fixed_depth << "]";
            }
            std::cout << "\n    " << info.description << "\n";
        }
        return 0;
    }
    if (schema->parsed()) {
        std::cout << cli::report_schema();
        return 0;
    }

    cli::ExperimentConfig config;
    try {
        config = cli::parse_config(read_file(config_path));
        if (seed) {
            config.seed = *seed;
        }
        if (samples) {
            (config.experiment == "distinguish" ? config.trials : config.samples) = *samples;
        }
        if (!out_path.empty()) {
            config.output_path = out_path;
        }
        cli::validate_config(config);
    } catch (const std::exception &e) {
        std::cerr << "otoc-lab: " << e.what() << "\n";
        return 2;
    }

    try {
        nlohmann::json report = cli::execute(config);
        std::string text = report.dump(2) + "\n";
        if (config.output_path.empty()) {
            std::cout << text;
        } else {
            write_file(config.output_path, text);
        }
        if (!config.csv_path.empty() && config.experiment == "hardness-sweep") {
            write_file(config.csv_path, cli::sweep_csv(report["results"]));
        }
    } catch (const std::exception &e) {
        std::cerr << "otoc-lab: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
