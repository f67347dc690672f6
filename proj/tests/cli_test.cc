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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "experiment.h"

namespace otoc_lab::cli {
namespace {

using nlohmann::json;

std::vector<std::string> problems_of(const std::string &text) {
    try {
        parse_config(text);
    } catch (const ConfigError &e) {
        return e.problems();
    }
    return {};
}

bool mentions(const std::vector<std::string> &problems, const std::string &needle) {
    for (const std::string &p : problems) {
        if (p.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

TEST(ParseConfig, ValidExample) {
    ExperimentConfig c = parse_config(R"({"experiment":"otoc-expectation","n":4,"samples":10000,"seed":7})");
    EXPECT_EQ(c.experiment, "otoc-expectation");
    EXPECT_EQ(c.n, 4u);
    EXPECT_EQ(c.samples, 10000u);
    EXPECT_EQ(c.seed, 7u);
}

TEST(ParseConfig, SeedUsesAllSixtyFourBits) {
    ExperimentConfig c = parse_config(R"({"experiment":"distinguish","n":2,"seed":18446744073709551615})");
    EXPECT_EQ(c.seed, 18446744073709551615ULL);
}

TEST(ParseConfig, DimensionBelowOrder) {
    auto p = problems_of(R"({"experiment":"weingarten-verify","k":2,"d":1,"seed":1})");
    ASSERT_EQ(p.size(), 1u);
    EXPECT_TRUE(mentions(p, "d < k"));
}

TEST(ParseConfig, OddQubitCount) {
    auto p = problems_of(R"({"experiment":"distinguish","n":3,"trials":2000,"seed":1})");
    EXPECT_TRUE(mentions(p, "n must be even"));
}

TEST(ParseConfig, ListsEveryProblem) {
    auto p = problems_of(R"({"experiment":"learning-tree","n":5,"samples":-3,"strategy":"nope","colour":1})");
    EXPECT_TRUE(mentions(p, "seed: missing"));
    EXPECT_TRUE(mentions(p, "n must be even"));
    EXPECT_TRUE(mentions(p, "samples"));
    EXPECT_TRUE(mentions(p, "unknown strategy"));
    EXPECT_TRUE(mentions(p, "colour: unknown field"));
    EXPECT_GE(p.size(), 5u);
}

TEST(ParseConfig, UnknownExperimentAndBadJson) {
    EXPECT_TRUE(mentions(problems_of(R"({"experiment":"teleport","seed":1})"), "unknown experiment"));
    EXPECT_TRUE(mentions(problems_of("{not json"), "not valid JSON"));
    EXPECT_TRUE(mentions(problems_of("[1, 2]"), "JSON object"));
    EXPECT_TRUE(mentions(problems_of(R"({"seed":1})"), "experiment: missing"));
}

TEST(ParseConfig, StrategyDepthRules) {
    EXPECT_TRUE(mentions(problems_of(R"({"experiment":"learning-tree","n":2,"strategy":"comp-basis","seed":1})"),
                         "depth: required"));
    EXPECT_TRUE(mentions(
        problems_of(R"({"experiment":"learning-tree","n":2,"strategy":"oto-theorem1","depth":3,"seed":1})"),
        "fixed depth 2"));
    EXPECT_TRUE(problems_of(R"({"experiment":"learning-tree","n":2,"strategy":"oto-theorem1","seed":1})").empty());
    EXPECT_TRUE(mentions(problems_of(R"({"experiment":"hardness-sweep","n_values":[2,3],"depth":2,"seed":1})"),
                         "n must be even"));
}

TEST(Execute, OtocExpectationAtTwoQubits) {
    json r = run_experiment(parse_config(R"({"experiment":"otoc-expectation","n":2,"samples":10000,"seed":7})"));
    EXPECT_EQ(r["exact"]["num"], "7");
    EXPECT_EQ(r["exact"]["den"], "15");
    EXPECT_EQ(r["cross_check"], true);
    double estimate = r["monte_carlo"]["estimate"];
    double se = r["monte_carlo"]["standard_error"];
    EXPECT_LE(std::abs(estimate - 7.0 / 15.0), 4 * se);
}

TEST(Execute, WeingartenVerify) {
    json r = run_experiment(parse_config(R"({"experiment":"weingarten-verify","k":2,"d":2,"seed":1})"));
    EXPECT_EQ(r["table"]["entries"][0]["value"], (json{{"num", "1"}, {"den", "3"}}));
    EXPECT_EQ(r["table"]["entries"][1]["value"], (json{{"num", "-1"}, {"den", "6"}}));
    EXPECT_EQ(r["absolute_sum"]["value"], (json{{"num", "1"}, {"den", "2"}}));
    EXPECT_EQ(r["absolute_sum"]["equal"], true);
    EXPECT_EQ(r["orthogonality"], true);
}

TEST(Execute, Distinguish) {
    json r = run_experiment(parse_config(R"({"experiment":"distinguish","n":2,"trials":500,"seed":3})"));
    EXPECT_EQ(r["trials"], 500);
    EXPECT_EQ(r["seed"], 3);
    double rate = r["success_rate"];
    EXPECT_LE(r["ci"][0].get<double>(), rate);
    EXPECT_GE(r["ci"][1].get<double>(), rate);
}

TEST(Execute, LearningTreeDistributions) {
    json r = run_experiment(
        parse_config(R"({"experiment":"learning-tree","n":2,"strategy":"comp-basis","depth":2,"samples":50,"seed":5})"));
    EXPECT_EQ(r["leaves"], 16);
    double mass = 0;
    for (const auto &item : r["distributions"]["global_haar"].items()) {
        mass += item.value().get<double>();
    }
    EXPECT_NEAR(mass, 1.0, 1e-9);
    EXPECT_DOUBLE_EQ(r["distributions"]["depolarizing"]["0.3"].get<double>(), 1.0 / 16.0);
}

TEST(Execute, LearningTreeRefusesHugeTrees) {
    ExperimentConfig c =
        parse_config(R"({"experiment":"learning-tree","n":6,"strategy":"comp-basis","depth":4,"samples":10,"seed":5})");
    EXPECT_THROW(run_experiment(c), std::invalid_argument);
}

TEST(Execute, HardnessSweepAndCsv) {
    json r = run_experiment(parse_config(
        R"({"experiment":"hardness-sweep","strategy":"comp-basis","depth":4,"samples":20,"bootstrap":20,"shots":20,"seed":9})"));
    ASSERT_EQ(r["series"].size(), 3u);
    for (const json &row : r["series"]) {
        EXPECT_LE(row["ci_low"].get<double>(), row["ci_high"].get<double>());
    }
    std::string csv = sweep_csv(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,tv,ci_low,ci_high");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(Execute, ResultsAreReproducibleAcrossThreadCounts) {
    ExperimentConfig c = parse_config(
        R"({"experiment":"learning-tree","n":4,"strategy":"random-adaptive-oto","depth":2,"samples":30,"seed":11})");
    json a = run_experiment(c);
    setenv("OTOC_LAB_THREADS", "1", 1);
    json b = run_experiment(c);
    unsetenv("OTOC_LAB_THREADS");
    EXPECT_EQ(a.dump(), b.dump());
}

TEST(Execute, ReportEnvelope) {
    json report = execute(parse_config(R"({"experiment":"weingarten-verify","k":1,"d":3,"seed":2})"));
    EXPECT_EQ(report["tool_version"], std::string(tool_version()));
    EXPECT_EQ(report["config"]["experiment"], "weingarten-verify");
    EXPECT_TRUE(report["wall_time_ms"].is_number());
    EXPECT_EQ(report["timestamp"].get<std::string>().size(), 20u);
    EXPECT_FALSE(report_schema().empty());
    EXPECT_NO_THROW(json::parse(report_schema()));
}

}  // namespace
}  // namespace otoc_lab::cli
