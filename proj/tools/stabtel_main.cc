// Copyright 2026 The stabtel Authors
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

// stabtel check|synthesize|simulate|demo
//
// Exit codes: 0 success, 1 parse or validation error, 2 no decomposition
// with nonzero capacity, 3 simulation verdict IMPERFECT.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "stabtel/commands.h"

namespace {

void add_common(CLI::App *cmd, stabtel::CommandOptions &opts, std::string &mode) {
    cmd->add_option("--input,-i", opts.input, "Problem file (JSON or text form) or, for simulate, a protocol file");
    cmd->add_option("--demo", opts.demo, "Built-in problem: example1, example2, example3a, example3b");
    cmd->add_option("--out,-o", opts.out, "Where synthesize writes the protocol file");
    cmd->add_option("--seed", opts.seed, "Seed for random inputs and outcome sampling")->capture_default_str();
    cmd->add_option("--trials", opts.trials, "Independent random input sets to simulate")->capture_default_str();
    cmd->add_option("--mode", mode, "Outcome handling: auto, enumerate or sample")
        ->check(CLI::IsMember({"auto", "enumerate", "sample"}))
        ->capture_default_str();
    cmd->add_flag("--json", opts.json, "Emit reports as JSON");
    cmd->add_option("--budget", opts.budget, "Largest Hilbert-space dimension to materialize")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Stabilizer-state analysis and simulation of perfect many-to-one qudit teleportation"};
    app.require_subcommand(1);
    stabtel::CommandOptions opts;
    std::string mode = "auto";

    CLI::App *check = app.add_subcommand("check", "Report projector rank, decomposition and capacities");
    CLI::App *synth = app.add_subcommand("synthesize", "Build the measurement and recovery protocol");
    CLI::App *sim = app.add_subcommand("simulate", "Run the protocol on seeded random inputs");
    CLI::App *demo = app.add_subcommand("demo", "Check, synthesize and simulate a built-in example");
    for (CLI::App *cmd : {check, synth, sim, demo}) {
        add_common(cmd, opts, mode);
    }
    std::string demo_name;
    demo->add_option("name", demo_name, "example1, example2, example3a or example3b");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return stabtel::kExitInputError;
    }

    static const std::map<std::string, stabtel::OutcomeMode> modes{{"auto", stabtel::OutcomeMode::kAuto},
                                                                   {"enumerate", stabtel::OutcomeMode::kEnumerate},
                                                                   {"sample", stabtel::OutcomeMode::kSample}};
    opts.mode = modes.at(mode);
    if (!demo_name.empty()) {
        opts.demo = demo_name;
    }

    if (check->parsed()) {
        return stabtel::run_check(opts, std::cout, std::cerr);
    }
    if (synth->parsed()) {
        return stabtel::run_synthesize(opts, std::cout, std::cerr);
    }
    if (sim->parsed()) {
        return stabtel::run_simulate(opts, std::cout, std::cerr);
    }
    return stabtel::run_demo(opts, std::cout, std::cerr);
}
