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

// The check, synthesize, simulate and demo commands behind the stabtel tool.

#ifndef STABTEL_COMMANDS_H
#define STABTEL_COMMANDS_H

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stabtel/dense_sim.h"
#include "stabtel/problem_io.h"
#include "stabtel/protocol.h"

namespace stabtel {

enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 1,
    kExitNoDecomposition = 2,
    kExitImperfect = 3,
};

struct CheckReport {
    int64_t d = 2;
    std::size_t n = 0;
    std::size_t k = 0;
    std::string partition;
    uint64_t projector_rank = 0;
    /// How the decomposition was obtained: "search" or "certified".
    std::string method;
    std::optional<Decomposition> decomposition;
    /// Search capacities, also reported when a user grouping was certified.
    std::optional<std::vector<std::size_t>> search_capacities;
    std::string diagnostic;

    bool pure() const {
        return projector_rank == 1;
    }
    /// A decomposition with nonzero total capacity.
    bool useful() const;
};

/// Group validity, rank and decomposition. A user grouping in the problem is
/// certified instead of searched for. Throws std::invalid_argument when the
/// generators do not form a valid group.
CheckReport check_problem(const ProblemSpec &problem);

/// The protocol for the report's decomposition; nullopt when !report.useful().
std::optional<ProtocolSpec> synthesize_from_report(const ProblemSpec &problem, const CheckReport &report);

struct TrialResult {
    uint64_t seed = 0;
    SimulationResult result;
};

struct SimulateRequest {
    std::size_t trials = 1;
    uint64_t seed = 1;
    SimulationOptions options;
    /// Explicit inputs override the seeded random ones on the first trial.
    std::vector<MessageInput> inputs;
};

/// Seeded random inputs, one per sender, of dimension d^{a_i}.
std::vector<DensityMatrix> seeded_inputs(const ProtocolSpec &spec, uint64_t seed);

std::vector<TrialResult> simulate_trials(const ProtocolSpec &spec, const SimulateRequest &request);

std::string format_check(const CheckReport &report, bool json);
std::string format_protocol_summary(const ProtocolSpec &spec);
std::string format_simulation(const std::vector<TrialResult> &trials, bool json);

/// Command-line options shared by all commands.
struct CommandOptions {
    std::optional<std::string> input;
    std::optional<std::string> demo;
    std::optional<std::string> out;
    uint64_t seed = 1;
    std::size_t trials = 1;
    OutcomeMode mode = OutcomeMode::kAuto;
    bool json = false;
    std::size_t budget = kDefaultBudget;
};

/// Each returns an ExitCode; reports go to `out`, diagnostics to `err`.
int run_check(const CommandOptions &options, std::ostream &out, std::ostream &err);
int run_synthesize(const CommandOptions &options, std::ostream &out, std::ostream &err);
int run_simulate(const CommandOptions &options, std::ostream &out, std::ostream &err);
int run_demo(const CommandOptions &options, std::ostream &out, std::ostream &err);

}  // namespace stabtel

#endif
