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

#ifndef STABTEL_FIXTURES_H
#define STABTEL_FIXTURES_H

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace stabtel {

/// A built-in teleportation problem. Qudit indices are 0-based.
struct DemoProblem {
    std::string name;
    int64_t d = 2;
    std::size_t n = 0;
    std::vector<std::string> generators;
    std::vector<std::vector<std::size_t>> partition;
    std::size_t receiver = 0;
    /// Optional generator index groups to certify, senders first.
    std::vector<std::vector<std::size_t>> decomposition;
};

/// Bell pair stabilizer <Z^-1 Z, X X> shared between qudit 0 (sender) and
/// qudit 1 (receiver).
DemoProblem bell_problem(int64_t d);

/// Five-qutrit pure state shared as {1,2} | {3,4,5}.
DemoProblem five_qutrit_problem();

/// Eight-qubit mixed state with seven generators. Variant a uses the
/// partition {1,2} | {3,4,5} | {6,7,8}. Variant b uses {1,6} | {3,8} |
/// {2,4,5,7} with the generators recombined as g1, g2, g3, g4, g1g2g3g4g5,
/// g1g2g6, g1g2g7 and the grouping <g1,g2> | <g3,g4> | <rest> to certify.
DemoProblem eight_qubit_problem(char variant);

/// "example1" (d=2), "example2", "example3a", "example3b".
std::optional<DemoProblem> demo_problem(const std::string &name);
std::vector<std::string> demo_names();

}  // namespace stabtel

#endif
