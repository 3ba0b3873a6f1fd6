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

#include "stabtel/fixtures.h"

#include <stdexcept>

namespace stabtel {

DemoProblem bell_problem(int64_t d) {
    return {"example1", d, 2, {"Z^-1 Z", "X X"}, {{0}, {1}}, 1, {}};
}

DemoProblem five_qutrit_problem() {
    return {"example2",
            3,
            5,
            {"X X^2 X Z Z", "Z^2 Z I X I", "Z Z Z I X", "X X Z X Z^2", "I I Z^2 X^2 I"},
            {{0, 1}, {2, 3, 4}},
            1,
            {}};
}

DemoProblem eight_qubit_problem(char variant) {
    DemoProblem p{"",
                  2,
                  8,
                  {"X Y I I I Z Y I", "X Z I I I X Y I", "I I Z Y Z I Y X", "I I Z I X I Y Z", "I I Z Z X Y X Y",
                   "I I X X Z Y Z Y", "Z X I Z X I I I"},
                  {},
                  2,
                  {}};
    if (variant == 'a') {
        p.name = "example3a";
        p.partition = {{0, 1}, {2, 3, 4}, {5, 6, 7}};
    } else if (variant == 'b') {
        p.name = "example3b";
        p.partition = {{0, 5}, {2, 7}, {1, 3, 4, 6}};
        p.generators[4] = "- I X Z X Z I X I";
        p.generators[5] = "- I X X X Z I Z Y";
        p.generators[6] = "- Z I I Z X Y I I";
        p.decomposition = {{0, 1}, {2, 3}, {4, 5, 6}};
    } else {
        throw std::invalid_argument(std::string("unknown eight-qubit variant '") + variant + "'");
    }
    return p;
}

std::optional<DemoProblem> demo_problem(const std::string &name) {
    if (name == "example1") {
        return bell_problem(2);
    }
    if (name == "example2") {
        return five_qutrit_problem();
    }
    if (name == "example3a") {
        return eight_qubit_problem('a');
    }
    if (name == "example3b") {
        return eight_qubit_problem('b');
    }
    return std::nullopt;
}

std::vector<std::string> demo_names() {
    return {"example1", "example2", "example3a", "example3b"};
}

}  // namespace stabtel
