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

// Problem and protocol files.
//
// A problem is accepted as JSON or in a line-oriented text form. Qudit and
// generator indices are 1-based in both forms and 0-based in memory; the
// receiver is the 0-based position of its part in the partition list.
//
//   {"d": 3, "n": 5,
//    "generators": ["X X^2 X Z Z", {"phase_gamma": 0, "x": [..], "z": [..]}],
//    "partition": [[1, 2], [3, 4, 5]], "receiver": 1,
//    "decomposition": [[1, 2, 3, 4], [5]],
//    "inputs": [{"seed": 7}, {"real": [[..]], "imag": [[..]]}]}
//
// The text form has one directive per line and '#' comments:
//
//   d 3
//   n 5
//   generator X X^2 X Z Z
//   part 1 2
//   receiver 3 4 5
//   group 1 2 3 4
//   group 5
//   seed 7

#ifndef STABTEL_PROBLEM_IO_H
#define STABTEL_PROBLEM_IO_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stabtel/decomposition.h"
#include "stabtel/fixtures.h"
#include "stabtel/pauli.h"
#include "stabtel/protocol.h"
#include "stabtel/stabilizer_group.h"

namespace stabtel {

/// Malformed or inconsistent input. The message starts with the location,
/// e.g. "line 4: ..." or "generators[2]: ...".
class ParseError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Message state for one sender: a seed for a random density matrix or an
/// explicit matrix.
struct MessageInput {
    std::optional<uint64_t> seed;
    ComplexMatrix matrix;

    bool operator==(const MessageInput &other) const;
};

struct ProblemSpec {
    int64_t d = 2;
    std::size_t n = 0;
    std::vector<PauliOperator> generators;
    std::vector<std::vector<std::size_t>> parts;
    std::size_t receiver = 0;
    /// Generator index groups to certify, senders first; empty when absent.
    std::vector<std::vector<std::size_t>> decomposition;
    /// Either empty or one entry per sender.
    std::vector<MessageInput> inputs;

    /// Throws std::invalid_argument when the generators do not form a group.
    StabilizerGroup group() const;
    Partition partition() const;

    bool operator==(const ProblemSpec &other) const = default;
};

/// Dispatches on the first non-blank character: '{' selects JSON.
ProblemSpec parse_problem(std::string_view text);
ProblemSpec parse_problem_json(std::string_view text);
ProblemSpec parse_problem_text(std::string_view text);

std::string problem_to_json(const ProblemSpec &spec);
std::string problem_to_text(const ProblemSpec &spec);

ProblemSpec problem_from_demo(const DemoProblem &demo);

/// Protocol files are JSON; the unitary is stored as separate real and
/// imaginary row arrays. Output bytes depend only on the protocol.
std::string protocol_to_json(const ProtocolSpec &spec);
ProtocolSpec parse_protocol(std::string_view text);

/// True when `text` is a JSON object with a "receiver_unitary" member.
bool looks_like_protocol(std::string_view text);

/// Whole-file helpers; throw std::runtime_error on I/O failure.
std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, std::string_view contents);

}  // namespace stabtel

#endif
