# Copyright 2026 The stabtel Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Qudit stabilizer toolkit for perfect many-to-one teleportation.

Problems are passed as JSON or text-form strings (see the README); reports
come back as plain dictionaries.
"""

import json

from ._stabtel import (
    ParseError,
    PauliOperator,
    commutation_exponent,
    in_g_prime,
    projector_rank,
    receiver_unitary,
)
from . import _stabtel

__all__ = [
    "ParseError",
    "PauliOperator",
    "check",
    "commutation_exponent",
    "demo_problem",
    "in_g_prime",
    "normalize_problem",
    "projector_rank",
    "receiver_unitary",
    "simulate",
    "synthesize",
]


def _text(problem):
    return problem if isinstance(problem, str) else json.dumps(problem)


def demo_problem(name):
    """Built-in problem as a dict: example1, example2, example3a, example3b."""
    return json.loads(_stabtel.demo_problem(name))


def normalize_problem(problem):
    """Parses and re-serializes a problem, returning the canonical dict."""
    return json.loads(_stabtel.normalize_problem(_text(problem)))


def check(problem):
    """Projector rank, decomposition and capacities."""
    return json.loads(_stabtel.check_json(_text(problem)))


def synthesize(problem):
    """The protocol file contents as a dict."""
    return json.loads(_stabtel.synthesize_json(_text(problem)))


def simulate(problem_or_protocol, trials=1, seed=1, mode="auto"):
    """Runs a problem (synthesizing first) or a protocol dict."""
    return json.loads(_stabtel.simulate_json(_text(problem_or_protocol), trials, seed, mode))
