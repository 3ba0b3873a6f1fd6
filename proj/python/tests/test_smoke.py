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

import numpy as np
import pytest

import stabtel


def test_pauli_algebra():
    x = stabtel.PauliOperator.from_string("X", 3)
    z = stabtel.PauliOperator.from_string("Z", 3)
    assert stabtel.commutation_exponent(z, x) == 1
    zx = z * x
    assert np.allclose(zx.matrix(), z.matrix() @ x.matrix())
    assert str(stabtel.PauliOperator.from_string("X Z^2 I", 3)) == "X Z^2 I"
    assert stabtel.PauliOperator.from_string("X Z^2 I", 3).z == [0, 2, 0]
    assert stabtel.in_g_prime(stabtel.PauliOperator.from_string("Y", 2))


def test_projector_rank_of_mixed_example():
    p = stabtel.demo_problem("example3a")
    assert stabtel.projector_rank(p["generators"], p["d"], p["n"]) == 2


def test_check_reports_capacities():
    report = stabtel.check(stabtel.demo_problem("example3a"))
    assert report["capacities"] == [1, 2]
    assert not report["pure"]
    assert stabtel.check(stabtel.demo_problem("example3b"))["capacities"] == [1, 1]


def test_product_state_has_no_capacity():
    problem = {"d": 2, "n": 2, "generators": ["Z I", "I Z"], "partition": [[1], [2]], "receiver": 1}
    assert not stabtel.check(problem)["useful"]
    with pytest.raises(RuntimeError):
        stabtel.synthesize(problem)


def test_synthesize_and_simulate_bell_pair():
    problem = stabtel.demo_problem("example1")
    protocol = stabtel.synthesize(problem)
    assert protocol["capacities"] == [1]
    report = stabtel.simulate(protocol, trials=3, seed=5)
    assert report["verdict"] == "PERFECT"
    assert len(report["trials"]) == 3
    assert all(abs(o["probability"] - 0.25) < 1e-9 for o in report["trials"][0]["outcomes"])


def test_receiver_unitary_conjugates_bars():
    u = stabtel.receiver_unitary(["X"], ["Z"], 2, 1)
    x = stabtel.PauliOperator.from_string("X", 2).matrix()
    z = stabtel.PauliOperator.from_string("Z", 2).matrix()
    assert np.allclose(u @ u.conj().T, np.eye(2))
    assert np.allclose(u @ x @ u.conj().T, z)


def test_parse_errors_surface_as_value_error():
    with pytest.raises(ValueError, match="generators\\[0\\]"):
        stabtel.normalize_problem('{"d": 2, "n": 1, "generators": ["Q"], "partition": [[1]], "receiver": 0}')
