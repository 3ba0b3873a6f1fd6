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

"""Exit codes and report contents of the stabtel command-line tool.

Usage: cli_test.py STABTEL_BINARY DATA_DIR
"""

import json
import os
import subprocess
import sys
import tempfile
import unittest

BINARY = None
DATA = None


def run(*args):
    proc = subprocess.run([BINARY, *args], capture_output=True, text=True, timeout=300)
    return proc.returncode, proc.stdout, proc.stderr


def data(name):
    return os.path.join(DATA, name)


class CheckCommand(unittest.TestCase):
    def test_mixed_state_capacities(self):
        code, out, _ = run("check", "--input", data("example3a.json"))
        self.assertEqual(code, 0)
        self.assertIn("(1,2)", out)
        self.assertIn("projector rank 2 (mixed)", out)

    def test_bell_pair(self):
        code, out, _ = run("check", "--demo", "example1", "--json")
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report["total_capacity"], 1)
        self.assertEqual(report["projector_rank"], 1)

    def test_certified_grouping_reports_search_too(self):
        code, out, _ = run("check", "--input", data("example3b.json"), "--json")
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report["method"], "certified")
        self.assertEqual(report["capacities"], [1, 1])
        self.assertEqual(report["search_capacities"], [1, 2])

    def test_product_state_has_no_decomposition(self):
        code, out, _ = run("check", "--input", data("product_state.json"))
        self.assertEqual(code, 2)
        self.assertIn("no decomposition with t>0 found", out)

    def test_text_form(self):
        code, out, _ = run("check", "--input", data("example2.txt"), "--json")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["capacities"], [2])

    def test_parse_error(self):
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
            f.write('{"d": 2, "n": 2, "generators": ["Z Q"], "partition": [[1], [2]], "receiver": 1}')
        try:
            code, _, err = run("check", "--input", f.name)
        finally:
            os.unlink(f.name)
        self.assertEqual(code, 1)
        self.assertIn("generators[0]", err)

    def test_missing_input(self):
        self.assertEqual(run("check")[0], 1)
        self.assertEqual(run("check", "--input", data("does_not_exist.json"))[0], 1)
        self.assertEqual(run("check", "--demo", "example9")[0], 1)

    def test_bad_flag(self):
        self.assertEqual(run("check", "--mode", "sideways", "--demo", "example1")[0], 1)


class SynthesizeAndSimulate(unittest.TestCase):
    def setUp(self):
        self.dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.dir.cleanup()

    def path(self, name):
        return os.path.join(self.dir.name, name)

    def test_protocol_file_is_deterministic(self):
        for name in ("a.json", "b.json"):
            code, _, _ = run("synthesize", "--input", data("example2.json"), "--out", self.path(name))
            self.assertEqual(code, 0)
        with open(self.path("a.json"), "rb") as a, open(self.path("b.json"), "rb") as b:
            self.assertEqual(a.read(), b.read())

    def test_synthesize_refuses_zero_capacity(self):
        code, _, err = run("synthesize", "--input", data("product_state.json"), "--out", self.path("p.json"))
        self.assertEqual(code, 2)
        self.assertIn("refusing", err)
        self.assertFalse(os.path.exists(self.path("p.json")))

    def test_simulate_protocol_file(self):
        self.assertEqual(run("synthesize", "--demo", "example1", "--out", self.path("bell.json"))[0], 0)
        code, out, _ = run("simulate", "--input", self.path("bell.json"), "--trials", "3", "--json")
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report["verdict"], "PERFECT")
        self.assertEqual(len(report["trials"]), 3)
        self.assertEqual(len(report["trials"][0]["outcomes"]), 4)

    def test_swapped_correction_is_imperfect(self):
        self.assertEqual(run("synthesize", "--demo", "example1", "--out", self.path("bell.json"))[0], 0)
        with open(self.path("bell.json")) as f:
            protocol = json.load(f)
        corr = protocol["correction"]
        corr["x_coeffs"], corr["z_coeffs"] = corr["z_coeffs"], corr["x_coeffs"]
        with open(self.path("bad.json"), "w") as f:
            json.dump(protocol, f)
        code, out, _ = run("simulate", "--input", self.path("bad.json"))
        self.assertEqual(code, 3)
        self.assertIn("verdict IMPERFECT", out)

    def test_simulate_problem_with_sampling(self):
        code, out, _ = run("simulate", "--input", data("example3a.json"), "--mode", "sample", "--seed", "9")
        self.assertEqual(code, 0)
        self.assertIn("sampled", out)
        self.assertIn("verdict PERFECT", out)

    def test_budget(self):
        code, _, err = run("simulate", "--demo", "example2", "--budget", "100")
        self.assertEqual(code, 1)
        self.assertIn("budget", err)


class DemoCommand(unittest.TestCase):
    def test_every_demo(self):
        for name in ("example1", "example2", "example3a", "example3b"):
            code, out, _ = run("demo", name, "--json")
            self.assertEqual(code, 0, name)
            report = json.loads(out)
            self.assertEqual(report["simulation"]["verdict"], "PERFECT", name)

    def test_demo_needs_a_name(self):
        self.assertEqual(run("demo")[0], 1)


if __name__ == "__main__":
    BINARY, DATA = sys.argv[1], sys.argv[2]
    unittest.main(argv=sys.argv[:1], verbosity=2)
