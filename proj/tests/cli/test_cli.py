# Copyright 2026 The rdelog Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# =============================================================================
"""End-to-end checks of the rdelog command line tool.

Usage: test_cli.py RDELOG_BINARY DATA_DIR
"""

import json
import math
import os
import subprocess
import sys
import tempfile
import unittest

BINARY = None
DATA = None


def run(*args):
    proc = subprocess.run([BINARY, *args], capture_output=True, text=True, check=False)
    return proc.returncode, proc.stdout, proc.stderr


def run_json(*args):
    code, out, err = run(*args)
    if code != 0:
        raise AssertionError(f"exit {code}: {err}")
    return json.loads(out)


def data(name):
    return os.path.join(DATA, name)


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def expm(a):
    # Scaling and squaring with a long Taylor series.
    norm = max(sum(abs(v) for v in row) for row in a)
    s = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    scaled = [[v / 2**s for v in row] for row in a]
    n = len(a)
    result = [[float(i == j) for j in range(n)] for i in range(n)]
    term = [row[:] for row in result]
    for k in range(1, 30):
        term = [[v / k for v in row] for row in matmul(term, scaled)]
        result = [[result[i][j] + term[i][j] for j in range(n)] for i in range(n)]
    for _ in range(s):
        result = matmul(result, result)
    return result


class SignatureCommands(unittest.TestCase):
    def test_single_segment(self):
        sig = run_json("sig", "--path", data("segment.csv"), "--degree", "2")["signature"]
        self.assertEqual(sig["levels"][1], [1.0, 2.0])
        self.assertEqual(sig["levels"][2], [0.5, 1.0, 1.0, 2.0])

    def test_golden_signature(self):
        with open(data("path10_signature_deg3.json")) as f:
            golden = json.load(f)
        first = run_json("sig", "--path", data("path10.csv"), "--degree", "3")
        self.assertEqual(first["signature"], golden)
        second = run_json("sig", "--path", data("path10.csv"), "--degree", "3")
        self.assertEqual(first, second)

    def test_logsig_of_linear_path(self):
        report = run_json("logsig", "--path", data("segment.csv"), "--degree", "3")
        levels = report["log_signature"]["levels"]
        self.assertEqual(levels[1], [1.0, 2.0])
        for level in levels[2:]:
            self.assertLessEqual(max(abs(v) for v in level), 1e-15)

    def test_logsig_residuals(self):
        report = run_json("logsig", "--path", data("path4.csv"), "--degree", "4")
        self.assertTrue(report["lie"]["is_lie"])
        self.assertLessEqual(max(report["lie"]["residuals"]), 1e-9)

    def test_degree_cap(self):
        code, _, err = run("logsig", "--path", data("path4.csv"), "--degree", "6")
        self.assertEqual(code, 3)
        self.assertIn("degree cap exceeded", err)

    def test_pvar(self):
        report = run_json("pvar", "--path", data("updown.csv"), "--p", "1")
        self.assertAlmostEqual(report["p_variation"], 2.0, places=14)


class SolverCommands(unittest.TestCase):
    def test_commuting_solve_matches_exponential(self):
        a1 = [[0.5, 0.2], [0.2, -0.3]]
        a2 = [[0.45, 0.1], [0.1, 0.05]]
        # path4.csv increments: (0.5, 0.3).
        exponent = [[0.5 * a1[i][j] + 0.3 * a2[i][j] for j in range(2)] for i in range(2)]
        e = expm(exponent)
        z0 = [1.0, 0.5]
        want = [e[i][0] * z0[0] + e[i][1] * z0[1] for i in range(2)]
        for mesh in ("1", "3"):
            report = run_json("solve", "--path", data("path4.csv"), "--field", data("commuting_field.json"),
                              "--z0", "1,0.5", "--mesh", mesh)
            got = report["final_state"]
            self.assertLessEqual(max(abs(g - w) for g, w in zip(got, want)), 1e-8)
            self.assertIn("config", report)

    def test_full_lift_and_euler_flags(self):
        full = run_json("solve", "--builtin-driver", "planar:32", "--field", data("cubic_field.json"),
                        "--mesh", "8", "--full-lift")
        point = run_json("solve", "--builtin-driver", "planar:32", "--field", data("cubic_field.json"), "--mesh", "8")
        for a, b in zip(full["final_state"], point["final_state"]):
            self.assertLessEqual(abs(a - b), 1e-9)
        euler = run_json("solve", "--builtin-driver", "planar:32", "--field", data("cubic_field.json"), "--mesh", "8",
                         "--euler")
        self.assertEqual(len(euler["final_state"]), 2)

    def test_box_radius_from_pilot_solve(self):
        with open(data("cubic_field.json")) as fh:
            field = json.load(fh)
        del field["box_radius"]
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "field.json")
            with open(path, "w") as fh:
                json.dump(field, fh)
            report = run_json("solve", "--builtin-driver", "planar:32", "--field", path, "--mesh", "8")
        cfg = report["config"]
        self.assertEqual(cfg["box_radius_source"], "pilot")
        sup = max(abs(v) for z in report["trajectory"]["states"] for v in z)
        self.assertAlmostEqual(cfg["box_radius"], 2.0 * sup if sup > 0 else 1.0, delta=1e-9 * max(1.0, sup))
        given = run_json("solve", "--builtin-driver", "planar:32", "--field", data("cubic_field.json"), "--mesh", "8")
        self.assertEqual(given["config"]["box_radius_source"], "field")

    def test_pure_area_driver(self):
        report = run_json("solve", "--builtin-driver", "pure-area:0.5", "--field", data("noncommuting_field.json"),
                          "--z0", "1,0", "--mesh", "1")
        e = expm([[-0.5, 0.0], [0.0, 0.5]])
        self.assertLessEqual(abs(report["final_state"][0] - e[0][0]), 1e-9)
        self.assertLessEqual(abs(report["final_state"][1]), 1e-12)

    def test_adaptive_solve(self):
        report = run_json("solve", "--builtin-driver", "planar:128", "--field", data("cubic_field.json"),
                          "--alpha", "0.3")
        self.assertEqual(report["config"]["solver"]["alpha"], 0.3)
        self.assertGreater(len(report["mesh"]), 2)

    def test_converge_global(self):
        report = run_json("converge", "--builtin-driver", "planar:512", "--field", data("cubic_field.json"),
                          "--meshes", "8,16,32,64")
        self.assertGreaterEqual(len(report["errors"]), 4)
        self.assertGreaterEqual(report["slopes"]["count"], 4)
        self.assertIn("fitted", report["slopes"])
        self.assertIn("predicted", report["slopes"])
        for point in report["errors"]:
            self.assertGreaterEqual(point["global_error"], 0.0)

    def test_converge_one_step(self):
        report = run_json("converge", "--study", "one-step", "--builtin-driver", "planar:512", "--field",
                          data("cubic_field.json"), "--ladder-count", "4")
        self.assertEqual(report["kind"], "one_step")
        self.assertEqual(len(report["errors"]), 4)

    def test_out_file_and_determinism(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = os.path.join(tmp, "report.json")
            args = ("solve", "--builtin-driver", "random:64", "--seed", "11", "--field", data("cubic_field.json"),
                    "--mesh", "16")
            code, stdout, _ = run(*args, "--out", out)
            self.assertEqual(code, 0)
            self.assertEqual(stdout, "")
            with open(out) as f:
                first = f.read()
            _, again, _ = run(*args)
            self.assertEqual(json.loads(first), json.loads(again))
            _, other, _ = run("solve", "--builtin-driver", "random:64", "--seed", "12", "--field",
                              data("cubic_field.json"), "--mesh", "16")
            self.assertNotEqual(json.loads(first)["final_state"], json.loads(other)["final_state"])


class ExitCodes(unittest.TestCase):
    def check(self, expected, *args, message=None):
        code, _, err = run(*args)
        self.assertEqual(code, expected, err)
        if message:
            self.assertIn(message, err)

    def test_parse_errors(self):
        self.check(2, "sig", "--path", data("header_only.csv"), message="need at least 2 samples")
        self.check(2, "sig", "--path", data("bad_number.csv"), message="line 3")
        self.check(2, "sig", "--path", data("bad_header.csv"))
        self.check(2, "sig", "--path", data("ragged.csv"))
        self.check(2, "sig", "--path", data("repeated_time.csv"))
        self.check(2, "sig", "--path", data("does_not_exist.csv"))
        self.check(2, "solve", "--path", data("path4.csv"), "--field", data("truncated_field.json"))
        self.check(2, "solve", "--path", data("path4.csv"), "--field", data("bad_letter_field.json"))
        self.check(2, "sig", "--bogus")
        self.check(2, "sig", "--path", data("path4.csv"), "--builtin-driver", "planar:8")
        self.check(2, "solve", "--builtin-driver", "wobbly:8", "--field", data("cubic_field.json"))

    def test_domain_errors(self):
        self.check(3, "pvar", "--path", data("path4.csv"), "--p", "0.5")
        self.check(3, "solve", "--path", data("path4.csv"), "--field", data("cubic_field.json"), "--p", "3.5")
        self.check(3, "solve", "--path", data("segment.csv"), "--field", data("cubic_field.json"), "--alpha", "0.01",
                   message="inadmissible mesh")
        self.check(3, "solve", "--path", data("updown.csv"), "--field", data("cubic_field.json"))
        self.check(3, "converge", "--builtin-driver", "planar:64", "--field", data("cubic_field.json"),
                   "--meshes", "8,16,32")

    def test_numeric_errors(self):
        self.check(4, "solve", "--path", data("jump.csv"), "--field", data("blowup_field.json"), "--z0", "10",
                   message="non-finite")


if __name__ == "__main__":
    BINARY, DATA = sys.argv[1], sys.argv[2]
    unittest.main(argv=[sys.argv[0], "-v"])
