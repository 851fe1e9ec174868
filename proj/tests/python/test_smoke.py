# Copyright 2026 The qnogo Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import qnogo

ZERO = np.array([1, 0], dtype=complex)
ONE = np.array([0, 1], dtype=complex)
PLUS = np.array([1, 1], dtype=complex) / math.sqrt(2)


def test_random_state_is_normalized_and_seeded():
    a = qnogo.random_state(5, 42)
    assert a.shape == (5,)
    assert abs(np.linalg.norm(a) - 1) < 1e-12
    assert np.array_equal(a, qnogo.random_state(5, 42))
    assert qnogo.mix_seed(1, 0) != qnogo.mix_seed(1, 1)


def test_reference_superposition_of_zero_and_plus():
    proj, vec = qnogo.reference_superposition(ZERO, ZERO, PLUS)
    v = vec / np.linalg.norm(vec)
    assert np.allclose(proj, np.outer(v, v.conj()), atol=1e-12)
    expected = np.array([math.cos(math.pi / 8), math.sin(math.pi / 8)])
    assert abs(abs(np.vdot(expected, v)) - 1) < 1e-12


def test_protocol_success_law():
    sim, formula = qnogo.protocol_success_probability(ZERO, ZERO, PLUS)
    assert abs(sim - formula) < 1e-12
    assert abs(sim - (1 + 1 / math.sqrt(2)) / 3) < 1e-9


def test_ud_povm_for_zero_and_plus():
    c = qnogo.build_ud_povm([ZERO, PLUS])
    assert c["feasible"]
    assert all(abs(l - 1 / (2 + math.sqrt(2))) < 1e-10 for l in c["lambdas"])
    total = sum(c["elements"]) + c["inconclusive"]
    assert np.allclose(total, np.eye(2), atol=1e-10)

    dependent = qnogo.build_ud_povm([ZERO, ONE, PLUS])
    assert not dependent["feasible"]
    assert dependent["null_residual"] < 1e-10


def test_linear_independence():
    assert qnogo.linear_independence([ZERO, PLUS])["independent"]
    assert qnogo.linear_independence([ZERO, ZERO])["rank"] == 1


def test_canonical_signaling_gap():
    g = qnogo.canonical_signaling_gap()
    assert abs(g["p0"] - 0.5) < 1e-12
    assert abs(g["p1"] - 0.25) < 1e-12
    assert g["bob_state_distance"] < 1e-12
    assert qnogo.decode_error_exact(0.5, 0.25, 100) < 0.01


def test_grover():
    rounds = qnogo.super_grover_run(10, 3)
    assert len(rounds) == 4
    assert rounds[-1]["p"] >= 0.25
    assert rounds[-1]["queries"] == 3
    sv = qnogo.super_grover_run(10, 3, mode="statevector")
    assert all(abs(a["p"] - b["p"]) < 1e-9 for a, b in zip(rounds, sv))
    assert qnogo.round_bound(1024) == 4
    q = qnogo.query_comparison(10, 3)
    assert q["standard_queries_to_half"] == 13
    assert q["super_rounds_to_quarter"] == 3
    n4 = qnogo.standard_grover_run(2, 1, 1)
    assert abs(n4[1]["p"] - 1) < 1e-12


def test_geometry():
    a, b, c, d = qnogo.fixed_overlap_circle(ZERO, 0.5)
    assert abs(a - 1) < 1e-12 and abs(b) < 1e-12 and abs(c) < 1e-12 and abs(d) < 1e-12
    v = qnogo.bloch_state(math.pi / 2, 0.0)
    assert np.allclose(v, PLUS, atol=1e-12)


def test_errors_surface_as_qnogo_error():
    with pytest.raises(qnogo.Error):
        qnogo.round_bound(2)
    with pytest.raises(qnogo.Error):
        qnogo.super_grover_run(10, 0, mode="bogus")


def test_run_experiment_round_trip():
    assert set(qnogo.experiment_names()) == {"superpose", "ldli", "ud", "signal", "grover", "circle"}
    cfg = {"experiment": "grover", "params": {"n": 8, "marked": 3, "crosscheck_max_n": 10}}
    report = qnogo.run_experiment(cfg, workers=1)
    assert report["experiment"] == "grover"
    assert all(c["pass"] for c in report["checks"])
    assert qnogo.run_experiment(cfg, workers=2) == report
    csv = qnogo.run_experiment(cfg, format="csv")
    assert csv.startswith("section,name,row,column,value")
    with pytest.raises(qnogo.Error):
        qnogo.run_experiment({"experiment": "ud"})
