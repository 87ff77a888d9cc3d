# Copyright 2026 The m2pn Authors
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

import os
import subprocess
from pathlib import Path

import pytest

import m2pn

DATA = Path(__file__).resolve().parent.parent / "data"


def test_distribution_functions():
    f = m2pn.DistributionFn.standard_ratio(2)
    assert f(2) == pytest.approx(0.5, abs=1e-15)
    assert f(float("-inf")) == 0.0
    assert f(float("inf")) == 1.0
    assert str(f) == "ratio(2.0)"
    assert m2pn.equal(m2pn.DistributionFn.parse(str(f)), f)
    assert m2pn.leq(f, m2pn.epsilon(0))
    assert m2pn.classify_df(f)["in_d_plus"]
    assert not m2pn.classify_df(m2pn.DistributionFn.zero())["in_d"]


def test_geometry_and_radius():
    assert m2pn.two_norm([1, 2], [3, 4]) == pytest.approx(2)
    assert m2pn.two_norm([1, 0, 0], [1, 1, 0]) == pytest.approx(1)
    r = m2pn.radius([[1, 0], [0, 1], [2, 0]])
    assert m2pn.equal(r, m2pn.DistributionFn.standard_ratio(2))
    assert m2pn.classify(r)[0] == "perhaps_bounded"
    assert m2pn.classify(m2pn.radius([[1, 0], [0, 1]], "indicator"))[0] == "certainly_bounded"
    with pytest.raises(ValueError):
        m2pn.two_norm([1, 0], [1, 0, 0])


def test_convergence():
    found, n0 = m2pn.converges_to("standard", [0, 1], [1, 0], 100, [[0, 1]], 1.0, 0.1)
    assert found and n0 == 9


def test_documents():
    text = (DATA / "classify.m2pn").read_text()
    assert m2pn.validate_document(text) == 5
    lines, code = m2pn.run_document(text)
    assert code == 0
    assert lines[0] == "RESULT classify-1 PASS class=perhaps_bounded limit=1.0"
    assert m2pn.run_document(text) == (lines, code)
    with pytest.raises(m2pn.DocumentError):
        m2pn.validate_document((DATA / "bad_syntax.m2pn").read_text())


@pytest.mark.skipif("M2PN_CLI" not in os.environ, reason="CLI path not given")
def test_cli_matches_bindings():
    doc = DATA / "classify.m2pn"
    out = subprocess.run([os.environ["M2PN_CLI"], "run", str(doc)], capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.splitlines() == m2pn.run_document(doc.read_text())[0]
