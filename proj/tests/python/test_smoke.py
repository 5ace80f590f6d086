# Copyright 2026 The nonloc Authors
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

import math

import numpy as np
import pytest

import nonloc


def ghz_hardy_table():
    g = nonloc.SymmetricState.ghz(3, math.pi / 4)
    sol = nonloc.solve_settings(g, 2j)
    return nonloc.born_distribution(nonloc.dicke_expand(g), sol.settings)


def test_ghz_fixture_solution():
    sol = nonloc.solve_settings(nonloc.SymmetricState.ghz(3, math.pi / 4), 2j)
    assert sol.y1 == pytest.approx(0.25, abs=1e-12)
    assert sol.y == pytest.approx(8j, abs=1e-12)
    assert sol.x1 == pytest.approx(1 / 16, abs=1e-12)
    assert sol.p_success == pytest.approx(72 / 6425, abs=1e-12)


def test_hardy_report():
    r = nonloc.hardy_conditions(ghz_hardy_table())
    assert r.passed
    assert len(r.zero_residuals) == 5
    assert nonloc.inequality1(ghz_hardy_table()) == pytest.approx(72 / 6425, abs=1e-9)


def test_table_is_numpy_and_round_trips():
    d = ghz_hardy_table()
    t = d.table
    assert t.shape == (8, 8)
    np.testing.assert_allclose(t.sum(axis=1), 1, atol=1e-12)
    again = nonloc.JointDistribution(3, t)
    assert again.at(0, 0) == d.at(0, 0)
    assert nonloc.ns_residual(d) < 1e-12


def test_classify_labels():
    label, local, bilocal = nonloc.classify(ghz_hardy_table())
    assert label == "genuinely-nonlocal"
    assert not local.feasible
    assert bilocal.margin > 1e-6
    label, local, bilocal = nonloc.classify(nonloc.JointDistribution.uniform(3))
    assert label == "local" and bilocal is None


def test_vertex_sets():
    vs = nonloc.bilocal_ns_vertices()
    assert len(vs) == 288
    assert vs.column(0).shape == (8, 8)
    assert len(nonloc.deterministic_local_vertices(2)) == 16


def test_errors_are_typed():
    with pytest.raises(nonloc.DegenerateX):
        nonloc.solve_settings(nonloc.SymmetricState.ghz(3, math.pi / 4), 1.0)
    with pytest.raises(nonloc.NotEntangled):
        nonloc.solve_auto(nonloc.SymmetricState.product_zero(3))
    with pytest.raises(nonloc.Error):
        nonloc.PureState(2, [1, 0, 0])


def test_search_and_experiment():
    cfg = nonloc.SearchConfig()
    cfg.seed = 3
    res = nonloc.find_settings(nonloc.haar_random_pure(3, 11), cfg)
    assert res.found and res.p_success > 1e-4
    summary = nonloc.random_experiment(3, 5, 7, cfg, lp_subsample=2)
    assert summary.passed == 5
    assert summary.records_csv().startswith("index,sub_seed")


def test_magic_basis_and_closed_forms():
    state, u = nonloc.to_magic_basis(nonloc.SymmetricState.w(3))
    assert abs(state.h[1]) < 1e-8
    assert np.allclose(u.conj().T @ u, np.eye(2))
    assert nonloc.w_closed_form(3, 1.0) == pytest.approx(1 / 408, abs=1e-15)
    assert nonloc.ghz_closed_form(3, math.pi / 4, 1.0) == pytest.approx(0, abs=1e-15)
