import os
from pathlib import Path

import numpy as np
import pytest

import gridcomm

DATA = Path(os.environ.get("GRIDCOMM_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture(scope="module")
def ieee14():
    return gridcomm.load_grid(str(DATA / "ieee14.json"))


def test_grid_loads(ieee14):
    assert ieee14.bus_count == 14
    assert ieee14.branch_count == 20
    assert ieee14.slack_bus == 0


def test_modularity_rows_sum_to_zero(ieee14):
    m = gridcomm.build_modularity_matrix(gridcomm.build_ecs(ieee14))
    b = np.asarray(m.coefficients)
    assert b.shape == (14, 14)
    assert np.allclose(b.sum(axis=1), 0.0, atol=1e-12)
    assert gridcomm.score_partition(m, [0] * 14) == pytest.approx(0.0, abs=1e-12)


def test_qubo_energy_is_minus_modularity(ieee14):
    m = gridcomm.build_modularity_matrix(gridcomm.build_ecs(ieee14))
    best = gridcomm.exhaustive(m, 3)
    q = gridcomm.build_qubo(m, 3)
    bits = [0] * q.variable_count
    for bus, c in enumerate(best.assignment):
        bits[bus * 3 + c] = 1
    assert gridcomm.energy(q, bits) == pytest.approx(-best.score, abs=1e-12)
    decoded = gridcomm.decode(q, bits)
    assert decoded.assignment == best.assignment
    assert gridcomm.decode(q, [0] * q.variable_count)[0] == (0, 0)


def test_solvers_agree_on_small_case(ieee14):
    exact = gridcomm.solve(ieee14, 3, solver="exhaustive")
    annealed = gridcomm.solve(ieee14, 3, solver="discrete-anneal", reads=100, sweeps=500, seed=1)
    assert annealed.score <= exact.score + 1e-12
    assert annealed.score >= exact.score - 0.02
    assert gridcomm.louvain(gridcomm.build_ecs(ieee14)).score <= exact.score + 1e-12


def test_sweep_rows(ieee14):
    rows = gridcomm.sweep_k(ieee14, 1, 3, solver="exhaustive")
    assert [r["k"] for r in rows] == [1, 2, 3]
    assert rows[0]["q_e"] == pytest.approx(0.0, abs=1e-12)
    assert rows[1]["q_e"] < rows[2]["q_e"]


def test_errors_map_to_python_exceptions(ieee14):
    with pytest.raises(gridcomm.ParseError):
        gridcomm.parse_grid("{")
    m = gridcomm.build_modularity_matrix(gridcomm.build_ecs(ieee14))
    with pytest.raises(gridcomm.InstanceTooLargeError):
        gridcomm.exhaustive(m, 4)
    with pytest.raises(ValueError):
        gridcomm.solve(ieee14, 2, solver="simplex")
