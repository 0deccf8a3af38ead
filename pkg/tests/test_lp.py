"""Solver correctness against hand-worked fixtures and the enumeration oracle."""

import time

import numpy as np
import pytest

from rejectsvm.lp import (
    LinearProgram,
    LpInputError,
    LpOversizeError,
    enumerate_vertices_oracle,
    solve_lp,
)

from helpers import random_lp


def test_hand_worked_two_variable_program():
    # min -x - y  s.t.  x + 2y <= 4,  3x + y <= 6,  x,y >= 0
    # vertices: (0,0), (2,0), (0,2), (8/5, 6/5); optimum at the crossing
    lp = LinearProgram(objective=[-1.0, -1.0],
                       rows=[[1.0, 2.0], [3.0, 1.0]],
                       relations=["<=", "<="], rhs=[4.0, 6.0],
                       lower=[0.0, 0.0])
    sol = solve_lp(lp)
    assert sol.status == "optimal"
    assert abs(sol.objective_value - (-14.0 / 5.0)) < 1e-12
    assert np.allclose(sol.x, [8.0 / 5.0, 6.0 / 5.0], atol=1e-12)


def test_equality_and_free_variable():
    # min x + y  s.t.  x + y = 2, x - y <= 0, y free
    # substitute y = 2 - x: objective constant 2, need x <= 1
    lp = LinearProgram(objective=[1.0, 1.0],
                       rows=[[1.0, 1.0], [1.0, -1.0]],
                       relations=["=", "<="], rhs=[2.0, 0.0],
                       lower=[0.0, -np.inf])
    sol = solve_lp(lp)
    assert sol.status == "optimal"
    assert abs(sol.objective_value - 2.0) < 1e-9
    assert sol.x[0] + sol.x[1] == pytest.approx(2.0, abs=1e-9)
    assert sol.x[0] <= sol.x[1] + 1e-9


def test_reports_infeasible():
    lp = LinearProgram(objective=[1.0], rows=[[1.0], [1.0]],
                       relations=["<=", ">="], rhs=[1.0, 2.0], lower=[0.0])
    assert solve_lp(lp).status == "infeasible"


def test_reports_unbounded():
    lp = LinearProgram(objective=[-1.0], rows=[[-1.0]],
                       relations=["<="], rhs=[0.0], lower=[0.0])
    assert solve_lp(lp).status == "unbounded"


def test_two_sided_bounds_become_active():
    lp = LinearProgram(objective=[1.0, -1.0], rows=np.zeros((0, 2)),
                       relations=[], rhs=[],
                       lower=[-2.0, -1.5], upper=[3.0, 0.5])
    sol = solve_lp(lp)
    assert sol.status == "optimal"
    assert np.allclose(sol.x, [-2.0, 0.5], atol=1e-12)


def test_matches_enumeration_oracle_on_random_programs():
    rng = np.random.default_rng(7)
    t0 = time.time()
    statuses = {"optimal": 0, "infeasible": 0, "unbounded": 0}
    for _ in range(250):
        lp = random_lp(rng)
        sol = solve_lp(lp)
        ref = enumerate_vertices_oracle(lp)
        assert sol.status == ref.status
        statuses[sol.status] += 1
        if sol.status == "optimal":
            assert abs(sol.objective_value - ref.objective_value) < 1e-7
            # the reported point must itself be feasible and consistent
            assert abs(float(lp.objective @ sol.x) - sol.objective_value) < 1e-9
    assert min(statuses.values()) > 5  # all three verdicts exercised
    assert time.time() - t0 < 10.0


def test_bland_rule_agrees_with_default():
    rng = np.random.default_rng(21)
    for _ in range(40):
        lp = random_lp(rng, max_vars=4, max_cons=5)
        a = solve_lp(lp)
        b = solve_lp(lp, pivot_rule="bland")
        assert a.status == b.status
        if a.status == "optimal":
            assert abs(a.objective_value - b.objective_value) < 1e-8


def test_bitwise_determinism():
    lp = LinearProgram(objective=[-1.0, -2.0, 0.5],
                       rows=[[1.0, 1.0, 1.0], [2.0, -1.0, 0.0]],
                       relations=["<=", ">="], rhs=[4.0, 1.0],
                       lower=[0.0, 0.0, 0.0], upper=[2.5, 2.5, 2.5])
    ref = solve_lp(lp)
    for _ in range(5):
        again = solve_lp(lp)
        assert again.x.tobytes() == ref.x.tobytes()
        assert repr(again.objective_value) == repr(ref.objective_value)


def test_warm_start_reaches_the_same_optimum():
    # x1 + 2y <= 4 and 3x + y <= 6 with slacks in columns 2 and 3;
    # the slack basis (origin vertex) is feasible, so phase 1 is skipped
    lp = LinearProgram(objective=[-1.0, -1.0],
                       rows=[[1.0, 2.0], [3.0, 1.0]],
                       relations=["<=", "<="], rhs=[4.0, 6.0],
                       lower=[0.0, 0.0])
    sol = solve_lp(lp, initial_basis=[2, 3])
    assert sol.status == "optimal"
    assert abs(sol.objective_value - (-14.0 / 5.0)) < 1e-12


def test_warm_start_validation():
    lp = LinearProgram(objective=[-1.0, -1.0],
                       rows=[[1.0, 2.0], [3.0, 1.0]],
                       relations=["<=", "<="], rhs=[4.0, 6.0],
                       lower=[0.0, 0.0])
    with pytest.raises(LpInputError):
        solve_lp(lp, initial_basis=[0])  # wrong length
    with pytest.raises(LpInputError):
        solve_lp(lp, initial_basis=[1, 1])  # repeated column
    with pytest.raises(LpInputError):
        solve_lp(lp, initial_basis=[0, 99])  # out of range


def test_unusable_warm_start_falls_back():
    # basis [0, 1] solves to x=(8/5, 6/5) which is feasible, but [0, 2]
    # yields a negative basic value; the solver must still find the optimum
    lp = LinearProgram(objective=[-1.0, -1.0],
                       rows=[[1.0, 2.0], [3.0, 1.0]],
                       relations=["<=", "<="], rhs=[4.0, 6.0],
                       lower=[0.0, 0.0])
    sol = solve_lp(lp, initial_basis=[1, 2])
    assert sol.status == "optimal"
    assert abs(sol.objective_value - (-14.0 / 5.0)) < 1e-12


def test_rejects_malformed_input():
    with pytest.raises(LpInputError):
        LinearProgram(objective=[1.0], rows=[[1.0, 2.0]],
                      relations=["<="], rhs=[1.0])
    with pytest.raises(LpInputError):
        LinearProgram(objective=[1.0], rows=[[1.0]],
                      relations=["<"], rhs=[1.0])
    with pytest.raises(LpInputError):
        LinearProgram(objective=[np.nan], rows=[[1.0]],
                      relations=["<="], rhs=[1.0])
    with pytest.raises(LpInputError):
        LinearProgram(objective=[1.0], rows=[[1.0]],
                      relations=["<="], rhs=[np.inf])
    with pytest.raises(LpInputError):
        LinearProgram(objective=[1.0, 1.0], rows=[[1.0, 1.0]],
                      relations=["<="], rhs=[1.0],
                      lower=[0.0, 2.0], upper=[1.0, 1.0])
    with pytest.raises(LpInputError):
        lp = LinearProgram(objective=[1.0], rows=[[1.0]],
                           relations=["<="], rhs=[1.0])
        solve_lp(lp, pivot_rule="steepest")


def test_oracle_refuses_oversized_problems():
    rng = np.random.default_rng(0)
    lp = LinearProgram(objective=rng.normal(size=30),
                       rows=rng.normal(size=(4, 30)),
                       relations=["<="] * 4, rhs=np.ones(4),
                       lower=np.zeros(30))
    with pytest.raises(LpOversizeError):
        enumerate_vertices_oracle(lp)


def test_debug_dump_writes_tableau(tmp_path):
    lp = LinearProgram(objective=[-1.0, -1.0],
                       rows=[[1.0, 2.0], [3.0, 1.0]],
                       relations=["<=", "<="], rhs=[4.0, 6.0],
                       lower=[0.0, 0.0])
    path = tmp_path / "tableau.txt"
    solve_lp(lp, debug_dump=str(path))
    lines = path.read_text().strip().splitlines()
    assert len(lines) >= 3  # two constraint rows plus the objective row
    float(lines[0].split()[0])  # parses as numbers


def test_iteration_count_is_reported():
    lp = LinearProgram(objective=[-1.0, -1.0],
                       rows=[[1.0, 2.0], [3.0, 1.0]],
                       relations=["<=", "<="], rhs=[4.0, 6.0],
                       lower=[0.0, 0.0])
    sol = solve_lp(lp)
    assert sol.iterations > 0
