import itertools
import random
from fractions import Fraction

import pytest

from nodeflow import (EQ, GE, INFEASIBLE, LE, OPTIMAL, UNBOUNDED,
                      LinearProgram, rat)
from nodeflow import solve as solve_lp
from nodeflow.lp import export_lp_text


def test_small_max():
    lp = LinearProgram()
    lp.add_variable("x", objective=1)
    lp.add_variable("y", objective=1)
    lp.add_constraint({"x": 1, "y": 2}, LE, 4)
    lp.add_constraint({"x": 1}, LE, 3)
    sol = solve_lp(lp)
    assert sol.status == OPTIMAL
    assert sol.objective == rat(7, 2)
    assert sol.assignment["x"] == 3


def test_min_sense():
    lp = LinearProgram()
    lp.add_variable("x")
    lp.add_variable("y")
    lp.add_constraint({"x": 1, "y": 1}, GE, 2)
    lp.set_objective({"x": 3, "y": 1}, sense="min")
    sol = solve_lp(lp)
    assert sol.status == OPTIMAL
    assert sol.objective == 2
    assert sol.assignment["y"] == 2


def test_infeasible():
    lp = LinearProgram()
    lp.add_variable("x", objective=1)
    lp.add_constraint({"x": 1}, LE, 1)
    lp.add_constraint({"x": 1}, GE, 2)
    assert solve_lp(lp).status == INFEASIBLE


def test_unbounded():
    lp = LinearProgram()
    lp.add_variable("x", objective=1)
    lp.add_constraint({"x": -1}, LE, 1)
    assert solve_lp(lp).status == UNBOUNDED


def test_equality_and_upper_bound():
    lp = LinearProgram()
    lp.add_variable("x", upper=rat(5, 2), objective=1)
    lp.add_variable("y", objective=1)
    lp.add_constraint({"x": 1, "y": 1}, EQ, 4)
    sol = solve_lp(lp)
    assert sol.status == OPTIMAL
    assert sol.objective == 4
    assert sol.assignment["x"] + sol.assignment["y"] == 4
    assert sol.assignment["x"] <= rat(5, 2)


def test_degenerate_does_not_cycle():
    # Beale's classic cycling example; Bland's rule must terminate.
    lp = LinearProgram()
    lp.add_variable("x1", objective=rat(3, 4))
    lp.add_variable("x2", objective=-150)
    lp.add_variable("x3", objective=rat(1, 50))
    lp.add_variable("x4", objective=-6)
    lp.add_constraint({"x1": rat(1, 4), "x2": -60, "x3": rat(-1, 25),
                       "x4": 9}, LE, 0)
    lp.add_constraint({"x1": rat(1, 2), "x2": -90, "x3": rat(-1, 50),
                       "x4": 3}, LE, 0)
    lp.add_constraint({"x3": 1}, LE, 1)
    sol = solve_lp(lp)
    assert sol.status == OPTIMAL
    assert sol.objective == rat(1, 20)


def _oracle_optimum(ncols, rows, cost):
    """Enumerate basic feasible points of {Ax <= b, x >= 0} exactly.

    rows: list of (coeff vector, rhs).  Returns the maximum of cost @ x, or
    None if infeasible, or "unbounded".  All arithmetic over Fraction.
    """
    # Include nonnegativity as rows, then intersect every ncols-subset.
    full = [(list(r), rhs) for r, rhs in rows]
    for j in range(ncols):
        vec = [Fraction(0)] * ncols
        vec[j] = Fraction(-1)
        full.append((vec, Fraction(0)))
    best = None
    for subset in itertools.combinations(range(len(full)), ncols):
        a = [list(full[i][0]) for i in subset]
        b = [full[i][1] for i in subset]
        x = _solve_square(a, b)
        if x is None:
            continue
        if any(xi < 0 for xi in x):
            continue
        if any(sum(c * xi for c, xi in zip(vec, x)) > rhs + 0
               for vec, rhs in rows):
            continue
        val = sum(c * xi for c, xi in zip(cost, x))
        if best is None or val > best:
            best = val
    return best


def _solve_square(a, b):
    n = len(b)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = Fraction(1) / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def test_random_lps_match_vertex_enumeration():
    rng = random.Random(7)
    for trial in range(40):
        ncols = rng.randint(1, 3)
        nrows = rng.randint(1, 4)
        rows = []
        for _ in range(nrows):
            vec = [Fraction(rng.randint(-3, 3)) for _ in range(ncols)]
            rows.append((vec, Fraction(rng.randint(0, 6))))
        cost = [Fraction(rng.randint(-3, 3)) for _ in range(ncols)]
        # Bound the box so the oracle's optimum is always attained.
        for j in range(ncols):
            vec = [Fraction(0)] * ncols
            vec[j] = Fraction(1)
            rows.append((vec, Fraction(10)))
        lp = LinearProgram()
        for j in range(ncols):
            lp.add_variable(f"x{j}", objective=cost[j])
        for vec, rhs in rows:
            lp.add_constraint({f"x{j}": vec[j] for j in range(ncols)}, LE, rhs)
        sol = solve_lp(lp)
        expect = _oracle_optimum(ncols, rows, cost)
        assert sol.status == OPTIMAL, trial
        assert Fraction(sol.objective.numerator,
                        sol.objective.denominator) == expect, trial


def test_export_lp_text_mentions_variables():
    lp = LinearProgram()
    lp.add_variable("flow_a", objective=1)
    lp.add_constraint({"flow_a": 2}, LE, 3)
    text = export_lp_text(lp)
    assert "flow_a" in text
    assert "Maximize" in text or "maximize" in text.lower()
