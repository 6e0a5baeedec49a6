"""Exact rational linear programming via two-phase primal simplex.

Dense tableau over exact rationals, Bland's anti-cycling rule throughout, so
results are deterministic and free of rounding.  This is meant for the small
and mid-size programs this package generates, not as a general-purpose LP
code.

Infeasible and unbounded are statuses on the returned solution, never
exceptions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MalformedProgram
from .rational import ZERO, ONE, format_rational, rat

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

LE, GE, EQ = "<=", ">=", "="


@dataclass
class Constraint:
    coeffs: dict  # var name -> rational
    relation: str
    rhs: object


@dataclass
class LinearProgram:
    """A program over named variables, all implicitly >= 0."""

    sense: str = "max"
    variables: list = field(default_factory=list)
    upper_bounds: dict = field(default_factory=dict)
    objective: dict = field(default_factory=dict)
    constraints: list = field(default_factory=list)

    def add_variable(self, name, upper=None, objective=None):
        if name in self.upper_bounds or name in set(self.variables):
            raise MalformedProgram(f"duplicate variable {name!r}")
        self.variables.append(name)
        if upper is not None:
            self.upper_bounds[name] = rat(upper)
        if objective is not None:
            self.objective[name] = rat(objective)
        return name

    def add_constraint(self, coeffs, relation, rhs):
        if relation not in (LE, GE, EQ):
            raise MalformedProgram(f"bad relation {relation!r}")
        cleaned = {}
        known = set(self.variables)
        for name, c in coeffs.items():
            if name not in known:
                raise MalformedProgram(f"constraint uses undeclared variable {name!r}")
            c = rat(c)
            if c != 0:
                cleaned[name] = c
        self.constraints.append(Constraint(cleaned, relation, rat(rhs)))

    def set_objective(self, coeffs, sense="max"):
        if sense not in ("max", "min"):
            raise MalformedProgram(f"bad sense {sense!r}")
        known = set(self.variables)
        for name in coeffs:
            if name not in known:
                raise MalformedProgram(f"objective uses undeclared variable {name!r}")
        self.sense = sense
        self.objective = {k: rat(v) for k, v in coeffs.items()}


@dataclass
class LpSolution:
    status: str
    objective: object = None
    assignment: dict = field(default_factory=dict)
    pivots: int = 0

    def value(self, name):
        return self.assignment.get(name, ZERO)


def _pivot(rows, basis, r, c):
    piv = rows[r][c]
    inv = ONE / piv
    row = rows[r]
    rows[r] = [x * inv for x in row]
    prow = rows[r]
    n = len(prow)
    for i, other in enumerate(rows):
        if i == r:
            continue
        f = other[c]
        if f == 0:
            continue
        rows[i] = [other[j] - f * prow[j] for j in range(n)]
    basis[r] = c


def _bland_optimize(rows, basis, cost, ncols, allowed):
    """Maximize cost over the current tableau.  rows carry [A | b]; the
    objective row is maintained implicitly through reduced costs.

    Returns (status, pivots)."""
    # z-row: reduced costs d_j = c_j - c_B . column_j, tracked explicitly.
    z = [ZERO] * (ncols + 1)
    for j in range(ncols):
        z[j] = cost[j]
    for i, b in enumerate(basis):
        cb = cost[b]
        if cb == 0:
            continue
        row = rows[i]
        for j in range(ncols + 1):
            if row[j] != 0:
                z[j] -= cb * row[j]
    pivots = 0
    while True:
        enter = -1
        for j in range(ncols):
            if allowed[j] and z[j] > 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL, pivots, -z[ncols]
        leave = -1
        best = None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[ncols] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED, pivots, None
        _pivot(rows, basis, leave, enter)
        # update z-row
        f = z[enter]
        prow = rows[leave]
        z = [z[j] - f * prow[j] for j in range(ncols + 1)]
        pivots += 1


def solve(lp: LinearProgram) -> LpSolution:
    names = list(lp.variables)
    index = {n: i for i, n in enumerate(names)}
    n = len(names)

    # Assemble rows: declared constraints plus upper bounds as <= rows.
    raw = []
    for con in lp.constraints:
        vec = [ZERO] * n
        for name, c in con.coeffs.items():
            vec[index[name]] += c
        raw.append((vec, con.relation, con.rhs))
    for name, ub in lp.upper_bounds.items():
        vec = [ZERO] * n
        vec[index[name]] = ONE
        raw.append((vec, LE, ub))

    # Standard form with b >= 0.
    norm = []
    for vec, rel, rhs in raw:
        if rhs < 0:
            vec = [-x for x in vec]
            rhs = -rhs
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        norm.append((vec, rel, rhs))

    m = len(norm)
    nslack = sum(1 for _, rel, _ in norm if rel in (LE, GE))
    nart = sum(1 for _, rel, _ in norm if rel in (GE, EQ))
    ncols = n + nslack + nart
    rows = []
    basis = []
    scol = n
    acol = n + nslack
    art_cols = []
    for vec, rel, rhs in norm:
        row = list(vec) + [ZERO] * (nslack + nart) + [rhs]
        if rel == LE:
            row[scol] = ONE
            basis.append(scol)
            scol += 1
        elif rel == GE:
            row[scol] = -ONE
            scol += 1
            row[acol] = ONE
            basis.append(acol)
            art_cols.append(acol)
            acol += 1
        else:
            row[acol] = ONE
            basis.append(acol)
            art_cols.append(acol)
            acol += 1
        rows.append(row)

    allowed = [True] * ncols
    total_pivots = 0

    if art_cols:
        # Phase 1: drive artificials to zero.
        p1cost = [ZERO] * ncols
        for c in art_cols:
            p1cost[c] = -ONE
        status, piv, val = _bland_optimize(rows, basis, p1cost, ncols, allowed)
        total_pivots += piv
        if status != OPTIMAL or val != 0:
            return LpSolution(INFEASIBLE, pivots=total_pivots)
        # Pivot remaining artificials out of the basis where possible;
        # a row with no eligible pivot is redundant and dropped.
        art_set = set(art_cols)
        i = 0
        while i < len(rows):
            if basis[i] in art_set:
                target = -1
                for j in range(ncols):
                    if j not in art_set and rows[i][j] != 0:
                        target = j
                        break
                if target >= 0:
                    _pivot(rows, basis, i, target)
                    total_pivots += 1
                    i += 1
                else:
                    del rows[i]
                    del basis[i]
            else:
                i += 1
        for c in art_set:
            allowed[c] = False

    sign = ONE if lp.sense == "max" else -ONE
    cost = [ZERO] * ncols
    for name, c in lp.objective.items():
        cost[index[name]] = sign * c
    status, piv, val = _bland_optimize(rows, basis, cost, ncols, allowed)
    total_pivots += piv
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, pivots=total_pivots)

    assignment = {}
    for i, b in enumerate(basis):
        if b < n:
            assignment[names[b]] = rows[i][ncols]
    for name in names:
        assignment.setdefault(name, ZERO)
    return LpSolution(OPTIMAL, sign * val, assignment, total_pivots)


def export_lp_text(lp: LinearProgram) -> str:
    """Render as CPLEX LP text for cross-checking against an external solver.

    Rationals are written exactly when integral and as high-precision
    decimals otherwise (the export is a debugging aid; exact results come
    from solve()).
    """

    def num(v):
        v = rat(v)
        if v.denominator == 1:
            return str(v.numerator)
        return repr(v.numerator / v.denominator)

    def terms(coeffs):
        parts = []
        for name in lp.variables:
            if name not in coeffs:
                continue
            c = coeffs[name]
            sign = "+" if c >= 0 else "-"
            parts.append(f"{sign} {num(abs(c))} {name}")
        text = " ".join(parts) if parts else "0 zero__"
        return text.lstrip("+ ")

    out = ["Maximize" if lp.sense == "max" else "Minimize"]
    out.append(f" obj: {terms(lp.objective)}")
    out.append("Subject To")
    for k, con in enumerate(lp.constraints):
        out.append(f" c{k}: {terms(con.coeffs)} {con.relation} {num(con.rhs)}")
    out.append("Bounds")
    for name in lp.variables:
        ub = lp.upper_bounds.get(name)
        if ub is None:
            out.append(f" 0 <= {name}")
        else:
            out.append(f" 0 <= {name} <= {num(ub)}")
    out.append("End")
    return "\n".join(out) + "\n"
