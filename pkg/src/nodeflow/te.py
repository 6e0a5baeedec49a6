"""Classic path-based traffic engineering programs.

Two formulations over an explicit path family per commodity:

* max-flow: maximize total routed flow subject to capacities and (finite)
  demand ceilings;
* min-load: minimize the worst link utilization theta while routing every
  commodity's required demand in full.

Both are exact.  A truncated path family is refused -- the optimum over an
incomplete family is not the optimum of the instance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import lp as lpmod
from .errors import InfiniteDemand, TruncatedFamily
from .network import UNCONSTRAINED, FlowNetwork, enumerate_paths
from .rational import ZERO, rat


@dataclass
class FlowSolution:
    status: str
    objective: object = None
    # commodity index -> list of (EdgeWalk, flow), nonzero entries only
    flows: dict = field(default_factory=dict)
    theta: object = None
    pivots: int = 0

    def commodity_value(self, i):
        return sum((f for _, f in self.flows.get(i, ())), ZERO)

    def total_value(self):
        return sum((self.commodity_value(i) for i in self.flows), ZERO)

    def edge_loads(self, net: FlowNetwork):
        loads = {e.id: ZERO for e in net.edges}
        for entries in self.flows.values():
            for walk, f in entries:
                for eid, mult in walk.edge_multiplicity().items():
                    loads[eid] += mult * f
        return loads


def default_families(net: FlowNetwork, cap=None, constraint=UNCONSTRAINED):
    kw = {} if cap is None else {"cap": cap}
    return [enumerate_paths(net, i, constraint, **kw) for i in range(len(net.commodities))]


def _check_families(net, families):
    if len(families) != len(net.commodities):
        raise ValueError("one path family per commodity required")
    for i, fam in enumerate(families):
        if fam.truncated:
            raise TruncatedFamily(f"family for commodity {i} is truncated")
        com = net.commodities[i]
        if (fam.source, fam.sink) != (com.source, com.sink):
            raise ValueError(f"family {i} endpoints do not match commodity")


def _var(i, k):
    return f"f_{i}_{k}"


def _capacity_rows(lp, net, families, theta=None):
    """One row per edge: total traversals weighted by flow <= c(e)
    (or <= c(e) * theta)."""
    per_edge = {e.id: {} for e in net.edges}
    for i, fam in enumerate(families):
        for k, walk in enumerate(fam.paths):
            for eid, mult in walk.edge_multiplicity().items():
                per_edge[eid][_var(i, k)] = rat(mult)
    for e in net.edges:
        coeffs = per_edge[e.id]
        if theta is None:
            if coeffs:
                lp.add_constraint(coeffs, lpmod.LE, e.capacity)
        else:
            coeffs = dict(coeffs)
            coeffs[theta] = -e.capacity
            lp.add_constraint(coeffs, lpmod.LE, 0)


def _extract(net, families, sol, objective, theta=None):
    flows = {}
    for i, fam in enumerate(families):
        entries = []
        for k, walk in enumerate(fam.paths):
            f = sol.value(_var(i, k))
            if f != 0:
                entries.append((walk, f))
        flows[i] = entries
    return FlowSolution(lpmod.OPTIMAL, objective, flows, theta, sol.pivots)


def solve_te_mf(net: FlowNetwork, families=None, cap=None) -> FlowSolution:
    """Maximum total multicommodity flow over the given path families."""
    if families is None:
        families = default_families(net, cap)
    _check_families(net, families)
    lp = lpmod.LinearProgram()
    obj = {}
    for i, fam in enumerate(families):
        for k in range(len(fam.paths)):
            name = lp.add_variable(_var(i, k))
            obj[name] = 1
    lp.set_objective(obj, "max")
    _capacity_rows(lp, net, families)
    for i, com in enumerate(net.commodities):
        if com.max_demand is None:
            continue
        coeffs = {_var(i, k): 1 for k in range(len(families[i].paths))}
        if coeffs:
            lp.add_constraint(coeffs, lpmod.LE, com.max_demand)
    sol = lpmod.solve(lp)
    if sol.status != lpmod.OPTIMAL:
        return FlowSolution(sol.status, pivots=sol.pivots)
    return _extract(net, families, sol, sol.objective)


def solve_te_lu(net: FlowNetwork, families=None, cap=None) -> FlowSolution:
    """Minimum worst-link utilization routing every demand in full.

    Every commodity must have a finite required amount (min_demand, which
    defaults to max_demand).
    """
    if families is None:
        families = default_families(net, cap)
    _check_families(net, families)
    lp = lpmod.LinearProgram()
    theta = lp.add_variable("theta")
    lp.set_objective({theta: 1}, "min")
    for i, fam in enumerate(families):
        for k in range(len(fam.paths)):
            lp.add_variable(_var(i, k))
    _capacity_rows(lp, net, families, theta)
    for i, com in enumerate(net.commodities):
        need = com.effective_min()
        if need is None:
            raise InfiniteDemand(f"commodity {i} has no finite required demand")
        coeffs = {_var(i, k): 1 for k in range(len(families[i].paths))}
        if not coeffs:
            if need > 0:
                return FlowSolution(lpmod.INFEASIBLE)
            continue
        lp.add_constraint(coeffs, lpmod.GE, need)
    sol = lpmod.solve(lp)
    if sol.status != lpmod.OPTIMAL:
        return FlowSolution(sol.status, pivots=sol.pivots)
    return _extract(net, families, sol, sol.objective, theta=sol.objective)


@dataclass
class DmfResult:
    satisfiable: bool
    routed: object
    demand_total: object
    witness: FlowSolution


def decide_dmf(net: FlowNetwork, families=None, cap=None) -> DmfResult:
    """Can all demands be satisfied simultaneously?  Decided through the
    max-flow program: yes iff the optimum meets the total demand."""
    total = ZERO
    for i, com in enumerate(net.commodities):
        if com.max_demand is None:
            raise InfiniteDemand(f"commodity {i} has infinite demand")
        total += com.max_demand
    sol = solve_te_mf(net, families, cap)
    routed = sol.objective if sol.status == lpmod.OPTIMAL else ZERO
    return DmfResult(routed == total, routed, total, sol)


@dataclass
class DualityReport:
    satisfiable: bool
    theta: object
    consistent: bool


def check_demand_load_duality(net: FlowNetwork, cap=None) -> DualityReport:
    """Demands are satisfiable exactly when the min worst utilization is <= 1.

    Runs both programs on the same instance and reports whether the
    biconditional holds (it always should; this is a cross-check)."""
    dmf = decide_dmf(net, cap=cap)
    lu = solve_te_lu(net, cap=cap)
    if lu.status != lpmod.OPTIMAL:
        consistent = not dmf.satisfiable
        return DualityReport(dmf.satisfiable, None, consistent)
    consistent = dmf.satisfiable == (lu.objective <= 1)
    return DualityReport(dmf.satisfiable, lu.objective, consistent)


def max_flow_arc_lp(net: FlowNetwork, honor_demands=True) -> FlowSolution:
    """Arc-based maximum multicommodity flow (no node constraints).

    Polynomial-size program used for unconstrained flow values where a path
    family would be overkill: one variable per commodity per arc (two arcs
    per undirected edge, with a joint capacity row).
    """
    lp = lpmod.LinearProgram()
    ncom = len(net.commodities)

    def var(i, eid, d):
        return f"x_{i}_{eid}_{'f' if d > 0 else 'r'}"

    arcs = []  # (eid, d, tail, head)
    for e in net.edges:
        arcs.append((e.id, 1, e.tail, e.head))
        if not net.directed:
            arcs.append((e.id, -1, e.head, e.tail))
    for i in range(ncom):
        for eid, d, _, _ in arcs:
            lp.add_variable(var(i, eid, d))
    # joint capacity per edge
    for e in net.edges:
        coeffs = {var(i, e.id, 1): 1 for i in range(ncom)}
        if not net.directed:
            coeffs.update({var(i, e.id, -1): 1 for i in range(ncom)})
        lp.add_constraint(coeffs, lpmod.LE, e.capacity)
    obj = {}
    for i, com in enumerate(net.commodities):
        outflow = {}
        for eid, d, tail, head in arcs:
            if tail == com.source:
                outflow[var(i, eid, d)] = outflow.get(var(i, eid, d), ZERO) + 1
            if head == com.source:
                outflow[var(i, eid, d)] = outflow.get(var(i, eid, d), ZERO) - 1
        for name, c in outflow.items():
            if c > 0:
                obj[name] = obj.get(name, ZERO) + c
            elif c < 0:
                obj[name] = obj.get(name, ZERO) + c
        # conservation at every node except the commodity endpoints
        for v in net.nodes:
            if v in (com.source, com.sink):
                continue
            coeffs = {}
            for eid, d, tail, head in arcs:
                if head == v:
                    coeffs[var(i, eid, d)] = coeffs.get(var(i, eid, d), ZERO) + 1
                if tail == v:
                    coeffs[var(i, eid, d)] = coeffs.get(var(i, eid, d), ZERO) - 1
            if coeffs:
                lp.add_constraint(coeffs, lpmod.EQ, 0)
        if honor_demands and com.max_demand is not None:
            lp.add_constraint(dict(outflow), lpmod.LE, com.max_demand)
    lp.set_objective(obj, "max")
    sol = lpmod.solve(lp)
    if sol.status != lpmod.OPTIMAL:
        return FlowSolution(sol.status, pivots=sol.pivots)
    return FlowSolution(lpmod.OPTIMAL, sol.objective, {}, pivots=sol.pivots)
