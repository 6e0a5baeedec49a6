"""Brute-force equivalence checkers for the gadget constructions.

Each checker decides the source problem directly (exhaustively, on small
instances) and through the corresponding gadget, and reports both answers.
They are deliberately independent of the constructions' correctness
arguments: the left-hand side never touches the gadget.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .network import (DEFAULT_PATH_CAP, FlowNetwork, enumerate_st_paths,
                      simple_through, through)
from .reductions import (disjoint_shortest_paths_gadget, max_coverage_gadget,
                         node_split_gadget, two_disjoint_paths_gadget,
                         unit_path_gadget)
from .centrality import n_group_max_flow
from .srte import acyclic_feasible, shortest_path_data, _shortest_path_walks
from .wflow import max_w_flow_exact


@dataclass
class CheckResult:
    direct: object
    via_gadget: object
    consistent: bool


def _simple_node_paths(net, s, t, cap=DEFAULT_PATH_CAP):
    fam = enumerate_st_paths(net, s, t, cap=cap)
    return [p.nodes for p in fam.paths if p.is_simple()]


def check_two_disjoint_paths(net: FlowNetwork, u1, u2, v1, v2,
                             cap=DEFAULT_PATH_CAP) -> CheckResult:
    """Vertex-disjoint u1->u2 and v1->v2 paths: direct enumeration versus the
    existence of a simple s-w-t path in the gadget."""
    direct = False
    for p in _simple_node_paths(net, u1, u2, cap):
        pset = set(p)
        for q in _simple_node_paths(net, v1, v2, cap):
            if not (pset & set(q)):
                direct = True
                break
        if direct:
            break
    gadget = two_disjoint_paths_gadget(net, u1, u2, v1, v2)
    w = gadget.designated["w"]
    fam = enumerate_st_paths(gadget.network, u1, v2, simple_through(w), cap=cap)
    via = len(fam.paths) > 0
    return CheckResult(direct, via, direct == via)


def check_node_split(net: FlowNetwork, s, w, t, cap=DEFAULT_PATH_CAP) -> CheckResult:
    """Internally node-disjoint s->w and w->t paths versus edge-disjoint
    paths between the corresponding split nodes."""
    direct = False
    for p in _simple_node_paths(net, s, w, cap):
        pset = set(p)
        for q in _simple_node_paths(net, w, t, cap):
            if pset & set(q) == {w}:
                direct = True
                break
        if direct:
            break
    gadget = node_split_gadget(net)
    g = gadget.network
    s_in = gadget.mapping[s][0]
    w_in, w_out = gadget.mapping[w]
    t_out = gadget.mapping[t][1]
    via = False
    # Starting at s.in and ending at t.out makes each leg consume its own
    # endpoint's split edge, so the other leg cannot reuse that node either.
    fam1 = enumerate_st_paths(g, s_in, w_in, cap=cap)
    fam2 = enumerate_st_paths(g, w_out, t_out, cap=cap)
    for p in fam1.paths:
        pedges = set(eid for eid, _ in p.steps)
        for q in fam2.paths:
            if not (pedges & set(eid for eid, _ in q.steps)):
                via = True
                break
        if via:
            break
    return CheckResult(direct, via, direct == via)


def check_unit_path(net: FlowNetwork, s, t, w, cap=DEFAULT_PATH_CAP) -> CheckResult:
    """An s-w-t path exists iff the unit-capacity node-constrained max flow
    is at least 1."""
    fam = enumerate_st_paths(net, s, t, through(w), cap=cap)
    direct = len(fam.paths) > 0
    gadget = unit_path_gadget(net, s, t, w)
    sol = max_w_flow_exact(gadget.network, w, cap=cap)
    via = sol.objective is not None and sol.objective >= 1
    return CheckResult(direct, via, direct == via)


def max_coverage_brute(items, sets, n):
    """Largest number of items covered by at most n of the given sets."""
    sets = [frozenset(s) for s in sets]
    best = 0
    for size in range(0, min(n, len(sets)) + 1):
        for combo in itertools.combinations(range(len(sets)), size):
            covered = set().union(*(sets[k] for k in combo)) if combo else set()
            best = max(best, len(covered))
    return best


def check_max_coverage(items, sets, n, cap=DEFAULT_PATH_CAP) -> CheckResult:
    """Optimal coverage versus the optimal N-group flow on the gadget."""
    direct = max_coverage_brute(items, sets, n)
    gadget = max_coverage_gadget(items, sets, n)
    res = n_group_max_flow(gadget.network, n, method="brute", cap=cap)
    return CheckResult(direct, res.value, direct == res.value)


def disjoint_shortest_paths_brute(net: FlowNetwork, pairs, combo_cap=10_000):
    """Do the pairs admit pairwise node-disjoint shortest paths?  Exhaustive
    over per-pair shortest paths."""
    options = []
    for u, v in pairs:
        walks = _shortest_path_walks(net, u, v, combo_cap)
        if not walks:
            return False
        options.append(walks)
    for combo in itertools.product(*options):
        nodes = [set(wk.nodes) for wk in combo]
        ok = True
        for a, b in itertools.combinations(range(len(combo)), 2):
            if nodes[a] & nodes[b]:
                ok = False
                break
        if ok:
            return True
    return False


def check_disjoint_shortest_paths(net: FlowNetwork, pairs,
                                  combo_cap=10_000) -> CheckResult:
    """Node-disjoint shortest paths versus acyclic (simple-path) feasibility
    of the middlepoint chain on the gadget."""
    direct = disjoint_shortest_paths_brute(net, pairs, combo_cap)
    gadget = disjoint_shortest_paths_gadget(net, pairs)
    d = gadget.designated
    res = acyclic_feasible(gadget.network, d["source"], d["sink"],
                           d["middlepoints"], mode="simple_path",
                           combo_cap=combo_cap)
    return CheckResult(direct, res.feasible, direct == res.feasible)
