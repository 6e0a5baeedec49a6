"""Node-constrained maximum flow.

All flow must cross a designated node w (or any node of a designated set W).
Exact values come from path LPs over through-w families (directed; worst case
exponential) or, for undirected networks, from a polynomial-size arc program
on a transformed graph whose optimum is exactly twice the node-constrained
flow.  An augmenting-path heuristic and an s-w-t edge cut bound complete the
toolbox.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import lp as lpmod
from .errors import MalformedNetwork, NonIntegralCapacity, WIsEndpoint
from .network import (DEFAULT_PATH_CAP, FWD, EdgeWalk, FlowNetwork,
                      concat_walks, enumerate_paths, enumerate_st_paths,
                      reverse_walk, simple_through, through, through_any,
                      validate_walk)
from .rational import ZERO, rat
from .te import FlowSolution, solve_te_mf


# -- exact values via path LPs (directed or brute-force undirected) ----------

def max_w_flow_exact(net: FlowNetwork, w, cap=DEFAULT_PATH_CAP) -> FlowSolution:
    """Exact node-constrained max flow via a through-w path family per
    commodity.  When w coincides with a commodity endpoint the through-w
    family is simply that commodity's unconstrained family, so no special
    handling is needed."""
    fams = [enumerate_paths(net, i, through(w), cap=cap)
            for i in range(len(net.commodities))]
    return solve_te_mf(net, fams)


def max_w_flow_simple(net: FlowNetwork, w, cap=DEFAULT_PATH_CAP) -> FlowSolution:
    """Same, restricted to simple paths through w."""
    fams = [enumerate_paths(net, i, simple_through(w), cap=cap)
            for i in range(len(net.commodities))]
    return solve_te_mf(net, fams)


def max_set_flow_paths(net: FlowNetwork, W, cap=DEFAULT_PATH_CAP,
                       single_use=False) -> FlowSolution:
    """Group flow by explicit enumeration of through-any-of-W families.

    With single_use=True an undirected edge may appear at most once per path
    (the no-repeat variant); by default opposite-direction reuse is allowed.
    """
    fams = [enumerate_paths(net, i, through_any(W), cap=cap,
                            single_use=single_use)
            for i in range(len(net.commodities))]
    return solve_te_mf(net, fams)


# -- undirected: polynomial transform -----------------------------------------

@dataclass
class TransformedNetwork:
    """Directed auxiliary graph for undirected node-constrained flow.

    Every undirected edge becomes a pair of opposite arcs sharing the original
    capacity.  Each commodity i gets a collector node z_i wired to both of its
    endpoints, and all collectors feed a common apex z.  Flow for commodity i
    originates at the designated nodes, exits through s_i and t_i in equal
    shares, and the optimum of the program equals twice the node-constrained
    flow value.
    """

    original: FlowNetwork
    sources: tuple
    graph_nodes: tuple
    arcs: list            # (arc_name, tail, head, orig_edge_id or None)
    collector: dict       # commodity index -> z_i node name
    apex: str
    surrogate: object     # the stand-in for "infinite" capacity


def _fresh(name, taken):
    candidate = name
    while candidate in taken:
        candidate = "_" + candidate
    taken.add(candidate)
    return candidate


def build_transform(net: FlowNetwork, W) -> TransformedNetwork:
    if net.directed:
        raise MalformedNetwork("transform applies to undirected networks")
    W = tuple(sorted(set(W)))
    if not W:
        raise ValueError("empty designated set")
    for w in W:
        if w not in net.nodes:
            raise MalformedNetwork(f"designated node {w!r} not in network")
    taken = set(net.nodes)
    collector = {i: _fresh(f"z{i}", taken) for i in range(len(net.commodities))}
    apex = _fresh("z", taken)
    surrogate = net.total_capacity() + 1
    arcs = []
    for e in net.edges:
        arcs.append((f"e{e.id}+", e.tail, e.head, e.id))
        arcs.append((f"e{e.id}-", e.head, e.tail, e.id))
    for i, com in enumerate(net.commodities):
        zi = collector[i]
        arcs.append((f"s{i}z", com.source, zi, None))
        arcs.append((f"t{i}z", com.sink, zi, None))
        arcs.append((f"z{i}z", zi, apex, None))
    nodes = tuple(net.nodes) + tuple(collector[i] for i in range(len(net.commodities))) + (apex,)
    return TransformedNetwork(net, W, nodes, arcs, collector, apex, surrogate)


def solve_transform(tr: TransformedNetwork, honor_demands=True):
    """Arc program on the transformed graph.  Returns (V, LpSolution); the
    node-constrained flow value is V/2.

    One flow layer per (commodity, designated node) pair: layer (i, w) drops
    conservation only at w, so the two half-flows feeding commodity i's
    collector both split at that same w.  A single layer with conservation
    dropped at every designated node at once would let the program pair a
    source-side half split at one node with a sink-side half split at
    another, counting walks that do not exist.

    Demand ceilings, when finite and honored, cap each commodity's collector
    inflow from its source side (experimental mode; exactness is established
    empirically against the brute-force path LP).
    """
    net = tr.original
    lp = lpmod.LinearProgram()
    ncom = len(net.commodities)

    def var(i, w, arc):
        return f"g_{i}_{w}_{arc}"

    layers = [(i, w) for i in range(ncom) for w in tr.sources]
    for i, w in layers:
        for name, _, _, _ in tr.arcs:
            lp.add_variable(var(i, w, name))

    # joint capacity on the two arcs of each original edge, over all layers
    for e in net.edges:
        coeffs = {}
        for i, w in layers:
            coeffs[var(i, w, f"e{e.id}+")] = 1
            coeffs[var(i, w, f"e{e.id}-")] = 1
        lp.add_constraint(coeffs, lpmod.LE, e.capacity)
    for name, _, _, eid in tr.arcs:
        if eid is None:
            for i, w in layers:
                lp.add_constraint({var(i, w, name): 1}, lpmod.LE, tr.surrogate)

    by_head = {}
    by_tail = {}
    for name, tail, head, _ in tr.arcs:
        by_head.setdefault(head, []).append(name)
        by_tail.setdefault(tail, []).append(name)

    for i, w in layers:
        # conservation everywhere except this layer's designated node and
        # the apex
        for v in tr.graph_nodes:
            if v == w or v == tr.apex:
                continue
            coeffs = {}
            for name in by_head.get(v, ()):
                coeffs[var(i, w, name)] = coeffs.get(var(i, w, name), ZERO) + 1
            for name in by_tail.get(v, ()):
                coeffs[var(i, w, name)] = coeffs.get(var(i, w, name), ZERO) - 1
            if coeffs:
                lp.add_constraint(coeffs, lpmod.EQ, 0)
        # commodity i's collector accepts only commodity i, in equal halves
        for j in range(ncom):
            if j != i:
                lp.add_constraint({var(i, w, f"s{j}z"): 1}, lpmod.EQ, 0)
                lp.add_constraint({var(i, w, f"t{j}z"): 1}, lpmod.EQ, 0)
        lp.add_constraint({var(i, w, f"s{i}z"): 1, var(i, w, f"t{i}z"): -1},
                          lpmod.EQ, 0)
    for i, com in enumerate(net.commodities):
        if honor_demands and com.max_demand is not None:
            lp.add_constraint({var(i, w, f"s{i}z"): 1 for w in tr.sources},
                              lpmod.LE, com.max_demand)

    # value measured where it is unambiguous: at the apex
    lp.set_objective({var(i, w, f"z{i}z"): 1 for i, w in layers}, "max")
    sol = lpmod.solve(lp)
    if sol.status != lpmod.OPTIMAL:
        raise MalformedNetwork(f"transform program unexpectedly {sol.status}")
    return sol.objective, sol


def max_set_flow(net: FlowNetwork, W, cap=DEFAULT_PATH_CAP,
                 honor_demands=True) -> FlowSolution:
    """Node-set-constrained max flow (group flow).

    Directed networks go through explicit path families.  Undirected networks
    use the polynomial transform; its solution carries the exact value but no
    path decomposition.
    """
    if net.directed:
        return max_set_flow_paths(net, W, cap=cap)
    tr = build_transform(net, W)
    value, sol = solve_transform(tr, honor_demands=honor_demands)
    return FlowSolution(lpmod.OPTIMAL, value / 2, {}, pivots=sol.pivots)


def max_w_flow_undirected_norepeat(net: FlowNetwork, w, cap=DEFAULT_PATH_CAP):
    """No-repeat variant: each undirected edge at most once per path.  Brute
    force over the enumerated family; no polynomial algorithm is known for
    this variant."""
    if net.directed:
        raise MalformedNetwork("the no-repeat variant applies to undirected "
                               "networks")
    fams = [enumerate_paths(net, i, through(w), cap=cap, single_use=True)
            for i in range(len(net.commodities))]
    return solve_te_mf(net, fams).objective


def max_w_flow_undirected(net: FlowNetwork, w):
    """Exact node-constrained flow value on an undirected network, in
    polynomial time.  Returns the rational value."""
    for com in net.commodities:
        if w in (com.source, com.sink):
            raise WIsEndpoint(f"{w!r} is an endpoint of a commodity")
    return max_set_flow(net, (w,)).objective


# -- s-w-t edge cuts ----------------------------------------------------------

@dataclass
class CutResult:
    edges: tuple    # edge ids
    value: object
    exact: bool


def min_swt_edge_cut(net: FlowNetwork, s, w, t, max_exact_edges=20) -> CutResult:
    """Minimum-capacity edge set whose removal leaves no s-w-t path.

    Exact branch-and-bound up to max_exact_edges edges; beyond that, a greedy
    upper bound (all edges incident to w on the cheaper side) labeled as
    inexact.
    """
    adj = net.adjacency()
    directed = net.directed
    if len(net.edges) > max_exact_edges:
        into_w = tuple(e.id for e in net.edges if e.head == w or (not directed and e.tail == w))
        out_w = tuple(e.id for e in net.edges if e.tail == w or (not directed and e.head == w))
        cand = min((into_w, out_w), key=lambda ids: sum((net.edges[i].capacity for i in ids), ZERO))
        return CutResult(tuple(sorted(cand)), sum((net.edges[i].capacity for i in cand), ZERO), False)

    best = {"edges": tuple(e.id for e in net.edges), "value": net.total_capacity()}

    def first_path(removed):
        fam = _first_swt_walk(net, adj, removed, s, w, t)
        return fam

    def search(removed, value):
        if value >= best["value"]:
            return
        walk = first_path(removed)
        if walk is None:
            best["edges"] = tuple(sorted(removed))
            best["value"] = value
            return
        for eid in sorted(set(eid for eid, _ in walk.steps)):
            search(removed | {eid}, value + net.edges[eid].capacity)

    search(frozenset(), ZERO)
    return CutResult(best["edges"], best["value"], True)


def _first_swt_walk(net, adj, removed, s, w, t):
    """First edge-distinct s-w-t walk avoiding removed edges, or None."""

    def go(node, node_seq, steps, used, hit_w):
        if node == t and hit_w and steps:
            return EdgeWalk(tuple(node_seq), tuple(steps))
        for edge, d in adj[node]:
            if edge.id in removed:
                continue
            dirs = used.get(edge.id, set())
            if d in dirs or (net.directed and dirs):
                continue
            nxt = edge.head if d == FWD else edge.tail
            used.setdefault(edge.id, set()).add(d)
            node_seq.append(nxt)
            steps.append((edge.id, d))
            res = go(nxt, node_seq, steps, used, hit_w or nxt == w)
            if res is not None:
                return res
            steps.pop()
            node_seq.pop()
            used[edge.id].discard(d)
        return None

    return go(s, [s], [], {}, s == w)


def verify_cut(net: FlowNetwork, s, w, t, edge_ids) -> bool:
    adj = net.adjacency()
    return _first_swt_walk(net, adj, frozenset(edge_ids), s, w, t) is None


# -- augmenting-path heuristic -------------------------------------------------

@dataclass
class AugmentingResult:
    value: object
    arc_flow: dict      # edge id -> flow
    paths: list         # accepted residual walks, in order
    decomposition: list  # (EdgeWalk, amount) covering the final flow


def augmenting_w_flow(net: FlowNetwork, w, commodity=0, chooser=None,
                      search_cap=5000, max_rounds=10000) -> AugmentingResult:
    """Heuristic single-commodity node-constrained flow (directed, integral
    capacities).  Repeatedly finds residual s-t walks through w, shortest
    first, and accepts one only if it strictly increases the flow into w;
    stops when no acceptable walk remains.  Not optimal in general.

    chooser, if given, reorders the candidate walks of a round (takes the
    candidate list, returns an iterable) -- useful to reproduce adversarial
    orderings.
    """
    if not net.directed:
        raise MalformedNetwork("augmenting heuristic is defined on directed networks")
    for e in net.edges:
        if rat(e.capacity).denominator != 1:
            raise NonIntegralCapacity(f"edge {e.id} has capacity {e.capacity}")
    com = net.commodities[commodity]
    s, t = com.source, com.sink
    if w in (s, t):
        raise WIsEndpoint(f"{w!r} is an endpoint of commodity {commodity}")

    flow = {e.id: ZERO for e in net.edges}

    def residual_net():
        # arcs: forward with c-f, backward with f; materialized as a directed
        # network with bookkeeping of which original edge each arc is
        edges = []
        origin = []
        for e in net.edges:
            r = e.capacity - flow[e.id]
            if r > 0:
                edges.append((e.tail, e.head, r))
                origin.append((e.id, +1))
            if flow[e.id] > 0:
                edges.append((e.head, e.tail, flow[e.id]))
                origin.append((e.id, -1))
        rnet = FlowNetwork.build("directed", net.nodes, edges)
        return rnet, origin

    def inflow_w():
        return sum((flow[e.id] for e in net.edges if e.head == w), ZERO)

    accepted = []
    for _ in range(max_rounds):
        rnet, origin = residual_net()
        fam = enumerate_st_paths(rnet, s, t, through(w), cap=search_cap)
        candidates = sorted(fam.paths, key=lambda p: (len(p.steps), p.steps))
        if chooser is not None:
            candidates = list(chooser(candidates))
        before = inflow_w()
        chosen = None
        for walk in candidates:
            delta = min(rnet.edges[eid].capacity for eid, _ in walk.steps)
            trial = dict(flow)
            for eid, _ in walk.steps:
                oid, sign = origin[eid]
                trial[oid] += sign * delta
            gain = sum((trial[e.id] for e in net.edges if e.head == w), ZERO)
            if gain > before:
                chosen = (walk, delta, trial)
                break
        if chosen is None:
            break
        walk, delta, trial = chosen
        flow = trial
        accepted.append(EdgeWalk(walk.nodes, tuple(origin[eid] for eid, _ in walk.steps)))
    value = sum((flow[e.id] for e in net.edges if e.tail == s), ZERO) - \
        sum((flow[e.id] for e in net.edges if e.head == s), ZERO)
    decomposition = _decompose(net, dict(flow), s, w, t)
    return AugmentingResult(value, flow, accepted, decomposition)


def _decompose(net, flow, s, w, t):
    """Greedy path decomposition of an s-t flow into s-w-t walks; leftover
    circulation is dropped."""
    out = []
    adj = net.adjacency()
    for _ in range(len(net.edges) * 4 + 4):
        support = frozenset(e.id for e in net.edges if flow[e.id] <= 0)
        walk = _first_swt_walk(net, adj, support, s, w, t)
        if walk is None:
            break
        delta = min(flow[eid] for eid, _ in walk.steps)
        if delta <= 0:
            break
        for eid, _ in walk.steps:
            flow[eid] -= delta
        out.append((walk, delta))
    return out


# -- walk fixing (two edge-distinct legs into one path) ------------------------

def fix_paths(net: FlowNetwork, leg_sw: EdgeWalk, leg_wt: EdgeWalk) -> EdgeWalk:
    """Combine an s->w path and a w->t path that may share directed edges into
    a single valid s-w-t path.

    Repeatedly (a) excises cycles created by a directed edge repeated within
    one leg and (b) splices the two legs around a directed edge they share:
    if leg1 = A,(u,v),B and leg2 = C,(u,v),D then the legs become A+reverse(C)
    and reverse(B)+D.  Every step shortens the total length by 2, so this
    terminates; the result uses each directed edge at most once and never
    uses an edge more often than the two inputs combined.
    """
    if net.directed:
        raise MalformedNetwork("path fixing needs reverse traversals to be legal")
    if leg_sw.sink != leg_wt.source:
        raise ValueError("legs must meet at the designated node")
    w = leg_sw.sink
    p1, p2 = leg_sw, leg_wt

    def dedupe(walk):
        # remove the cycle between two uses of the same directed step
        seen = {}
        for idx, step in enumerate(walk.steps):
            if step in seen:
                i, j = seen[step], idx
                nodes = walk.nodes[: i + 1] + walk.nodes[j + 1:]
                steps = walk.steps[: i] + walk.steps[j:]
                return EdgeWalk(nodes, steps), True
            seen[step] = idx
        return walk, False

    changed = True
    while changed:
        changed = False
        p1, c1 = dedupe(p1)
        p2, c2 = dedupe(p2)
        if c1 or c2:
            changed = True
            continue
        common = None
        steps2 = {step: j for j, step in enumerate(p2.steps)}
        for i, step in enumerate(p1.steps):
            if step in steps2:
                common = (i, steps2[step])
                break
        if common is None:
            break
        i, j = common
        a = EdgeWalk(p1.nodes[: i + 1], p1.steps[:i])          # s .. u
        b = EdgeWalk(p1.nodes[i + 1:], p1.steps[i + 1:])       # v .. w
        c = EdgeWalk(p2.nodes[: j + 1], p2.steps[:j])          # w .. u
        d = EdgeWalk(p2.nodes[j + 1:], p2.steps[j + 1:])       # v .. t
        p1 = _join(a, reverse_walk(c))
        p2 = _join(reverse_walk(b), d)
        changed = True

    result = _join(p1, p2)
    check = validate_walk(net, result)
    if not check.valid:
        raise MalformedNetwork(f"fix_paths produced an invalid walk: {check.reason}")
    return result


def _join(a: EdgeWalk, b: EdgeWalk) -> EdgeWalk:
    if not a.steps:
        return b
    if not b.steps:
        return a
    return concat_walks(a, b)
