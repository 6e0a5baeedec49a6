"""Segment routing with ordered middlepoints.

A tunnel for a commodity is an order-respecting subsequence of the configured
middlepoint list (at most M of them); traffic entering a tunnel is forwarded
segment by segment along equal-cost shortest paths with ECMP splitting.  The
fraction of a segment's traffic crossing a given edge is computed exactly by
shortest-path counting, and tunnel flows are optimized by linear programs
sharing the machinery of the classic formulations.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

from . import lp as lpmod
from .errors import CapExceeded, InfiniteDemand, MalformedNetwork, UnknownNode
from .network import EdgeWalk, FlowNetwork, concat_walks
from .rational import ZERO, rat


def shortest_path_data(net: FlowNetwork, source, reverse=False):
    """Single-source shortest paths by edge length.

    Returns (dist, count, preds): exact hop distances, number of distinct
    shortest paths (exact big integers), and for each node the list of
    (predecessor, edge id) pairs lying on shortest paths.  With reverse=True
    distances are measured *to* source along edge direction.
    """
    if source not in net.nodes:
        raise UnknownNode(f"{source!r}")
    adj = {v: [] for v in net.nodes}
    for e in net.edges:
        adj[e.tail].append((e.head, e.id, e.length))
        if not net.directed:
            adj[e.head].append((e.tail, e.id, e.length))
    if reverse:
        radj = {v: [] for v in net.nodes}
        for v, lst in adj.items():
            for u, eid, ln in lst:
                radj[u].append((v, eid, ln))
        adj = radj
    dist = {source: 0}
    count = {source: 1}
    preds = {v: [] for v in net.nodes}
    heap = [(0, source)]
    done = set()
    while heap:
        d, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        for u, eid, ln in adj[v]:
            nd = d + ln
            if u not in dist or nd < dist[u]:
                dist[u] = nd
                count[u] = count[v]
                preds[u] = [(v, eid)]
                heapq.heappush(heap, (nd, u))
            elif nd == dist[u] and u not in done:
                count[u] += count[v]
                preds[u].append((v, eid))
    return dist, count, preds


@dataclass
class SegmentFractions:
    """ECMP splitting of one segment (u -> v) over shortest paths."""

    u: str
    v: str
    dist: int
    n_paths: int
    fractions: dict  # edge id -> exact fraction of the segment's traffic

    def reachable(self):
        return self.n_paths > 0


def ecmp_fractions(net: FlowNetwork, u, v) -> SegmentFractions:
    """Exact per-edge load fractions for segment (u, v).

    An edge e = (a, b) lies on a shortest u-v path iff
    dist(u,a) + len(e) + dist(b,v) = dist(u,v); it then carries the fraction
    sigma(u,a) * sigma(b,v) / sigma(u,v) of the segment's traffic, where
    sigma counts shortest paths.
    """
    du, cu, _ = shortest_path_data(net, u)
    dv, cv, _ = shortest_path_data(net, v, reverse=True)
    if v not in du:
        return SegmentFractions(u, v, -1, 0, {})
    total = du[v]
    sigma_uv = cu[v]
    fractions = {}
    for e in net.edges:
        ends = [(e.tail, e.head)]
        if not net.directed:
            ends.append((e.head, e.tail))
        share = ZERO
        for a, b in ends:
            if a in du and b in dv and du[a] + e.length + dv[b] == total:
                share += rat(cu[a] * cv[b], sigma_uv)
        if share != 0:
            fractions[e.id] = share
    return SegmentFractions(u, v, total, sigma_uv, fractions)


@dataclass(frozen=True)
class Tunnel:
    commodity: int
    middlepoints: tuple

    def segments(self, com):
        chain = (com.source,) + self.middlepoints + (com.sink,)
        return tuple(zip(chain, chain[1:]))


@dataclass
class SrConfig:
    middlepoints: tuple   # the global ordered list
    max_segments: int     # M: at most this many middlepoints per tunnel
    use_all: bool = False  # force every tunnel to use the full list


def tunnel_bound(k: int, m: int) -> int:
    """Upper bound on tunnels per commodity: sum_{j<=m} C(k, j)."""
    from math import comb
    return sum(comb(k, j) for j in range(0, min(k, m) + 1))


def build_tunnels(net: FlowNetwork, cfg: SrConfig):
    """Usable tunnels per commodity.

    Order-respecting subsequences of the middlepoint list with at most
    max_segments entries (exactly the full list if use_all); subsequences
    touching a commodity's endpoints are skipped, as are tunnels with an
    unreachable segment.
    """
    for w in cfg.middlepoints:
        if w not in net.nodes:
            raise UnknownNode(f"middlepoint {w!r} not in network")
    dist_cache = {}

    def reach(u, v):
        if u not in dist_cache:
            dist_cache[u] = shortest_path_data(net, u)[0]
        return v in dist_cache[u]

    result = []
    for i, com in enumerate(net.commodities):
        if cfg.use_all:
            subseqs = [tuple(cfg.middlepoints)]
        else:
            subseqs = [c for j in range(0, cfg.max_segments + 1)
                       for c in itertools.combinations(cfg.middlepoints, j)]
        tunnels = []
        for mids in subseqs:
            if com.source in mids or com.sink in mids:
                continue
            t = Tunnel(i, mids)
            if all(reach(u, v) for u, v in t.segments(com)):
                tunnels.append(t)
        result.append(tunnels)
    return result


def segment_tables(net: FlowNetwork, tunnels_per_com):
    tables = {}
    for i, tunnels in enumerate(tunnels_per_com):
        com = net.commodities[i]
        for t in tunnels:
            for seg in t.segments(com):
                if seg not in tables:
                    tables[seg] = ecmp_fractions(net, *seg)
    return tables


@dataclass
class SrSolution:
    status: str
    objective: object = None
    theta: object = None
    # (commodity, tunnel middlepoints) -> flow, nonzero only
    tunnel_flows: dict = field(default_factory=dict)
    tunnels_per_commodity: list = field(default_factory=list)
    pivots: int = 0

    def edge_loads(self, net, tables):
        loads = {e.id: ZERO for e in net.edges}
        for (i, mids), f in self.tunnel_flows.items():
            com = net.commodities[i]
            for seg in Tunnel(i, mids).segments(com):
                for eid, frac in tables[seg].fractions.items():
                    loads[eid] += f * frac
        return loads


def _sr_lp(net, cfg, minimize_load):
    tunnels_per_com = build_tunnels(net, cfg)
    tables = segment_tables(net, tunnels_per_com)
    lp = lpmod.LinearProgram()
    theta = None
    if minimize_load:
        theta = lp.add_variable("theta")
        lp.set_objective({theta: 1}, "min")

    def var(i, k):
        return f"f_{i}_{k}"

    obj = {}
    per_edge = {e.id: {} for e in net.edges}
    for i, tunnels in enumerate(tunnels_per_com):
        com = net.commodities[i]
        for k, t in enumerate(tunnels):
            name = lp.add_variable(var(i, k))
            obj[name] = 1
            for seg in t.segments(com):
                for eid, frac in tables[seg].fractions.items():
                    cell = per_edge[eid]
                    cell[name] = cell.get(name, ZERO) + frac
    if not minimize_load:
        lp.set_objective(obj, "max")
    for e in net.edges:
        coeffs = dict(per_edge[e.id])
        if minimize_load:
            coeffs[theta] = -e.capacity
            lp.add_constraint(coeffs, lpmod.LE, 0)
        elif coeffs:
            lp.add_constraint(coeffs, lpmod.LE, e.capacity)
    infeasible_now = False
    for i, com in enumerate(net.commodities):
        coeffs = {var(i, k): 1 for k in range(len(tunnels_per_com[i]))}
        if minimize_load:
            need = com.effective_min()
            if need is None:
                raise InfiniteDemand(f"commodity {i} has no finite required demand")
            if not coeffs:
                if need > 0:
                    infeasible_now = True
                continue
            lp.add_constraint(coeffs, lpmod.GE, need)
        elif coeffs and com.max_demand is not None:
            lp.add_constraint(coeffs, lpmod.LE, com.max_demand)
    if infeasible_now:
        return SrSolution(lpmod.INFEASIBLE, tunnels_per_commodity=tunnels_per_com), tables
    sol = lpmod.solve(lp)
    if sol.status != lpmod.OPTIMAL:
        return SrSolution(sol.status, pivots=sol.pivots,
                          tunnels_per_commodity=tunnels_per_com), tables
    flows = {}
    for i, tunnels in enumerate(tunnels_per_com):
        for k, t in enumerate(tunnels):
            f = sol.value(var(i, k))
            if f != 0:
                flows[(i, t.middlepoints)] = f
    result = SrSolution(lpmod.OPTIMAL, sol.objective,
                        sol.objective if minimize_load else None,
                        flows, tunnels_per_com, sol.pivots)
    return result, tables


def solve_sr_lu(net: FlowNetwork, cfg: SrConfig):
    """Minimize worst link utilization over tunnel flows.  Returns
    (SrSolution, segment fraction tables)."""
    return _sr_lp(net, cfg, minimize_load=True)


def solve_sr_mf(net: FlowNetwork, cfg: SrConfig):
    """Maximize total tunnel flow within capacities and demand ceilings."""
    return _sr_lp(net, cfg, minimize_load=False)


# -- cycles and acyclic feasibility -------------------------------------------

def detect_cycles(net: FlowNetwork, tunnel: Tunnel, tables=None):
    """Edges carrying traffic of two or more segments of the same tunnel.

    Such sharing means some packet-level forwarding loop: the tunnel revisits
    an edge while executing different segments.  Returns a list of
    (edge id, [segment indices]) entries.
    """
    com = net.commodities[tunnel.commodity]
    segs = tunnel.segments(com)
    if tables is None:
        tables = {seg: ecmp_fractions(net, *seg) for seg in segs}
    users = {}
    for idx, seg in enumerate(segs):
        for eid in tables[seg].fractions:
            users.setdefault(eid, []).append(idx)
    return [(eid, idxs) for eid, idxs in sorted(users.items()) if len(idxs) >= 2]


@dataclass
class FeasibilityResult:
    feasible: bool
    witness: object = None  # EdgeWalk when feasible
    combos_tried: int = 0


def _shortest_path_walks(net, u, v, combo_cap):
    """All shortest u->v paths as EdgeWalks (via the predecessor DAG)."""
    dist, count, preds = shortest_path_data(net, u)
    if v not in dist:
        return []
    if count[v] > combo_cap:
        raise CapExceeded(f"{count[v]} shortest paths for segment ({u},{v})")
    walks = []

    def back(node, nodes, steps):
        if node == u:
            walks.append(EdgeWalk(tuple(reversed(nodes)), tuple(reversed(steps))))
            return
        for prev, eid in preds[node]:
            direction = 1 if net.edges[eid].tail == prev else -1
            back(prev, nodes + [prev], steps + [(eid, direction)])

    back(v, [v], [])
    walks.sort(key=lambda wk: wk.steps)
    return walks


def acyclic_feasible(net: FlowNetwork, source, sink, middlepoints,
                     mode="path", combo_cap=10_000) -> FeasibilityResult:
    """Is there a choice of one shortest path per segment whose concatenation
    is a path (mode="path") or a simple path (mode="simple_path")?

    Exhaustive over the cartesian product of per-segment shortest paths, with
    a cap on the number of combinations.
    """
    if mode not in ("path", "simple_path"):
        raise ValueError(f"bad mode {mode!r}")
    chain = (source,) + tuple(middlepoints) + (sink,)
    if len(set(chain)) != len(chain):
        raise MalformedNetwork("source, middlepoints and sink must be distinct")
    segs = list(zip(chain, chain[1:]))
    options = []
    total = 1
    for u, v in segs:
        walks = _shortest_path_walks(net, u, v, combo_cap)
        if not walks:
            return FeasibilityResult(False)
        options.append(walks)
        total *= len(walks)
        if total > combo_cap:
            raise CapExceeded(f"{total} segment-path combinations exceed cap {combo_cap}")
    tried = 0
    for combo in itertools.product(*options):
        tried += 1
        walk = combo[0]
        for nxt in combo[1:]:
            walk = concat_walks(walk, nxt)
        if mode == "simple_path":
            ok = walk.is_simple()
        else:
            mult = walk.edge_multiplicity()
            if net.directed:
                ok = all(m == 1 for m in mult.values())
            else:
                dirs = {}
                for eid, d in walk.steps:
                    dirs.setdefault(eid, []).append(d)
                ok = all(len(ds) <= 2 and len(set(ds)) == len(ds) for ds in dirs.values())
        if ok:
            return FeasibilityResult(True, walk, tried)
    return FeasibilityResult(False, None, tried)
