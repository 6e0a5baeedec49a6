"""Flow networks, edge walks, and exhaustive path enumeration.

Terminology used throughout the package:

* a *path* from s to t is a walk in which every edge is distinct.  Nodes may
  repeat.  In an undirected network an edge may appear at most twice on a
  path, and only when traversed in opposite directions.
* a *simple path* additionally never repeats a node.

Path enumeration is exhaustive and deterministic (lexicographic in the edge
id sequence, forward traversal before reverse), with a configurable cap.  A
family that hit the cap is marked truncated and the exact solvers refuse it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import MalformedNetwork, UnknownNode
from .rational import rat

DIRECTED = "directed"
UNDIRECTED = "undirected"

FWD = 1
REV = -1

DEFAULT_PATH_CAP = 1_000_000


@dataclass(frozen=True)
class Edge:
    id: int
    tail: str
    head: str
    capacity: object  # exact rational
    length: int = 1

    def endpoints(self):
        return (self.tail, self.head)


@dataclass(frozen=True)
class Commodity:
    """A demand pair.  max_demand None means unbounded (no demand constraint).

    min_demand is the amount a load-minimizing solver must route; it defaults
    to max_demand and must be finite there.
    """

    source: str
    sink: str
    max_demand: object = None
    min_demand: object = None

    def effective_min(self):
        return self.min_demand if self.min_demand is not None else self.max_demand


@dataclass(frozen=True)
class FlowNetwork:
    orientation: str
    nodes: tuple
    edges: tuple
    commodities: tuple = ()

    def __post_init__(self):
        if self.orientation not in (DIRECTED, UNDIRECTED):
            raise MalformedNetwork(f"unknown orientation {self.orientation!r}")
        seen = set(self.nodes)
        if len(seen) != len(self.nodes):
            raise MalformedNetwork("duplicate node ids")
        for e in self.edges:
            if e.tail not in seen or e.head not in seen:
                raise UnknownNode(f"edge {e.id} touches unknown node")
            if e.tail == e.head:
                raise MalformedNetwork(f"self-loop at {e.tail!r}")
            if e.capacity < 0:
                raise MalformedNetwork(f"negative capacity on edge {e.id}")
            if e.length <= 0:
                raise MalformedNetwork(f"non-positive length on edge {e.id}")
        ids = [e.id for e in self.edges]
        if ids != list(range(len(ids))):
            raise MalformedNetwork("edge ids must be dense 0..m-1 in order")
        for c in self.commodities:
            if c.source not in seen or c.sink not in seen:
                raise UnknownNode(f"commodity ({c.source},{c.sink}) has unknown endpoint")
            if c.source == c.sink:
                raise MalformedNetwork("commodity source equals sink")

    # -- convenience constructors -------------------------------------------

    @staticmethod
    def build(orientation, nodes, edges, commodities=(), lengths=None):
        """edges: iterable of (tail, head, capacity) or (tail, head, capacity, length);
        commodities: iterable of (source, sink[, max_demand[, min_demand]]),
        demand None meaning unbounded."""
        built = []
        for i, spec in enumerate(edges):
            if len(spec) == 4:
                tail, head, cap, length = spec
            else:
                tail, head, cap = spec
                length = 1
            built.append(Edge(i, tail, head, rat(cap), int(length)))
        coms = []
        for spec in commodities:
            spec = tuple(spec)
            src, dst = spec[0], spec[1]
            dmax = rat(spec[2]) if len(spec) > 2 and spec[2] is not None else None
            dmin = rat(spec[3]) if len(spec) > 3 and spec[3] is not None else None
            coms.append(Commodity(src, dst, dmax, dmin))
        return FlowNetwork(orientation, tuple(nodes), tuple(built), tuple(coms))

    @property
    def directed(self) -> bool:
        return self.orientation == DIRECTED

    def edge(self, eid: int) -> Edge:
        return self.edges[eid]

    def total_capacity(self):
        return sum((e.capacity for e in self.edges), rat(0))

    def adjacency(self):
        """node -> list of (edge, direction), deterministic order."""
        adj = {v: [] for v in self.nodes}
        for e in self.edges:
            adj[e.tail].append((e, FWD))
            if not self.directed:
                adj[e.head].append((e, REV))
        for lst in adj.values():
            lst.sort(key=lambda pair: (pair[0].id, -pair[1]))
        return adj

    def with_commodities(self, commodities):
        return FlowNetwork(self.orientation, self.nodes, self.edges, tuple(commodities))


@dataclass(frozen=True)
class EdgeWalk:
    """A walk recorded as node sequence plus (edge id, direction) steps."""

    nodes: tuple
    steps: tuple  # of (edge_id, FWD|REV)

    def __len__(self):
        return len(self.steps)

    @property
    def source(self):
        return self.nodes[0]

    @property
    def sink(self):
        return self.nodes[-1]

    def is_simple(self) -> bool:
        return len(set(self.nodes)) == len(self.nodes)

    def edge_multiplicity(self):
        """edge id -> number of traversals (any direction)."""
        counts = {}
        for eid, _ in self.steps:
            counts[eid] = counts.get(eid, 0) + 1
        return counts

    def visits(self, node) -> bool:
        return node in self.nodes


@dataclass(frozen=True)
class PathConstraint:
    """What a family of paths is required to satisfy.

    kind: "unconstrained" | "through" | "through_any" | "simple_through"
    nodes: the designated node(s), empty for unconstrained.
    """

    kind: str
    nodes: tuple = ()

    def __post_init__(self):
        if self.kind not in ("unconstrained", "through", "through_any", "simple_through"):
            raise ValueError(f"bad constraint kind {self.kind!r}")
        if self.kind == "unconstrained" and self.nodes:
            raise ValueError("unconstrained takes no nodes")
        if self.kind in ("through", "simple_through") and len(self.nodes) != 1:
            raise ValueError(f"{self.kind} takes exactly one node")
        if self.kind == "through_any" and not self.nodes:
            raise ValueError("through_any takes a nonempty node set")

    def satisfied_by(self, walk: EdgeWalk) -> bool:
        if self.kind == "unconstrained":
            return True
        if self.kind == "through_any":
            return any(w in walk.nodes for w in self.nodes)
        ok = self.nodes[0] in walk.nodes
        if self.kind == "simple_through":
            ok = ok and walk.is_simple()
        return ok


UNCONSTRAINED = PathConstraint("unconstrained")


def through(w) -> PathConstraint:
    return PathConstraint("through", (w,))


def through_any(ws) -> PathConstraint:
    return PathConstraint("through_any", tuple(sorted(ws)))


def simple_through(w) -> PathConstraint:
    return PathConstraint("simple_through", (w,))


@dataclass(frozen=True)
class PathFamily:
    source: str
    sink: str
    constraint: PathConstraint
    paths: tuple
    truncated: bool = False
    single_use: bool = False  # undirected no-repeat variant

    def __len__(self):
        return len(self.paths)


class _Hit(Exception):
    pass


def _iter_walks(net: FlowNetwork, source, sink, simple: bool, single_use: bool) -> Iterator[EdgeWalk]:
    """Depth-first generator over edge-distinct walks source -> sink.

    Yields every valid walk; a walk is yielded when it reaches the sink and
    the search keeps extending it afterwards (paths may pass through the sink
    and come back), except in simple mode where extension past a visited node
    is impossible anyway.
    """
    adj = net.adjacency()
    node_seq = [source]
    steps = []
    used = {}  # edge id -> set of directions used so far
    on_path = {source}  # only consulted in simple mode

    def extend(node):
        if node == sink and steps:
            yield EdgeWalk(tuple(node_seq), tuple(steps))
        for edge, direction in adj[node]:
            dirs = used.get(edge.id)
            if dirs is not None:
                if single_use or net.directed or direction in dirs:
                    continue
            nxt = edge.head if direction == FWD else edge.tail
            if simple and nxt in on_path:
                continue
            used.setdefault(edge.id, set()).add(direction)
            node_seq.append(nxt)
            steps.append((edge.id, direction))
            if simple:
                on_path.add(nxt)
            yield from extend(nxt)
            if simple:
                on_path.discard(nxt)
            steps.pop()
            node_seq.pop()
            dirs = used[edge.id]
            dirs.discard(direction)
            if not dirs:
                del used[edge.id]

    yield from extend(source)


def enumerate_st_paths(
    net: FlowNetwork,
    source,
    sink,
    constraint: PathConstraint = UNCONSTRAINED,
    cap: int = DEFAULT_PATH_CAP,
    single_use: bool = False,
) -> PathFamily:
    """All paths source -> sink satisfying the constraint, deterministic order.

    single_use forbids using an undirected edge twice even in opposite
    directions (the "no repeated edge at all" variant).
    """
    if source not in net.nodes or sink not in net.nodes:
        raise UnknownNode(f"no such node pair ({source!r}, {sink!r})")
    if source == sink:
        raise MalformedNetwork("path enumeration needs distinct endpoints")
    for w in constraint.nodes:
        if w not in net.nodes:
            raise UnknownNode(f"constraint node {w!r} not in network")
    simple = constraint.kind == "simple_through"
    found = []
    truncated = False
    for walk in _iter_walks(net, source, sink, simple, single_use):
        if not constraint.satisfied_by(walk):
            continue
        if len(found) >= cap:
            truncated = True
            break
        found.append(walk)
    return PathFamily(source, sink, constraint, tuple(found), truncated, single_use)


def enumerate_paths(net: FlowNetwork, commodity: int, constraint=UNCONSTRAINED,
                    cap=DEFAULT_PATH_CAP, single_use=False) -> PathFamily:
    com = net.commodities[commodity]
    return enumerate_st_paths(net, com.source, com.sink, constraint, cap, single_use)


@dataclass(frozen=True)
class WalkValidation:
    valid: bool
    simple: bool
    reason: Optional[str] = None
    step: Optional[int] = None


def validate_walk(net: FlowNetwork, walk: EdgeWalk) -> WalkValidation:
    """Check that a walk is a path in this network (edge-distinct, opposite
    directions only for the second use of an undirected edge)."""
    if not walk.steps:
        return WalkValidation(False, False, "empty walk")
    if len(walk.nodes) != len(walk.steps) + 1:
        return WalkValidation(False, False, "node/step length mismatch")
    if walk.nodes[0] not in net.nodes:
        return WalkValidation(False, False, f"unknown node {walk.nodes[0]!r}", 0)
    seen = {}
    node = walk.nodes[0]
    for i, (eid, direction) in enumerate(walk.steps):
        if not (0 <= eid < len(net.edges)):
            return WalkValidation(False, False, f"unknown edge id {eid}", i)
        edge = net.edges[eid]
        if direction == REV and net.directed:
            return WalkValidation(False, False, "reverse traversal of a directed edge", i)
        if direction not in (FWD, REV):
            return WalkValidation(False, False, f"bad direction {direction}", i)
        a, b = (edge.tail, edge.head) if direction == FWD else (edge.head, edge.tail)
        if a != node:
            return WalkValidation(False, False, f"step {i} does not start at {node!r}", i)
        if walk.nodes[i + 1] != b:
            return WalkValidation(False, False, "node sequence disagrees with step", i)
        prior = seen.get(eid)
        if prior is not None:
            if net.directed or direction in prior or len(prior) >= 2:
                return WalkValidation(False, False, f"edge {eid} reused", i)
        seen.setdefault(eid, set()).add(direction)
        node = b
    return WalkValidation(True, walk.is_simple())


def concat_walks(a: EdgeWalk, b: EdgeWalk) -> EdgeWalk:
    if a.sink != b.source:
        raise ValueError("walks do not share an endpoint")
    return EdgeWalk(a.nodes + b.nodes[1:], a.steps + b.steps)


def reverse_walk(walk: EdgeWalk) -> EdgeWalk:
    steps = tuple((eid, -d) for eid, d in reversed(walk.steps))
    return EdgeWalk(tuple(reversed(walk.nodes)), steps)
