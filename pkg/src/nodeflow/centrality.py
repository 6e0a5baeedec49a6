"""Flow centrality and group flow.

Centrality of a node w aggregates, over all ordered node pairs avoiding w,
how much flow could be forced through w relative to the unconstrained
maximum.  Group flow generalizes the node constraint to a set; the N-group
problem asks for the most valuable set of at most N nodes and is solved both
by exhaustive search and by a greedy heuristic.  A sampling probe documents
that group flow is monotone but not submodular.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import lp as lpmod
from .errors import LimitExceeded
from .network import (DEFAULT_PATH_CAP, Commodity, Edge, FlowNetwork, through)
from .rational import ZERO, rat
from .te import max_flow_arc_lp, solve_te_mf
from .wflow import max_set_flow, max_set_flow_paths, max_w_flow_exact

DEFAULT_EXACT_NODE_LIMIT = 10


def _single_pair(net: FlowNetwork, s, t) -> FlowNetwork:
    return net.with_commodities([Commodity(s, t, None)])


def pair_w_flow(net: FlowNetwork, w, s, t, cap=DEFAULT_PATH_CAP):
    """Node-constrained max flow for the single unbounded pair (s, t)."""
    single = _single_pair(net, s, t)
    return max_set_flow(single, (w,), cap=cap).objective


def pair_max_flow(net: FlowNetwork, s, t):
    return max_flow_arc_lp(_single_pair(net, s, t)).objective


def _guard(net: FlowNetwork, limit):
    if net.directed and len(net.nodes) > limit:
        raise LimitExceeded(
            f"exact node-constrained flow on directed networks is exponential; "
            f"{len(net.nodes)} nodes exceeds the guard of {limit}")


@dataclass
class CentralityReport:
    node: str
    numerator: object
    denominator: object
    ratio: object          # None when no pair carries any flow
    pairs: list = field(default_factory=list)  # (s, t, constrained, unconstrained)


def flow_centrality(net: FlowNetwork, w, cap=DEFAULT_PATH_CAP,
                    node_limit=DEFAULT_EXACT_NODE_LIMIT) -> CentralityReport:
    """All-pairs flow centrality of w: the numerator sums node-constrained
    flow values over all ordered pairs not involving w, the denominator the
    corresponding unconstrained maxima."""
    _guard(net, node_limit)
    num = ZERO
    den = ZERO
    pairs = []
    others = [v for v in net.nodes if v != w]
    for s, t in itertools.permutations(others, 2):
        free = pair_max_flow(net, s, t)
        if free == 0:
            pairs.append((s, t, ZERO, ZERO))
            continue
        forced = pair_w_flow(net, w, s, t, cap=cap)
        num += forced
        den += free
        pairs.append((s, t, forced, free))
    ratio = None if den == 0 else num / den
    return CentralityReport(w, num, den, ratio, pairs)


def commodity_centrality(net: FlowNetwork, w, cap=DEFAULT_PATH_CAP,
                         node_limit=DEFAULT_EXACT_NODE_LIMIT) -> CentralityReport:
    """Centrality against the instance's own commodities and demands: the
    node-constrained multicommodity optimum over the unconstrained one."""
    _guard(net, node_limit)
    den_sol = max_flow_arc_lp(net)
    den = den_sol.objective
    num = max_set_flow(net, (w,), cap=cap).objective
    ratio = None if den == 0 else num / den
    return CentralityReport(w, num, den, ratio)


# -- group flow ----------------------------------------------------------------

@dataclass
class GroupFlowResult:
    group: tuple
    value: object
    method: str = "exact"
    trajectory: list = field(default_factory=list)  # greedy: (node, value) per round


def group_flow(net: FlowNetwork, group, cap=DEFAULT_PATH_CAP) -> GroupFlowResult:
    value = max_set_flow(net, tuple(group), cap=cap).objective
    return GroupFlowResult(tuple(sorted(group)), value)


class _GroupFlowCache:
    def __init__(self, net, cap=DEFAULT_PATH_CAP, norepeat=False):
        self.net = net
        self.cap = cap
        self.norepeat = norepeat
        self.values = {}

    def __call__(self, group):
        key = frozenset(group)
        if not key:
            return ZERO
        if key not in self.values:
            if self.norepeat:
                sol = max_set_flow_paths(self.net, tuple(key), cap=self.cap,
                                         single_use=True)
            else:
                sol = max_set_flow(self.net, tuple(key), cap=self.cap)
            self.values[key] = sol.objective
        return self.values[key]


def n_group_max_flow(net: FlowNetwork, n: int, method="brute",
                     cap=DEFAULT_PATH_CAP) -> GroupFlowResult:
    """Best group of at most n nodes.

    method="brute" enumerates every subset (exponential, exact); "greedy"
    adds one node per round by best marginal gain.  Ties always go to the
    lexicographically smallest candidate, so results are deterministic.
    """
    if n < 1:
        raise ValueError("n must be positive")
    gf = _GroupFlowCache(net, cap)
    nodes = sorted(net.nodes)
    if method == "brute":
        best_group, best_value = (), ZERO
        for size in range(1, min(n, len(nodes)) + 1):
            for combo in itertools.combinations(nodes, size):
                v = gf(combo)
                if v > best_value:
                    best_group, best_value = combo, v
        return GroupFlowResult(best_group, best_value, "brute")
    if method == "greedy":
        chosen = []
        trajectory = []
        current = ZERO
        for _ in range(min(n, len(nodes))):
            pick, pick_value = None, current
            for v in nodes:
                if v in chosen:
                    continue
                val = gf(chosen + [v])
                if val > pick_value:
                    pick, pick_value = v, val
            if pick is None:
                break
            chosen.append(pick)
            current = pick_value
            trajectory.append((pick, current))
        return GroupFlowResult(tuple(sorted(chosen)), current, "greedy", trajectory)
    raise ValueError(f"unknown method {method!r}")


@dataclass
class ProbeReport:
    samples: int
    monotonicity_violations: list
    submodularity_violations: list

    @property
    def monotone(self):
        return not self.monotonicity_violations

    @property
    def submodular(self):
        return not self.submodularity_violations


def submodularity_probe(net: FlowNetwork, trials=100, seed=0,
                        cap=DEFAULT_PATH_CAP) -> ProbeReport:
    """Sample nested sets S <= T and a fresh node v; record violations of
    monotonicity (adding v may never lower the value) and of submodularity
    (the marginal gain of v at S at least the one at T).

    Group flow is monotone, and the probe should never find a violation of
    the first kind; it is *not* submodular, and on suitable instances the
    probe finds witnesses of the second kind.

    On undirected networks the probe scores groups over no-repeat paths
    (each edge at most once per path).  Allowing a path to reuse an edge in
    opposite directions gives every commodity a cheap detour through any
    group node, which restores the exchange property and -- as far as random
    search can tell -- makes the relaxed group value submodular, so the
    counterexamples disappear under that semantics.
    """
    rng = random.Random(seed)
    gf = _GroupFlowCache(net, cap, norepeat=not net.directed)
    nodes = sorted(net.nodes)
    mono = []
    submod = []
    for _ in range(trials):
        if len(nodes) < 2:
            break
        v = rng.choice(nodes)
        rest = [x for x in nodes if x != v]
        t_size = rng.randint(1, len(rest))
        T = rng.sample(rest, t_size)
        S = [x for x in T if rng.random() < 0.5]
        gS, gT = gf(S), gf(T)
        gSv, gTv = gf(S + [v]), gf(T + [v])
        if gSv < gS or gTv < gT or gT < gS:
            mono.append((tuple(sorted(S)), tuple(sorted(T)), v, gS, gT, gSv, gTv))
        if gSv - gS < gTv - gT:
            submod.append((tuple(sorted(S)), tuple(sorted(T)), v,
                           gSv - gS, gTv - gT))
    return ProbeReport(trials, mono, submod)


def probe_margins(net: FlowNetwork, S, T, v, cap=DEFAULT_PATH_CAP):
    """Marginal gains of v at S and at T under the probe's group semantics
    (no-repeat paths on undirected networks).  Returns (gain_at_S, gain_at_T).
    """
    gf = _GroupFlowCache(net, cap, norepeat=not net.directed)
    return (gf(list(S) + [v]) - gf(list(S)),
            gf(list(T) + [v]) - gf(list(T)))


def marginal_gain(net: FlowNetwork, base, v, cap=DEFAULT_PATH_CAP):
    gf = _GroupFlowCache(net, cap)
    return gf(list(base) + [v]) - gf(base)


# -- source/sink closures and the inclusion-exclusion identity ------------------

@dataclass
class HatConstructions:
    base: FlowNetwork
    source_hat: FlowNetwork
    sink_hat: FlowNetwork
    both: FlowNetwork
    s_hat: str
    t_hat: str


def hat_constructions(net: FlowNetwork, s, t) -> HatConstructions:
    """Attach a super-source s_hat -> s (capacity: total capacity out of s)
    and/or a super-sink t -> t_hat (total capacity into t)."""
    taken = set(net.nodes)

    def fresh(name):
        while name in taken:
            name = "_" + name
        taken.add(name)
        return name

    s_hat = fresh(f"{s}^")
    t_hat = fresh(f"{t}^")
    out_cap = sum((e.capacity for e in net.edges
                   if e.tail == s or (not net.directed and e.head == s)), ZERO)
    in_cap = sum((e.capacity for e in net.edges
                  if e.head == t or (not net.directed and e.tail == t)), ZERO)

    def extend(with_s, with_t):
        nodes = list(net.nodes)
        edges = [(e.tail, e.head, e.capacity, e.length) for e in net.edges]
        if with_s:
            nodes.append(s_hat)
            edges.append((s_hat, s, out_cap, 1))
        if with_t:
            nodes.append(t_hat)
            edges.append((t, t_hat, in_cap, 1))
        return FlowNetwork.build(net.orientation, nodes, edges)

    return HatConstructions(extend(False, False), extend(True, False),
                            extend(False, True), extend(True, True), s_hat, t_hat)


def node_flow_sum(net: FlowNetwork, w, cap=DEFAULT_PATH_CAP):
    """Sum of node-constrained pair flows over all ordered pairs avoiding w
    (the centrality numerator, unnormalized)."""
    total = ZERO
    others = [v for v in net.nodes if v != w]
    for s, t in itertools.permutations(others, 2):
        if pair_max_flow(net, s, t) == 0:
            continue
        total += pair_w_flow(net, w, s, t, cap=cap)
    return total


@dataclass
class Eq25Report:
    lhs: object
    terms: dict
    residual: object
    consistent: bool


def check_pair_sum_identity(net: FlowNetwork, w, s, t, cap=DEFAULT_PATH_CAP,
                            node_limit=DEFAULT_EXACT_NODE_LIMIT) -> Eq25Report:
    """The pair value nu^w(s,t) equals an inclusion-exclusion of the four
    pair-sum aggregates over the hat constructions:

        nu^w(s,t) = S(both hats) - S(source hat) - S(sink hat) + S(base).

    Evaluates both sides exactly and reports the residual.
    """
    _guard(net, node_limit)
    hats = hat_constructions(net, s, t)
    lhs = pair_w_flow(net, w, s, t, cap=cap)
    terms = {
        "both": node_flow_sum(hats.both, w, cap=cap),
        "source_hat": node_flow_sum(hats.source_hat, w, cap=cap),
        "sink_hat": node_flow_sum(hats.sink_hat, w, cap=cap),
        "base": node_flow_sum(hats.base, w, cap=cap),
    }
    rhs = terms["both"] - terms["source_hat"] - terms["sink_hat"] + terms["base"]
    return Eq25Report(lhs, terms, lhs - rhs, lhs == rhs)
