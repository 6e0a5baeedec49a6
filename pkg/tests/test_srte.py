import itertools
import random
from math import comb

from nodeflow import (SrConfig, Tunnel, acyclic_feasible, build_tunnels,
                      detect_cycles, ecmp_fractions, get_builtin, rat,
                      segment_tables, shortest_path_data, solve_sr_lu,
                      solve_sr_mf, solve_te_mf, tunnel_bound)

from conftest import random_directed


def _brute_shortest(net, s):
    """Independent Bellman-Ford distances plus shortest-path counts."""
    dist = {s: 0}
    arcs = []
    for e in net.edges:
        arcs.append((e.tail, e.head, e.length))
        if not net.directed:
            arcs.append((e.head, e.tail, e.length))
    for _ in range(len(net.nodes)):
        for a, b, ln in arcs:
            if a in dist and dist[a] + ln < dist.get(b, float("inf")):
                dist[b] = dist[a] + ln
    counts = {s: 1}
    for v, _ in sorted(((v, d) for v, d in dist.items()), key=lambda x: x[1]):
        if v == s:
            continue
        counts[v] = sum(counts[a] for a, b, ln in arcs
                        if b == v and a in dist and dist[a] + ln == dist[v])
    return dist, counts


def test_shortest_path_data_matches_bellman_ford():
    rng = random.Random(71)
    for trial in range(40):
        net = random_directed(rng, n_commodities=1)
        s = net.commodities[0].source
        dist, counts, _ = shortest_path_data(net, s)
        bf_dist, bf_counts = _brute_shortest(net, s)
        assert dist == bf_dist, trial
        assert counts == bf_counts, trial


def test_ecmp_fractions_conserve_and_bound():
    rng = random.Random(73)
    checked = 0
    while checked < 40:
        net = random_directed(rng, n_commodities=1)
        u, v = net.commodities[0].source, net.commodities[0].sink
        frac = ecmp_fractions(net, u, v)
        if not frac.reachable():
            continue
        balance = {node: rat(0) for node in net.nodes}
        for eid, share in frac.fractions.items():
            assert 0 < share <= 1, checked
            e = net.edge(eid)
            balance[e.tail] -= share
            balance[e.head] += share
        for node in net.nodes:
            expect = rat(0)
            if node == u:
                expect = rat(-1)
            elif node == v:
                expect = rat(1)
            assert balance[node] == expect, (checked, node)
        checked += 1


def test_tunnel_counts_within_binomial_bound():
    rng = random.Random(79)
    for _ in range(20):
        net = random_directed(rng, n_nodes=6, n_edges=10, n_commodities=2)
        k = rng.randint(1, 3)
        mids = rng.sample([v for v in net.nodes], k)
        for m in (1, 2):
            cfg = SrConfig(tuple(mids), m)
            tunnels = build_tunnels(net, cfg)
            bound = tunnel_bound(k, m)
            assert bound == sum(comb(k, j) for j in range(min(k, m) + 1))
            for per_com in tunnels:
                assert len(per_com) <= bound
                for tun in per_com:
                    assert len(tun.middlepoints) <= m
                    # middlepoints keep the configured order
                    idx = [mids.index(x) for x in tun.middlepoints]
                    assert idx == sorted(idx)


def test_cycle_instance_flags_shared_edge():
    b = get_builtin("cycle-3")
    net = b.network
    shared = next(e.id for e in net.edges
                  if (e.tail, e.head) == ("u1", "u2"))
    hits = detect_cycles(net, Tunnel(0, ("w",)))
    assert any(eid == shared and len(idxs) >= 2 for eid, idxs in hits)
    for mode in ("path", "simple_path"):
        assert not acyclic_feasible(net, "s", "t", ("w",), mode=mode).feasible


def test_cycle_forced_tunnel_doubles_utilization():
    net = get_builtin("cycle-3").network
    sol, _ = solve_sr_lu(net, SrConfig(("w",), 1, use_all=True))
    assert sol.theta == 2


def test_sr_solutions_respect_capacity_and_demand():
    rng = random.Random(83)
    checked = 0
    while checked < 40:
        net = random_directed(rng, n_nodes=5, n_edges=8, n_commodities=2,
                              finite_demands=True)
        mids = rng.sample(list(net.nodes), rng.randint(1, 2))
        cfg = SrConfig(tuple(mids), rng.choice((1, 2)))
        sol, tables = solve_sr_mf(net, cfg)
        if sol.status != "optimal":
            continue
        loads = sol.edge_loads(net, tables)
        for e in net.edges:
            assert loads[e.id] <= e.capacity, checked
        for (i, _), f in sol.tunnel_flows.items():
            assert f >= 0
        for i, com in enumerate(net.commodities):
            routed = sum(f for (j, _), f in sol.tunnel_flows.items()
                         if j == i)
            assert routed <= com.max_demand, checked
        # tunnel routing can never beat the unconstrained optimum
        assert sol.objective <= solve_te_mf(net).total_value(), checked
        checked += 1


def test_acyclic_feasible_finds_witness():
    net = get_builtin("remarks").network
    result = acyclic_feasible(net, "s", "t", ("w",), mode="simple_path")
    assert result.feasible
    assert result.witness.nodes[0] == "s"
    assert "w" in result.witness.nodes


def test_segment_tables_cover_all_segments():
    net = get_builtin("cycle-3").network
    tunnels = build_tunnels(net, SrConfig(("w",), 1))
    tables = segment_tables(net, tunnels)
    for per_com in tunnels:
        for tun in per_com:
            for seg in tun.segments(net.commodities[tun.commodity]):
                assert seg in tables
