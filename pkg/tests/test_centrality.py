import itertools
import random

from nodeflow import (check_pair_sum_identity, commodity_centrality,
                      enumerate_st_paths, flow_centrality, get_builtin,
                      group_flow, hat_constructions, marginal_gain,
                      max_w_flow_exact, n_group_max_flow, pair_max_flow,
                      pair_w_flow, probe_margins, rat, solve_te_mf,
                      submodularity_probe, through, through_any)

from conftest import pick_inner_node, random_directed


def test_flow_centrality_matches_definition():
    net = get_builtin("remarks").network
    report = flow_centrality(net, "w")
    num = rat(0)
    den = rat(0)
    for s, t in itertools.permutations([v for v in net.nodes if v != "w"], 2):
        free = pair_max_flow(net, s, t)
        if free == 0:
            continue
        num += pair_w_flow(net, "w", s, t)
        den += free
    assert (report.numerator, report.denominator) == (num, den)
    assert report.ratio == num / den


def test_commodity_centrality_fig8():
    net = get_builtin("fig8").network
    assert commodity_centrality(net, "s3").ratio == rat(1, 3)


def test_group_flow_fig8_pins():
    net = get_builtin("fig8").network
    assert group_flow(net, ("s1",)).value == 2
    assert group_flow(net, ("s1", "s2")).value == 2
    assert group_flow(net, ("s1", "s2", "s3")).value == 3
    assert n_group_max_flow(net, 1, "brute").value == 2
    assert n_group_max_flow(net, 3, "brute").value == 3


def test_group_flow_matches_path_lp():
    rng = random.Random(89)
    checked = 0
    while checked < 25:
        net = random_directed(rng, n_commodities=rng.randint(1, 2))
        nodes = sorted(net.nodes)
        group = tuple(rng.sample(nodes, rng.randint(1, 2)))
        value = group_flow(net, group).value
        fams = [enumerate_st_paths(net, c.source, c.sink, through_any(group))
                for c in net.commodities]
        assert value == solve_te_mf(net, fams).objective, checked
        checked += 1


def test_greedy_never_beats_brute():
    rng = random.Random(97)
    for _ in range(10):
        net = random_directed(rng, n_commodities=2)
        for n in (1, 2):
            brute = n_group_max_flow(net, n, "brute").value
            greedy = n_group_max_flow(net, n, "greedy").value
            assert greedy <= brute


def test_probe_margin_pair_both_orientations():
    for name in ("fig8", "fig8-undirected"):
        net = get_builtin(name).network
        assert probe_margins(net, ("s1",), ("s1", "s2"), "s3") == (0, 1), name


def test_probe_finds_violation_and_stays_monotone():
    for name in ("fig8", "fig8-undirected"):
        report = submodularity_probe(get_builtin(name).network, trials=400)
        assert report.monotone, name
        assert not report.submodular, name


def test_marginal_gain_nonnegative():
    net = get_builtin("fig8").network
    for v in net.nodes:
        assert marginal_gain(net, ("s1",), v) >= 0


def test_eq25_zero_residual_random():
    rng = random.Random(101)
    checked = 0
    while checked < 25:
        net = random_directed(rng, n_commodities=1)
        w = pick_inner_node(rng, net)
        if w is None:
            continue
        com = net.commodities[0]
        report = check_pair_sum_identity(net, w, com.source, com.sink)
        assert report.residual == 0 and report.consistent, checked
        checked += 1


def test_hat_constructions_shapes():
    net = get_builtin("remarks").network
    hats = hat_constructions(net, "s", "t")
    for g in (hats.source_hat, hats.sink_hat, hats.both):
        assert set(net.nodes) <= set(g.nodes)
        assert len(g.nodes) > len(net.nodes)
