import random

import pytest

from nodeflow import (FlowNetwork, MalformedNetwork, UnknownNode,
                      concat_walks, enumerate_st_paths, get_builtin,
                      reverse_walk, simple_through, through, through_any,
                      validate_walk)
from nodeflow.network import EdgeWalk

from conftest import oracle_walks, random_directed, random_undirected


def test_build_rejects_self_loop():
    with pytest.raises(MalformedNetwork):
        FlowNetwork.build("directed", ["a"], [("a", "a", 1)])


def test_build_rejects_duplicate_nodes():
    with pytest.raises(MalformedNetwork):
        FlowNetwork.build("directed", ["a", "a", "b"], [("a", "b", 1)])


def test_build_rejects_unknown_endpoint():
    with pytest.raises(UnknownNode):
        FlowNetwork.build("directed", ["a", "b"], [("a", "c", 1)])


def test_build_rejects_negative_capacity():
    with pytest.raises(MalformedNetwork):
        FlowNetwork.build("directed", ["a", "b"], [("a", "b", -1)])


def test_build_rejects_bad_orientation():
    with pytest.raises(MalformedNetwork):
        FlowNetwork.build("sideways", ["a", "b"], [("a", "b", 1)])


def test_enumeration_matches_oracle_directed():
    rng = random.Random(11)
    for _ in range(40):
        net = random_directed(rng, n_commodities=1)
        com = net.commodities[0]
        fam = enumerate_st_paths(net, com.source, com.sink)
        assert {p.nodes for p in fam.paths} == \
            oracle_walks(net, com.source, com.sink)


def test_enumeration_matches_oracle_undirected_all_variants():
    rng = random.Random(13)
    for _ in range(40):
        net = random_undirected(rng, n_nodes=rng.randint(3, 5),
                                n_edges=rng.randint(3, 6), n_commodities=1)
        com = net.commodities[0]
        w = rng.choice([v for v in net.nodes
                        if v not in (com.source, com.sink)] or [com.source])
        if w in (com.source, com.sink):
            continue
        for constraint, kw, okw in (
                (through(w), {}, {"through": w}),
                (through(w), {"single_use": True},
                 {"through": w, "single_use": True}),
                (simple_through(w), {}, {"through": w, "simple": True})):
            fam = enumerate_st_paths(net, com.source, com.sink, constraint,
                                     **kw)
            assert {p.nodes for p in fam.paths} == \
                oracle_walks(net, com.source, com.sink, **okw)


def test_walks_may_revisit_nodes_but_not_edges():
    net = get_builtin("figadd").network
    fam = enumerate_st_paths(net, "s", "t", through("w"))
    assert any(len(set(p.nodes)) < len(p.nodes) for p in fam.paths)
    simple = enumerate_st_paths(net, "s", "t", simple_through("w"))
    assert len(simple) == 0


def test_undirected_edge_opposite_directions_only():
    net = get_builtin("wst-undirected").network
    fam = enumerate_st_paths(net, "s", "t", through("w"))
    assert {p.nodes for p in fam.paths} == {("s", "w", "s", "t")}
    norep = enumerate_st_paths(net, "s", "t", through("w"), single_use=True)
    assert len(norep) == 0


def test_through_any():
    net = get_builtin("fig8").network
    fam = enumerate_st_paths(net, "s1", "t1", through_any(["s2", "s3"]))
    assert len(fam) == 0  # s2 and s3 are sources with no inbound edges


def test_cap_truncates():
    net = get_builtin("remarks").network
    fam = enumerate_st_paths(net, "s", "t", cap=1)
    assert fam.truncated and len(fam) == 1


def test_validate_accepts_enumerated_walks():
    rng = random.Random(17)
    for _ in range(10):
        net = random_undirected(rng, n_commodities=1)
        com = net.commodities[0]
        for walk in enumerate_st_paths(net, com.source, com.sink).paths:
            check = validate_walk(net, walk)
            assert check.valid, check


def test_validate_rejects_edge_reuse():
    net = FlowNetwork.build("directed", ["a", "b", "c"],
                            [("a", "b", 1), ("b", "a", 1)])
    bad = EdgeWalk(("a", "b", "a", "b"), ((0, 1), (1, 1), (0, 1)))
    assert not validate_walk(net, bad).valid


def test_concat_and_reverse():
    net = get_builtin("remarks").network
    sw = enumerate_st_paths(net, "s", "w").paths[0]
    wt = enumerate_st_paths(net, "w", "t").paths[0]
    joined = concat_walks(sw, wt)
    assert joined.nodes[0] == "s" and joined.nodes[-1] == "t"
    und = get_builtin("wst-undirected").network
    walk = enumerate_st_paths(und, "s", "t").paths[0]
    rev = reverse_walk(walk)
    assert rev.nodes == tuple(reversed(walk.nodes))
    assert validate_walk(und, rev).valid


def test_edge_ids_dense():
    with pytest.raises(MalformedNetwork):
        from nodeflow.network import Edge
        FlowNetwork("directed", ("a", "b"),
                    (Edge(1, "a", "b", 1),), ())
