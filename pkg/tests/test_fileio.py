import json

import pytest

from nodeflow import (Instance, ParseError, catalog, instance_hash,
                      load_instance, parse_instance, rat, save_instance,
                      serialize_instance)


def _instances():
    for b in catalog():
        designated = dict(b.designated)
        middlepoints = designated.pop("middlepoints", None)
        designated = {k: v for k, v in designated.items()
                      if k in ("w", "W", "group")}
        yield b.name, Instance(b.network, middlepoints, designated)


def test_round_trip_all_builtins():
    for name, inst in _instances():
        again = parse_instance(serialize_instance(inst))
        assert again == inst, name
        assert again.network == inst.network, name


def test_hash_stable_and_distinct():
    hashes = {}
    for name, inst in _instances():
        h = instance_hash(inst)
        assert h == instance_hash(parse_instance(serialize_instance(inst)))
        hashes[name] = h
    # fig8 and fig8-undirected differ only in orientation but must not collide
    assert hashes["fig8"] != hashes["fig8-undirected"]


def test_save_and_load(tmp_path):
    name, inst = next(iter(_instances()))
    path = tmp_path / "inst.json"
    save_instance(inst, path)
    assert load_instance(path) == inst


def test_unknown_top_level_key():
    with pytest.raises(ParseError, match="top level"):
        parse_instance('{"oops": 1}')


def test_unknown_edge_key_location():
    doc = {"orientation": "directed", "nodes": ["a", "b"],
           "edges": [{"tail": "a", "head": "b", "capacity": 1, "color": 3}],
           "commodities": []}
    with pytest.raises(ParseError, match=r"edges\[0\]"):
        parse_instance(json.dumps(doc))


def test_float_capacity_rejected():
    doc = {"orientation": "directed", "nodes": ["a", "b"],
           "edges": [{"tail": "a", "head": "b", "capacity": 1.5}],
           "commodities": []}
    with pytest.raises(ParseError):
        parse_instance(json.dumps(doc))


def test_nan_and_infinity_literals_rejected():
    doc = ('{"orientation": "directed", "nodes": ["a", "b"], "edges": '
           '[{"tail": "a", "head": "b", "capacity": NaN}], "commodities": []}')
    with pytest.raises(ParseError):
        parse_instance(doc)


def test_fraction_strings_accepted():
    doc = {"orientation": "directed", "nodes": ["a", "b"],
           "edges": [{"tail": "a", "head": "b", "capacity": "3/2"}],
           "commodities": [{"src": "a", "dst": "b", "demand": "inf"}]}
    inst = parse_instance(json.dumps(doc))
    assert inst.network.edges[0].capacity == rat(3, 2)
    assert inst.network.commodities[0].max_demand is None


def test_malformed_network_wrapped():
    doc = {"orientation": "directed", "nodes": ["a"],
           "edges": [{"tail": "a", "head": "a", "capacity": 1}],
           "commodities": []}
    with pytest.raises(ParseError):
        parse_instance(json.dumps(doc))


def test_not_json_at_all():
    with pytest.raises(ParseError):
        parse_instance("orientation: directed")
