import json

import pytest

from isingnet import GlueSpec, SerializationError, and_gate, build_knuth, full_multiplier, glue
from isingnet.io import (
    dumps_net,
    glue_from_dict,
    glue_to_dict,
    load_net,
    loads_net,
    net_from_dict,
    net_to_dict,
    save_net,
)


@pytest.mark.parametrize("net", [and_gate(), full_multiplier(), build_knuth((2, 2)).net,
                                 build_knuth((3, 4)).net])
def test_round_trip(net, tmp_path):
    assert loads_net(dumps_net(net)) == net
    path = tmp_path / "net.json"
    save_net(net, path)
    assert load_net(path) == net


def test_document_layout():
    doc = net_to_dict(and_gate())
    assert doc == {
        "vertices": ["a", "b", "c"],
        "constant": 0,
        "fields": {"a": -1, "b": -1, "c": 2},
        "couplings": [["a", "b", 1], ["a", "c", -2], ["b", "c", -2]],
    }


@pytest.mark.parametrize("doc,key", [
    ({"constant": 0}, "vertices"),
    ({"vertices": ["a"], "constant": 1.5}, "constant"),
    ({"vertices": ["a"], "fields": {"a": "x"}}, "fields.a"),
    ({"vertices": ["a", "b"], "couplings": [["b", "a", 1]]}, "couplings[0]"),
    ({"vertices": ["a", "b"], "couplings": [["a", "b"]]}, "couplings[0]"),
    ({"vertices": ["a"], "colour": 1}, "colour"),
])
def test_malformed_documents_name_the_key(doc, key):
    with pytest.raises(SerializationError, match=key.replace("[", r"\[").replace("]", r"\]")):
        net_from_dict(doc)


def test_stray_field_vertex_is_rejected():
    with pytest.raises(SerializationError):
        net_from_dict({"vertices": ["a"], "fields": {"b": 1}})


def test_invalid_json():
    with pytest.raises(SerializationError):
        loads_net("{not json")


def test_glue_document_round_trip():
    left, right = and_gate("abc"), and_gate("bdc")
    spec = GlueSpec.along("bc")
    doc = json.loads(json.dumps(glue_to_dict(left, right, spec)))
    l2, r2, s2 = glue_from_dict(doc)
    assert glue(l2, r2, s2) == glue(left, right, spec)
    assert doc["identify"] == [["b", "b", "b"], ["c", "c", "c"]]


def test_glue_document_missing_key():
    with pytest.raises(SerializationError, match="identify"):
        glue_from_dict({"left": net_to_dict(and_gate()), "right": net_to_dict(and_gate())})
