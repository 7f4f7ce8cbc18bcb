"""JSON documents for nets, glue specifications and factoring outcomes.

A net document::

    {"vertices": ["a", "b", "c"],
     "constant": 0,
     "fields": {"a": -1, "b": -1, "c": 2},
     "couplings": [["a", "b", 1], ["a", "c", -2], ["b", "c", -2]]}

Couplings are listed with ``u < v`` and sorted. A glue document wraps two
nets as ``{"left": ..., "right": ..., "identify": [[left, right, merged], ...]}``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import GlueSpec
from .exceptions import NetError, SerializationError
from .spins import IsingNet, QuadraticForm

NET_KEYS = ("vertices", "constant", "fields", "couplings")


def net_to_dict(net: IsingNet) -> dict:
    form = net.energy
    return {
        "vertices": net.order,
        "constant": form.constant,
        "fields": dict(form.fields),
        "couplings": [[u, v, b] for (u, v), b in form.couplings.items()],
    }


def _integer(value, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SerializationError(f"key {key!r}: expected an integer, got {value!r}")
    return value


def net_from_dict(doc) -> IsingNet:
    if not isinstance(doc, dict):
        raise SerializationError("net document must be a JSON object")
    unknown = set(doc) - set(NET_KEYS) - {"identify"}
    if unknown:
        raise SerializationError(f"unknown key {sorted(unknown)[0]!r}")
    if "vertices" not in doc:
        raise SerializationError("missing key 'vertices'")
    vertices = doc["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise SerializationError("key 'vertices': expected an array of strings")
    constant = _integer(doc.get("constant", 0), "constant")
    fields = doc.get("fields", {})
    if not isinstance(fields, dict):
        raise SerializationError("key 'fields': expected an object")
    fields = {v: _integer(a, f"fields.{v}") for v, a in fields.items()}
    couplings = {}
    raw = doc.get("couplings", [])
    if not isinstance(raw, list):
        raise SerializationError("key 'couplings': expected an array")
    for k, entry in enumerate(raw):
        if not (isinstance(entry, list) and len(entry) == 3
                and isinstance(entry[0], str) and isinstance(entry[1], str)):
            raise SerializationError(f"key 'couplings[{k}]': expected [u, v, weight]")
        u, v, b = entry
        if not u < v:
            raise SerializationError(f"key 'couplings[{k}]': endpoints must satisfy u < v")
        if (u, v) in couplings:
            raise SerializationError(f"key 'couplings[{k}]': duplicate pair ({u}, {v})")
        couplings[(u, v)] = _integer(b, f"couplings[{k}]")
    try:
        return IsingNet(frozenset(vertices), QuadraticForm(constant, fields, couplings))
    except NetError as exc:
        raise SerializationError(str(exc)) from exc


def dumps_net(net: IsingNet, indent: int | None = 2) -> str:
    return json.dumps(net_to_dict(net), indent=indent)


def loads_net(text: str) -> IsingNet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializationError(f"invalid JSON: {exc}") from exc
    return net_from_dict(doc)


def save_net(net: IsingNet, path) -> None:
    Path(path).write_text(dumps_net(net) + "\n")


def load_net(path) -> IsingNet:
    return loads_net(Path(path).read_text())


def glue_to_dict(left: IsingNet, right: IsingNet, spec: GlueSpec) -> dict:
    return {
        "left": net_to_dict(left),
        "right": net_to_dict(right),
        "identify": [list(row) for row in spec.identify],
    }


def glue_from_dict(doc) -> tuple[IsingNet, IsingNet, GlueSpec]:
    for key in ("left", "right", "identify"):
        if key not in doc:
            raise SerializationError(f"missing key {key!r}")
    rows = doc["identify"]
    if not isinstance(rows, list) or not all(
        isinstance(r, list) and len(r) == 3 and all(isinstance(x, str) for x in r) for r in rows
    ):
        raise SerializationError("key 'identify': expected [[left_id, right_id, merged_id], ...]")
    return net_from_dict(doc["left"]), net_from_dict(doc["right"]), GlueSpec(tuple(map(tuple, rows)))
