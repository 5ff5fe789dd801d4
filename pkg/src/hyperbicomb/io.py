"""JSON encoding of spaces, points, sets and bodies.

Floats go through ``repr`` (shortest round-trip form), so every emitted value
parses back bit-identically.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .sets import FiniteCompactSet, Interval, Polygon, Subtree
from .spaces import Edge, NormedSpace, RTree, Space, TreePoint


class SchemaError(ValueError):
    """Malformed input, with a pointer to the offending field."""


def _need(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}")
    return obj[key]


def _num(x, where) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise SchemaError(f"{where}: expected a number, got {x!r}")
    return float(x)


# -- spaces -------------------------------------------------------------------

def load_space(obj, where: str = "space") -> Space:
    kind = _need(obj, "kind", where)
    if kind == "normed":
        dim = _need(obj, "dim", where)
        if isinstance(dim, bool) or not isinstance(dim, int):
            raise SchemaError(f"{where}.dim: expected an integer")
        try:
            return NormedSpace(dim, obj.get("norm", "l2"))
        except ValueError as exc:
            raise SchemaError(f"{where}: {exc}") from None
    if kind == "rtree":
        verts = _need(obj, "vertices", where)
        edges = []
        for i, e in enumerate(_need(obj, "edges", where)):
            w = f"{where}.edges[{i}]"
            eid = _need(e, "id", w)
            if isinstance(eid, bool) or not isinstance(eid, int):
                raise SchemaError(f"{w}.id: expected an integer")
            edges.append(Edge(eid, _need(e, "tail", w), _need(e, "head", w), _num(_need(e, "length", w), w + ".length")))
        try:
            return RTree(verts, edges)
        except ValueError as exc:
            raise SchemaError(f"{where}: {exc}") from None
    raise SchemaError(f"{where}.kind: unknown space kind {kind!r}")


def dump_space(space: Space) -> dict:
    if isinstance(space, NormedSpace):
        return {"kind": "normed", "dim": space.dim, "norm": space.norm}
    return {"kind": "rtree", "vertices": list(space.vertices),
            "edges": [{"id": e.id, "tail": e.tail, "head": e.head, "length": e.length} for e in space.edges]}


# -- points -------------------------------------------------------------------

def load_point(space: Space, obj, where: str = "point"):
    if isinstance(space, RTree):
        return TreePoint(_need(obj, "edge", where), _num(_need(obj, "offset", where), where + ".offset"))
    if isinstance(obj, dict):
        obj = _need(obj, "vec", where)
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        obj = [obj]
    if not isinstance(obj, list) or len(obj) != space.dim:
        raise SchemaError(f"{where}: expected a vector of length {space.dim}")
    return [_num(c, f"{where}[{i}]") for i, c in enumerate(obj)]


def dump_rows(space: Space, rows: np.ndarray) -> list:
    if isinstance(space, RTree):
        return [{"edge": p.edge, "offset": p.offset} for p in space.to_points(rows)]
    return [{"vec": [float(c) for c in r]} for r in rows]


# -- hyperspace elements ------------------------------------------------------

def load_element(space: Space, obj, where: str = "set"):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected a JSON object")
    try:
        if "points" in obj:
            pts = [load_point(space, p, f"{where}.points[{i}]") for i, p in enumerate(obj["points"])]
            if not pts:
                raise SchemaError(f"{where}.points: must be nonempty")
            return FiniteCompactSet(space, pts)
        if "interval" in obj:
            lo, hi = (_num(x, f"{where}.interval") for x in obj["interval"])
            return Interval(lo, hi)
        if "polygon" in obj:
            verts = [[_num(c, f"{where}.polygon[{i}]") for c in v] for i, v in enumerate(obj["polygon"])]
            return Polygon.from_vertices(verts)
        if "subtree" in obj:
            if not isinstance(space, RTree):
                raise SchemaError(f"{where}: subtrees need an rtree space")
            ivs = []
            for i, seg in enumerate(obj["subtree"]):
                w = f"{where}.subtree[{i}]"
                ivs.append((_need(seg, "edge", w), _num(_need(seg, "from", w), w + ".from"),
                            _num(_need(seg, "to", w), w + ".to")))
            return Subtree.from_intervals(space, ivs)
    except SchemaError:
        raise
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"{where}: {exc}") from None
    raise SchemaError(f"{where}: expected one of 'points', 'interval', 'polygon', 'subtree'")


def dump_element(space: Space, A) -> dict:
    if isinstance(A, FiniteCompactSet):
        return {"points": dump_rows(space, A.points)}
    if isinstance(A, Interval):
        return {"interval": [A.lo, A.hi]}
    if isinstance(A, Polygon):
        return {"polygon": [list(v) for v in A.vertices]}
    if isinstance(A, Subtree):
        return {"subtree": [{"edge": e, "from": lo, "to": hi} for e, lo, hi in A.as_intervals()]}
    raise TypeError(f"cannot serialise {type(A).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def read_json(arg: str, where: str):
    """Parse ``arg`` as inline JSON if it looks like JSON, otherwise as a file path."""
    text = arg
    if not arg.lstrip().startswith(("{", "[")):
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise SchemaError(f"{where}: cannot read {arg!r}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{where}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


# -- verify operands ----------------------------------------------------------

def dump_operands(ops: dict) -> dict:
    space = ops["space"]
    out = {"space": dump_space(space)}
    for key, val in ops.items():
        if key == "space":
            continue
        if isinstance(val, (FiniteCompactSet, Interval, Polygon, Subtree)):
            out[key] = {"set": dump_element(space, val)}
        elif isinstance(val, np.ndarray):
            out[key] = {"point": dump_rows(space, val.reshape(1, -1))[0]}
        else:
            out[key] = val
    return out


def load_operands(obj: dict) -> dict:
    space = load_space(obj["space"])
    ops = {"space": space}
    for key, val in obj.items():
        if key == "space":
            continue
        if isinstance(val, dict) and "set" in val:
            ops[key] = load_element(space, val["set"], key)
        elif isinstance(val, dict) and "point" in val:
            ops[key] = space.as_point(load_point(space, val["point"], key))
        else:
            ops[key] = val
    return ops
