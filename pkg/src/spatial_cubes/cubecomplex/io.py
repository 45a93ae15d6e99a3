"""``cubecomplex/v1`` JSON documents and DOT export."""
from __future__ import annotations

import json

from . import frames
from .core import ComplexError, Cube, CubeComplex, boundary_walk, square

SCHEMA = "cubecomplex/v1"
_FIELDS = {"schema", "vertices", "edges", "squares", "cubes"}


class SchemaError(ValueError):
    pass


def to_dict(X: CubeComplex) -> dict:
    doc = {
        "schema": SCHEMA,
        "vertices": list(range(X.n_vertices)),
        "edges": [{"id": e, "ends": [u, v]} for e, (u, v) in enumerate(X.edges)],
        "squares": [],
        "cubes": [],
    }
    for i, c in enumerate(X.squares()):
        _, walk = boundary_walk(c)
        doc["squares"].append({"id": i, "boundary": [{"edge": e, "sign": s} for e, s in walk]})
    for k in sorted(X.cubes):
        if k < 3:
            continue
        for i in range(X.count(k)):
            axes = []
            for a in range(k):
                others = tuple(b for b in range(k) if b != a)
                pair = []
                for t in (0, 1):
                    _, fid, h = X.face(k, i, others, t << a)
                    pair.append({"cell": fid, "sym": frames.encode_sym(h)})
                axes.append(pair)
            doc["cubes"].append({"id": i, "dim": k, "axes": axes})
    return doc


def _check_keys(obj, allowed, what):
    if not isinstance(obj, dict):
        raise SchemaError(f"{what} must be an object")
    extra = set(obj) - set(allowed)
    if extra:
        raise SchemaError(f"unknown field(s) in {what}: {sorted(extra)}")
    missing = set(allowed) - set(obj)
    if missing:
        raise SchemaError(f"missing field(s) in {what}: {sorted(missing)}")


def _index(ids, what):
    out = {}
    for pos, x in enumerate(ids):
        if not isinstance(x, (int, str)) or isinstance(x, bool):
            raise SchemaError(f"{what} ids must be integers or strings")
        if x in out:
            raise SchemaError(f"duplicate {what} id {x!r}")
        out[x] = pos
    return out


def from_dict(doc: dict, extra_fields=()) -> CubeComplex:
    allowed = _FIELDS | set(extra_fields)
    if not isinstance(doc, dict):
        raise SchemaError("document must be an object")
    unknown = set(doc) - allowed
    if unknown:
        raise SchemaError(f"unknown field(s): {sorted(unknown)}")
    if doc.get("schema") != SCHEMA:
        raise SchemaError(f"expected schema {SCHEMA!r}")
    vid = _index(doc.get("vertices", []), "vertex")
    edges, eid = [], {}
    for rec in doc.get("edges", []):
        _check_keys(rec, {"id", "ends"}, "edge")
        ends = rec["ends"]
        if not isinstance(ends, list) or len(ends) != 2 or any(v not in vid for v in ends):
            raise SchemaError(f"edge {rec['id']!r} has bad ends")
        _index([rec["id"]], "edge")
        if rec["id"] in eid:
            _dup("edge", rec["id"])
        eid[rec["id"]] = len(edges)
        edges.append((vid[ends[0]], vid[ends[1]]))
    cubes = []
    sid = {}
    for rec in doc.get("squares", []):
        _check_keys(rec, {"id", "boundary"}, "square")
        if rec["id"] in sid:
            _dup("square", rec["id"])
        walk = []
        if not isinstance(rec["boundary"], list) or len(rec["boundary"]) != 4:
            raise SchemaError(f"square {rec['id']!r} needs 4 boundary entries")
        for ref in rec["boundary"]:
            _check_keys(ref, {"edge", "sign"}, "edge reference")
            if ref["edge"] not in eid or ref["sign"] not in (1, -1):
                raise SchemaError(f"square {rec['id']!r} has a bad edge reference")
            walk.append((eid[ref["edge"]], ref["sign"]))
        corners = []
        for e, s in walk:
            u, v = edges[e]
            corners.append(u if s > 0 else v)
        # closing up is checked by the complex itself
        sid[rec["id"]] = len(cubes)
        cubes.append(square(corners, walk))
    pending = {}
    for rec in doc.get("cubes", []):
        _check_keys(rec, {"id", "dim", "axes"}, "cube")
        k = rec["dim"]
        if not isinstance(k, int) or k < 3:
            raise SchemaError("cube records need dim >= 3")
        pending.setdefault(k, []).append(rec)
    built = {2: cubes}
    ids = {2: sid}
    for k in sorted(pending):
        if k - 1 not in built:
            raise SchemaError(f"{k}-cubes given without {k - 1}-cubes")
        built[k], ids[k] = [], {}
        for rec in pending[k]:
            if rec["id"] in ids[k]:
                _dup(f"{k}-cube", rec["id"])
            ids[k][rec["id"]] = len(built[k])
            built[k].append(_assemble(k, rec, built[k - 1], ids[k - 1]))
    try:
        X = CubeComplex(len(vid), edges, [c for k in sorted(built) for c in built[k]])
    except ComplexError as err:
        raise SchemaError(str(err)) from err
    # declared faces must be the faces the complex resolves
    for k in sorted(pending):
        for rec in pending[k]:
            i = ids[k][rec["id"]]
            for a, pair in enumerate(rec["axes"]):
                others = tuple(b for b in range(k) if b != a)
                for t, ref in enumerate(pair):
                    _, fid, _ = X.face(k, i, others, t << a)
                    if fid != ids[k - 1][ref["cell"]]:
                        raise SchemaError(f"{k}-cube {rec['id']!r}: face references are inconsistent")
    return X


def _dup(what, x):
    raise SchemaError(f"duplicate {what} id {x!r}")


def _assemble(k, rec, faces, face_ids) -> Cube:
    axes = rec["axes"]
    if not isinstance(axes, list) or len(axes) != k:
        raise SchemaError(f"{k}-cube {rec['id']!r} needs {k} axis pairs")
    corners = [None] * (1 << k)
    idx = frames.slot_index(k)
    slots = [None] * len(idx)
    for a, pair in enumerate(axes):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(f"{k}-cube {rec['id']!r}: axis {a} needs two faces")
        others = [b for b in range(k) if b != a]
        for t, ref in enumerate(pair):
            _check_keys(ref, {"cell", "sym"}, "face reference")
            if ref["cell"] not in face_ids:
                raise SchemaError(f"{k}-cube {rec['id']!r}: unknown face {ref['cell']!r}")
            try:
                h = frames.decode_sym(ref["sym"])
            except (TypeError, ValueError) as err:
                raise SchemaError(str(err)) from err
            if len(h[0]) != k - 1:
                raise SchemaError(f"{k}-cube {rec['id']!r}: face symmetry has the wrong size")
            f = faces[face_ids[ref["cell"]]]
            fc, fs = frames.transform(h, f.corners, f.slots)

            def lift(mm):
                return (t << a) | sum(1 << b for r, b in enumerate(others) if mm >> r & 1)

            for mm, v in enumerate(fc):
                _put(corners, lift(mm), v, rec)
            for (r, mm), val in zip(frames.slots(k - 1), fs):
                _put(slots, idx[(others[r], lift(mm))], val, rec)
    return Cube(tuple(corners), tuple(slots))


def _put(arr, i, val, rec):
    if arr[i] is not None and arr[i] != val:
        raise SchemaError(f"cube {rec['id']!r}: faces disagree on a shared face")
    arr[i] = val


def dumps(X: CubeComplex) -> str:
    return json.dumps(to_dict(X), indent=2) + "\n"


def loads(text: str) -> CubeComplex:
    return from_dict(json.loads(text))


def to_dot(X: CubeComplex, name: str = "complex", edge_labels=None) -> str:
    """1-skeleton as a DOT digraph; edges are labelled by hyperplane id."""
    lines = [f"digraph {name} {{"]
    for v in range(X.n_vertices):
        lines.append(f"  v{v};")
    for e, (u, v) in enumerate(X.edges):
        label = f"H{X.hyperplane_of(e)}"
        if edge_labels is not None:
            label += f" {edge_labels[e]}"
        lines.append(f'  v{u} -> v{v} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
