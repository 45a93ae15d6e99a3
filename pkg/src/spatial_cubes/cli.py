"""Command-line front end.

Exit codes: 0 success or a true check, 1 a false check, 2 usage error,
3 invalid input, 4 indeterminate (search bound reached).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import blowup as bl
from . import collapse as co
from . import spine as sp
from .cubecomplex import (ComplexError, SchemaError, is_cat0, is_median_graph, is_special,
                          subdivide, to_dot)
from .cubecomplex import io as cio
from .raag import DefiningGraph, GraphError, salvetti
from .wallspace import Wallspace, WallspaceError, random_wallspace, sageev
from .whitehead import (DEFAULT_BOUND, BoundExceeded, PartitionError, enumerate_collections,
                        enumerate_partitions)

OK, FALSE, USAGE, INVALID, INDETERMINATE = 0, 1, 2, 3, 4
DEFAULT_SEED = 0


class InvalidInput(Exception):
    pass


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as err:
        raise InvalidInput(f"cannot read {path}: {err.strerror}") from err
    except json.JSONDecodeError as err:
        raise InvalidInput(f"{path} is not valid JSON: {err}") from err


def _graph(path: str) -> DefiningGraph:
    return DefiningGraph.from_dict(_read_json(path))


def _complex(path: str):
    return bl.load_complex(_read_json(path))


def _ids(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as err:
        raise InvalidInput(f"expected integer ids, got {text!r}") from err


def _emit(args, payload: str):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _emit_complex(args, X, doc=None):
    if args.format == "dot":
        _emit(args, to_dot(X))
    else:
        _emit(args, _json(doc if doc is not None else cio.to_dict(X)))


# ----------------------------------------------------------------------
# subcommands


def cmd_partitions(args) -> int:
    G = _graph(args.graph)
    parts = enumerate_partitions(G, args.bound)
    doc = {"graph": G.to_dict(), "partitions": [p.to_dict() for p in parts]}
    if args.collections:
        doc["collections"] = [list(c) for c in enumerate_collections(G, args.max_size, args.bound, parts)]
    _emit(args, _json(doc))
    return OK


def cmd_blowup(args) -> int:
    G = _graph(args.graph)
    parts = enumerate_partitions(G, args.bound)
    chosen = _ids(args.collection)
    if any(not 0 <= i < len(parts) for i in chosen):
        raise InvalidInput(f"partition ids must lie in 0..{len(parts) - 1}")
    B = bl.build_blowup(G, [parts[i] for i in chosen])
    _emit_complex(args, B.complex, bl.to_dict(B))
    return OK


def cmd_salvetti(args) -> int:
    _emit_complex(args, salvetti(_graph(args.graph)))
    return OK


def cmd_sageev(args) -> int:
    W = Wallspace.from_dict(_read_json(args.wallspace))
    _emit_complex(args, sageev(W).complex)
    return OK


def cmd_random_wallspace(args) -> int:
    _emit(args, random_wallspace(args.seed, args.points, args.walls).dumps())
    return OK


def cmd_collapse(args) -> int:
    X, B = _complex(args.complex)
    c = co.collapse(B or X, _ids(args.hyperplanes))
    if args.format == "dot":
        _emit(args, to_dot(c.range))
    else:
        _emit(args, co.dumps(c))
    return OK


def cmd_subdivide(args) -> int:
    X, _ = _complex(args.complex)
    if not 0 <= args.hyperplane < len(X.hyperplanes):
        raise InvalidInput(f"no hyperplane {args.hyperplane}")
    S = subdivide(X, args.hyperplane)
    _emit_complex(args, S.complex)
    return OK


def _check(args):
    X, B = _complex(args.complex)
    hs = _ids(args.hyperplanes)
    kind = args.kind
    if kind == "special":
        r = is_special(X)
        return r.special, {"special": r.special, "two_sided": r.two_sided,
                           "no_self_intersection": r.no_self_intersection,
                           "no_self_osculation": r.no_self_osculation,
                           "no_inter_osculation": r.no_inter_osculation,
                           "witnesses": {k: [list(w) for w in v] for k, v in r.witnesses.items()}}
    if kind == "cat0":
        v = is_cat0(X)
        return v, {"cat0": v}
    if kind == "median":
        v = X.is_connected() and is_median_graph(X)
        return v, {"median": v}
    if kind in ("weak", "strong"):
        c = co.collapse(B or X, hs)
        v = co.is_weak(c) if kind == "weak" else co.is_strong(c)
        return v, {kind: v, "collapsed": sorted(c.collapsed)}
    if kind == "tree-like":
        if B is None:
            raise InvalidInput("tree-like needs a blowup/v1 document")
        try:
            v = bl.is_tree_like(B, hs)
        except bl.NotCarrierRetract as err:
            raise InvalidInput(str(err)) from err
        return v, {"tree_like": v, "family": sorted(hs)}
    if kind == "redundant":
        if len(hs) == 2:
            v = co.is_redundant_pair(X, *hs)
            return v, {"redundant": v, "pair": hs}
        if hs:
            raise InvalidInput("redundant takes exactly two hyperplanes, or none to list all pairs")
        pairs = co.redundant_pairs(X)
        return bool(pairs), {"redundant": bool(pairs), "pairs": [list(p) for p in pairs]}
    if kind == "cospatial":
        G = _graph(args.graph) if args.graph else (B.graph if B else None)
        if G is None:
            raise InvalidInput("cospatial needs --graph unless the input is a blow-up")
        prefer = [B.partition_hyperplanes] if B else ()
        r = co.is_cospatial(X, G, args.bound_subsets, args.jobs, prefer)
        return r.verdict, r.to_dict()
    raise AssertionError(kind)


def cmd_check(args) -> int:
    verdict, report = _check(args)
    report = {"check": args.kind, **report}
    _emit(args, _json(report))
    if verdict is None:
        return INDETERMINATE
    return OK if verdict else FALSE


def cmd_spine(args) -> int:
    G = _graph(args.graph)
    P, N = sp.spine(G, args.bound, args.jobs)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(sp.to_dot(P))
    _emit(args, sp.to_dot(P) if args.format == "dot" else sp.dumps(P, N))
    return OK


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spatial-cubes", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot"), default="json")
    common.add_argument("--output", "-o", help="write here instead of standard output")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                        help="largest number of signed generators to enumerate over")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("partitions", parents=[common], help="list Whitehead partitions")
    s.add_argument("graph")
    s.add_argument("--collections", action="store_true", help="also list compatible collections")
    s.add_argument("--max-size", type=int)
    s.set_defaults(fn=cmd_partitions)

    s = sub.add_parser("blowup", parents=[common], help="blow up the Salvetti complex")
    s.add_argument("graph")
    s.add_argument("--collection", default="", help="partition ids, e.g. 0,2")
    s.set_defaults(fn=cmd_blowup)

    s = sub.add_parser("salvetti", parents=[common], help="Salvetti complex of a graph")
    s.add_argument("graph")
    s.set_defaults(fn=cmd_salvetti)

    s = sub.add_parser("sageev", parents=[common], help="dual cube complex of a wallspace")
    s.add_argument("wallspace")
    s.set_defaults(fn=cmd_sageev)

    s = sub.add_parser("random-wallspace", parents=[common], help="seeded random wallspace")
    s.add_argument("--points", type=int, default=12)
    s.add_argument("--walls", type=int, default=10)
    s.set_defaults(fn=cmd_random_wallspace)

    s = sub.add_parser("collapse", parents=[common], help="collapse a hyperplane family")
    s.add_argument("complex")
    s.add_argument("--hyperplanes", default="")
    s.set_defaults(fn=cmd_collapse)

    s = sub.add_parser("subdivide", parents=[common], help="subdivide along a hyperplane")
    s.add_argument("complex")
    s.add_argument("--hyperplane", type=int, required=True)
    s.set_defaults(fn=cmd_subdivide)

    s = sub.add_parser("check", parents=[common], help="decide a property")
    s.add_argument("kind", choices=("special", "cat0", "median", "weak", "strong", "tree-like",
                                    "redundant", "cospatial"))
    s.add_argument("complex")
    s.add_argument("--hyperplanes", default="")
    s.add_argument("--graph")
    s.add_argument("--bound-subsets", type=int, default=co.DEFAULT_SUBSET_BOUND)
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("spine", parents=[common], help="spine quotient of a graph")
    s.add_argument("graph")
    s.add_argument("--dot", help="also write the arrow digraph here")
    s.set_defaults(fn=cmd_spine)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return USAGE
    try:
        return args.fn(args)
    except BoundExceeded as err:
        print(f"indeterminate: {err}", file=sys.stderr)
        return INDETERMINATE
    except (InvalidInput, SchemaError, GraphError, PartitionError, WallspaceError, ComplexError,
            bl.IncompatibleCollection, KeyError, TypeError) as err:
        print(f"invalid input: {err}", file=sys.stderr)
        return INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
