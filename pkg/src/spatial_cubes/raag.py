"""Right-angled Artin groups: defining graphs, signed generators, Salvetti
complexes and the word problem."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import NamedTuple

from .cubecomplex import Cube, CubeComplex, frames

SCHEMA = "graph/v1"


class GraphError(ValueError):
    pass


class Letter(NamedTuple):
    """A signed generator; ``inv`` marks the inverse."""

    name: str
    inv: bool = False

    def inverse(self) -> "Letter":
        return Letter(self.name, not self.inv)

    def __str__(self):
        return self.name + ("^" if self.inv else "")

    @classmethod
    def parse(cls, text: str) -> "Letter":
        if text.endswith("^"):
            return cls(text[:-1], True)
        return cls(text, False)


Word = tuple  # a tuple of Letters


def parse_word(text: str) -> Word:
    return tuple(Letter.parse(t) for t in text.split())


def format_word(w) -> str:
    return " ".join(map(str, w))


@dataclass(frozen=True)
class DefiningGraph:
    vertices: tuple[str, ...]
    edges: frozenset  # of frozenset pairs

    def __post_init__(self):
        if not self.vertices:
            raise GraphError("defining graph must be non-empty")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("repeated generator name")
        if tuple(sorted(self.vertices)) != self.vertices:
            raise GraphError("generator names must be sorted (use DefiningGraph.make)")
        for v in self.vertices:
            if not isinstance(v, str) or not v or v.endswith("^") or " " in v:
                raise GraphError(f"bad generator name {v!r}")
        for e in self.edges:
            if len(e) != 2:
                raise GraphError("loops are not allowed")
            if not e <= set(self.vertices):
                raise GraphError("edge mentions an unknown generator")

    @classmethod
    def make(cls, vertices, edges=()) -> "DefiningGraph":
        vs = tuple(sorted(vertices))
        es = [frozenset(e) for e in edges]
        if len(set(es)) != len(es):
            raise GraphError("repeated edge")
        return cls(vs, frozenset(es))

    def adjacent(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbours(self, v: str) -> list[str]:
        return [u for u in self.vertices if self.adjacent(u, v)]

    @property
    def letters(self) -> tuple[Letter, ...]:
        """V^{+-} in order ``a, a^, b, b^, ...``."""
        return tuple(Letter(v, s) for v in self.vertices for s in (False, True))

    def cliques(self) -> list[tuple[str, ...]]:
        """All non-empty cliques, by size then lexicographically."""
        out = []
        for k in range(1, len(self.vertices) + 1):
            for c in itertools.combinations(self.vertices, k):
                if all(self.adjacent(u, v) for u, v in itertools.combinations(c, 2)):
                    out.append(c)
        return out

    def to_dict(self) -> dict:
        return {"schema": SCHEMA, "vertices": list(self.vertices),
                "edges": sorted(sorted(e) for e in self.edges)}

    @classmethod
    def from_dict(cls, doc) -> "DefiningGraph":
        if not isinstance(doc, dict) or set(doc) - {"schema", "vertices", "edges"}:
            raise GraphError("unknown fields in graph document")
        if doc.get("schema", SCHEMA) != SCHEMA:
            raise GraphError(f"expected schema {SCHEMA!r}")
        edges = doc.get("edges", [])
        if any(not isinstance(e, list) or len(e) != 2 for e in edges):
            raise GraphError("edges must be pairs")
        return cls.make(doc.get("vertices", []), edges)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def __str__(self):
        es = ",".join("".join(sorted(e)) for e in sorted(self.edges, key=sorted))
        return f"<{','.join(self.vertices)}|{es}>"


def _check_letter(G: DefiningGraph, x: Letter):
    if x.name not in G.vertices:
        raise GraphError(f"unknown generator {x}")


def link(G: DefiningGraph, x: Letter) -> frozenset[Letter]:
    _check_letter(G, x)
    return frozenset(Letter(u, s) for u in G.neighbours(x.name) for s in (False, True))


def commute(G: DefiningGraph, x: Letter, y: Letter) -> bool:
    """Distinct generators commute iff adjacent; a letter commutes with itself and its inverse."""
    return x.name == y.name or G.adjacent(x.name, y.name)


def salvetti(G: DefiningGraph) -> CubeComplex:
    """One vertex, one loop per generator (edge i is ``G.vertices[i]``), one
    torus-like cube per clique of size >= 2."""
    pos = {v: i for i, v in enumerate(G.vertices)}
    cubes = []
    for c in G.cliques():
        k = len(c)
        if k >= 2:
            cubes.append(Cube((0,) * (1 << k), tuple((pos[c[a]], 1) for a, _ in frames.slots(k))))
    return CubeComplex(1, [(0, 0)] * len(G.vertices), cubes)


def _cancel_once(G: DefiningGraph, w: list) -> bool:
    for i, x in enumerate(w):
        xi = x.inverse()
        for j in range(i + 1, len(w)):
            y = w[j]
            if y == xi:
                del w[j]
                del w[i]
                return True
            if y.name == x.name or not G.adjacent(x.name, y.name):
                break
    return False


def reduce_word(G: DefiningGraph, w) -> list:
    """Cancel pairs x ... x^-1 whose intervening letters all commute with x."""
    w = list(w)
    for x in w:
        _check_letter(G, x)
    while _cancel_once(G, w):
        pass
    return w


def normal_form(G: DefiningGraph, w) -> Word:
    """Lexicographically least word in the commutation class of the reduced word."""
    rest = reduce_word(G, w)
    out = []
    while rest:
        best = None
        for i, x in enumerate(rest):
            if all(G.adjacent(x.name, y.name) for y in rest[:i]):
                if best is None or x < rest[best]:
                    best = i
        out.append(rest.pop(best))
    return tuple(out)


def is_trivial(G: DefiningGraph, w) -> bool:
    return not reduce_word(G, w)
