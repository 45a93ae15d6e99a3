"""Finite wallspaces, the dual cube complex, and restriction quotients."""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .cubecomplex import ComplexError, Cube, CubeComplex, frames, halfspaces, is_cat0

SCHEMA = "wallspace/v1"


class WallspaceError(ValueError):
    pass


@dataclass(frozen=True)
class Wallspace:
    """Points and walls; each wall is stored as one of its two parts."""

    points: tuple
    walls: tuple[frozenset, ...]

    def __post_init__(self):
        pts = set(self.points)
        if len(pts) != len(self.points):
            raise WallspaceError("duplicate points")
        seen = set()
        for w in self.walls:
            if not w <= pts:
                raise WallspaceError("wall mentions an unknown point")
            if not w or w == pts:
                raise WallspaceError("each wall needs two non-empty parts")
            key = frozenset((w, frozenset(pts - w)))
            if key in seen:
                raise WallspaceError("duplicate wall")
            seen.add(key)

    @classmethod
    def make(cls, points, walls) -> "Wallspace":
        return cls(tuple(points), tuple(frozenset(w) for w in walls))

    def part(self, i: int, side: int) -> frozenset:
        """Side 1 is the stored part, side 0 its complement."""
        w = self.walls[i]
        return w if side else frozenset(self.points) - w

    def to_dict(self) -> dict:
        order = {p: r for r, p in enumerate(self.points)}
        return {"schema": SCHEMA, "points": list(self.points),
                "walls": [sorted(w, key=order.__getitem__) for w in self.walls]}

    @classmethod
    def from_dict(cls, doc) -> "Wallspace":
        if not isinstance(doc, dict) or set(doc) - {"schema", "points", "walls"}:
            raise WallspaceError("unknown fields in wallspace document")
        if doc.get("schema", SCHEMA) != SCHEMA:
            raise WallspaceError(f"expected schema {SCHEMA!r}")
        return cls.make(doc.get("points", []), doc.get("walls", []))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


@dataclass(frozen=True)
class SageevComplex:
    """The dual complex with its bookkeeping.

    ``orientations[v]`` is the side (0/1) chosen on every wall at vertex v;
    edges of wall i run from side 0 to side 1.  ``wall_hyperplane[i]`` is the
    hyperplane dual to wall i.
    """

    complex: CubeComplex
    orientations: tuple[tuple[int, ...], ...]
    wall_hyperplane: tuple[int, ...]
    wallspace: Wallspace

    def principal(self, point) -> int:
        o = tuple(int(point in w) for w in self.wallspace.walls)
        return self.orientations.index(o)


def random_wallspace(seed: int, n_points: int = 12, n_walls: int = 10) -> Wallspace:
    """Points in the unit square cut by lines in three fixed directions.

    Three directions keep the dual cubes at dimension <= 3 or so; generic
    directions produce many pairwise crossing walls and huge cubes.
    """
    rng = np.random.default_rng(seed)
    pts = rng.random((n_points, 2))
    angles = (0.0, math.pi / 3, 2 * math.pi / 3)
    walls, seen = [], set()
    for _ in range(50 * n_walls):
        if len(walls) == n_walls:
            break
        t = angles[rng.integers(3)]
        proj = pts @ np.array([math.cos(t), math.sin(t)])
        cut = rng.random() * 1.2 - 0.1
        side = frozenset(int(i) for i in np.flatnonzero(proj > cut))
        other = frozenset(range(n_points)) - side
        if not side or not other or frozenset((side, other)) in seen:
            continue
        seen.add(frozenset((side, other)))
        walls.append(side)
    return Wallspace(tuple(range(n_points)), tuple(walls))


def sageev(W: Wallspace) -> SageevComplex:
    if not W.points:
        raise WallspaceError("empty point set")
    n = len(W.walls)
    parts = [(W.part(i, 0), W.part(i, 1)) for i in range(n)]

    def ok(i, si, j, sj):
        return bool(parts[i][si] & parts[j][sj])

    verts = []

    def grow(prefix):
        i = len(prefix)
        if i == n:
            verts.append(tuple(prefix))
            return
        for s in (0, 1):
            if all(ok(j, prefix[j], i, s) for j in range(i)):
                grow(prefix + [s])

    grow([])
    index = {o: v for v, o in enumerate(verts)}
    edges, edge_id = [], {}
    for v, o in enumerate(verts):
        for i in range(n):
            if o[i] == 0:
                t = o[:i] + (1,) + o[i + 1:]
                if t in index:
                    edge_id[(v, i)] = len(edges)
                    edges.append((v, index[t]))
    cubes = []
    for k in range(2, n + 1):
        found = False
        for v, o in enumerate(verts):
            zeros = [i for i in range(n) if o[i] == 0]
            for S in itertools.combinations(zeros, k):
                corners = []
                for m in range(1 << k):
                    t = list(o)
                    for a, i in enumerate(S):
                        if m >> a & 1:
                            t[i] = 1
                    corners.append(index.get(tuple(t)))
                if None in corners:
                    continue
                found = True
                slots = tuple((edge_id[(corners[m], S[a])], 1) for a, m in frames.slots(k))
                cubes.append(Cube(tuple(corners), slots))
        if not found:
            break
    X = CubeComplex(len(verts), edges, cubes)
    wall_h = []
    for i in range(n):
        es = [e for (v, j), e in edge_id.items() if j == i]
        if not es:
            raise WallspaceError(f"wall {i} has no dual edge")
        wall_h.append(X.hyperplane_of(min(es)))
    return SageevComplex(X, tuple(verts), tuple(wall_h), W)


@dataclass(frozen=True)
class RestrictionQuotient:
    complex: CubeComplex
    vertex_map: tuple[int, ...]
    hyperplane_map: dict  # kept hyperplane of X -> hyperplane of the quotient
    sageev: SageevComplex


def hyperplane_wallspace(X: CubeComplex, keep=None) -> tuple[Wallspace, list[int]]:
    """Vertices of X with the ``plus`` halfspace of each kept hyperplane as walls."""
    hs = sorted(range(len(X.hyperplanes)) if keep is None else keep)
    walls = [halfspaces(X, h)[1] for h in hs]
    return Wallspace(tuple(range(X.n_vertices)), tuple(walls)), hs


def restriction_quotient(X: CubeComplex, keep) -> RestrictionQuotient:
    if not is_cat0(X):
        raise ComplexError("restriction quotient needs a CAT(0) complex")
    W, hs = hyperplane_wallspace(X, keep)
    S = sageev(W)
    vmap = tuple(S.principal(v) for v in range(X.n_vertices))
    return RestrictionQuotient(S.complex, vmap, {h: S.wall_hyperplane[i] for i, h in enumerate(hs)}, S)
