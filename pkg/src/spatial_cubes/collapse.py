"""Collapsing hyperplane families of finite cube complexes.

A collapse crushes every cube along the axes dual to the chosen hyperplanes.
It is computed downstairs as the quotient of the cells by the relation that
identifies, in every cube, the faces which differ only in collapsed
coordinates.
"""
from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .cubecomplex import (ComplexError, Cube, CubeComplex, cover_ball, diameter, distance_matrix,
                          frames, is_cat0, is_isomorphic, is_special, subdivide)
from .cubecomplex import io as cio
from .raag import DefiningGraph, is_trivial, salvetti

SCHEMA = "collapsemap/v1"
DEFAULT_SUBSET_BOUND = 1 << 16


class CollapseError(ComplexError):
    """The quotient is not a cube complex with the expected hyperplanes."""


class CertificateDisagreement(AssertionError):
    """The two weak-collapse certificates gave different answers."""


class _ParityUF:
    """Union-find with a parity bit (relative orientation) on each element."""

    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.parity = {x: 0 for x in items}
        self.bad = set()

    def find(self, x):
        p, root = 0, x
        while self.parent[root] != root:
            p ^= self.parity[root]
            root = self.parent[root]
        y, q = x, p
        while self.parent[y] != y:
            nxt, py = self.parent[y], self.parity[y]
            self.parent[y], self.parity[y] = root, q
            q ^= py
            y = nxt
        return root, p

    def union(self, x, y, rel):
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            if px ^ py != rel:
                self.bad.add(rx)
            return
        if rx > ry:
            rx, ry, px, py = ry, rx, py, px
        self.parent[ry] = rx
        self.parity[ry] = px ^ py ^ rel


@dataclass(frozen=True)
class CollapseMap:
    """``cell_map[(k, i)] = (k', j)``; surviving edges also carry an
    orientation sign in ``edge_sign``."""

    domain: CubeComplex
    range: CubeComplex
    collapsed: frozenset
    cell_map: dict
    edge_sign: dict
    hyperplane_map: dict  # uncollapsed domain hyperplane -> range hyperplane
    letters: tuple | None = field(default=None, compare=False)  # (graph, edge -> Letter | None)

    def vertex(self, v: int) -> int:
        return self.cell_map[(0, v)][1]

    @cached_property
    def preimages(self):
        return _vertex_preimages(self)


@dataclass(frozen=True)
class VertexPreimage:
    """A component of the collapsed subcomplex, with a standalone copy.

    ``complex`` renumbers ``vertices`` and ``edges`` in increasing order.
    """

    range_vertex: int
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    cells: frozenset
    complex: CubeComplex


def _unwrap(X):
    if isinstance(X, CubeComplex):
        return X, None
    letters = getattr(X, "edge_letters", None)
    return X.complex, (None if letters is None else (X.graph, letters))


def collapse(X, F) -> CollapseMap:
    """Collapse the hyperplanes ``F`` of ``X`` (a complex or a blow-up)."""
    X, letters = _unwrap(X)
    F = frozenset(F)
    bad = [h for h in F if not 0 <= h < len(X.hyperplanes)]
    if bad:
        raise CollapseError(f"unknown hyperplane id(s) {sorted(bad)}")

    vuf = nx.utils.UnionFind(range(X.n_vertices))
    euf = _ParityUF(range(len(X.edges)))
    cuf = {k: nx.utils.UnionFind(range(len(cs))) for k, cs in X.cubes.items()}
    target = {}
    for k, i in X.cells():
        if k == 0:
            continue
        hs = X.cube_axis_hyperplanes(k, i)
        fa = [a for a in range(k) if hs[a] in F]
        if not fa:
            continue
        na = tuple(a for a in range(k) if hs[a] not in F)
        faces = []
        for bits in itertools.product((0, 1), repeat=len(fa)):
            base = sum(b << a for a, b in zip(fa, bits))
            faces.append(X.face(k, i, na, base))
        target[(k, i)] = faces[0]
        j = len(na)
        f0 = faces[0]
        for f in faces[1:]:
            if j == 0:
                vuf.union(f0[1], f[1])
            elif j == 1:
                euf.union(f0[1], f[1], f0[2][1][0] ^ f[2][1][0])
            else:
                cuf[j].union(f0[1], f[1])
    if euf.bad:
        raise CollapseError("an edge is identified with its own reverse")

    vclass = {}
    for v in range(X.n_vertices):
        vclass.setdefault(vuf[v], len(vclass))
    vmap = [vclass[vuf[v]] for v in range(X.n_vertices)]

    eclass, redges, esign = {}, [], {}
    for e in range(len(X.edges)):
        if X.hyperplane_of(e) in F:
            continue
        r, p = euf.find(e)
        if r not in eclass:
            eclass[r] = len(redges)
            u, v = X.edges[e]
            # the root is the least member, so e is the representative here
            redges.append((vmap[u], vmap[v]) if p == 0 else (vmap[v], vmap[u]))
        esign[e] = -1 if p else 1
    emap = {}
    for e, s in esign.items():
        f = eclass[euf.find(e)[0]]
        emap[e] = f
        u, v = X.edges[e]
        want = (vmap[u], vmap[v]) if s > 0 else (vmap[v], vmap[u])
        if redges[f] != want:
            raise CollapseError(f"edge {e} is identified with an edge between other vertices")

    ckey, rcubes, cmap = {}, [], {}
    for k, cubes in X.cubes.items():
        for i, c in enumerate(cubes):
            if any(h in F for h in X.cube_axis_hyperplanes(k, i)):
                continue
            corners = tuple(vmap[v] for v in c.corners)
            slots = tuple((emap[e], s * esign[e]) for e, s in c.slots)
            key, _ = frames.canonical(corners, slots)
            root_key = (k, cuf[k][i])
            if key not in ckey:
                ckey[key] = len(rcubes)
                rcubes.append(Cube(corners, slots))
            cmap[(k, i)] = ckey[key]
            ckey.setdefault(root_key, ckey[key])
            if ckey[root_key] != ckey[key]:
                raise CollapseError("identified cubes have different attaching maps")
    try:
        Y = CubeComplex(len(vclass), redges, rcubes)
    except ComplexError as err:
        raise CollapseError(f"quotient is not a cube complex: {err}") from err

    # range cubes are grouped by dimension; translate list positions to ids
    rid, seen = {}, {}
    for pos, c in enumerate(rcubes):
        seen.setdefault(c.dim, 0)
        rid[pos] = (c.dim, seen[c.dim])
        seen[c.dim] += 1

    def image(cell):
        k, i = cell
        if k == 0:
            return (0, vmap[i])
        if k == 1:
            return (1, emap[i])
        return rid[cmap[cell]]

    cell_map = {}
    for cell in X.cells():
        if cell in target:
            fk, fi, _ = target[cell]
            cell_map[cell] = image((fk, fi))
        else:
            cell_map[cell] = image(cell)

    hmap = {}
    for H in X.hyperplanes:
        if H.id in F:
            continue
        hmap[H.id] = Y.hyperplane_of(emap[H.edges[0]])
    if sorted(hmap.values()) != list(range(len(Y.hyperplanes))):
        raise CollapseError("uncollapsed hyperplanes do not biject with the range hyperplanes")
    return CollapseMap(X, Y, F, cell_map, esign, hmap, letters)


def identity(X) -> CollapseMap:
    return collapse(X, ())


def _vertex_preimages(c: CollapseMap) -> list[VertexPreimage]:
    X, F = c.domain, c.collapsed
    groups: dict[int, list[int]] = {}
    for v in range(X.n_vertices):
        groups.setdefault(c.vertex(v), []).append(v)
    fcells = [(k, i) for k, i in X.cells()
              if k > 0 and all(h in F for h in X.cube_axis_hyperplanes(k, i))]
    out = []
    for r in sorted(groups):
        vs = tuple(groups[r])
        vpos = {v: n for n, v in enumerate(vs)}
        mine = [(k, i) for k, i in fcells if X.cell_vertices(k, i) <= set(vs)]
        es = tuple(i for k, i in mine if k == 1)
        epos = {e: n for n, e in enumerate(es)}
        cubes = []
        for k, i in mine:
            if k >= 2:
                cb = X.cubes[k][i]
                cubes.append(Cube(tuple(vpos[v] for v in cb.corners),
                                  tuple((epos[e], s) for e, s in cb.slots)))
        sub = CubeComplex(len(vs), [(vpos[u], vpos[v]) for u, v in (X.edges[e] for e in es)], cubes)
        cells = frozenset([(0, v) for v in vs] + mine)
        out.append(VertexPreimage(r, vs, es, cells, sub))
    return out


def vertex_preimages(c: CollapseMap) -> list[VertexPreimage]:
    return c.preimages


def _cycle_words(C: VertexPreimage, edge_letters):
    """Words of the fundamental cycles of a spanning tree of ``C``."""
    S = C.complex
    parent = {0: None}
    order = [0]
    for v in order:
        for w, e in S.adjacency[v]:
            if w not in parent:
                parent[w] = (v, e)
                order.append(w)
    tree = {p[1] for p in parent.values() if p is not None}

    def path_to_root(v):
        word = []
        while parent[v] is not None:
            u, e = parent[v]
            # walking v -> u along e
            word.append((e, -1 if S.edges[e] == (u, v) else 1))
            v = u
        return word

    def letters(walk):
        out = []
        for e, s in walk:
            x = edge_letters[C.edges[e]]
            if x is not None:
                out.append(x if s > 0 else x.inverse())
        return out

    for e, (u, v) in enumerate(S.edges):
        if e in tree:
            continue
        to_u = [(f, -s) for f, s in reversed(path_to_root(u))]
        walk = to_u + [(e, 1)] + path_to_root(v)
        yield letters(walk)


def weak_certificate(c: CollapseMap) -> bool | None:
    """Every fundamental cycle of every preimage spells a trivial group element.

    Available only when the domain carries generator labels (blow-ups).
    """
    if c.letters is None:
        return None
    G, edge_letters = c.letters
    return all(is_trivial(G, w) for C in c.preimages for w in _cycle_words(C, edge_letters))


def is_weak(c: CollapseMap) -> bool:
    """Every vertex preimage is CAT(0); cross-checked against the word
    certificate when it is available."""
    verdict = all(is_cat0(C.complex) for C in c.preimages)
    other = weak_certificate(c)
    if other is not None and other != verdict:
        raise CertificateDisagreement(
            f"preimages CAT(0): {verdict}, cycle words trivial: {other} (collapsed {sorted(c.collapsed)})")
    return verdict


def is_strong(c: CollapseMap) -> bool:
    if not is_weak(c):
        return False
    X = c.domain
    for C in c.preimages:
        seen: dict[int, int] = {}
        for local, e in enumerate(C.edges):
            h = X.hyperplane_of(e)
            inner = C.complex.hyperplane_of(local)
            if seen.setdefault(h, inner) != inner:
                return False
    return True


def factor(c: CollapseMap, F1) -> tuple[CollapseMap, CollapseMap]:
    """Split ``c`` as ``c2 o c1`` with ``c1`` collapsing ``F1``."""
    F1 = frozenset(F1)
    if not F1 <= c.collapsed:
        raise CollapseError("F1 must be a subset of the collapsed family")
    c1 = collapse(c.domain, F1)
    if c.letters is not None:
        c1 = _with_letters(c1, c.letters)
    rest = [c1.hyperplane_map[h] for h in c.collapsed - F1]
    c2 = collapse(c1.range, rest)
    if c1.letters is not None:
        G, el = c1.letters
        lifted = {}
        for e, s in c1.edge_sign.items():
            f = c1.cell_map[(1, e)][1]
            if f not in lifted and el[e] is not None:
                lifted[f] = el[e] if s > 0 else el[e].inverse()
        c2 = _with_letters(c2, (G, tuple(lifted.get(f) for f in range(len(c1.range.edges)))))
    return c1, c2


def _with_letters(c: CollapseMap, letters) -> CollapseMap:
    return CollapseMap(c.domain, c.range, c.collapsed, c.cell_map, c.edge_sign, c.hyperplane_map, letters)


def compose_cell_maps(c1: CollapseMap, c2: CollapseMap) -> dict:
    return {cell: c2.cell_map[img] for cell, img in c1.cell_map.items()}


# ----------------------------------------------------------------------
# quasi-isometry bounds


@dataclass(frozen=True)
class BoundsReport:
    n: int
    pairs: int
    violations: list  # (x, y, d_X, d_Y) in the cover ball
    preimage_diameters: list

    @property
    def ok(self) -> bool:
        return not self.violations and all(d <= self.n for d in self.preimage_diameters)


def quasi_isometry_bounds(X, F, radius: int = 4, base: int = 0) -> BoundsReport:
    """Check ``(d_X - n)/(n + 1) <= d_Y <= d_X`` on a ball of the universal cover.

    Upstairs the collapse is a restriction quotient, so ``d_Y`` counts the
    uncollapsed hyperplanes separating two points; along any geodesic each of
    them is crossed once, hence ``d_Y`` is the least number of uncollapsed
    edges on a path, found with weights 1 (collapsed) and a large constant.
    Integer arithmetic: ``(n + 1) d_Y >= d_X - n``.
    """
    X, _ = _unwrap(X)
    F = frozenset(F)
    n = len(F)
    ball = cover_ball(X, base, radius)
    B = ball.complex
    heavy = 4 * len(B.edges) + 1
    rows, cols, w = [], [], []
    for e, (u, v) in enumerate(B.edges):
        weight = 1 if X.hyperplane_of(ball.edge_projection(e)) in F else heavy
        rows += [u, v]
        cols += [v, u]
        w += [weight, weight]
    W = csr_matrix((w, (rows, cols)), shape=(B.n_vertices, B.n_vertices))
    DX = distance_matrix(B)
    DY = np.rint(shortest_path(W, method="D", directed=False)).astype(np.int64) // heavy
    low = (n + 1) * DY < DX - n
    high = DY > DX
    bad = np.argwhere(low | high)
    violations = [(int(x), int(y), int(DX[x, y]), int(DY[x, y])) for x, y in bad[:20]]
    c = collapse(X, F)
    diams = [diameter(C.complex) for C in c.preimages]
    return BoundsReport(n, B.n_vertices ** 2, violations, diams)


# ----------------------------------------------------------------------
# redundancy


def try_unsubdivide(X: CubeComplex, h1: int, h2: int):
    """``(Y, H, iso)`` with ``subdivide(Y, H) ~= X`` sending H's halves to
    ``{h1, h2}``, or ``None``.

    Collapsing one half of a subdivided hyperplane undoes the subdivision, so
    each of the two halves is tried as the collapsed one and the candidate is
    confirmed by subdividing it again.
    """
    X, _ = _unwrap(X)
    if h1 == h2:
        raise ValueError("try_unsubdivide needs two distinct hyperplanes")
    if X.transverse(h1, h2):
        return None
    H1, H2 = X.hyperplanes[h1], X.hyperplanes[h2]
    if len(H1.edges) != len(H2.edges) or not (H1.two_sided and H2.two_sided):
        return None
    ends1 = {v for e in H1.edges for v in X.edges[e]}
    ends2 = {v for e in H2.edges for v in X.edges[e]}
    if len(ends1 & ends2) < len(H1.edges):
        return None
    pair = {h1, h2}
    colors = {e: int(X.hyperplane_of(e) in pair) for e in range(len(X.edges))}
    for keep, drop in ((h1, h2), (h2, h1)):
        try:
            c = collapse(X, {drop})
        except CollapseError:
            continue
        Y = c.range
        if not Y.satisfies_link_condition():
            continue
        H = c.hyperplane_map[keep]
        try:
            S = subdivide(Y, H)
        except ComplexError:
            continue
        halves = set(S.images)
        scol = {e: int(S.complex.hyperplane_of(e) in halves) for e in range(len(S.complex.edges))}
        iso = is_isomorphic(S.complex, X, scol, colors)
        if iso is not None:
            return Y, H, iso
    return None


def is_redundant_pair(X, h1: int, h2: int) -> bool:
    return try_unsubdivide(X, h1, h2) is not None


def redundant_pairs(X) -> list[tuple[int, int]]:
    X, _ = _unwrap(X)
    n = len(X.hyperplanes)
    return [(a, b) for a, b in itertools.combinations(range(n), 2) if is_redundant_pair(X, a, b)]


# ----------------------------------------------------------------------
# cospatiality


@dataclass
class CospatialReport:
    """``verdict`` is True, False, or None when the search bound was hit."""

    verdict: bool | None
    redundant: list
    witnesses: dict  # hyperplane -> collapsed family avoiding it
    missing: list
    searched: int
    reason: str = ""

    def __bool__(self):
        return self.verdict is True

    def to_dict(self) -> dict:
        return {"verdict": {True: "true", False: "false", None: "indeterminate"}[self.verdict],
                "redundant": [list(p) for p in self.redundant],
                "witnesses": {str(h): sorted(F) for h, F in sorted(self.witnesses.items())},
                "missing": list(self.missing), "searched": self.searched, "reason": self.reason}


def salvetti_like(c: CollapseMap, target: CubeComplex) -> bool:
    Y = c.range
    return (Y.n_vertices == 1 and is_special(Y).special
            and is_isomorphic(Y, target) is not None and is_strong(c))


def _good_family(args):
    X, F, target = args
    try:
        c = collapse(X, F)
    except CollapseError:
        return False
    return salvetti_like(c, target)


def is_cospatial(X, G: DefiningGraph, bound: int = DEFAULT_SUBSET_BOUND, jobs: int = 1,
                 prefer=()) -> CospatialReport:
    """No redundant pair, and each hyperplane survives a strong collapse onto
    a copy of the Salvetti complex of ``G``.

    The range must have one hyperplane per generator, so only families of
    size ``#hyperplanes - #generators`` are searched; families listed in
    ``prefer`` are tried first.  More than ``bound`` candidate families gives
    an indeterminate verdict.
    """
    X, _ = _unwrap(X)
    if not X.is_connected():
        raise ComplexError("cospatiality needs a connected complex")
    if not X.satisfies_link_condition():
        raise ComplexError("cospatiality needs a locally CAT(0) complex")
    red = redundant_pairs(X)
    n = len(X.hyperplanes)
    size = n - len(G.vertices)
    if red:
        return CospatialReport(False, red, {}, [], 0, "redundant pair")
    if size < 0:
        return CospatialReport(False, [], {}, list(range(n)), 0, "too few hyperplanes")
    total = math.comb(n, size)
    if total > bound:
        return CospatialReport(None, [], {}, list(range(n)), 0,
                               f"{total} candidate families exceed the bound {bound}")
    target = salvetti(G)
    preferred = [frozenset(F) for F in prefer if len(F) == size]
    order = preferred + [frozenset(F) for F in itertools.combinations(range(n), size)
                         if frozenset(F) not in preferred]
    witnesses: dict[int, frozenset] = {}
    searched = 0
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        chunk = max(1, jobs) * 4
        for start in range(0, len(order), chunk):
            batch = [F for F in order[start:start + chunk]
                     if any(h not in witnesses and h not in F for h in range(n))]
            if not batch:
                continue
            args = [(X, F, target) for F in batch]
            results = pool.map(_good_family, args) if pool else map(_good_family, args)
            for F, ok in zip(batch, results):
                searched += 1
                if ok:
                    for h in range(n):
                        if h not in F:
                            witnesses.setdefault(h, F)
            if len(witnesses) == n:
                break
    finally:
        if pool:
            pool.shutdown()
    missing = [h for h in range(n) if h not in witnesses]
    return CospatialReport(not missing, [], witnesses, missing, searched,
                           "" if not missing else "some hyperplane survives no Salvetti collapse")


# ----------------------------------------------------------------------
# serialisation


def to_dict(c: CollapseMap) -> dict:
    return {
        "schema": SCHEMA,
        "domain": cio.to_dict(c.domain),
        "range": cio.to_dict(c.range),
        "collapsed": sorted(c.collapsed),
        "cell_map": [{"cell": list(k), "image": list(v)} for k, v in sorted(c.cell_map.items())],
        "hyperplane_map": [[h, r] for h, r in sorted(c.hyperplane_map.items())],
    }


def dumps(c: CollapseMap) -> str:
    return json.dumps(to_dict(c), indent=2) + "\n"


__all__ = [
    "CollapseMap", "VertexPreimage", "CollapseError", "CertificateDisagreement", "CospatialReport",
    "collapse", "identity", "vertex_preimages", "is_weak", "is_strong", "weak_certificate",
    "factor", "compose_cell_maps", "BoundsReport", "quasi_isometry_bounds", "try_unsubdivide", "is_redundant_pair", "redundant_pairs",
    "is_cospatial", "salvetti_like", "to_dict", "dumps",
]
