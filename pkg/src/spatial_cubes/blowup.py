"""Blow-ups of Salvetti complexes along compatible Whitehead partitions.

Vertices are *regions*: a choice of side for every partition such that any
two chosen sides meet, unless the two partitions are adjacent.  Each
hyperplane carries a label, either a partition or a generator, and every
edge is oriented along its label.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

from .collapse import CollapseMap, collapse, is_strong, _unwrap
from .cubecomplex import ComplexError, Cube, CubeComplex, frames, is_carrier_retract, is_isomorphic
from .cubecomplex import io as cio
from .cubecomplex.metric import halfspaces
from .raag import DefiningGraph, Letter, link, salvetti
from .whitehead import (PartitionError, WhiteheadPartition, adjacent, compatible, is_valid,
                        single_double)

SCHEMA = "blowup/v1"


class IncompatibleCollection(ValueError):
    pass


class ConstructionError(AssertionError):
    """The built complex violates a structural property of blow-ups."""


class NotCarrierRetract(ValueError):
    def __init__(self, hyperplanes):
        self.hyperplanes = sorted(hyperplanes)
        super().__init__(f"hyperplanes {self.hyperplanes} are not carrier retracts")


class NotTreeLike(ValueError):
    pass


Label = str | WhiteheadPartition


@dataclass(frozen=True)
class Blowup:
    complex: CubeComplex
    labels: tuple  # hyperplane -> generator name or partition
    orientations: tuple[int, ...]  # label direction relative to the hyperplane representative
    graph: DefiningGraph
    partitions: tuple[WhiteheadPartition, ...]
    regions: tuple[tuple[int, ...], ...]  # vertex -> side (0 = P, 1 = P*) per partition

    @cached_property
    def label_hyperplane(self) -> dict:
        return {lab: h for h, lab in enumerate(self.labels)}

    def hyperplane(self, label) -> int:
        return self.label_hyperplane[label]

    @property
    def partition_hyperplanes(self) -> frozenset[int]:
        return frozenset(self.label_hyperplane[P] for P in self.partitions)

    @cached_property
    def edge_letters(self) -> tuple:
        """Letter read along each edge under the canonical collapse (None for partition edges)."""
        X = self.complex
        out = []
        for e in range(len(X.edges)):
            h = X.hyperplane_of(e)
            lab = self.labels[h]
            if isinstance(lab, WhiteheadPartition):
                out.append(None)
            else:
                s = X.coorientation(e) * self.orientations[h]
                out.append(Letter(lab, s < 0))
        return tuple(out)

    def label_adjacent(self, x, y) -> bool:
        return labels_adjacent(self.graph, x, y)

    def label_link(self, x) -> frozenset:
        if isinstance(x, WhiteheadPartition):
            return x.link
        return link(self.graph, Letter(x))

    def label_name(self, h: int) -> str:
        lab = self.labels[h]
        if isinstance(lab, WhiteheadPartition):
            return f"P{self.partitions.index(lab)}"
        return lab


def labels_adjacent(G: DefiningGraph, x, y) -> bool:
    px, py = isinstance(x, WhiteheadPartition), isinstance(y, WhiteheadPartition)
    if px and py:
        return adjacent(G, x, y)
    if px:
        return adjacent(G, x, y)
    if py:
        return adjacent(G, y, x)
    return G.adjacent(x, y)


def _regions(G, parts):
    out = []
    n = len(parts)
    adj = [[i != j and adjacent(G, parts[i], parts[j]) for j in range(n)] for i in range(n)]

    def grow(prefix):
        i = len(prefix)
        if i == n:
            out.append(tuple(prefix))
            return
        for s in (0, 1):
            if all(adj[j][i] or parts[j].side(prefix[j]) & parts[i].side(s) for j in range(i)):
                grow(prefix + [s])

    grow([])
    return out


def _generator_target(parts, singles, z, a: Letter):
    """Region reached from ``z`` along the ``a``-edge, if any."""
    ai = a.inverse()
    z2 = []
    for P, single, s in zip(parts, singles, z):
        t = 1 - s if a in single else s
        if not (ai in P.side(s) or ai in P.link):
            return None
        if not (a in P.side(t) or a in P.link):
            return None
        z2.append(t)
    return tuple(z2)


def build_blowup(G: DefiningGraph, partitions=()) -> Blowup:
    """The blow-up of ``salvetti(G)`` along a compatible collection."""
    parts = tuple(partitions)
    for P in parts:
        if not is_valid(G, P):
            raise PartitionError(f"{P} is not a Whitehead partition of {G}")
    if len(set(parts)) != len(parts):
        raise IncompatibleCollection("repeated partition")
    for P, Q in itertools.combinations(parts, 2):
        if not compatible(G, P, Q):
            raise IncompatibleCollection(f"{P} and {Q} are not compatible")

    regions = _regions(G, parts)
    index = {z: v for v, z in enumerate(regions)}
    singles = [single_double(P)[0] for P in parts]
    labels: list = list(parts) + list(G.vertices)
    edges, edge_label = [], []
    out = {}  # (vertex, label index) -> (edge, target vertex)
    for i in range(len(parts)):
        for z in regions:
            if z[i] == 1:
                t = z[:i] + (0,) + z[i + 1:]
                if t in index:
                    out[(index[z], i)] = (len(edges), index[t])
                    edges.append((index[z], index[t]))
                    edge_label.append(i)
    for j, v in enumerate(G.vertices):
        li = len(parts) + j
        for z in regions:
            t = _generator_target(parts, singles, z, Letter(v))
            if t is not None and t in index:
                out[(index[z], li)] = (len(edges), index[t])
                edges.append((index[z], index[t]))
                edge_label.append(li)

    adj = {(x, y): labels_adjacent(G, labels[x], labels[y])
           for x, y in itertools.permutations(range(len(labels)), 2)}
    cubes = []
    for k in range(2, len(labels) + 1):
        found = False
        for S in itertools.combinations(range(len(labels)), k):
            if not all(adj[(x, y)] for x, y in itertools.combinations(S, 2)):
                continue
            for v in range(len(regions)):
                c = _cube_at(out, v, S)
                if c is not None:
                    cubes.append(c)
                    found = True
        if not found:
            break
    try:
        X = CubeComplex(len(regions), edges, cubes)
    except ComplexError as err:
        raise ConstructionError(f"blow-up is not a cube complex: {err}") from err

    hyp_label = {}
    for e, li in enumerate(edge_label):
        h = X.hyperplane_of(e)
        if hyp_label.setdefault(h, li) != li:
            raise ConstructionError("a hyperplane carries two labels")
    if sorted(hyp_label.values()) != list(range(len(labels))):
        raise ConstructionError("a label is split across hyperplanes or missing")
    hl = [labels[hyp_label[h]] for h in range(len(X.hyperplanes))]
    # all edges were built along their label, so orientation is the representative's
    orient = []
    for H in X.hyperplanes:
        signs = set(H.orientation)
        if len(signs) != 1 or not H.two_sided:
            raise ConstructionError(f"hyperplane {H.id} is not consistently oriented by its label")
        orient.append(signs.pop())
    return Blowup(X, tuple(hl), tuple(orient), G, parts, tuple(regions))


def _cube_at(out, v, S):
    k = len(S)
    corner = [None] * (1 << k)
    corner[0] = v
    for m in range(1, 1 << k):
        a = (m & -m).bit_length() - 1
        step = out.get((corner[m & ~(1 << a)], S[a]))
        if step is None:
            return None
        corner[m] = step[1]
    slots = []
    for a, m in frames.slots(k):
        step = out.get((corner[m], S[a]))
        if step is None or step[1] != corner[m | 1 << a]:
            return None
        slots.append((step[0], 1))
    return Cube(tuple(corner), tuple(slots))


def canonical_collapse(B: Blowup) -> CollapseMap:
    return collapse(B, B.partition_hyperplanes)


# ----------------------------------------------------------------------
# tree-like families


def _theta_check(B: Blowup, F: frozenset, L: frozenset) -> bool:
    keep = [i for i, P in enumerate(B.partitions) if P.link == L]
    drop = {B.hyperplane(P) for i, P in enumerate(B.partitions) if i not in keep}
    c = collapse(B.complex, drop)
    Y = c.range
    back = {r: h for h, r in c.hyperplane_map.items()}
    theta, tree = [], []
    for e in range(len(Y.edges)):
        h = back[Y.hyperplane_of(e)]
        if B.label_link(B.labels[h]) == L:
            theta.append(e)
            if h in F:
                tree.append(e)
    n = Y.n_vertices
    if len(tree) != n - 1:
        return False
    comp = {v: v for v in range(n)}

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for e in tree:
        u, v = (find(w) for w in Y.edges[e])
        if u == v:
            return False
        comp[u] = v
    return True


def is_tree_like(B: Blowup, F) -> bool:
    """Spanning-tree test of ``F`` in every link class.

    For each link L shared by partitions (or by labels of ``F``), the
    partitions with another link are collapsed; the edges of ``F`` must then
    form a spanning tree of the graph of edges whose label has link L.
    """
    F = frozenset(F)
    bad = [h for h in sorted(F) if not is_carrier_retract(B.complex, h)]
    if bad:
        raise NotCarrierRetract(bad)
    if len(F) != len(B.partitions):
        return False
    links = {P.link for P in B.partitions} | {B.label_link(B.labels[h]) for h in F}
    return all(_theta_check(B, F, L) for L in sorted(links, key=lambda s: sorted(s)))


def collapses_to_salvetti(B: Blowup, F) -> bool:
    """Independent reading: the collapse of ``F`` is strong onto the Salvetti."""
    c = collapse(B, F)
    return c.range.n_vertices == 1 and is_strong(c) and is_isomorphic(c.range, salvetti(B.graph)) is not None


def relabel_as_blowup(B: Blowup, F):
    """Partitions ``Pi'`` with ``build_blowup(G, Pi') ~= B`` sending ``F`` to ``Pi'``.

    The collapse of ``F`` is identified with the Salvetti complex, which
    names every other hyperplane by a generator.  Each hyperplane H of ``F``
    then splits the (single) vertex preimage into two halfspaces, and a
    letter goes to the side where its oriented edges end.
    """
    F = sorted(F)
    if not is_tree_like(B, F):
        raise NotTreeLike(f"{F} is not tree-like")
    G, X = B.graph, B.complex
    c = collapse(X, F)
    phi = is_isomorphic(c.range, salvetti(G))
    if phi is None:
        raise NotTreeLike("collapse range is not the Salvetti complex")
    gen_of, sign_of = {}, {}
    for e in range(len(X.edges)):
        h = X.hyperplane_of(e)
        if h in F:
            continue
        r = c.cell_map[(1, e)][1]
        gen_of[h] = G.vertices[phi.edge(r)]
        sign_of[e] = c.edge_sign[e] * phi.edge_flip[r]
    (C,) = c.preimages
    local = {e: n for n, e in enumerate(C.edges)}
    parts = []
    for h in F:
        H = X.hyperplanes[h]
        e0 = H.edges[0]
        inner = C.complex.hyperplane_of(local[e0])
        minus, plus = halfspaces(C.complex, inner)
        # align the inner co-orientation with the representative edge of H
        if C.complex.coorientation(local[e0]) < 0:
            minus, plus = plus, minus
        plus = {C.vertices[v] for v in plus}
        sides: dict = {0: set(), 1: set(), None: set()}
        for x in G.letters:
            ends = set()
            for e, s in sign_of.items():
                if gen_of[X.hyperplane_of(e)] != x.name:
                    continue
                u, v = X.edges[e]
                forward = (s > 0) != x.inv
                ends.add((v if forward else u) in plus)
            key = 0 if ends == {True} else 1 if ends == {False} else None
            sides[key].add(x)
        parts.append(WhiteheadPartition(frozenset(sides[0]), frozenset(sides[1]), frozenset(sides[None])))
    for P in parts:
        if not is_valid(G, P):
            raise ConstructionError(f"induced partition {P} is not a Whitehead partition")
    rebuilt = build_blowup(G, parts)
    mine = {e: _relabel_color(h, F, gen_of) for e, h in enumerate(X.hyperplane_of(e) for e in range(len(X.edges)))}
    theirs = {e: _relabel_color(h, [rebuilt.hyperplane(P) for P in parts],
                                {h2: lab for h2, lab in enumerate(rebuilt.labels)})
              for e, h in enumerate(rebuilt.complex.hyperplane_of(e) for e in range(len(rebuilt.complex.edges)))}
    iso = is_isomorphic(X, rebuilt.complex, mine, theirs)
    if iso is None:
        raise ConstructionError("relabelled blow-up is not isomorphic to the original")
    return tuple(parts), iso


def _relabel_color(h, family, gen_of):
    family = list(family)
    if h in family:
        return ("P", family.index(h))
    return ("v", gen_of[h])


# ----------------------------------------------------------------------
# serialisation


def _label_doc(B: Blowup, h: int) -> dict:
    lab = B.labels[h]
    if isinstance(lab, WhiteheadPartition):
        return {"hyperplane": h, "partition": B.partitions.index(lab)}
    return {"hyperplane": h, "generator": lab}


def to_dict(B: Blowup) -> dict:
    doc = cio.to_dict(B.complex)
    doc["schema"] = SCHEMA
    doc["graph"] = B.graph.to_dict()
    doc["partitions"] = [P.to_dict() for P in B.partitions]
    doc["labels"] = [_label_doc(B, h) for h in range(len(B.labels))]
    doc["orientations"] = list(B.orientations)
    doc["regions"] = [list(z) for z in B.regions]
    return doc


def dumps(B: Blowup) -> str:
    return json.dumps(to_dict(B), indent=2) + "\n"


def from_dict(doc: dict) -> Blowup:
    """Rebuild from the graph and partitions and check the stored complex."""
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise cio.SchemaError(f"expected schema {SCHEMA!r}")
    G = DefiningGraph.from_dict(doc["graph"])
    parts = [WhiteheadPartition.from_dict(p) for p in doc.get("partitions", [])]
    B = build_blowup(G, parts)
    inner = dict(doc, schema=cio.SCHEMA)
    X = cio.from_dict(inner, extra_fields={"graph", "partitions", "labels", "orientations", "regions"})
    if is_isomorphic(X, B.complex) is None:
        raise cio.SchemaError("stored complex does not match the blow-up of its partitions")
    return B


def load_complex(doc: dict) -> tuple[CubeComplex, Blowup | None]:
    """Any complex document: a plain ``cubecomplex/v1`` or a ``blowup/v1``."""
    if isinstance(doc, dict) and doc.get("schema") == SCHEMA:
        B = from_dict(doc)
        return B.complex, B
    return cio.from_dict(doc), None


__all__ = [
    "Blowup", "IncompatibleCollection", "ConstructionError", "NotCarrierRetract", "NotTreeLike",
    "build_blowup", "canonical_collapse", "is_tree_like", "collapses_to_salvetti",
    "relabel_as_blowup", "labels_adjacent", "to_dict", "from_dict", "dumps", "load_complex",
]
