"""The spine quotient for a small defining graph.

Objects are isomorphism classes of blow-ups, arrows are collapses of
partition-labelled hyperplanes, and the nerve is the order complex of the
order they generate.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import networkx as nx

from .blowup import Blowup, build_blowup
from .blowup import to_dict as blowup_to_dict
from .collapse import CollapseError, collapse, is_strong
from .cubecomplex import ComplexError, CubeComplex, is_isomorphic, subdivide
from .raag import DefiningGraph
from .whitehead import DEFAULT_BOUND, enumerate_collections, enumerate_partitions

SCHEMA = "spine/v1"


@dataclass
class SpineObject:
    id: int
    blowup: Blowup  # representative: the first collection of the class
    collections: list[int]  # indices into the collection list

    @property
    def grading(self) -> int:
        return len(self.blowup.complex.hyperplanes)


@dataclass(frozen=True)
class Arrow:
    src: int
    dst: int
    collection: int  # presentation of the source used as witness
    subset: tuple[int, ...]  # positions in that collection that are collapsed


@dataclass
class SpinePoset:
    graph: DefiningGraph
    partitions: list
    collections: list[tuple[int, ...]]
    objects: list[SpineObject]
    arrows: list[Arrow] = field(default_factory=list)

    def object_of(self, collection: int) -> int:
        for ob in self.objects:
            if collection in ob.collections:
                return ob.id
        raise KeyError(collection)

    def digraph(self) -> nx.DiGraph:
        D = nx.DiGraph()
        D.add_nodes_from(ob.id for ob in self.objects)
        D.add_edges_from((a.src, a.dst) for a in self.arrows)
        return D


@dataclass(frozen=True)
class Nerve:
    simplices: dict  # dimension -> sorted list of object chains (ordered from the top)

    @property
    def dim(self) -> int:
        return max(self.simplices) if self.simplices else -1

    def f_vector(self) -> list[int]:
        return [len(self.simplices.get(k, [])) for k in range(self.dim + 1)]


def iso_key(X: CubeComplex):
    """A cheap isomorphism invariant used to bucket complexes."""
    return (X.counts(), tuple(sorted(Counter(len(H.edges) for H in X.hyperplanes).items())),
            tuple(sorted(Counter(len(a) for a in X.adjacency).items())))


class IsoClasses:
    """Incremental grouping of complexes up to isomorphism."""

    def __init__(self):
        self.reps: list[CubeComplex] = []
        self.buckets: dict = {}

    def find(self, X: CubeComplex) -> int | None:
        for j in self.buckets.get(iso_key(X), []):
            if is_isomorphic(X, self.reps[j]) is not None:
                return j
        return None

    def add(self, X: CubeComplex) -> tuple[int, bool]:
        j = self.find(X)
        if j is not None:
            return j, False
        self.reps.append(X)
        self.buckets.setdefault(iso_key(X), []).append(len(self.reps) - 1)
        return len(self.reps) - 1, True


def _build(args):
    G, parts = args
    return build_blowup(G, parts)


def _map(fn, items, jobs):
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(fn, items, chunksize=8))
    return [fn(x) for x in items]


def enumerate_objects(G: DefiningGraph, bound: int = DEFAULT_BOUND, jobs: int = 1) -> SpinePoset:
    parts = enumerate_partitions(G, bound)
    cols = enumerate_collections(G, bound=bound, parts=parts)
    blowups = _map(_build, [(G, [parts[i] for i in col]) for col in cols], jobs)
    classes = IsoClasses()
    objects: list[SpineObject] = []
    for n, B in enumerate(blowups):
        j, new = classes.add(B.complex)
        if new:
            objects.append(SpineObject(j, B, [n]))
        else:
            objects[j].collections.append(n)
    poset = SpinePoset(G, parts, cols, objects)
    poset._classes = classes
    poset._blowups = blowups
    return poset


def enumerate_arrows(P: SpinePoset) -> list[Arrow]:
    """Collapse every non-empty partition subset of every presentation."""
    classes = getattr(P, "_classes", None)
    if classes is None:
        classes = IsoClasses()
        for ob in P.objects:
            classes.add(ob.blowup.complex)
    blowups = getattr(P, "_blowups", None)
    found: dict[tuple[int, int], Arrow] = {}
    for ob in P.objects:
        for n in ob.collections:
            B = blowups[n] if blowups else build_blowup(P.graph, [P.partitions[i] for i in P.collections[n]])
            for r in range(1, len(B.partitions) + 1):
                for S in itertools.combinations(range(len(B.partitions)), r):
                    c = collapse(B, [B.hyperplane(B.partitions[i]) for i in S])
                    dst = classes.find(c.range)
                    if dst is None:
                        raise AssertionError("collapse of a blow-up is not an enumerated blow-up")
                    key = (ob.id, dst)
                    if key in found:
                        continue
                    if not is_strong(c):
                        raise AssertionError(f"arrow witness {n}/{S} is not a strong collapse")
                    found[key] = Arrow(ob.id, dst, n, S)
    P.arrows = [found[k] for k in sorted(found)]
    return P.arrows


def chains(D: nx.DiGraph) -> dict[int, list[tuple[int, ...]]]:
    """All chains of the strict order generated by ``D``, by dimension."""
    T = nx.transitive_closure_dag(D)
    out: dict[int, list] = {}

    def grow(chain):
        out.setdefault(len(chain) - 1, []).append(tuple(chain))
        for w in sorted(T.successors(chain[-1])):
            grow(chain + [w])

    for v in sorted(T.nodes):
        grow([v])
    return {k: sorted(v) for k, v in sorted(out.items())}


def build_nerve(P: SpinePoset) -> Nerve:
    D = P.digraph()
    if not nx.is_directed_acyclic_graph(D):
        raise AssertionError("arrows form a cycle")
    return Nerve(chains(D))


def spine(G: DefiningGraph, bound: int = DEFAULT_BOUND, jobs: int = 1) -> tuple[SpinePoset, Nerve]:
    P = enumerate_objects(G, bound, jobs)
    enumerate_arrows(P)
    return P, build_nerve(P)


def to_dict(P: SpinePoset, N: Nerve | None = None) -> dict:
    N = N or build_nerve(P)
    return {
        "schema": SCHEMA,
        "graph": P.graph.to_dict(),
        "partitions": [p.to_dict() for p in P.partitions],
        "collections": [list(c) for c in P.collections],
        "objects": [{"id": ob.id, "grading": ob.grading, "collections": ob.collections,
                     "complex": blowup_to_dict(ob.blowup)} for ob in P.objects],
        "arrows": [{"src": a.src, "dst": a.dst,
                    "witness": {"collection": a.collection, "collapsed": list(a.subset)}}
                   for a in P.arrows],
        "nerve": {"simplices": {str(k): [list(s) for s in v] for k, v in N.simplices.items()}},
    }


def dumps(P: SpinePoset, N: Nerve | None = None) -> str:
    return json.dumps(to_dict(P, N), indent=2) + "\n"


def to_dot(P: SpinePoset) -> str:
    """Hasse diagram of the arrow order."""
    H = nx.transitive_reduction(P.digraph())
    lines = ["digraph spine {"]
    for ob in P.objects:
        lines.append(f'  o{ob.id} [label="{ob.id}: {ob.grading} hyperplanes"];')
    for u, v in sorted(H.edges):
        lines.append(f"  o{u} -> o{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# the finite universe used to test cospatiality


def universe(G: DefiningGraph, bound: int = DEFAULT_BOUND) -> list[tuple[CubeComplex, str]]:
    """Blow-ups, all their hyperplane collapses and single subdivisions, up to
    isomorphism, keeping only connected locally CAT(0) complexes.

    Isomorphic blow-ups have isomorphic collapses and subdivisions, so one
    representative per spine object suffices.
    """
    P = enumerate_objects(G, bound)
    classes = IsoClasses()
    out = []

    def offer(X, why):
        if not X.is_connected() or not X.satisfies_link_condition():
            return
        _, new = classes.add(X)
        if new:
            out.append((X, why))

    for ob in P.objects:
        X = ob.blowup.complex
        n = ob.collections[0]
        offer(X, f"blowup {n}")
        hs = range(len(X.hyperplanes))
        for r in range(1, len(X.hyperplanes) + 1):
            for F in itertools.combinations(hs, r):
                try:
                    offer(collapse(X, F).range, f"collapse {n} {list(F)}")
                except CollapseError:
                    pass
        for h in hs:
            try:
                offer(subdivide(X, h).complex, f"subdivide {n} {h}")
            except ComplexError:
                pass
    return out


__all__ = [
    "SpinePoset", "SpineObject", "Arrow", "Nerve", "IsoClasses", "iso_key", "enumerate_objects",
    "enumerate_arrows", "build_nerve", "chains", "spine", "to_dict", "dumps", "to_dot", "universe",
]
