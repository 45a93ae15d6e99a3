import itertools
import json

import networkx as nx
import pytest

from conftest import SMALL_GRAPHS
from spatial_cubes.blowup import build_blowup
from spatial_cubes.collapse import collapse, compose_cell_maps, factor, is_cospatial
from spatial_cubes.cubecomplex import is_isomorphic
from spatial_cubes.raag import salvetti
from spatial_cubes.spine import (IsoClasses, build_nerve, chains, enumerate_objects, spine,
                                 to_dict, to_dot, universe)
from spatial_cubes.whitehead import enumerate_collections, enumerate_partitions


def brute_poset(G):
    """Objects and arrows by pairwise isomorphism tests, no bucketing."""
    parts = enumerate_partitions(G)
    bs = [build_blowup(G, [parts[i] for i in col]) for col in enumerate_collections(G)]
    reps = []
    for B in bs:
        if not any(is_isomorphic(B.complex, R.complex) for R in reps):
            reps.append(B)

    def cls(X):
        (j,) = [j for j, R in enumerate(reps) if is_isomorphic(X, R.complex) is not None]
        return j

    arrows = set()
    for B in bs:
        src = cls(B.complex)
        for r in range(1, len(B.partitions) + 1):
            for S in itertools.combinations(B.partitions, r):
                arrows.add((src, cls(collapse(B, [B.hyperplane(P) for P in S]).range)))
    return reps, arrows


def longest_chain(n, arrows):
    succ = {i: [b for a, b in arrows if a == i] for i in range(n)}

    def depth(i):
        return max((1 + depth(j) for j in succ[i]), default=0)

    return max(depth(i) for i in range(n))


@pytest.mark.parametrize("name", ["a", "ab", "f2", "abc-ab", "path", "triangle"])
def test_spine_matches_brute_force(name):
    G = SMALL_GRAPHS[name]
    P, N = spine(G)
    reps, arrows = brute_poset(G)
    assert len(P.objects) == len(reps)
    assert len(P.arrows) == len(arrows)
    assert N.dim == longest_chain(len(reps), arrows)
    # same arrow pattern once classes are matched
    match = {}
    for ob in P.objects:
        (j,) = [j for j, R in enumerate(reps) if is_isomorphic(ob.blowup.complex, R.complex)]
        match[ob.id] = j
    assert {(match[a.src], match[a.dst]) for a in P.arrows} == arrows


def test_f2_spine():
    P, N = spine(SMALL_GRAPHS["f2"])
    assert len(P.objects) == 2 and len(P.arrows) == 1
    assert N.f_vector() == [2, 1]
    (a,) = P.arrows
    assert P.objects[a.src].grading == 3 and P.objects[a.dst].grading == 2


def test_small_spines():
    P, N = spine(SMALL_GRAPHS["ab"])
    assert len(P.objects) == 1 and N.f_vector() == [1]
    P, N = spine(SMALL_GRAPHS["abc-ab"])
    assert (len(P.objects), len(P.arrows), N.dim) == (3, 3, 2)
    assert N.f_vector() == [3, 3, 1]


def test_poset_invariants():
    for name in ("f2", "abc-ab", "path"):
        P, N = spine(SMALL_GRAPHS[name])
        D = P.digraph()
        assert nx.is_directed_acyclic_graph(D)
        for a in P.arrows:
            assert a.src != a.dst
            assert P.objects[a.src].grading > P.objects[a.dst].grading
        sal = [ob.id for ob in P.objects if is_isomorphic(ob.blowup.complex, salvetti(P.graph))]
        assert len(sal) == 1
        assert [ob.id for ob in P.objects if D.out_degree(ob.id) == 0] == sal
        for ob in P.objects:
            assert ob.id in sal or nx.has_path(D, ob.id, sal[0])
        largest = max(len(c) for c in P.collections)
        assert N.dim <= largest


def test_nerve_is_face_closed():
    P, N = spine(SMALL_GRAPHS["abc-ab"])
    all_simplices = {s for v in N.simplices.values() for s in v}
    for s in all_simplices:
        for k in range(len(s)):
            face = s[:k] + s[k + 1:]
            if face:
                assert face in all_simplices


def test_objects_are_cospatial():
    for name in ("f2", "abc-ab", "path"):
        P = enumerate_objects(SMALL_GRAPHS[name])
        for ob in P.objects:
            B = ob.blowup
            assert is_cospatial(B, B.graph, prefer=[B.partition_hyperplanes]).verdict is True


def test_arrow_witnesses_factor_through_composites():
    P, _ = spine(SMALL_GRAPHS["abc-ab"])
    for a in P.arrows:
        B = build_blowup(P.graph, [P.partitions[i] for i in P.collections[a.collection]])
        F = [B.hyperplane(B.partitions[i]) for i in a.subset]
        c = collapse(B, F)
        for F1 in itertools.chain.from_iterable(itertools.combinations(F, r) for r in range(len(F) + 1)):
            c1, c2 = factor(c, F1)
            assert compose_cell_maps(c1, c2) == c.cell_map


def test_chains_of_a_path():
    D = nx.DiGraph([(0, 1), (1, 2)])
    assert chains(D) == {0: [(0,), (1,), (2,)], 1: [(0, 1), (0, 2), (1, 2)], 2: [(0, 1, 2)]}


def test_iso_classes():
    C = IsoClasses()
    G = SMALL_GRAPHS["f2"]
    p, q = enumerate_partitions(G)
    assert C.add(build_blowup(G, [p]).complex) == (0, True)
    assert C.add(build_blowup(G, [q]).complex) == (0, False)
    assert C.add(salvetti(G)) == (1, True)


def test_exports_are_stable():
    P, N = spine(SMALL_GRAPHS["f2"])
    doc = to_dict(P, N)
    assert doc["schema"] == "spine/v1"
    assert json.loads(json.dumps(doc)) == doc
    assert doc["nerve"]["simplices"] == {"0": [[0], [1]], "1": [[0, 1]]} or \
        doc["nerve"]["simplices"] == {"0": [[0], [1]], "1": [[1, 0]]}
    P2, N2 = spine(SMALL_GRAPHS["f2"])
    assert json.dumps(to_dict(P2, N2)) == json.dumps(doc)
    dot = to_dot(P)
    assert dot.startswith("digraph spine {") and dot.count("->") == 1
    assert build_nerve(P) == N


def test_universe_contains_the_blowups():
    G = SMALL_GRAPHS["f2"]
    U = universe(G)
    assert len(U) == 6
    assert sum(1 for _, why in U if why.startswith("blowup")) == 2
