"""The nine acceptance criteria, one test each.

Each test records a one-line PASS/FAIL verdict, printed in the terminal
summary.  Run this file directly for the same lines without pytest.
"""
import itertools
import time
from pathlib import Path

import pytest

import oracles
from conftest import ACCEPTANCE_LINES, SMALL_GRAPHS
from spatial_cubes.blowup import (NotCarrierRetract, build_blowup, canonical_collapse,
                                  is_tree_like, labels_adjacent)
from spatial_cubes.cli import FALSE, INDETERMINATE, INVALID, OK, USAGE, run
from spatial_cubes.collapse import (CollapseError, collapse, is_cospatial, is_strong, is_weak,
                                    quasi_isometry_bounds, redundant_pairs)
from spatial_cubes.cubecomplex import (distance, hyperplanes, is_carrier_retract, is_isomorphic,
                                       is_special, median, separator)
from spatial_cubes.fixtures import diagonal_torus, identified_subdivided_square
from spatial_cubes.raag import salvetti
from spatial_cubes.spine import enumerate_objects, spine, universe
from spatial_cubes.wallspace import (hyperplane_wallspace, random_wallspace,
                                     restriction_quotient, sageev)
from spatial_cubes.whitehead import enumerate_collections, enumerate_partitions, parse_partition

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"
GRAPHS = SMALL_GRAPHS  # every defining graph on at most 3 vertices, up to isomorphism

TITLES = {
    1: "Whitehead enumeration matches the 3-colouring oracle",
    2: "blow-ups are special, irredundant, label-transverse, with Salvetti Euler characteristic",
    3: "c-family in the <a,b,c|[a,b]> blow-up is weak, not tree-like, range not a blow-up",
    4: "tree-like => strong; blow-up collapses extend to tree-like; canonical collapses strong",
    5: "quantitative bounds on strong collapses over radius-4 cover balls",
    6: "Sageev/median suite on 100 seeded random wallspaces",
    7: "negative instances and CLI exit codes",
    8: "spines of F2 and <a,b,c|[a,b]>",
    9: "cospatial <=> isomorphic to a blow-up on the enumeration universe",
}


@pytest.fixture
def record(request):
    n = int(request.node.name.split("_")[1])
    start = time.perf_counter()
    ACCEPTANCE_LINES[n] = f"criterion {n}: FAIL  {TITLES[n]}"
    yield
    if getattr(request.node, "rep_call_passed", False):
        ACCEPTANCE_LINES[n] = (f"criterion {n}: PASS  {TITLES[n]}  "
                               f"({time.perf_counter() - start:.1f}s)")


def _family_blowups(G):
    parts = enumerate_partitions(G)
    return [build_blowup(G, [parts[i] for i in col]) for col in enumerate_collections(G, parts=parts)]


def _tree_like_families(B):
    X = B.complex
    retract = [h for h in range(len(X.hyperplanes)) if is_carrier_retract(X, h)]
    return [frozenset(F) for F in itertools.combinations(retract, len(B.partitions))
            if is_tree_like(B, F)]


# ----------------------------------------------------------------------


def test_1_whitehead_enumeration(record):
    expected = {"a": (0, 1), "ab": (0, 1), "f2": (2, 3), "abc-ab": (4, 9)}
    for name, (n_parts, n_cols) in expected.items():
        G = GRAPHS[name]
        t = time.perf_counter()
        parts = enumerate_partitions(G)
        cols = enumerate_collections(G, parts=parts)
        assert time.perf_counter() - t < 5
        assert len(parts) == n_parts
        assert {(frozenset((P.side_p, P.side_q)), P.link) for P in parts} == \
            oracles.partitions_by_colouring(G)
        theirs = oracles.collections_by_subsets(
            G, [(frozenset((P.side_p, P.side_q)), P.link) for P in parts])
        assert sorted(cols) == sorted(theirs)
        # 9 = the empty collection, 4 singletons, 4 mixed pairs
        assert len(cols) == n_cols


def test_2_blowup_validity(record):
    t = time.perf_counter()
    total = 0
    for name, G in GRAPHS.items():
        chi = salvetti(G).euler_characteristic()
        for B in _family_blowups(G):
            X = B.complex
            assert is_special(X).special, (name, B.partitions)
            assert redundant_pairs(X) == [], (name, B.partitions)
            for h, k in itertools.combinations(range(len(X.hyperplanes)), 2):
                assert X.transverse(h, k) == labels_adjacent(G, B.labels[h], B.labels[k])
            assert X.euler_characteristic() == chi
            total += 1
    assert total == 1 + 3 + 1 + 169 + 9 + 3 + 1
    assert time.perf_counter() - t < 120


def test_3_counterexample(record):
    G = GRAPHS["abc-ab"]
    B = build_blowup(G, [parse_partition(G, "a c | a^ c^")])
    hc = B.hyperplane("c")
    c = collapse(B, {hc})
    assert is_weak(c) is True
    assert is_tree_like(B, {hc}) is False
    assert c.range.counts() == (1, 4, 2)
    for other in _family_blowups(G):
        assert is_isomorphic(c.range, other.complex) is None


def test_4_strong_collapses(record):
    for name, G in GRAPHS.items():
        P = enumerate_objects(G)
        sal = salvetti(G)
        for B in P._blowups:
            c = canonical_collapse(B)
            assert is_strong(c) and is_isomorphic(c.range, sal) is not None
            trees = _tree_like_families(B)
            for F in trees:
                assert is_strong(collapse(B, F)), (name, F)
            X = B.complex
            for r in range(1, len(B.partitions) + 1):
                for F in itertools.combinations(range(len(X.hyperplanes)), r):
                    try:
                        cf = collapse(B, F)
                    except CollapseError:
                        continue
                    if P._classes.find(cf.range) is None:
                        continue
                    assert any(set(F) <= T for T in trees), (name, B.partitions, F)


def _strong_families(B, classes):
    fams = set(_tree_like_families(B))
    X = B.complex
    for r in range(1, len(B.partitions) + 1):
        for F in itertools.combinations(range(len(X.hyperplanes)), r):
            try:
                c = collapse(B, F)
            except CollapseError:
                continue
            if classes.find(c.range) is not None and is_strong(c):
                fams.add(frozenset(F))
    return fams


def test_5_quasi_isometry_bounds(record):
    checked = 0
    for name, G in GRAPHS.items():
        P = enumerate_objects(G)
        for B in P._blowups:
            for F in _strong_families(B, P._classes):
                rep = quasi_isometry_bounds(B.complex, F, radius=4)
                assert not rep.violations, (name, sorted(F), rep.violations[:3])
                assert all(d <= rep.n for d in rep.preimage_diameters)
                checked += 1
    assert checked > 3000


def test_6_sageev_median_suite(record):
    t = time.perf_counter()
    for seed in range(100):
        W = random_wallspace(seed, n_points=12, n_walls=10)
        S = sageev(W)
        X = S.complex
        # round trip through the hyperplane wallspace
        W2, _ = hyperplane_wallspace(X)
        assert is_isomorphic(sageev(W2).complex, X) is not None
        V = range(X.n_vertices)
        for x, y in itertools.combinations(V, 2):
            assert distance(X, x, y) == len(separator(X, {x}, {y}))
        n = len(hyperplanes(X))
        F = frozenset(h for h in range(n) if (h * 7 + seed) % 3 == 0)
        keep = [h for h in range(n) if h not in F]
        c = collapse(X, F)
        f = [c.vertex(v) for v in V]
        for x, y, z in itertools.combinations(V, 3):
            assert f[median(X, x, y, z)] == median(c.range, f[x], f[y], f[z])
        R = restriction_quotient(X, keep)
        g = R.vertex_map
        phi = {}
        for v in V:
            assert phi.setdefault(f[v], g[v]) == g[v]
        assert sorted(phi.values()) == list(range(R.complex.n_vertices))
        assert len(phi) == c.range.n_vertices
        Y, Z = c.range, R.complex
        for k in range(1, Y.dim + 1):
            mine = sorted(sorted(phi[v] for v in Y.cell_vertices(k, i)) for i in range(Y.count(k)))
            theirs = sorted(sorted(Z.cell_vertices(k, i)) for i in range(Z.count(k)))
            assert mine == theirs, (seed, k)
        assert Y.counts() == Z.counts()
        for h in keep:
            e = X.hyperplanes[h].edges[0]
            ye = c.cell_map[(1, e)][1]
            u, v = X.edges[e]
            ze = [i for i in range(Z.count(1)) if set(Z.edges[i]) == {g[u], g[v]}]
            assert len(ze) == 1
            assert Z.hyperplane_of(ze[0]) == R.hyperplane_map[h]
            assert Y.hyperplane_of(ye) == c.hyperplane_map[h]
    assert time.perf_counter() - t < 60


def test_7_negative_instances(record, capsys):
    T = diagonal_torus()
    assert is_special(T).special
    assert is_cospatial(T, GRAPHS["ab"]).verdict is False
    X, F = identified_subdivided_square()
    c = collapse(X, F)
    assert is_weak(c) and not is_strong(c)
    codes = {
        OK: ["check", "special", DATA / "salvetti-ab-edge.json"],
        FALSE: ["check", "cospatial", DATA / "diagonal-torus.json", "--graph", DATA / "ab-edge.json"],
        USAGE: ["check"],
        INVALID: ["salvetti", DATA / "does-not-exist.json"],
        INDETERMINATE: ["check", "cospatial", DATA / "diagonal-torus.json", "--graph",
                        DATA / "ab-edge.json", "--bound-subsets", "0"],
    }
    for code, argv in codes.items():
        assert run([str(a) for a in argv]) == code
    capsys.readouterr()


def test_8_spines(record):
    t = time.perf_counter()
    P, N = spine(GRAPHS["f2"])
    assert len(P.objects) == 2 and len(P.arrows) == 1
    assert N.f_vector() == [2, 1]
    assert time.perf_counter() - t < 60
    t = time.perf_counter()
    G = GRAPHS["abc-ab"]
    P, N = spine(G)
    # oracle: pairwise isomorphism over the 9 blow-ups and every partition subset
    bs = _family_blowups(G)
    reps = []
    for B in bs:
        if not any(is_isomorphic(B.complex, R) is not None for R in reps):
            reps.append(B.complex)

    def cls(X):
        return next(j for j, R in enumerate(reps) if is_isomorphic(X, R) is not None)

    arrows = set()
    for B in bs:
        for r in range(1, len(B.partitions) + 1):
            for S in itertools.combinations(B.partitions, r):
                arrows.add((cls(B.complex), cls(collapse(B, [B.hyperplane(Q) for Q in S]).range)))
    assert len(P.objects) == len(reps) == 3
    assert len(P.arrows) == len(arrows) == 3
    assert N.dim == 2 == max(len(c) for c in P.collections)
    assert time.perf_counter() - t < 60


def test_9_cospatial_iff_blowup(record):
    for name, G in GRAPHS.items():
        objs = enumerate_objects(G)
        U = universe(G)
        for X, why in U:
            r = is_cospatial(X, G)
            assert r.verdict is not None, (name, why)
            is_blowup = objs._classes.find(X) is not None
            assert r.verdict == is_blowup, (name, why, r.reason)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
