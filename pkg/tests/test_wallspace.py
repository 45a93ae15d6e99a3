import itertools
import json

import pytest

from spatial_cubes.collapse import collapse
from spatial_cubes.cubecomplex import (CubeComplex, is_cat0, is_convex, is_isomorphic, median,
                                       SubcomplexRef)
from spatial_cubes.fixtures import grid, single_square
from spatial_cubes.wallspace import (Wallspace, WallspaceError, hyperplane_wallspace,
                                     random_wallspace, restriction_quotient, sageev)


def test_no_walls_gives_a_point():
    S = sageev(Wallspace.make([0, 1, 2], []))
    assert S.complex.counts() == (1,)


def test_two_crossing_walls_give_a_square():
    W = Wallspace.make("pqrs", [{"p", "q"}, {"p", "r"}])
    X = sageev(W).complex
    assert is_isomorphic(X, single_square()) is not None


def test_two_nested_walls_give_a_path():
    W = Wallspace.make("pqr", [{"p"}, {"p", "q"}])
    S = sageev(W)
    # orientations by hand: (in p?, in pq?) can be (0,0), (0,1), (1,1)
    assert sorted(S.orientations) == [(0, 0), (0, 1), (1, 1)]
    assert is_isomorphic(S.complex, CubeComplex(3, [(0, 1), (1, 2)])) is not None


def test_invalid_wallspaces_are_rejected():
    with pytest.raises(WallspaceError):
        Wallspace.make("pq", [{"p", "q"}])
    with pytest.raises(WallspaceError):
        Wallspace.make("pq", [{"p"}, {"q"}])  # same wall twice
    with pytest.raises(WallspaceError):
        Wallspace.make("pq", [{"x"}])
    with pytest.raises(WallspaceError):
        sageev(Wallspace.make([], []))


def test_wallspace_json_round_trip():
    W = random_wallspace(3)
    again = Wallspace.from_dict(json.loads(W.dumps()))
    assert again == W
    with pytest.raises(WallspaceError):
        Wallspace.from_dict({"points": [], "walls": [], "colour": 1})


def test_random_wallspace_is_seeded():
    assert random_wallspace(11) == random_wallspace(11)
    W = random_wallspace(11)
    assert len(W.points) == 12 and len(W.walls) <= 10


def test_wall_hyperplane_bijection():
    S = sageev(random_wallspace(5))
    assert sorted(S.wall_hyperplane) == list(range(len(S.complex.hyperplanes)))


def test_principal_vertices():
    W = random_wallspace(2)
    S = sageev(W)
    for p in W.points:
        o = S.orientations[S.principal(p)]
        assert all(o[i] == int(p in w) for i, w in enumerate(W.walls))


def test_restriction_quotient_examples():
    X = grid(2, 1)
    full = restriction_quotient(X, range(len(X.hyperplanes)))
    assert is_isomorphic(full.complex, X) is not None
    empty = restriction_quotient(X, [])
    assert empty.complex.counts() == (1,)
    # the two vertical walls of the 2x1 grid cut the long direction
    long_walls = sorted({X.hyperplane_of(e) for e in (0, 1)})
    R = restriction_quotient(X, long_walls)
    assert is_isomorphic(R.complex, CubeComplex(3, [(0, 1), (1, 2)])) is not None
    c = collapse(X, [h for h in range(len(X.hyperplanes)) if h not in long_walls])
    assert is_isomorphic(R.complex, c.range) is not None
    for v in range(X.n_vertices):
        w = c.cell_map[(0, v)][1]
        assert all((c.cell_map[(0, u)][1] == w) == (R.vertex_map[u] == R.vertex_map[v])
                   for u in range(X.n_vertices))


def test_restriction_quotient_needs_cat0():
    from spatial_cubes.cubecomplex import ComplexError
    from spatial_cubes.fixtures import circle
    with pytest.raises(ComplexError):
        restriction_quotient(circle(3), [0])


@pytest.mark.parametrize("seed", range(15))
def test_round_trip_through_hyperplanes(seed):
    X = sageev(random_wallspace(seed)).complex
    W, _ = hyperplane_wallspace(X)
    assert is_isomorphic(sageev(W).complex, X) is not None


@pytest.mark.parametrize("seed", range(6))
def test_restriction_quotient_preserves_medians_and_convex_preimages(seed):
    X = sageev(random_wallspace(seed)).complex
    keep = list(range(0, len(X.hyperplanes), 2))
    R = restriction_quotient(X, keep)
    Y, f = R.complex, R.vertex_map
    for x, y, z in itertools.combinations(range(X.n_vertices), 3):
        assert f[median(X, x, y, z)] == median(Y, f[x], f[y], f[z])
    for w in range(Y.n_vertices):
        pre = {v for v in range(X.n_vertices) if f[v] == w}
        assert is_convex(X, SubcomplexRef.from_vertices(X, pre))


@pytest.mark.parametrize("seed", range(6))
def test_sageev_complexes_are_cat0(seed):
    assert is_cat0(sageev(random_wallspace(seed)).complex)
