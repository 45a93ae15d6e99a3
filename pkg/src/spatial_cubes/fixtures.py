"""Small named complexes used in tests, demos and the command line."""
from __future__ import annotations

from .cubecomplex import CubeComplex, square


def circle(n: int) -> CubeComplex:
    """A cycle of ``n >= 1`` edges, all oriented the same way."""
    return CubeComplex(n, [(i, (i + 1) % n) for i in range(n)])


def grid(m: int, n: int) -> CubeComplex:
    """The ``m x n`` square grid; vertex ``(x, y)`` is ``x + (m + 1) * y``."""
    return _grid(m, n, {})


def _grid(m, n, merge):
    def vid(x, y):
        v = x + (m + 1) * y
        return merge.get(v, v)

    ids = sorted({vid(x, y) for x in range(m + 1) for y in range(n + 1)})
    renum = {v: i for i, v in enumerate(ids)}
    edges, h, w = [], {}, {}
    for y in range(n + 1):
        for x in range(m):
            h[(x, y)] = len(edges)
            edges.append((renum[vid(x, y)], renum[vid(x + 1, y)]))
    for y in range(n):
        for x in range(m + 1):
            w[(x, y)] = len(edges)
            edges.append((renum[vid(x, y)], renum[vid(x, y + 1)]))
    squares = []
    for y in range(n):
        for x in range(m):
            corners = [renum[vid(*p)] for p in ((x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1))]
            walk = [(h[(x, y)], 1), (w[(x + 1, y)], 1), (h[(x, y + 1)], -1), (w[(x, y)], -1)]
            squares.append(square(corners, walk))
    return CubeComplex(len(ids), edges, squares)


def single_square() -> CubeComplex:
    return grid(1, 1)


def torus() -> CubeComplex:
    """One vertex, two loops, one square: the Salvetti complex of Z^2."""
    return CubeComplex(1, [(0, 0), (0, 0)], [square((0, 0, 0, 0), [(0, 1), (1, 1), (0, -1), (1, -1)])])


def diagonal_torus() -> CubeComplex:
    """The square tiling of the plane modulo the lattice spanned by (1, 1)
    and (-1, 1): two vertices (by parity of x + y), four edges, two squares.
    """
    # edges: horizontal from even, horizontal from odd, vertical from even, vertical from odd
    edges = [(0, 1), (1, 0), (0, 1), (1, 0)]
    return CubeComplex(2, edges, [
        square((0, 1, 0, 1), [(0, 1), (3, 1), (1, -1), (2, -1)]),
        square((1, 0, 1, 0), [(1, 1), (2, 1), (0, -1), (3, -1)]),
    ])


def osculating_annulus() -> CubeComplex:
    """A square with two adjacent corners glued: its horizontal hyperplane
    directly self-osculates at the glued vertex."""
    return CubeComplex(3, [(0, 1), (1, 2), (0, 2), (0, 0)],
                       [square((0, 1, 2, 0), [(0, 1), (1, 1), (2, -1), (3, -1)])])


def identified_subdivided_square():
    """The first subdivision of a square with two opposite corners identified.

    Returns the complex and the two parallel hyperplanes dual to its
    horizontal edges in the left and right columns.
    """
    X = _grid(2, 2, {8: 0})
    left = X.hyperplane_of(0)  # edge (0,0) -> (1,0)
    right = X.hyperplane_of(1)  # edge (1,0) -> (2,0)
    return X, (left, right)


__all__ = [
    "circle", "grid", "single_square", "torus", "diagonal_torus", "osculating_annulus",
    "identified_subdivided_square",
]
