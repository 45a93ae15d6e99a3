"""Hyperplane carriers and their product structure."""
from __future__ import annotations

from dataclasses import dataclass

from . import frames
from .core import ComplexError, Cube, CubeComplex
from .subcomplex import SubcomplexRef


def cells_crossing(X: CubeComplex, hid: int) -> list[tuple[int, int, int]]:
    """``(dim, id, axis)`` for each cell of dim >= 1 and each axis dual to ``hid``."""
    out = []
    for e in X.hyperplanes[hid].edges:
        out.append((1, e, 0))
    for k, cubes in X.cubes.items():
        for i in range(len(cubes)):
            for a, h in enumerate(X.cube_axis_hyperplanes(k, i)):
                if h == hid:
                    out.append((k, i, a))
    return out


def carrier(X: CubeComplex, hid: int) -> SubcomplexRef:
    return SubcomplexRef.closure(X, {(k, i) for k, i, _ in cells_crossing(X, hid)})


def start_coordinate(X: CubeComplex, k: int, i: int, axis: int) -> int:
    """Frame coordinate (0 or 1) of the side the hyperplane's co-orientation leaves."""
    corners, cslots = X.cell_data(k, i)
    signs = set()
    for (a, _), (e, s) in zip(frames.slots(k), cslots):
        if a == axis:
            signs.add(s * X.coorientation(e))
    if len(signs) != 1:
        raise ComplexError(f"inconsistent co-orientation across {k}-cell {i}")
    return 0 if signs.pop() > 0 else 1


@dataclass(frozen=True)
class CarrierProduct:
    """An embedding of ``[0, 1] x Y`` onto the carrier of a hyperplane.

    ``cells[j]`` is the ``(dim, id, axis)`` record of X realising
    ``[0,1] x (cell j of Y)``, listed in Y's cell order; ``start`` and
    ``end`` give the images of ``{0} x cell`` and ``{1} x cell``.
    """

    Y: CubeComplex
    cells: dict
    start: dict
    end: dict


def carrier_product(X: CubeComplex, hid: int) -> CarrierProduct | None:
    H = X.hyperplanes[hid]
    if not H.two_sided:
        return None
    crossing = cells_crossing(X, hid)
    seen = set()
    for k, i, _ in crossing:
        if (k, i) in seen:
            return None  # self-intersection
        seen.add((k, i))
    # Y's vertices are dual edges, Y's j-cells the (j+1)-cells crossing H
    by_dim: dict[int, list] = {}
    for k, i, a in crossing:
        by_dim.setdefault(k - 1, []).append((k, i, a))
    ids = {(k, i): j for d in by_dim for j, (k, i, _) in enumerate(by_dim[d])}

    def y_cell(k, i, a):
        corners, cslots = X.cell_data(k, i)
        others = [b for b in range(k) if b != a]
        t = start_coordinate(X, k, i, a)
        idx = frames.slot_index(k)

        def lift(mm, side):
            m = side << a
            for r, b in enumerate(others):
                if mm >> r & 1:
                    m |= 1 << b
            return m

        ycorners = tuple(ids[(1, cslots[idx[(a, lift(mm, 0))]][0])] for mm in range(1 << (k - 1)))
        yslots = []
        for r, mm in frames.slots(k - 1):
            b = others[r]
            fk, fi, _ = X.face(k, i, (min(a, b), max(a, b)), lift(mm, 0) & ~(1 << b))
            _, s = cslots[idx[(b, lift(mm, t))]]
            yslots.append((ids[(fk, fi)], s))
        return ycorners, tuple(yslots)

    # a Y edge is oriented like the X edge on the start side of its square
    yedges = []
    for k, i, a in by_dim.get(1, []):
        corners, _ = y_cell(k, i, a)
        cs = X.cell_data(k, i)[1]
        t = start_coordinate(X, k, i, a)
        b = 1 - a
        _, s = cs[frames.slot_index(2)[(b, t << a)]]
        yedges.append(corners if s > 0 else corners[::-1])
    ycubes = []
    for d in sorted(by_dim):
        if d >= 2:
            for k, i, a in by_dim[d]:
                ycubes.append(Cube(*y_cell(k, i, a)))
    try:
        Y = CubeComplex(len(by_dim.get(0, [])), yedges, ycubes)
    except ComplexError:
        return None

    cells, start, end = {}, {}, {}
    for d, recs in by_dim.items():
        for j, (k, i, a) in enumerate(recs):
            cells[(d, j)] = (k, i, a)
            t = start_coordinate(X, k, i, a)
            others = tuple(b for b in range(k) if b != a)
            for side, table in ((t, start), (1 - t, end)):
                fk, fi, _ = X.face(k, i, others, side << a)
                table[(d, j)] = (fk, fi)
    images = list(start.values()) + list(end.values())
    if len(set(images)) != len(images):
        return None
    return CarrierProduct(Y, cells, start, end)


def is_carrier_retract(X: CubeComplex, hid: int) -> bool:
    return carrier_product(X, hid) is not None
