"""Subdividing a complex along a hyperplane."""
from __future__ import annotations

from dataclasses import dataclass

from . import frames
from .carrier import start_coordinate
from .core import ComplexError, Cube, CubeComplex


@dataclass(frozen=True)
class Subdivision:
    complex: CubeComplex
    images: tuple[int, int]  # hyperplanes (tail half, head half)
    edge_map: dict  # old edge -> new edge, or (tail half, head half) for dual edges
    mid_vertex: dict  # dual edge -> new vertex


def subdivide(X: CubeComplex, hid: int) -> Subdivision:
    H = X.hyperplanes[hid]
    if not H.two_sided:
        raise ComplexError(f"hyperplane {hid} is one-sided")
    for i in range(X.count(2)):
        a, b = X.cube_axis_hyperplanes(2, i)
        if a == b == hid:
            raise ComplexError(f"hyperplane {hid} self-intersects")
    dual = set(H.edges)
    n = X.n_vertices
    mid = {e: n + r for r, e in enumerate(H.edges)}

    edges = []
    edge_map = {}
    for e, (u, v) in enumerate(X.edges):
        if e in dual:
            tail, head = (u, v) if X.coorientation(e) > 0 else (v, u)
            edge_map[e] = (len(edges), len(edges) + 1)
            edges += [(tail, mid[e]), (mid[e], head)]
        else:
            edge_map[e] = len(edges)
            edges.append((u, v))

    squares = [(i, a) for i in range(X.count(2))
               for a, h in enumerate(X.cube_axis_hyperplanes(2, i)) if h == hid]
    mid_edge = {}
    for i, a in squares:
        c = X.cubes[2][i]
        t = start_coordinate(X, 2, i, a)
        b = 1 - a
        e_lo = c.slot(a, 0)[0]
        e_hi = c.slot(a, 1 << b)[0]
        _, s = c.slot(b, t << a)
        mid_edge[i] = len(edges)
        edges.append((mid[e_lo], mid[e_hi]) if s > 0 else (mid[e_hi], mid[e_lo]))

    def halves(e, d):
        """(near-0 half, near-1 half) of a dual edge with frame signs."""
        ta, hb = edge_map[e]
        if d > 0:
            return (ta, 1), (hb, 1)
        return (hb, -1), (ta, -1)

    cubes = []
    for k, cs in X.cubes.items():
        idx = frames.slot_index(k)
        for i, c in enumerate(cs):
            axes = X.cube_axis_hyperplanes(k, i)
            if hid not in axes:
                cubes.append(Cube(c.corners, tuple((_plain(edge_map, e), s) for e, s in c.slots)))
                continue
            a = axes.index(hid)
            bit = 1 << a
            t = start_coordinate(X, k, i, a)
            d = 1 if t == 0 else -1

            def mid_slot(b, base):
                """Mid-layer edge over the {a, b} face through ``base``."""
                if k == 2:
                    fid = i
                else:
                    _, fid, _ = X.face(k, i, (min(a, b), max(a, b)), base & ~bit & ~(1 << b))
                _, s = c.slots[idx[(b, (base & ~bit) | (t << a))]]
                return mid_edge[fid], s

            for side in (0, 1):
                corners = []
                for m in range(1 << k):
                    if (m >> a & 1) == side:
                        corners.append(c.corners[m])
                    else:
                        corners.append(mid[c.slots[idx[(a, m & ~bit)]][0]])
                slots = []
                for ax, m in frames.slots(k):
                    if ax == a:
                        e, _ = c.slots[idx[(a, m)]]
                        slots.append(halves(e, d)[side])
                    elif (m >> a & 1) == side:
                        e, s = c.slots[idx[(ax, m)]]
                        slots.append((_plain(edge_map, e), s))
                    else:
                        slots.append(mid_slot(ax, m))
                cubes.append(Cube(tuple(corners), tuple(slots)))
            if k >= 3:
                others = [b for b in range(k) if b != a]

                def lift(mm):
                    return sum(1 << b for r, b in enumerate(others) if mm >> r & 1)

                mcorners = tuple(mid[c.slots[idx[(a, lift(mm))]][0]] for mm in range(1 << (k - 1)))
                mslots = tuple(mid_slot(others[r], lift(mm)) for r, mm in frames.slots(k - 1))
                cubes.append(Cube(mcorners, mslots))

    Z = CubeComplex(n + len(mid), edges, cubes)
    e0 = H.edges[0]
    return Subdivision(Z, (Z.hyperplane_of(edge_map[e0][0]), Z.hyperplane_of(edge_map[e0][1])),
                       edge_map, mid)


def _plain(edge_map, e):
    new = edge_map[e]
    if isinstance(new, tuple):
        raise ComplexError("dual edge used transversally: hyperplane self-intersects")
    return new
