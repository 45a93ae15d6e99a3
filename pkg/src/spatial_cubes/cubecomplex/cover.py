"""Finite balls in the universal cover of a nonpositively curved cube complex."""
from __future__ import annotations

from dataclasses import dataclass

from networkx.utils import UnionFind

from . import frames
from .core import ComplexError, Cube, CubeComplex


@dataclass(frozen=True)
class CoverBall:
    """The combinatorial ball and its covering projection.

    ``projection[(k, i)]`` is the cell of the base complex under cell
    ``(k, i)`` of the ball; lifted edges keep the reference orientation of
    their images.  Vertex 0 is the lift of the base vertex.
    """

    complex: CubeComplex
    projection: dict
    layer: tuple[int, ...]

    def vertex_projection(self, v: int) -> int:
        return self.projection[(0, v)][1]

    def edge_projection(self, e: int) -> int:
        return self.projection[(1, e)][1]


def _square_moves(X: CubeComplex):
    """For every vertex: (h1, h2, g1, g2) read off square corners there.

    From a lift w of the vertex, walking h1 then g1 and walking h2 then g2
    reach the same lifted vertex (the far corner of the lifted square).
    """
    moves = [[] for _ in range(X.n_vertices)]
    for i, c in enumerate(X.squares()):
        for m in range(4):
            h1, h2 = X.corner_half_edges(2, i, m)
            g1 = X.corner_half_edges(2, i, m ^ 1)[1]  # at the end of h1, along axis 1
            g2 = X.corner_half_edges(2, i, m ^ 2)[0]
            moves[c.corners[m]].append((h1, h2, g1, g2))
    return moves


def cover_ball(X: CubeComplex, base: int, radius: int) -> CoverBall:
    if X.link_condition_failures():
        raise ComplexError("cover_ball needs a complex satisfying the link condition")
    moves = _square_moves(X)
    proj = [base]
    layer = [0]
    nbr: list[dict] = [{}]  # cover vertex -> {half-edge at projection: (cover vertex, cover edge)}
    cedges: list[tuple[int, int]] = []
    cedge_proj: list[int] = []
    front = [0]
    for d in range(radius):
        cands = []
        index = {}
        for u in front:
            for h in X.half_edges(proj[u]):
                if h not in nbr[u]:
                    index[(u, h)] = len(cands)
                    cands.append((u, h))
        dsu = UnionFind(range(len(cands)))
        prev = [w for w in range(len(proj)) if layer[w] == d - 1]
        for w in prev:
            for h1, h2, g1, g2 in moves[proj[w]]:
                if h1 not in nbr[w] or h2 not in nbr[w]:
                    continue
                u1, _ = nbr[w][h1]
                u2, _ = nbr[w][h2]
                if layer[u1] != d or layer[u2] != d:
                    continue
                a, b = index.get((u1, g1)), index.get((u2, g2))
                if a is not None and b is not None:
                    dsu.union(a, b)
        classes: dict[int, list[int]] = {}
        for r in range(len(cands)):
            classes.setdefault(dsu[r], []).append(r)
        new_front = []
        for root in sorted(classes, key=lambda r: min(classes[r])):
            x = len(proj)
            members = [cands[r] for r in sorted(classes[root])]
            u0, (e0, end0) = members[0]
            proj.append(X.edges[e0][1 - end0])
            layer.append(d + 1)
            nbr.append({})
            new_front.append(x)
            for u, (e, end) in members:
                if X.edges[e][1 - end] != proj[x]:
                    raise ComplexError("inconsistent lift: the complex is not locally CAT(0)")
                back = (e, 1 - end)
                if back in nbr[x]:
                    raise ComplexError("lift produced a double edge: the complex is not locally CAT(0)")
                ce = len(cedges)
                cedges.append((u, x) if end == 0 else (x, u))
                cedge_proj.append(e)
                nbr[u][(e, end)] = (x, ce)
                nbr[x][back] = (u, ce)
        front = new_front

    cubes, cube_proj = [], []
    for k in sorted(X.cubes):
        for i, c in enumerate(X.cubes[k]):
            for u in range(len(proj)):
                if proj[u] != c.corners[0]:
                    continue
                lifted = _lift_cube(X, k, i, u, nbr)
                if lifted is not None:
                    cubes.append(lifted)
                    cube_proj.append((k, i))
    ball = CubeComplex(len(proj), cedges, cubes)
    projection = {(0, v): (0, p) for v, p in enumerate(proj)}
    projection.update({(1, e): (1, p) for e, p in enumerate(cedge_proj)})
    counters: dict[int, int] = {}
    for cp in cube_proj:
        k = cp[0]
        projection[(k, counters.get(k, 0))] = cp
        counters[k] = counters.get(k, 0) + 1
    return CoverBall(ball, projection, tuple(layer))


def _lift_cube(X: CubeComplex, k: int, i: int, u: int, nbr) -> Cube | None:
    """Lift cube (k, i) with corner 0 at cover vertex u, if all corners are present."""
    c = X.cubes[k][i]
    corners = [None] * (1 << k)
    corners[0] = u
    slots = []
    for m in range(1 << k):
        if corners[m] is None:
            return None
        for a in range(k):
            if m >> a & 1:
                continue
            e, s = c.slot(a, m)
            h = (e, 0 if s > 0 else 1)
            step = nbr[corners[m]].get(h)
            if step is None:
                return None
            x, ce = step
            t = m | 1 << a
            if corners[t] is None:
                corners[t] = x
            elif corners[t] != x:
                raise ComplexError("lifted cube does not close up")
    for a, m in frames.slots(k):
        e, s = c.slot(a, m)
        slots.append((nbr[corners[m]][(e, 0 if s > 0 else 1)][1], s))
    return Cube(tuple(corners), tuple(slots))
