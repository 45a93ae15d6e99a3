"""Finite cube complexes with signed attaching data.

Cells are stored by their characteristic maps rather than by vertex tuples:
quotient complexes have loops, parallel edges and cubes glued to
themselves, so vertex tuples are ambiguous.  A cube of dimension ``k >= 2``
records its corner vertices and, for every slot of the standard k-cube
(see :mod:`.frames`), the edge mapped there together with a sign.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import frames

Cell = tuple[int, int]  # (dimension, id)
HalfEdge = tuple[int, int]  # (edge id, 0 at the reference start / 1 at the end)


class ComplexError(ValueError):
    """A structural invariant of a cube complex is violated."""


@dataclass(frozen=True)
class Cube:
    """A cube of dimension >= 2 given by corner vertices and signed slots."""

    corners: tuple[int, ...]
    slots: tuple[tuple[int, int], ...]

    @property
    def dim(self) -> int:
        return (len(self.corners) - 1).bit_length()

    def slot(self, axis: int, base: int) -> tuple[int, int]:
        return self.slots[frames.slot_index(self.dim)[(axis, base)]]

    def axis_edges(self, axis: int):
        """``(edge, sign)`` pairs of all slots along ``axis``."""
        k = self.dim
        return [self.slots[i] for i, (a, _) in enumerate(frames.slots(k)) if a == axis]


def square(corners, boundary) -> Cube:
    """Build a square from 4 corners ``c00, c10, c11, c01`` and the boundary
    walk ``[(e0, s0), (e1, s1), (e2, s2), (e3, s3)]`` (signs relative to the
    direction of the walk).  Positions (0, 2) and (1, 3) are opposite."""
    c00, c10, c11, c01 = corners
    (e0, s0), (e1, s1), (e2, s2), (e3, s3) = boundary
    # slot order for k=2: (0,0), (0,2), (1,0), (1,1)
    return Cube((c00, c10, c01, c11), ((e0, s0), (e2, -s2), (e3, -s3), (e1, s1)))


def boundary_walk(cube: Cube):
    """Inverse of :func:`square`: corners and signed boundary walk."""
    c00, c10, c01, c11 = cube.corners
    (e0, s0), (e2, t2), (e3, t3), (e1, s1) = cube.slots
    return (c00, c10, c11, c01), ((e0, s0), (e1, s1), (e2, -t2), (e3, -t3))


@dataclass(frozen=True)
class Hyperplane:
    """A parallelism class of edges.

    ``orientation[i]`` is the sign of ``edges[i]`` relative to the class
    representative (the lowest edge id); it is meaningful only when the
    hyperplane is two-sided.
    """

    id: int
    edges: tuple[int, ...]
    orientation: tuple[int, ...]
    two_sided: bool

    def sign(self, edge: int) -> int:
        return self.orientation[self.edges.index(edge)]


class CubeComplex:
    """A finite cube complex.

    Parameters
    ----------
    n_vertices:
        vertices are ``0 .. n_vertices - 1``.
    edges:
        ``(start, end)`` pairs; the order fixes the reference orientation.
    cubes:
        cubes of dimension >= 2, in any order; they are grouped by dimension
        keeping their relative order, which fixes their ids.
    """

    def __init__(self, n_vertices: int, edges, cubes=(), *, check: bool = True):
        self.n_vertices = int(n_vertices)
        self.edges = tuple((int(u), int(v)) for u, v in edges)
        by_dim: dict[int, list[Cube]] = {}
        for c in cubes:
            by_dim.setdefault(c.dim, []).append(c)
        self.cubes = {k: tuple(by_dim[k]) for k in sorted(by_dim)}
        if check:
            self.check_structure()

    # ------------------------------------------------------------------
    # basic access

    @property
    def dim(self) -> int:
        if self.cubes:
            return max(self.cubes)
        return 1 if self.edges else 0

    def count(self, k: int) -> int:
        if k == 0:
            return self.n_vertices
        if k == 1:
            return len(self.edges)
        return len(self.cubes.get(k, ()))

    def counts(self) -> tuple[int, ...]:
        return tuple(self.count(k) for k in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.counts()))

    def cells(self):
        for k in range(self.dim + 1):
            for i in range(self.count(k)):
                yield (k, i)

    def cell_data(self, k: int, i: int):
        """Corners and signed slots of a cell in its own frame."""
        if k == 0:
            return (i,), ()
        if k == 1:
            return self.edges[i], ((i, 1),)
        c = self.cubes[k][i]
        return c.corners, c.slots

    def cell_edges(self, k: int, i: int) -> list[int]:
        return [e for e, _ in self.cell_data(k, i)[1]]

    def cell_vertices(self, k: int, i: int) -> set[int]:
        return set(self.cell_data(k, i)[0])

    def squares(self) -> tuple[Cube, ...]:
        return self.cubes.get(2, ())

    def __repr__(self):
        return f"CubeComplex(counts={self.counts()})"

    # ------------------------------------------------------------------
    # structure

    def check_structure(self) -> None:
        n = self.n_vertices
        if n < 0:
            raise ComplexError("negative vertex count")
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ComplexError(f"edge {i} has an unknown endpoint")
        for k, cubes in self.cubes.items():
            if k < 2:
                raise ComplexError("cubes must have dimension >= 2")
            for i, c in enumerate(cubes):
                if len(c.slots) != k << (k - 1):
                    raise ComplexError(f"{k}-cube {i} has the wrong number of slots")
                for (a, m), (e, s) in zip(frames.slots(k), c.slots):
                    if not 0 <= e < len(self.edges) or s not in (1, -1):
                        raise ComplexError(f"{k}-cube {i} references a bad edge")
                    u, v = self.edges[e]
                    if s < 0:
                        u, v = v, u
                    if (c.corners[m], c.corners[m | 1 << a]) != (u, v):
                        raise ComplexError(f"{k}-cube {i}: slot {(a, m)} does not close up")
        # every proper face of dimension >= 2 must itself be a cell
        for k, cubes in self.cubes.items():
            for i in range(len(cubes)):
                for axis in range(k):
                    for side in (0, 1):
                        self.face(k, i, _drop(range(k), axis), side << axis)
        seen = {}
        for k, cubes in self.cubes.items():
            for i, c in enumerate(cubes):
                key = frames.canonical(c.corners, c.slots)[0]
                if key in seen:
                    raise ComplexError(f"{k}-cubes {seen[key]} and {i} have identical attaching maps")
                seen[key] = i

    @cached_property
    def _cell_index(self):
        index = {}
        for k, cubes in self.cubes.items():
            for i, c in enumerate(cubes):
                key, g = frames.canonical(c.corners, c.slots)
                index.setdefault(key, (k, i, g))
        return index

    def face(self, k: int, i: int, free_axes, base: int):
        """The face of cell ``(k, i)`` spanned by ``free_axes`` at corner ``base``.

        Returns ``(dim, id, h)`` where ``h`` maps the face cell's own frame to
        the natural frame of the face (free axes in increasing order).
        For edges ``h`` is ``((0,), (flip,))``.
        """
        free_axes = tuple(free_axes)
        corners, cslots = self.cell_data(k, i)
        j = len(free_axes)
        if j == k:
            return k, i, frames.identity(k)
        if j == 0:
            return 0, corners[base], frames.identity(0)
        idx = frames.slot_index(k)

        def lift(mm):
            out = base
            for t, a in enumerate(free_axes):
                if mm >> t & 1:
                    out |= 1 << a
            return out

        fcorners = tuple(corners[lift(mm)] for mm in range(1 << j))
        fslots = tuple(cslots[idx[(free_axes[t], lift(mm))]] for t, mm in frames.slots(j))
        if j == 1:
            e, s = fslots[0]
            return 1, e, ((0,), (0 if s > 0 else 1,))
        key, g_nat = frames.canonical(fcorners, fslots)
        try:
            fk, fi, g_cell = self._cell_index[key]
        except KeyError:
            raise ComplexError(f"face {free_axes}@{base} of {k}-cube {i} is not a cell") from None
        return fk, fi, frames.compose(frames.inverse(g_nat), g_cell)

    def corner_half_edges(self, k: int, i: int, m: int) -> tuple[HalfEdge, ...]:
        """Half-edges at corner ``m`` of a cell, one per axis."""
        corners, cslots = self.cell_data(k, i)
        idx = frames.slot_index(k)
        out = []
        for a in range(k):
            bit = 1 << a
            e, s = cslots[idx[(a, m & ~bit)]]
            outgoing = not m & bit
            out.append((e, 0 if outgoing == (s > 0) else 1))
        return tuple(out)

    def half_edges(self, v: int) -> list[HalfEdge]:
        return [h for h in self._half_edges_at[v]]

    @cached_property
    def _half_edges_at(self):
        at = [[] for _ in range(self.n_vertices)]
        for e, (u, v) in enumerate(self.edges):
            at[u].append((e, 0))
            at[v].append((e, 1))
        return at

    def other_end(self, h: HalfEdge) -> int:
        e, end = h
        return self.edges[e][1 - end]

    # ------------------------------------------------------------------
    # hyperplanes

    @cached_property
    def _parallelism(self):
        parent = list(range(len(self.edges)))
        parity = [0] * len(self.edges)
        consistent = {}

        def find(x):
            p = 0
            root = x
            while parent[root] != root:
                p ^= parity[root]
                root = parent[root]
            # path compression
            y, q = x, p
            while parent[y] != y:
                nxt, py = parent[y], parity[y]
                parent[y], parity[y] = root, q
                q ^= py
                y = nxt
            return root, p

        bad = set()
        for k, cubes in self.cubes.items():
            for c in cubes:
                for a in range(k):
                    along = c.axis_edges(a)
                    e0, s0 = along[0]
                    for e1, s1 in along[1:]:
                        rel = 0 if s0 == s1 else 1
                        r0, p0 = find(e0)
                        r1, p1 = find(e1)
                        if r0 == r1:
                            if p0 ^ p1 != rel:
                                bad.add(r0)
                        else:
                            if r0 > r1:
                                r0, r1, p0, p1 = r1, r0, p1, p0
                            parent[r1] = r0
                            parity[r1] = p0 ^ p1 ^ rel
        classes: dict[int, list[int]] = {}
        signs = {}
        for e in range(len(self.edges)):
            r, p = find(e)
            classes.setdefault(r, []).append(e)
            signs[e] = -1 if p else 1
        bad = {find(r)[0] for r in bad}
        hyps = []
        for hid, r in enumerate(sorted(classes)):
            es = tuple(sorted(classes[r]))
            hyps.append(Hyperplane(hid, es, tuple(signs[e] for e in es), r not in bad))
        edge_hyp = [0] * len(self.edges)
        for h in hyps:
            for e in h.edges:
                edge_hyp[e] = h.id
        return tuple(hyps), tuple(edge_hyp), tuple(signs[e] for e in range(len(self.edges)))

    @property
    def hyperplanes(self) -> tuple[Hyperplane, ...]:
        return self._parallelism[0]

    def hyperplane_of(self, e: int) -> int:
        return self._parallelism[1][e]

    def coorientation(self, e: int) -> int:
        """Sign of edge ``e`` relative to its hyperplane's representative."""
        return self._parallelism[2][e]

    def cube_axis_hyperplanes(self, k: int, i: int) -> tuple[int, ...]:
        if k == 1:
            return (self.hyperplane_of(i),)
        c = self.cubes[k][i]
        return tuple(self.hyperplane_of(c.axis_edges(a)[0][0]) for a in range(k))

    @cached_property
    def transverse_pairs(self) -> frozenset[tuple[int, int]]:
        """Unordered pairs ``(h1, h2)``, ``h1 < h2``, of distinct hyperplanes
        whose dual edges span a square."""
        out = set()
        for i in range(self.count(2)):
            h1, h2 = self.cube_axis_hyperplanes(2, i)
            if h1 != h2:
                out.add((min(h1, h2), max(h1, h2)))
        return frozenset(out)

    def transverse(self, h1: int, h2: int) -> bool:
        return (min(h1, h2), max(h1, h2)) in self.transverse_pairs

    # ------------------------------------------------------------------
    # vertex links

    def link_condition_failures(self) -> list[str]:
        """Reasons the vertex links fail to be flag simplicial complexes."""
        problems = []
        simplices: dict[int, set[frozenset]] = {v: set() for v in range(self.n_vertices)}
        for k, cubes in self.cubes.items():
            for i, c in enumerate(cubes):
                for m in range(1 << k):
                    hs = self.corner_half_edges(k, i, m)
                    s = frozenset(hs)
                    v = c.corners[m]
                    if len(s) < k:
                        problems.append(f"{k}-cube {i} is degenerate at corner {m}")
                        continue
                    if s in simplices[v]:
                        problems.append(f"vertex {v}: repeated link simplex from {k}-cube {i}")
                    simplices[v].add(s)
        for v in range(self.n_vertices):
            edges = {s for s in simplices[v] if len(s) == 2}
            nbrs: dict[HalfEdge, set] = {}
            for s in edges:
                a, b = tuple(s)
                nbrs.setdefault(a, set()).add(b)
                nbrs.setdefault(b, set()).add(a)
            for clique in _cliques(nbrs, 3):
                if frozenset(clique) not in simplices[v]:
                    problems.append(f"vertex {v}: link not flag at {sorted(clique)}")
        return problems

    def satisfies_link_condition(self) -> bool:
        return not self.link_condition_failures()

    # ------------------------------------------------------------------
    # graph helpers

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For each vertex, the ``(neighbour, edge)`` pairs (loops listed twice)."""
        adj = [[] for _ in range(self.n_vertices)]
        for e, (u, v) in enumerate(self.edges):
            adj[u].append((v, e))
            adj[v].append((u, e))
        return tuple(tuple(a) for a in adj)

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return True
        return len(self.component_of(0)) == self.n_vertices

    def component_of(self, v: int) -> set[int]:
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y, _ in self.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen


def _drop(seq, x):
    return tuple(y for y in seq if y != x)


def _cliques(nbrs, min_size):
    """All cliques of size >= min_size in a graph given by neighbour sets."""
    nodes = sorted(nbrs)
    out = []

    def extend(clique, candidates):
        if len(clique) >= min_size:
            out.append(clique)
        for i, x in enumerate(candidates):
            extend(clique + [x], [y for y in candidates[i + 1:] if y in nbrs[x]])

    extend([], nodes)
    return out


def cube_from_corner(corners_of, edge_of, k: int) -> Cube:
    """Assemble a cube from callables giving corner vertices and slot edges."""
    return Cube(tuple(corners_of(m) for m in range(1 << k)),
                tuple(edge_of(a, m) for a, m in frames.slots(k)))


def relabel_vertices(X: CubeComplex, order) -> CubeComplex:
    """Renumber vertices so that ``order[new] = old``."""
    new = {old: i for i, old in enumerate(order)}
    return CubeComplex(
        X.n_vertices,
        [(new[u], new[v]) for u, v in X.edges],
        [Cube(tuple(new[v] for v in c.corners), c.slots) for k in X.cubes for c in X.cubes[k]],
    )


__all__ = [
    "Cell", "HalfEdge", "ComplexError", "Cube", "Hyperplane", "CubeComplex",
    "square", "boundary_walk", "cube_from_corner", "relabel_vertices",
]
