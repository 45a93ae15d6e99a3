"""Combinatorial metric on the 1-skeleton: distances, medians, halfspaces."""
from __future__ import annotations

from collections import deque

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .core import ComplexError, CubeComplex
from .subcomplex import SubcomplexRef


class NotConnected(ComplexError):
    pass


class NotFull(ComplexError):
    pass


def _memo(X: CubeComplex, key: str, fn):
    cache = X.__dict__.setdefault("_metric_cache", {})
    if key not in cache:
        cache[key] = fn()
    return cache[key]


def distance_matrix(X: CubeComplex) -> np.ndarray:
    """All-pairs edge distances; unreachable pairs are ``-1``."""

    def build():
        n = X.n_vertices
        if n == 0:
            return np.zeros((0, 0), dtype=np.int64)
        rows, cols = [], []
        for u, v in X.edges:
            if u != v:
                rows += [u, v]
                cols += [v, u]
        A = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        D = shortest_path(A, unweighted=True, directed=False)
        D[np.isinf(D)] = -1
        return D.astype(np.int64)

    return _memo(X, "dist", build)


def distance(X: CubeComplex, x: int, y: int) -> int:
    d = int(distance_matrix(X)[x, y])
    if d < 0:
        raise NotConnected(f"vertices {x} and {y} lie in different components")
    return d


def geodesic(X: CubeComplex, x: int, y: int) -> list[tuple[int, int]]:
    """A shortest edge path from x to y as ``(edge, +1 | -1)`` steps."""
    prev = {x: None}
    queue = deque([x])
    while queue and y not in prev:
        u = queue.popleft()
        for w, e in X.adjacency[u]:
            if w not in prev:
                prev[w] = (u, e)
                queue.append(w)
    if y not in prev:
        raise NotConnected(f"vertices {x} and {y} lie in different components")
    path = []
    v = y
    while prev[v] is not None:
        u, e = prev[v]
        path.append((e, 1 if X.edges[e] == (u, v) else -1))
        v = u
    return path[::-1]


def _interval_tensor(D: np.ndarray) -> np.ndarray:
    """``B[x, y, m]`` is true when m lies on a geodesic from x to y."""
    return (D[:, None, :] + D.T[None, :, :]) == D[:, :, None]


def is_simple_graph(X: CubeComplex) -> bool:
    seen = set()
    for u, v in X.edges:
        if u == v:
            return False
        key = (min(u, v), max(u, v))
        if key in seen:
            return False
        seen.add(key)
    return True


def median_counts(X: CubeComplex) -> np.ndarray:
    """``C[x, y, z]`` = number of vertices on geodesics between every pair."""

    def build():
        D = distance_matrix(X)
        B = _interval_tensor(D)
        n = X.n_vertices
        C = np.empty((n, n, n), dtype=np.int32)
        for x in range(n):
            C[x] = (B[x][:, None, :] & B & B[x][None, :, :]).sum(axis=-1)
        return C

    return _memo(X, "median_counts", build)


def is_median_graph(X: CubeComplex) -> bool:
    if not X.is_connected():
        raise NotConnected("median test needs a connected complex")
    if not is_simple_graph(X):
        return False
    return bool((median_counts(X) == 1).all())


def unfilled_four_cycles(X: CubeComplex) -> list[tuple[int, int, int, int]]:
    """Embedded 4-cycles ``(u, v1, w, v2)`` that bound no square.

    Assumes a simple 1-skeleton.
    """
    filled = set()
    for c in X.squares():
        filled.add(frozenset(e for e, _ in c.slots))
    edge_of = {}
    for e, (u, v) in enumerate(X.edges):
        edge_of[(u, v)] = edge_of[(v, u)] = e
    nbrs = [sorted({w for w, _ in X.adjacency[v] if w != v}) for v in range(X.n_vertices)]
    out = []
    for u in range(X.n_vertices):
        for w in range(u + 1, X.n_vertices):
            common = sorted(set(nbrs[u]) & set(nbrs[w]))
            for i, v1 in enumerate(common):
                for v2 in common[i + 1:]:
                    es = frozenset((edge_of[(u, v1)], edge_of[(v1, w)], edge_of[(w, v2)], edge_of[(v2, u)]))
                    if es not in filled:
                        out.append((u, v1, w, v2))
    return out


def cat0_failures(X: CubeComplex) -> list[str]:
    if X.n_vertices == 0:
        return ["empty complex"]
    if not X.is_connected():
        return ["not connected"]
    if not is_median_graph(X):
        return ["1-skeleton is not a median graph"]
    problems = [f"4-cycle {c} bounds no square" for c in unfilled_four_cycles(X)]
    return problems + X.link_condition_failures()


def is_cat0(X: CubeComplex) -> bool:
    return _memo(X, "cat0", lambda: not cat0_failures(X))


def _require_cat0(X: CubeComplex, what: str):
    if not is_cat0(X):
        raise ComplexError(f"{what} needs a CAT(0) complex")


def median(X: CubeComplex, x: int, y: int, z: int) -> int:
    _require_cat0(X, "median")
    D = distance_matrix(X)
    ok = (D[x] + D[y] == D[x, y]) & (D[y] + D[z] == D[y, z]) & (D[x] + D[z] == D[x, z])
    (found,) = np.nonzero(ok)
    if len(found) != 1:
        raise ComplexError("median is not unique")
    return int(found[0])


def median_table(X: CubeComplex) -> np.ndarray:
    """``M[x, y, z]`` = median vertex, for CAT(0) complexes."""
    _require_cat0(X, "median")

    def build():
        D = distance_matrix(X)
        B = _interval_tensor(D)
        n = X.n_vertices
        M = np.empty((n, n, n), dtype=np.int64)
        for x in range(n):
            M[x] = np.argmax(B[x][:, None, :] & B & B[x][None, :, :], axis=-1)
        return M

    return _memo(X, "median_table", build)


def halfspaces(X: CubeComplex, hid: int) -> tuple[frozenset[int], frozenset[int]]:
    """The two sides of a hyperplane, ``(minus, plus)``.

    ``plus`` contains the terminal vertex of every co-oriented dual edge.
    Raises unless deleting the dual edges leaves exactly two components.
    """

    def build():
        H = X.hyperplanes[hid]
        banned = set(H.edges)
        comp = [-1] * X.n_vertices
        ncomp = 0
        for s in range(X.n_vertices):
            if comp[s] >= 0:
                continue
            comp[s] = ncomp
            stack = [s]
            while stack:
                u = stack.pop()
                for w, e in X.adjacency[u]:
                    if e not in banned and comp[w] < 0:
                        comp[w] = ncomp
                        stack.append(w)
            ncomp += 1
        e0 = H.edges[0]
        u, v = X.edges[e0]
        if ncomp != 2 or comp[u] == comp[v]:
            raise ComplexError(f"hyperplane {hid} does not separate")
        minus = frozenset(w for w in range(X.n_vertices) if comp[w] == comp[u])
        return minus, frozenset(range(X.n_vertices)) - minus

    return _memo(X, f"halfspace{hid}", build)


def _vertex_set(S):
    if isinstance(S, SubcomplexRef):
        return S.vertices
    return frozenset(S)


def separator(X: CubeComplex, A, B) -> frozenset[int]:
    """Hyperplanes with A in one halfspace and B in the other."""
    A, B = _vertex_set(A), _vertex_set(B)
    if not A or not B:
        raise ValueError("separator of an empty subcomplex")
    _require_cat0(X, "separator")
    out = set()
    for H in X.hyperplanes:
        minus, plus = halfspaces(X, H.id)
        if (A <= minus and B <= plus) or (A <= plus and B <= minus):
            out.add(H.id)
    return frozenset(out)


def is_convex(X: CubeComplex, S) -> bool:
    """Geodesic convexity of a full subcomplex (or of the span of a vertex set)."""
    _require_cat0(X, "convexity")
    if isinstance(S, SubcomplexRef):
        if not S.is_full():
            raise NotFull("subcomplex is not full")
    vs = sorted(_vertex_set(S))
    if not vs:
        return True
    D = distance_matrix(X)
    sub = D[np.ix_(vs, vs)]
    # m lies between s and t  <=>  D[s, m] + D[m, t] == D[s, t]
    between = (D[vs][:, None, :] + D[vs][None, :, :]) == sub[:, :, None]
    inside = np.zeros(X.n_vertices, dtype=bool)
    inside[vs] = True
    return bool(not (between & ~inside[None, None, :]).any())


def helly_check(X: CubeComplex, family) -> bool:
    """Pairwise intersecting implies globally intersecting, on this family."""
    sets = [_vertex_set(S) for S in family]
    pairwise = all(a & b for i, a in enumerate(sets) for b in sets[i + 1:])
    if not pairwise or not sets:
        return True
    return bool(frozenset.intersection(*sets))


def diameter(X: CubeComplex) -> int:
    D = distance_matrix(X)
    if (D < 0).any():
        raise NotConnected("diameter of a disconnected complex")
    return int(D.max()) if D.size else 0
