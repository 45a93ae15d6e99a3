"""Combinatorial isomorphism of cube complexes.

Each complex is encoded as a labelled incidence graph whose automorphisms are
exactly the cellular automorphisms: every edge contributes two half-edge
nodes, and every cube a star of corner and slot nodes forming a copy of the
hypercube graph (whose automorphisms are the cube's symmetries).  Colour
refinement on that graph labels the 1-skeleton, networkx's VF2 matches the
labelled 1-skeleta, and each match is extended to cubes and re-verified.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from . import frames
from .core import CubeComplex


@dataclass(frozen=True)
class Isomorphism:
    """Cell bijection ``cells[(k, i)] = (k, j)`` plus per-edge orientation flags."""

    cells: dict
    edge_flip: dict  # edge -> +1 if the reference orientation is preserved

    def vertex(self, v: int) -> int:
        return self.cells[(0, v)][1]

    def edge(self, e: int) -> int:
        return self.cells[(1, e)][1]


def _graph(X: CubeComplex, colors) -> nx.Graph:
    G = nx.Graph()
    for v in range(X.n_vertices):
        G.add_node(("v", v), l=("v",))
    for e, ends in enumerate(X.edges):
        H = X.hyperplanes[X.hyperplane_of(e)]
        color = colors.get(e) if colors else None
        G.add_node(("e", e), l=("e", color, len(H.edges), H.two_sided))
        for end in (0, 1):
            G.add_node(("h", e, end), l=("h",))
            G.add_edge(("h", e, end), ("e", e))
            G.add_edge(("h", e, end), ("v", ends[end]))
    for k, cubes in X.cubes.items():
        for i, c in enumerate(cubes):
            G.add_node(("c", k, i), l=("c", k))
            for m, v in enumerate(c.corners):
                G.add_node(("cc", k, i, m), l=("cc",))
                G.add_edge(("cc", k, i, m), ("c", k, i))
                G.add_edge(("cc", k, i, m), ("v", v))
            for r, ((a, m), (e, s)) in enumerate(zip(frames.slots(k), c.slots)):
                slot = ("cs", k, i, r)
                G.add_node(slot, l=("cs",))
                G.add_edge(slot, ("e", e))
                lo_end = 0 if s > 0 else 1
                for side, corner, end in ((0, m, lo_end), (1, m | 1 << a, 1 - lo_end)):
                    node = ("se", k, i, r, side)
                    G.add_node(node, l=("se",))
                    G.add_edge(node, slot)
                    G.add_edge(node, ("cc", k, i, corner))
                    G.add_edge(node, ("h", e, end))
    return G


def _refine(G: nx.Graph, rounds: int = 4) -> None:
    """Replace node labels by colour-refinement (1-WL) hashes."""
    for node, data in G.nodes(data=True):
        data["s"] = repr(data["l"])
    hashes = nx.weisfeiler_lehman_subgraph_hashes(G, node_attr="s", iterations=rounds)
    for node, data in G.nodes(data=True):
        data["l"] = (data["s"], hashes[node][-1])


def _invariant(X: CubeComplex, colors):
    hyp = Counter((len(H.edges), H.two_sided) for H in X.hyperplanes)
    deg = Counter(len(X.adjacency[v]) for v in range(X.n_vertices))
    col = Counter(colors.values()) if colors else Counter()
    return X.counts(), sorted(hyp.items()), sorted(deg.items()), sorted(col.items(), key=repr)


def _skeleton(G: nx.Graph) -> nx.Graph:
    """The vertex / edge / half-edge part of the incidence graph, keeping labels."""
    return G.subgraph([n for n in G if n[0] in ("v", "e", "h")]).copy()


def is_isomorphic(X: CubeComplex, Y: CubeComplex, x_colors=None, y_colors=None) -> Isomorphism | None:
    """A cell bijection X -> Y, optionally preserving edge colours, or ``None``.

    Colour refinement runs on the full incidence graph; VF2 then only
    matches 1-skeleta (with refined labels), and each skeleton match is
    extended to cubes through the face index or rejected.
    """
    if _invariant(X, x_colors) != _invariant(Y, y_colors):
        return None
    GX, GY = _graph(X, x_colors), _graph(Y, y_colors)
    _refine(GX)
    _refine(GY)
    if Counter(nx.get_node_attributes(GX, "l").values()) != Counter(nx.get_node_attributes(GY, "l").values()):
        return None
    matcher = GraphMatcher(_skeleton(GX), _skeleton(GY), node_match=lambda p, q: p["l"] == q["l"])
    for mapping in matcher.isomorphisms_iter():
        iso = _extend(X, Y, mapping)
        if iso is not None:
            if not verify_isomorphism(X, Y, iso):
                raise AssertionError("extended skeleton match is not a cellular isomorphism")
            return iso
    return None


def _extend(X: CubeComplex, Y: CubeComplex, mapping) -> Isomorphism | None:
    cells, flip = {}, {}
    for node, image in mapping.items():
        if node[0] == "v":
            cells[(0, node[1])] = (0, image[1])
        elif node[0] == "e":
            cells[(1, node[1])] = (1, image[1])
        elif node[0] == "h" and node[2] == 0:
            flip[node[1]] = 1 if image[2] == 0 else -1
    index = Y._cell_index
    for k, cubes in X.cubes.items():
        for i, c in enumerate(cubes):
            corners = tuple(cells[(0, v)][1] for v in c.corners)
            slots = tuple((cells[(1, e)][1], s * flip[e]) for e, s in c.slots)
            hit = index.get(frames.canonical(corners, slots)[0])
            if hit is None:
                return None
            cells[(k, i)] = (hit[0], hit[1])
    return Isomorphism(cells, flip)


def verify_isomorphism(X: CubeComplex, Y: CubeComplex, iso: Isomorphism) -> bool:
    """Check that a claimed cell bijection preserves all attaching data."""
    if X.counts() != Y.counts():
        return False
    for k in range(X.dim + 1):
        images = {iso.cells.get((k, i)) for i in range(X.count(k))}
        if images != {(k, j) for j in range(Y.count(k))}:
            return False
    vmap = [iso.vertex(v) for v in range(X.n_vertices)]
    for e, (u, v) in enumerate(X.edges):
        f = iso.edge(e)
        a, b = (vmap[u], vmap[v]) if iso.edge_flip[e] > 0 else (vmap[v], vmap[u])
        if Y.edges[f] != (a, b):
            return False
    for k, cubes in X.cubes.items():
        for i, c in enumerate(cubes):
            _, j = iso.cells[(k, i)]
            corners = tuple(vmap[v] for v in c.corners)
            slots = tuple((iso.edge(e), s * iso.edge_flip[e]) for e, s in c.slots)
            target = (Y.cubes[k][j].corners, Y.cubes[k][j].slots)
            if not any(frames.transform(g, corners, slots) == target for g in frames.symmetries(k)):
                return False
    return True
