"""Hyperplane pathologies that special cube complexes avoid."""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import CubeComplex


@dataclass(frozen=True)
class SpecialReport:
    two_sided: bool
    no_self_intersection: bool
    no_self_osculation: bool
    no_inter_osculation: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def special(self) -> bool:
        return (self.two_sided and self.no_self_intersection
                and self.no_self_osculation and self.no_inter_osculation)

    def __bool__(self):
        return self.special


def _link_edges(X: CubeComplex):
    at = [set() for _ in range(X.n_vertices)]
    for i, c in enumerate(X.squares()):
        for m in range(4):
            at[c.corners[m]].add(frozenset(X.corner_half_edges(2, i, m)))
    return at


def is_special(X: CubeComplex) -> SpecialReport:
    witnesses = {}
    one_sided = [H.id for H in X.hyperplanes if not H.two_sided]
    if one_sided:
        witnesses["one_sided"] = one_sided
    crossing_self = []
    for i in range(X.count(2)):
        h0, h1 = X.cube_axis_hyperplanes(2, i)
        if h0 == h1:
            crossing_self.append(i)
    if crossing_self:
        witnesses["self_intersecting_squares"] = crossing_self

    link = _link_edges(X)
    self_osc, inter_osc = [], []
    for v in range(X.n_vertices):
        hs = X.half_edges(v)
        for i, h1 in enumerate(hs):
            e1 = h1[0]
            H1 = X.hyperplane_of(e1)
            # +1 when the half-edge leaves v along the co-orientation
            d1 = X.coorientation(e1) * (1 if h1[1] == 0 else -1)
            for h2 in hs[i + 1:]:
                e2 = h2[0]
                H2 = X.hyperplane_of(e2)
                if frozenset((h1, h2)) in link[v]:
                    continue
                if H1 == H2:
                    d2 = X.coorientation(e2) * (1 if h2[1] == 0 else -1)
                    if e1 != e2 and d1 == d2:
                        self_osc.append((v, e1, e2))
                elif X.transverse(H1, H2):
                    inter_osc.append((v, e1, e2))
    if self_osc:
        witnesses["self_osculation"] = self_osc
    if inter_osc:
        witnesses["inter_osculation"] = inter_osc
    return SpecialReport(not one_sided, not crossing_self, not self_osc, not inter_osc, witnesses)
