"""Face-closed subsets of cells."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import ComplexError, CubeComplex


def faces(X: CubeComplex, k: int, i: int) -> set[tuple[int, int]]:
    """All faces of a cell, the cell itself included."""
    out = {(k, i)}
    if k == 1:
        out.update((0, v) for v in X.edges[i])
        return out
    if k == 0:
        return out
    for j in range(k):
        for free in itertools.combinations(range(k), j):
            fixed = [a for a in range(k) if a not in free]
            for bits in itertools.product((0, 1), repeat=len(fixed)):
                base = sum(b << a for a, b in zip(fixed, bits))
                fk, fi, _ = X.face(k, i, free, base)
                out.add((fk, fi))
    return out


@dataclass(frozen=True)
class SubcomplexRef:
    """A face-closed set of cells ``(dim, id)`` of ``host``."""

    host: CubeComplex
    cells: frozenset

    def __post_init__(self):
        for k, i in self.cells:
            if not 0 <= i < self.host.count(k):
                raise ComplexError(f"cell {(k, i)} is not in the host")
            if not faces(self.host, k, i) <= self.cells:
                raise ComplexError(f"cell {(k, i)} is present without all its faces")

    @classmethod
    def closure(cls, host: CubeComplex, cells) -> "SubcomplexRef":
        out = set()
        for k, i in cells:
            out |= faces(host, k, i)
        return cls(host, frozenset(out))

    @classmethod
    def from_vertices(cls, host: CubeComplex, vertices) -> "SubcomplexRef":
        """The full subcomplex spanned by a vertex set."""
        vs = set(vertices)
        cells = {(0, v) for v in vs}
        for k in range(1, host.dim + 1):
            for i in range(host.count(k)):
                if host.cell_vertices(k, i) <= vs:
                    cells.add((k, i))
        return cls(host, frozenset(cells))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(i for k, i in self.cells if k == 0)

    def of_dim(self, k: int) -> list[int]:
        return sorted(i for d, i in self.cells if d == k)

    def is_full(self) -> bool:
        """Every cell of the host whose vertices all lie here belongs here."""
        return self == SubcomplexRef.from_vertices(self.host, self.vertices)

    def __len__(self):
        return len(self.cells)
