"""Coordinate frames of standard cubes.

A k-cube is described in a frame: corners are indexed by bitmasks
``0 .. 2**k - 1`` and edges by *slots* ``(axis, base)`` where ``base`` is a
corner mask with bit ``axis`` clear; the slot is the edge running from
``base`` to ``base | 1 << axis``.

A symmetry of the k-cube is a pair ``(perm, flips)`` acting on coordinates by
``y[perm[a]] = x[a] ^ flips[a]``.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

Sym = tuple[tuple[int, ...], tuple[int, ...]]


@lru_cache(maxsize=None)
def slots(k: int) -> tuple[tuple[int, int], ...]:
    """All slots of the k-cube in canonical order (by axis, then base)."""
    return tuple((a, m) for a in range(k) for m in range(1 << k) if not m >> a & 1)


@lru_cache(maxsize=None)
def slot_index(k: int) -> dict[tuple[int, int], int]:
    return {s: i for i, s in enumerate(slots(k))}


@lru_cache(maxsize=None)
def symmetries(k: int) -> tuple[Sym, ...]:
    out = []
    for perm in itertools.permutations(range(k)):
        for flips in itertools.product((0, 1), repeat=k):
            out.append((perm, flips))
    return tuple(out)


def identity(k: int) -> Sym:
    return tuple(range(k)), (0,) * k


def act(g: Sym, m: int) -> int:
    perm, flips = g
    y = 0
    for a, p in enumerate(perm):
        if (m >> a & 1) ^ flips[a]:
            y |= 1 << p
    return y


def compose(g2: Sym, g1: Sym) -> Sym:
    """The symmetry ``g2 o g1``."""
    p1, f1 = g1
    p2, f2 = g2
    perm = tuple(p2[p1[a]] for a in range(len(p1)))
    flips = tuple(f1[a] ^ f2[p1[a]] for a in range(len(p1)))
    return perm, flips


def inverse(g: Sym) -> Sym:
    perm, flips = g
    k = len(perm)
    inv = [0] * k
    for a, p in enumerate(perm):
        inv[p] = a
    return tuple(inv), tuple(flips[inv[b]] for b in range(k))


def transform(g: Sym, corners, cube_slots):
    """Re-express cube data given in frame F in the frame ``g(F)``.

    ``cube_slots`` is a sequence aligned with :func:`slots` holding
    ``(edge, sign)`` pairs; the sign is +1 when the edge's reference
    orientation runs in the positive axis direction.
    """
    k = len(g[0])
    perm, flips = g
    new_corners = [None] * (1 << k)
    for m, v in enumerate(corners):
        new_corners[act(g, m)] = v
    idx = slot_index(k)
    new_slots = [None] * len(cube_slots)
    for (a, m), (e, s) in zip(slots(k), cube_slots):
        lo, hi = act(g, m), act(g, m | 1 << a)
        if flips[a]:
            lo, s = hi, -s
        new_slots[idx[(perm[a], lo)]] = (e, s)
    return tuple(new_corners), tuple(new_slots)


def canonical(corners, cube_slots) -> tuple[tuple, Sym]:
    """Minimal transformed data over all symmetries, with the symmetry used."""
    k = (len(corners) - 1).bit_length()
    best = None
    for g in symmetries(k):
        data = transform(g, corners, cube_slots)
        if best is None or data < best[0]:
            best = (data, g)
    return best


def encode_sym(g: Sym) -> list[int]:
    """Signed 1-based list: entry t is ``+-(perm[t] + 1)``, negative if flipped."""
    perm, flips = g
    return [-(p + 1) if f else p + 1 for p, f in zip(perm, flips)]


def decode_sym(code) -> Sym:
    perm = tuple(abs(c) - 1 for c in code)
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"not a cube symmetry: {code!r}")
    return perm, tuple(1 if c < 0 else 0 for c in code)
