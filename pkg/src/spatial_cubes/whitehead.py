"""Whitehead partitions of the signed generators of a RAAG."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import networkx as nx

from .raag import DefiningGraph, GraphError, Letter, commute, link

DEFAULT_BOUND = 12
SCHEMA = "partition/v1"


class PartitionError(ValueError):
    pass


class BoundExceeded(RuntimeError):
    pass


class BasepointDisagreement(AssertionError):
    """Adjacency depends on the choice of basepoint (should never happen)."""


@dataclass(frozen=True)
class WhiteheadPartition:
    """``(P, P*, L)``; equality is up to exchanging the two sides."""

    side_p: frozenset
    side_q: frozenset
    link: frozenset

    def canonical(self) -> "WhiteheadPartition":
        """The side holding the least letter of ``P u P*`` comes first."""
        least = min(self.side_p | self.side_q)
        if least in self.side_p:
            return self
        return WhiteheadPartition(self.side_q, self.side_p, self.link)

    def opposite(self) -> "WhiteheadPartition":
        return WhiteheadPartition(self.side_q, self.side_p, self.link)

    def key(self):
        c = self.canonical()
        return (sorted(c.side_p), sorted(c.side_q))

    def __eq__(self, other):
        if not isinstance(other, WhiteheadPartition):
            return NotImplemented
        return self.link == other.link and {self.side_p, self.side_q} == {other.side_p, other.side_q}

    def __hash__(self):
        return hash((self.link, frozenset((self.side_p, self.side_q))))

    def __lt__(self, other):
        return self.key() < other.key()

    def side_of(self, x: Letter) -> int | None:
        """0 for ``P``, 1 for ``P*``, ``None`` for the link."""
        if x in self.side_p:
            return 0
        if x in self.side_q:
            return 1
        return None

    def side(self, s: int) -> frozenset:
        return self.side_p if s == 0 else self.side_q

    def __str__(self):
        def fmt(s):
            return "{" + ",".join(map(str, sorted(s))) + "}"
        return f"{fmt(self.side_p)}|{fmt(self.side_q)}|{fmt(self.link)}"

    def to_dict(self) -> dict:
        return {"side_p": [str(x) for x in sorted(self.side_p)],
                "side_q": [str(x) for x in sorted(self.side_q)],
                "link": [str(x) for x in sorted(self.link)]}

    @classmethod
    def from_dict(cls, doc) -> "WhiteheadPartition":
        if not isinstance(doc, dict) or set(doc) - {"schema", "side_p", "side_q", "link"}:
            raise PartitionError("unknown fields in partition document")
        return cls(*(frozenset(map(Letter.parse, doc.get(f, []))) for f in ("side_p", "side_q", "link")))


def make_partition(G: DefiningGraph, side_p, side_q) -> WhiteheadPartition:
    p = frozenset(side_p)
    q = frozenset(side_q)
    rest = frozenset(G.letters) - p - q
    return WhiteheadPartition(p, q, rest)


def parse_partition(G: DefiningGraph, text: str) -> WhiteheadPartition:
    """``"a c | a^ c^"``: the two sides; the link is the rest."""
    parts = text.split("|")
    if len(parts) not in (2, 3):
        raise PartitionError(f"cannot parse partition {text!r}")
    p, q = (frozenset(Letter.parse(t) for t in s.replace(",", " ").split()) for s in parts[:2])
    P = make_partition(G, p, q)
    if len(parts) == 3:
        given = frozenset(Letter.parse(t) for t in parts[2].replace(",", " ").split())
        if given != P.link:
            raise PartitionError("link does not complement the sides")
    return P


def _check_partition(G: DefiningGraph, P: WhiteheadPartition):
    letters = frozenset(G.letters)
    parts = (P.side_p, P.side_q, P.link)
    if sum(map(len, parts)) != len(letters) or frozenset().union(*parts) != letters:
        raise PartitionError("not a partition of the signed generators")


def _conditions_hold(G: DefiningGraph, P: WhiteheadPartition) -> bool:
    if len(P.side_p) < 2 or len(P.side_q) < 2:
        return False
    for x in P.side_p:
        if x.inverse() in P.side_q and not link(G, x) <= P.link:
            return False
    for x in P.side_p:
        for y in P.side_q:
            if y != x.inverse() and commute(G, x, y):
                return False
    return True


def validate(G: DefiningGraph, P: WhiteheadPartition) -> frozenset[Letter]:
    """Basepoints b of P as written: ``b`` in P, ``b^-1`` in P*, L = lk(b).

    Empty when P is not a Whitehead partition.  Use :func:`all_basepoints`
    for the basepoints of both side orders.
    """
    _check_partition(G, P)
    if not _conditions_hold(G, P):
        return frozenset()
    return frozenset(b for b in P.side_p if b.inverse() in P.side_q and link(G, b) == P.link)


def all_basepoints(G: DefiningGraph, P: WhiteheadPartition) -> frozenset[Letter]:
    return validate(G, P) | validate(G, P.opposite())


def is_valid(G: DefiningGraph, P: WhiteheadPartition) -> bool:
    return bool(all_basepoints(G, P))


def single_double(P: WhiteheadPartition):
    single = frozenset(x for x in P.side_p | P.side_q
                       if P.side_of(x.inverse()) is not None and P.side_of(x.inverse()) != P.side_of(x))
    dp = frozenset(x for x in P.side_p if x.inverse() in P.side_p)
    dq = frozenset(x for x in P.side_q if x.inverse() in P.side_q)
    return single, dp, dq


def _basepoint_names(G, P):
    bs = all_basepoints(G, P)
    if not bs:
        raise PartitionError(f"{P} is not a Whitehead partition")
    return {b.name for b in bs}


def adjacent(G: DefiningGraph, P: WhiteheadPartition, other) -> bool:
    """Adjacency of P to another partition or to a generator (name or Letter)."""
    mine = _basepoint_names(G, P)
    if isinstance(other, WhiteheadPartition):
        theirs = _basepoint_names(G, other)
    else:
        theirs = {other.name if isinstance(other, Letter) else other}
    verdicts = {G.adjacent(u, v) for u in mine for v in theirs}
    if len(verdicts) != 1:
        raise BasepointDisagreement(f"adjacency of {P} depends on the basepoint")
    return verdicts.pop()


def quadrants(P: WhiteheadPartition, Q: WhiteheadPartition):
    return [P.side(i) & Q.side(j) for i in (0, 1) for j in (0, 1)]


def compatible(G: DefiningGraph, P: WhiteheadPartition, Q: WhiteheadPartition) -> bool:
    if P == Q:
        raise PartitionError("compatibility of a partition with itself")
    if adjacent(G, P, Q):
        return True
    return sum(1 for s in quadrants(P, Q) if not s) == 1


def _check_bound(G: DefiningGraph, bound: int):
    if len(G.letters) > bound:
        raise BoundExceeded(f"|V^±| = {len(G.letters)} exceeds the bound {bound}")


def enumerate_partitions(G: DefiningGraph, bound: int = DEFAULT_BOUND) -> list[WhiteheadPartition]:
    """All Whitehead partitions in canonical form, sorted.

    For each basepoint b, L = lk(b) is forced, b goes to P and b^-1 to P*;
    every other non-link letter is placed on either side.
    """
    _check_bound(G, bound)
    found = set()
    for b in G.letters:
        L = link(G, b)
        free = [x for x in G.letters if x not in L and x.name != b.name]
        for bits in itertools.product((0, 1), repeat=len(free)):
            p = {b} | {x for x, s in zip(free, bits) if s == 0}
            q = {b.inverse()} | {x for x, s in zip(free, bits) if s == 1}
            P = WhiteheadPartition(frozenset(p), frozenset(q), L)
            if _conditions_hold(G, P):
                found.add(P.canonical())
    return sorted(found)


def compatibility_graph(G: DefiningGraph, parts) -> nx.Graph:
    C = nx.Graph()
    C.add_nodes_from(range(len(parts)))
    for i, j in itertools.combinations(range(len(parts)), 2):
        if compatible(G, parts[i], parts[j]):
            C.add_edge(i, j)
    return C


def enumerate_collections(G: DefiningGraph, max_size: int | None = None,
                          bound: int = DEFAULT_BOUND, parts=None) -> list[tuple[int, ...]]:
    """Pairwise-compatible collections, as sorted index tuples into
    ``enumerate_partitions(G)``, including the empty one."""
    if parts is None:
        parts = enumerate_partitions(G, bound)
    C = compatibility_graph(G, parts)
    out = [()]
    for clique in nx.enumerate_all_cliques(C):
        if max_size is None or len(clique) <= max_size:
            out.append(tuple(sorted(clique)))
    return sorted(out, key=lambda c: (len(c), c))


def dumps(parts) -> str:
    return json.dumps([dict(schema=SCHEMA, **P.to_dict()) for P in parts], indent=2) + "\n"


__all__ = [
    "WhiteheadPartition", "PartitionError", "BoundExceeded", "BasepointDisagreement",
    "make_partition", "parse_partition", "validate", "all_basepoints", "is_valid",
    "single_double", "adjacent", "compatible", "quadrants", "enumerate_partitions",
    "enumerate_collections", "compatibility_graph", "GraphError",
]
