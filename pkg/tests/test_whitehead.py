import itertools
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import SMALL_GRAPHS
from spatial_cubes.raag import DefiningGraph, Letter
from spatial_cubes.whitehead import (BoundExceeded, PartitionError, WhiteheadPartition, adjacent,
                                     all_basepoints, compatible, enumerate_collections,
                                     enumerate_partitions, is_valid, make_partition,
                                     parse_partition, single_double, validate)

a, A, b, B, c, C = (Letter(n, s) for n in "abc" for s in (False, True))


def as_oracle(P):
    return (frozenset((P.side_p, P.side_q)), P.link)


def test_validate_examples(f2, abc):
    assert validate(f2, parse_partition(f2, "a b | a^ b^")) == {a, b}
    P = parse_partition(abc, "a c | a^ c^")
    assert validate(abc, P) == {a}
    assert all_basepoints(abc, P) == {a, A}
    assert validate(abc, P.opposite()) == {A}


def test_no_partitions_on_an_edge():
    G = SMALL_GRAPHS["ab"]
    assert enumerate_partitions(G) == []
    for p, q in itertools.combinations([a, A, B], 2):
        cand = make_partition(G, {p, b}, {q})
        assert not is_valid(G, cand)


def test_malformed_candidates_are_rejected(f2):
    with pytest.raises(PartitionError):
        validate(f2, WhiteheadPartition(frozenset({a, b}), frozenset({a}), frozenset()))
    with pytest.raises(PartitionError):
        parse_partition(f2, "a b | a^ b^ | a")
    with pytest.raises(PartitionError):
        parse_partition(f2, "a b")


def test_single_double(abc, f2):
    single, dp, dq = single_double(parse_partition(abc, "a c | a^ c^"))
    assert single == {a, A, c, C} and dp == dq == frozenset()
    single, dp, dq = single_double(parse_partition(f2, "a a^ b | b^"))
    assert single == {b, B} and dp == {a, A} and dq == frozenset()


def test_adjacency_examples(f2, abc):
    p, q = enumerate_partitions(f2)
    assert not adjacent(f2, p, q)
    based = {frozenset(x.name for x in all_basepoints(abc, P)): P for P in enumerate_partitions(abc)}
    pa = parse_partition(abc, "a c | a^ c^")
    pb = next(P for k, P in based.items() if k == {"b"})
    assert adjacent(abc, pa, pb)
    assert not adjacent(abc, pa, "a")
    assert adjacent(abc, pa, "b")
    assert not adjacent(abc, pa, Letter("c"))


def test_compatibility_examples(f2, abc):
    p = parse_partition(f2, "a b | a^ b^")
    q = parse_partition(f2, "a b^ | a^ b")
    assert not compatible(f2, p, q)
    with pytest.raises(PartitionError):
        compatible(f2, p, p)
    parts = enumerate_partitions(abc)
    a_based = [P for P in parts if {x.name for x in all_basepoints(abc, P)} == {"a"}]
    b_based = [P for P in parts if {x.name for x in all_basepoints(abc, P)} == {"b"}]
    assert len(a_based) == 2 and len(b_based) == 2
    assert not compatible(abc, *a_based)
    assert all(compatible(abc, x, y) for x in a_based for y in b_based)


@pytest.mark.parametrize("name,count", [("a", 0), ("ab", 0), ("f2", 2), ("abc-ab", 4), ("f3", 22),
                                        ("path", 2), ("triangle", 0)])
def test_partitions_match_colouring_oracle(name, count):
    G = SMALL_GRAPHS[name]
    t = time.perf_counter()
    parts = enumerate_partitions(G)
    assert time.perf_counter() - t < 5
    assert len(parts) == count
    assert {as_oracle(P) for P in parts} == oracles.partitions_by_colouring(G)
    for P in parts:
        assert P.canonical() == P and P.canonical().side_p == P.side_p


@pytest.mark.parametrize("name", ["a", "ab", "f2", "abc-ab", "path", "triangle", "f3"])
def test_collections_match_oracle(name):
    G = SMALL_GRAPHS[name]
    parts = enumerate_partitions(G)
    cols = enumerate_collections(G)
    theirs = oracles.collections_by_subsets(G, [as_oracle(P) for P in parts])
    assert sorted(cols) == sorted(theirs)


def test_abc_collections(abc):
    cols = enumerate_collections(abc)
    assert len(cols) == 9
    assert [len(c) for c in cols] == [0, 1, 1, 1, 1, 2, 2, 2, 2]
    assert enumerate_collections(abc, max_size=1) == cols[:5]


def test_bound_is_enforced():
    big = DefiningGraph.make("abcdefg")
    with pytest.raises(BoundExceeded):
        enumerate_partitions(big)
    assert enumerate_partitions(SMALL_GRAPHS["f2"], bound=4)


def test_json_round_trip(abc):
    for P in enumerate_partitions(abc):
        assert WhiteheadPartition.from_dict(P.to_dict()) == P


def test_free_group_compatibility_is_quadrant_count():
    for name in ("f2", "f3"):
        G = SMALL_GRAPHS[name]
        parts = enumerate_partitions(G)
        for P, Q in itertools.combinations(parts, 2):
            empty = sum(1 for i in (0, 1) for j in (0, 1) if not P.side(i) & Q.side(j))
            assert compatible(G, P, Q) == (empty == 1)


GRAPHS = st.sampled_from(sorted(SMALL_GRAPHS))


@settings(max_examples=60, deadline=None)
@given(GRAPHS, st.data())
def test_symmetry_properties(name, data):
    G = SMALL_GRAPHS[name]
    parts = enumerate_partitions(G)
    if len(parts) < 2:
        return
    P, Q = data.draw(st.lists(st.sampled_from(parts), min_size=2, max_size=2, unique=True))
    assert compatible(G, P, Q) == compatible(G, Q, P)
    assert compatible(G, P.opposite(), Q) == compatible(G, P, Q)
    if adjacent(G, P, Q):
        assert compatible(G, P, Q)
    assert all_basepoints(G, P) == all_basepoints(G, P.opposite())
    assert P.opposite().canonical() == P.canonical()
