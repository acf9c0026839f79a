import itertools
import math

import pytest
from hypothesis import given, strategies as st

from qtmac.setpartitions import (
    SetPartition,
    enumerate_set_partitions,
    interval,
    mobius,
    mobius_to_top,
    parse_set_partition,
    set_partitions_of,
    weisner_sum,
)

S = parse_set_partition


def brute_set_partitions(elems):
    """Recursive oracle: place the first element into each block of a
    partition of the rest, or alone."""
    if not elems:
        return [[]]
    first, rest = elems[0], elems[1:]
    out = []
    for p in brute_set_partitions(rest):
        out.append([[first]] + p)
        for k in range(len(p)):
            out.append(p[:k] + [[first] + p[k]] + p[k + 1:])
    return out


def mobius_recursive(pi, sigma, memo={}):
    """mu by its defining recursion, independent of the product formula."""
    key = (pi, sigma)
    if key not in memo:
        if pi == sigma:
            memo[key] = 1
        else:
            memo[key] = -sum(mobius_recursive(pi, w) for w in interval(pi, sigma) if w != sigma)
    return memo[key]


def test_bell_numbers():
    assert [len(enumerate_set_partitions(r)) for r in range(1, 7)] == [1, 2, 5, 15, 52, 203]
    assert len(set_partitions_of([])) == 1


@pytest.mark.parametrize("r", range(1, 6))
def test_enumeration_matches_oracle(r):
    got = {sp.blocks for sp in enumerate_set_partitions(r)}
    want = {SetPartition(p).blocks for p in brute_set_partitions(list(range(1, r + 1)))}
    assert got == want
    assert enumerate_set_partitions(r) == enumerate_set_partitions(r)


def test_canonical_form_and_text():
    a = SetPartition([[3], [2, 1]])
    assert a.blocks == ((1, 2), (3,))
    assert a == S("{1,2|3}")
    assert a.to_text() == "{1,2|3}"
    with pytest.raises(ValueError):
        SetPartition([[1, 2], [2]])


def test_join_meet_examples():
    a, b = S("{1,2|3}"), S("{1|2,3}")
    assert a.join(b) == S("{1,2,3}")
    assert a.meet(b) == S("{1|2|3}")
    bottom = SetPartition.finest([1, 2, 3])
    assert a.join(bottom) == a


def test_mismatched_ground_sets():
    with pytest.raises(ValueError):
        S("{1,2}").join(S("{1|2|3}"))
    with pytest.raises(ValueError):
        S("{1,2}").refines(S("{1|3}"))


part4 = st.sampled_from(enumerate_set_partitions(4))


@given(part4, part4, part4)
def test_lattice_laws(a, b, c):
    assert a.join(a) == a and a.meet(a) == a
    assert a.join(b) == b.join(a) and a.meet(b) == b.meet(a)
    assert a.join(a.meet(b)) == a and a.meet(a.join(b)) == a
    assert a.join(b.join(c)) == a.join(b).join(c)
    assert a.refines(a.join(b)) and a.meet(b).refines(a)


@given(part4, part4)
def test_join_is_least_upper_bound(a, b):
    uppers = [c for c in enumerate_set_partitions(4) if a.refines(c) and b.refines(c)]
    j = a.join(b)
    assert j in uppers and all(j.refines(c) for c in uppers)
    lowers = [c for c in enumerate_set_partitions(4) if c.refines(a) and c.refines(b)]
    m = a.meet(b)
    assert m in lowers and all(c.refines(m) for c in lowers)


def test_mobius_examples():
    top = S("{1,2,3}")
    assert mobius(S("{1|2|3}"), top) == 2
    assert mobius(top, top) == 1
    assert mobius(S("{1,2|3}"), top) == -1
    with pytest.raises(ValueError):
        mobius(top, S("{1|2|3}"))


@pytest.mark.parametrize("r", range(1, 6))
def test_mobius_product_formula_matches_recursion(r):
    parts = enumerate_set_partitions(r)
    top = SetPartition.coarsest(range(1, r + 1))
    for pi in parts:
        n = len(pi)
        assert mobius_to_top(pi) == (-1) ** (n - 1) * math.factorial(n - 1) == mobius(pi, top)
        for sigma in parts:
            if pi.refines(sigma):
                assert mobius(pi, sigma) == mobius_recursive(pi, sigma)


def test_mobius_to_top_r6():
    top = SetPartition.coarsest(range(1, 7))
    for pi in enumerate_set_partitions(6):
        n = len(pi)
        assert mobius(pi, top) == (-1) ** (n - 1) * math.factorial(n - 1)


def test_interval_matches_filter():
    parts = enumerate_set_partitions(4)
    for pi, sigma in itertools.product(parts, parts):
        if pi.refines(sigma):
            want = {w for w in parts if pi.refines(w) and w.refines(sigma)}
            assert set(interval(pi, sigma)) == want


def test_weisner_examples():
    bottom3 = SetPartition.finest([1, 2, 3])
    top3 = SetPartition.coarsest([1, 2, 3])
    assert weisner_sum(bottom3, top3, top3) == 0
    bottom4 = SetPartition.finest(range(1, 5))
    assert weisner_sum(bottom4, S("{1,2|3|4}"), SetPartition.coarsest(range(1, 5))) == 0
    with pytest.raises(ValueError):
        weisner_sum(top3, top3, top3)
