import itertools

import pytest
from hypothesis import given, strategies as st

from qtmac.partitions import (
    EMPTY,
    Box,
    Order,
    Partition,
    arm,
    arm_in_sum,
    arm_split,
    dominance,
    enumerate_partitions,
    enumerate_up_to,
    extended_preceq,
    families,
    family_sum,
    hook_factors,
    hook_poly,
    leg,
    multisets_of_partitions,
    oplus,
    parse_family,
    parse_partition,
    partition_binomial,
    tilde_point,
)
from qtmac.qtalgebra import QTPoly, QTRatio, q, t

P = Partition

partitions_st = st.lists(st.integers(1, 5), max_size=5).map(lambda xs: P(sorted(xs, reverse=True)))


def brute_partitions(n):
    """Partitions of n from all compositions, as an independent oracle."""
    out = set()
    for k in range(n + 1):
        for comp in itertools.product(range(1, n + 1), repeat=k):
            if sum(comp) == n:
                out.add(tuple(sorted(comp, reverse=True)))
    return out


def diagram(lam):
    return {(i, j) for j, row in enumerate(lam, 1) for i in range(1, row + 1)}


# -- basic type ---------------------------------------------------------------

def test_partition_validates():
    with pytest.raises(ValueError):
        P((1, 2))
    with pytest.raises(ValueError):
        P((2, -1))
    # trailing zeros of a padded vector are dropped
    assert P((2, 0, 0)) == P((2,))
    lam = P((3, 1, 1))
    assert lam.size == 5 and lam.length == 3
    assert lam.part(4) == 0


def test_text_forms():
    assert parse_partition("2,1") == P((2, 1))
    assert parse_partition("-") == EMPTY
    assert EMPTY.to_text() == "-"
    assert parse_family("2,1;1;1") == [P((2, 1)), P((1,)), P((1,))]
    with pytest.raises(ValueError):
        parse_partition("a")


@given(partitions_st)
def test_conjugate_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().size == lam.size


# -- oplus --------------------------------------------------------------------

def test_oplus_examples():
    assert oplus(P((2, 1)), P((1,))) == P((3, 1))
    assert oplus(P((2, 1)), EMPTY) == P((2, 1))
    assert oplus(P((2,)), P((1, 1))) == P((3, 1))


def test_family_sum():
    fam = [P((2,)), P((1, 1)), P((1,))]
    assert family_sum(fam, [1, 2]) == P((3, 1))
    assert family_sum(fam, []) == EMPTY


# -- dominance ------------------------------------------------------------------

def test_dominance_examples():
    assert dominance(P((1, 1, 1)), P((3,))) is Order.LESS
    assert dominance(P((2, 2)), P((3, 1))) is Order.LESS
    assert dominance(P((3, 3)), P((4, 1, 1))) is Order.INCOMPARABLE
    assert dominance(P((3, 1)), P((2, 2))) is Order.GREATER
    assert dominance(P((2, 1)), P((2, 1))) is Order.EQUAL


def test_dominance_needs_equal_sizes():
    with pytest.raises(ValueError):
        dominance(P((2,)), P((1,)))


def test_extended_order():
    assert extended_preceq(P((5,)), P((1, 1, 1, 1, 1, 1))) is Order.LESS
    assert extended_preceq(P((2, 2)), P((3, 1))) is Order.LESS
    assert extended_preceq(EMPTY, P((1,))) is Order.LESS


@given(partitions_st, partitions_st)
def test_dominance_matches_partial_sums(a, b):
    if a.size != b.size:
        return
    n = max(len(a), len(b))
    pa = list(itertools.accumulate(a.padded(n)))
    pb = list(itertools.accumulate(b.padded(n)))
    le = all(x <= y for x, y in zip(pa, pb))
    ge = all(x >= y for x, y in zip(pa, pb))
    want = Order.EQUAL if le and ge else Order.LESS if le else Order.GREATER if ge else Order.INCOMPARABLE
    assert dominance(a, b) is want


# -- arm, leg, hooks ------------------------------------------------------------

def test_arm_leg_examples():
    assert (arm(P((2, 1)), Box(1, 1)), leg(P((2, 1)), Box(1, 1))) == (1, 1)
    assert (arm(P((1,)), Box(1, 1)), leg(P((1,)), Box(1, 1))) == (0, 0)
    assert (arm(P((4, 3, 1)), Box(2, 1)), leg(P((4, 3, 1)), Box(2, 1))) == (2, 1)


def test_box_outside_raises():
    with pytest.raises(ValueError):
        arm(P((2, 1)), Box(2, 2))
    with pytest.raises(ValueError):
        leg(P((1,)), Box(1, 2))


@given(partitions_st)
def test_arm_leg_by_counting(lam):
    cells = diagram(lam)
    for (i, j) in cells:
        b = Box(i, j)
        assert arm(lam, b) == sum(1 for (x, y) in cells if y == j and x > i)
        assert leg(lam, b) == sum(1 for (x, y) in cells if x == i and y > j)


def test_hook_poly_examples():
    assert hook_poly(P((1,))) == 1 - t.numerator
    assert hook_poly(P((2,))) == ((1 - q * t) * (1 - t)).numerator
    assert hook_poly(P((2, 1))) == ((1 - q * t * t) * (1 - t) ** 2).numerator
    assert hook_poly(EMPTY) == QTPoly(1)


@given(partitions_st)
def test_one_factor_per_box(lam):
    assert sum(hook_factors(lam).values()) == lam.size
    for (a, b) in hook_factors(lam):
        assert b >= 1 and a >= 0


# -- binomials and points -------------------------------------------------------

def test_partition_binomial_examples():
    assert partition_binomial(P((2, 1)), 1, 2) == QTPoly({(0, 1): 2, (0, 0): 1})
    assert partition_binomial(P((2,)), 2, 3) == QTPoly({(0, 2): 1})
    assert partition_binomial(EMPTY, 3, 2).is_zero()
    with pytest.raises(ValueError):
        partition_binomial(P((1, 1, 1)), 1, 2)


def test_tilde_point_examples():
    assert tilde_point(EMPTY, 3) == [t * t, t, QTRatio.from_int(1)]
    assert tilde_point(P((1,)), 2) == [q * t, QTRatio.from_int(1)]
    assert tilde_point(P((2, 1)), 2) == [q * q * t, q]
    with pytest.raises(ValueError):
        tilde_point(P((1, 1, 1)), 2)


# -- arms in entry-wise sums ------------------------------------------------------

def test_arm_split_single_diagram():
    lam = P((3, 2))
    for b in lam.boxes():
        assert arm_split([lam], 1, b, {1}) == {1: arm(lam, b)}


def test_arm_split_rejects_missing_index():
    with pytest.raises(ValueError):
        arm_split([P((1,)), P((1,))], 1, Box(1, 1), {2})


@pytest.mark.parametrize("fam", [[P((2, 1)), P((2,))], [P((1, 1)), P((1, 1))], [P((1,)), P((1,)), P((1,))]])
def test_arm_split_examples(fam):
    r = len(fam)
    for I in itertools.chain.from_iterable(itertools.combinations(range(1, r + 1), k) for k in range(1, r + 1)):
        for g in I:
            for b in fam[g - 1].boxes():
                assert sum(arm_split(fam, g, b, I).values()) == arm_in_sum(fam, g, b, I)


def test_equal_columns_later_diagram_counts():
    fam = [P((1, 1)), P((1, 1))]
    # the column of diagram 1 comes first; diagram 2's equal column is to its right
    assert arm_split(fam, 1, Box(1, 1), {1, 2}) == {1: 0, 2: 1}
    assert arm_split(fam, 2, Box(1, 1), {1, 2}) == {1: 0, 2: 0}


def _arm_sum_hook(fam, I):
    acc = QTPoly(1)
    for g in I:
        for b in fam[g - 1].boxes():
            a = sum(arm_split(fam, g, b, I).values())
            acc = acc * QTPoly({(0, 0): 1, (a, leg(fam[g - 1], b) + 1): -1})
    return acc


def test_arm_identity_and_hook_product_sweep():
    for r in (1, 2, 3):
        for fam in families(r, 6):
            for k in range(1, r + 1):
                for I in itertools.combinations(range(1, r + 1), k):
                    total = family_sum(fam, I)
                    for g in I:
                        for b in fam[g - 1].boxes():
                            split = sum(arm_split(fam, g, b, I).values())
                            assert split == arm_in_sum(fam, g, b, I)
                    assert _arm_sum_hook(fam, I) == hook_poly(total)


# -- enumeration ------------------------------------------------------------------

def test_enumeration_counts():
    assert enumerate_partitions(0) == [EMPTY]
    assert len(enumerate_partitions(4)) == 5
    assert len(enumerate_partitions(6)) == 11
    assert [len(enumerate_partitions(n)) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


@pytest.mark.parametrize("n", range(0, 7))
def test_enumeration_matches_brute_force(n):
    got = enumerate_partitions(n)
    assert len(got) == len(set(got))
    assert {tuple(p) for p in got} == brute_partitions(n)
    assert got == sorted(got, reverse=True)


def test_enumerate_up_to_is_by_size():
    sizes = [p.size for p in enumerate_up_to(5)]
    assert sizes == sorted(sizes)
    assert len(sizes) == 1 + 1 + 2 + 3 + 5 + 7


def test_families_and_multisets():
    fams = list(families(2, 3))
    assert all(sum(map(sum, f)) <= 3 and all(f) for f in fams)
    # sizes (1,1): 1, (1,2),(2,1): 2 each
    assert len(fams) == 5
    ms = list(multisets_of_partitions(2, 3))
    assert len(ms) == 3
