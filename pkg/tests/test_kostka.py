import math

import pytest

from qtmac.cumulants import full, kappa, macdonald_family
from qtmac.kostka import KostkaTable, audit, flags_of, multivariate_kostka, reexpand
from qtmac.macdonald import J
from qtmac.partitions import Partition, enumerate_partitions, families
from qtmac.qtalgebra import QTRatio, q, t
from qtmac.symfunc import expand_in_plethystic_schur

P = Partition
one = QTRatio.from_int(1)


def standard_tableaux(mu):
    """f^mu from the hook length formula."""
    n = sum(mu)
    conj = mu.conjugate()
    hooks = 1
    for j, row in enumerate(mu):
        for i in range(row):
            hooks *= (row - i - 1) + (conj[i] - j - 1) + 1
    return math.factorial(n) // hooks


def swap(x):
    return QTRatio({(b, a): c for (a, b), c in x.num.items()}, {(b, a): c for (a, b), c in x.den.items()})


# -- pinned values ----------------------------------------------------------------

def test_pinned_values():
    k2 = multivariate_kostka([P((2,))])
    assert k2[P((1, 1))] == q
    assert k2[P((2,))] == 1
    k11 = multivariate_kostka([P((1,)), P((1,))])
    assert k11[P((1, 1))] == 1
    assert k11[P((2,))] == 0


def test_more_values():
    assert multivariate_kostka([P((1,))])[P((1,))] == 1
    k21 = multivariate_kostka([P((2, 1))])
    assert (k21[P((3,))], k21[P((2, 1))], k21[P((1, 1, 1))]) == (t, 1 + q * t, q)
    k = multivariate_kostka([P((2,)), P((1,))])
    assert (k[P((3,))], k[P((2, 1))], k[P((1, 1, 1))]) == (0, 1 + q, q + q * q)


# -- one partition: classical q,t-Kostka --------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_single_partition_specialises_to_tableaux_count(n):
    for lam in enumerate_partitions(n):
        table = multivariate_kostka([lam])
        for mu in enumerate_partitions(n):
            assert table[mu].subs(q=1, t=1) == standard_tableaux(mu)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_single_partition_duality(n):
    # K_{mu, lam}(q, t) = K_{mu', lam'}(t, q)
    tables = {lam: multivariate_kostka([lam]) for lam in enumerate_partitions(n)}
    for lam, table in tables.items():
        dual = tables[lam.conjugate()]
        for mu in enumerate_partitions(n):
            assert table[mu] == swap(dual[mu.conjugate()])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_single_partition_is_plain_expansion(n):
    for lam in enumerate_partitions(n):
        want = expand_in_plethystic_schur(J(lam), n)
        assert multivariate_kostka([lam]).to_symfunc() == want


# -- re-expansion and audit ------------------------------------------------------

@pytest.mark.parametrize("fam", list(families(2, 4)))
def test_reexpansion_gives_the_cumulant(fam):
    table = multivariate_kostka(fam)
    k = kappa(macdonald_family("J", fam).values, full(2))
    assert reexpand(table) == k


@pytest.mark.parametrize("fam", list(families(2, 5)) + list(families(3, 4)))
def test_audit_integral(fam):
    a = audit(multivariate_kostka(fam))
    assert a.integrality_ok, a.line()
    assert a.line().startswith("PASS")


def test_flags():
    f = flags_of(1 + q)
    assert (f.polynomial, f.integer, f.nonnegative) == (True, True, True)
    f = flags_of(q - 1)
    assert (f.polynomial, f.integer, f.nonnegative) == (True, True, False)
    f = flags_of(q / 2)
    assert (f.polynomial, f.integer, f.nonnegative) == (True, False, False)
    f = flags_of(one / (1 - q))
    assert (f.polynomial, f.integer, f.nonnegative) == (False, False, False)
    f = flags_of(one / t)
    assert not f.polynomial


def test_table_order_is_canonical():
    a = multivariate_kostka([P((2,)), P((1,))])
    b = KostkaTable(a.family, dict(reversed(list(a.entries.items()))))
    assert list(a.entries) == list(b.entries)
    assert a.rows()[0][0] == "3"
