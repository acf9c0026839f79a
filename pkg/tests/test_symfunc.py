import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qtmac.partitions import Partition, enumerate_partitions, enumerate_up_to
from qtmac.qtalgebra import QTRatio, q, t
from qtmac.symfunc import (
    Basis,
    MixedBasisError,
    SymFunc,
    change_basis,
    distinct_permutations,
    evaluate,
    expand_in_plethystic_schur,
    multiply,
    parse_symfunc,
    plethysm_one_minus_t,
    top_degree_part,
)

P = Partition
m, p, s = SymFunc.m, SymFunc.p, SymFunc.s
one = QTRatio.from_int(1)


def m_in_vars(lam, xs):
    """m_lam as a sympy expression in the given variables (oracle)."""
    vec = tuple(lam) + (0,) * (len(xs) - len(lam))
    return sum(sympy.Mul(*[x**e for x, e in zip(xs, perm)]) for perm in set(itertools.permutations(vec)))


def test_basic_products():
    assert multiply(m(1), m(1)) == m(2) + m(1, 1).scale(2)
    assert multiply(p(2, 1), p(3)) == p(3, 2, 1)
    assert multiply(m(2), m(1)) == m(3) + m(2, 1)


def test_mixed_basis_rejected():
    with pytest.raises(MixedBasisError):
        m(1) + p(1)
    with pytest.raises(MixedBasisError):
        multiply(m(1), s(1))


def test_no_zero_coefficients_stored():
    f = m(2) - m(2)
    assert f.is_zero() and not f.coeffs


@pytest.mark.parametrize("a,b", [((2, 1), (1,)), ((1, 1), (1, 1)), ((3,), (2, 1)), ((2,), (2,)), ((), (2,))])
def test_monomial_product_against_polynomial_expansion(a, b):
    n = sum(a) + sum(b)
    xs = sympy.symbols(f"x1:{n + 1}")
    prod = multiply(SymFunc.single(Basis.MONOMIAL, P(a)), SymFunc.single(Basis.MONOMIAL, P(b)))
    want = sympy.expand(m_in_vars(a, xs) * m_in_vars(b, xs))
    got = sum(int(c.to_fraction()) * m_in_vars(nu, xs) for nu, c in prod.coeffs.items())
    assert sympy.expand(got - want) == 0


@pytest.mark.parametrize("a,b", [((2, 1), (1,)), ((1, 1), (2,)), ((3,), (1, 1))])
def test_monomial_product_triangular(a, b):
    from qtmac.partitions import Order, dominance, oplus

    prod = multiply(SymFunc.single(Basis.MONOMIAL, P(a)), SymFunc.single(Basis.MONOMIAL, P(b)))
    top = oplus(P(a), P(b))
    assert prod[top] == one
    assert all(dominance(nu, top) in (Order.LESS, Order.EQUAL) for nu in prod.coeffs)


def test_change_basis_examples():
    assert change_basis(p(1), Basis.MONOMIAL) == m(1)
    assert change_basis(p(1), Basis.SCHUR) == s(1)
    assert change_basis(s(2), Basis.MONOMIAL) == m(2) + m(1, 1)
    assert change_basis(s(1, 1), Basis.MONOMIAL) == m(1, 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_change_basis_round_trips(n):
    for lam in enumerate_partitions(n):
        for b1, b2 in itertools.permutations(list(Basis), 2):
            f = SymFunc.single(b1, lam)
            assert change_basis(change_basis(f, b2), b1) == f


def test_plethysm_examples():
    assert plethysm_one_minus_t(p(1)) == p(1).scale(1 - t)
    s2 = change_basis(plethysm_one_minus_t(s(2)), Basis.MONOMIAL)
    assert s2 == m(2).scale(1 - t) + m(1, 1).scale((1 - t) ** 2)
    s11 = change_basis(plethysm_one_minus_t(s(1, 1)), Basis.MONOMIAL)
    assert s11 == m(2).scale(-t * (1 - t)) + m(1, 1).scale((1 - t) ** 2)


def test_plethystic_schur_basis_element_matches_plethysm():
    for lam in enumerate_up_to(4):
        if not lam:
            continue
        a = change_basis(SymFunc.single(Basis.PLETHYSTIC_SCHUR, lam), Basis.MONOMIAL)
        b = change_basis(plethysm_one_minus_t(SymFunc.single(Basis.SCHUR, lam)), Basis.MONOMIAL)
        assert a == b


def test_expand_in_plethystic_schur_examples():
    s2 = SymFunc.single(Basis.PLETHYSTIC_SCHUR, P((2,)))
    assert expand_in_plethystic_schur(change_basis(s2, Basis.MONOMIAL), 2) == s2
    assert expand_in_plethystic_schur(p(1).scale(1 - t), 1) == SymFunc.single(Basis.PLETHYSTIC_SCHUR, P((1,)))
    f = m(1, 1).scale((1 - t) ** 2) + m(2).scale(-t * (1 - t))
    assert expand_in_plethystic_schur(f, 2) == SymFunc.single(Basis.PLETHYSTIC_SCHUR, P((1, 1)))
    with pytest.raises(ValueError):
        expand_in_plethystic_schur(m(2) + m(1), 2)


small_coeffs = st.sampled_from([one, q, t, 1 - t, q * t - 2, one * 3])


@st.composite
def homogeneous(draw, basis, n):
    lams = enumerate_partitions(n)
    picks = draw(st.lists(st.sampled_from(lams), min_size=1, max_size=3, unique=True))
    return SymFunc(basis, {lam: draw(small_coeffs) for lam in picks})


@settings(max_examples=25)
@given(st.integers(1, 6).flatmap(lambda n: homogeneous(Basis.PLETHYSTIC_SCHUR, n)))
def test_plethystic_expansion_inverts_construction(f):
    assert expand_in_plethystic_schur(change_basis(f, Basis.MONOMIAL)) == f


@settings(max_examples=25)
@given(st.integers(1, 2).flatmap(lambda n: homogeneous(Basis.MONOMIAL, n)),
       st.integers(1, 2).flatmap(lambda n: homogeneous(Basis.MONOMIAL, n)))
def test_plethysm_is_multiplicative(f, g):
    lhs = plethysm_one_minus_t(multiply(f, g))
    rhs = multiply(plethysm_one_minus_t(f), plethysm_one_minus_t(g))
    assert lhs == rhs


def test_evaluate_examples():
    assert evaluate(m(1), [t, one]) == t + 1
    a, b = q + 2, t * 3
    assert evaluate(m(1, 1), [a, b]) == a * b
    assert evaluate(m(2, 1), [a, b]) == a * a * b + a * b * b
    assert evaluate(m(1, 1, 1), [a, b]) == 0


points = st.lists(st.sampled_from([one, q, t, q * t, t * t, one * 2]), min_size=1, max_size=3)


@settings(max_examples=30)
@given(st.integers(1, 3).flatmap(lambda n: homogeneous(Basis.MONOMIAL, n)),
       st.integers(1, 2).flatmap(lambda n: homogeneous(Basis.MONOMIAL, n)), points)
def test_evaluate_multiplicative(f, g, pt):
    assert evaluate(multiply(f, g), pt) == evaluate(f, pt) * evaluate(g, pt)


def test_top_degree_part():
    f = m(1).scale(1 - t) + SymFunc.single(Basis.MONOMIAL, P(())).scale(t * t - 1)
    assert top_degree_part(f) == m(1).scale(1 - t)
    assert top_degree_part(m(2) + m(1, 1)) == m(2) + m(1, 1)
    assert top_degree_part(SymFunc.zero()).is_zero()


def test_text_round_trip():
    f = m(2).scale(1 - t) + m(1, 1).scale((1 - t) ** 2)
    assert f.to_text() == "(1 - t) m[2] + (1 - 2*t + t^2) m[1,1]"
    assert parse_symfunc(f.to_text()) == f


def test_distinct_permutations():
    assert sorted(distinct_permutations((1, 1, 0))) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
