"""Symmetric functions with Q(q,t) coefficients in four bases.

Bases: monomial ``m``, power-sum ``p``, Schur ``s`` and plethystic Schur
``S*`` (the image of ``s`` under ``p_k -> (1 - t^k) p_k``).  Transition
matrices are rational except for the plethystic ones and are cached per
degree.
"""
from __future__ import annotations

import enum
import itertools
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .partitions import EMPTY, Partition, enumerate_partitions, parse_partition
from .qtalgebra import QTPoly, QTRatio

ZERO = QTRatio.from_int(0)
ONE = QTRatio.from_int(1)


class Basis(enum.Enum):
    MONOMIAL = "m"
    POWERSUM = "p"
    SCHUR = "s"
    PLETHYSTIC_SCHUR = "S*"

    def __str__(self) -> str:
        return self.value


class MixedBasisError(TypeError):
    pass


def _as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else Partition(p)


class SymFunc:
    """A finitely supported map Partition -> QTRatio tagged with a basis."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: Basis, coeffs: Mapping | None = None):
        self.basis = Basis(basis)
        out = {}
        for lam, c in (coeffs or {}).items():
            c = QTRatio.coerce(c)
            if c:
                out[_as_partition(lam)] = c
        self.coeffs: dict[Partition, QTRatio] = out

    @classmethod
    def _raw(cls, basis: Basis, coeffs: dict) -> "SymFunc":
        obj = object.__new__(cls)
        obj.basis = basis
        obj.coeffs = coeffs
        return obj

    @classmethod
    def single(cls, basis: Basis, lam, coeff=1) -> "SymFunc":
        return cls(basis, {_as_partition(lam): coeff})

    @classmethod
    def m(cls, *parts: int) -> "SymFunc":
        return cls.single(Basis.MONOMIAL, Partition(parts))

    @classmethod
    def p(cls, *parts: int) -> "SymFunc":
        return cls.single(Basis.POWERSUM, Partition(sorted(parts, reverse=True)))

    @classmethod
    def s(cls, *parts: int) -> "SymFunc":
        return cls.single(Basis.SCHUR, Partition(parts))

    @classmethod
    def zero(cls, basis: Basis = Basis.MONOMIAL) -> "SymFunc":
        return cls._raw(Basis(basis), {})

    @classmethod
    def one(cls, basis: Basis = Basis.MONOMIAL) -> "SymFunc":
        return cls._raw(Basis(basis), {EMPTY: ONE})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, lam) -> QTRatio:
        return self.coeffs.get(_as_partition(lam), ZERO)

    def support(self) -> list[Partition]:
        return sorted(self.coeffs, key=lambda p: (-sum(p), tuple(-x for x in p)))

    def degree(self) -> int:
        return max((sum(p) for p in self.coeffs), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(p) for p in self.coeffs}) <= 1

    def _check(self, other: "SymFunc") -> None:
        if self.basis is not other.basis:
            raise MixedBasisError(f"cannot combine bases {self.basis} and {other.basis}")

    def __eq__(self, other) -> bool:
        if isinstance(other, SymFunc):
            return self.basis is other.basis and self.coeffs == other.coeffs
        if isinstance(other, (int, QTRatio, QTPoly, Fraction)):
            return self == SymFunc(self.basis, {EMPTY: other})
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.basis, frozenset(self.coeffs.items())))

    def __add__(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc(self.basis, {EMPTY: other})
        self._check(other)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            v = out.get(lam)
            v = c if v is None else v + c
            if v:
                out[lam] = v
            else:
                out.pop(lam, None)
        return SymFunc._raw(self.basis, out)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc._raw(self.basis, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc(self.basis, {EMPTY: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SymFunc":
        c = QTRatio.coerce(c)
        if not c:
            return SymFunc._raw(self.basis, {})
        return SymFunc._raw(self.basis, {k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def map_coeffs(self, fn: Callable[[QTRatio], QTRatio]) -> "SymFunc":
        out = {}
        for k, v in self.coeffs.items():
            w = fn(v)
            if w:
                out[k] = w
        return SymFunc._raw(self.basis, out)

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        letter = self.basis.value
        return " + ".join(f"({self.coeffs[p].to_text()}) {letter}[{p.to_text()}]" for p in self.support())

    def __repr__(self) -> str:
        return f"SymFunc({self.to_text()})"

    __str__ = to_text


def parse_symfunc(text: str) -> SymFunc:
    """Inverse of ``SymFunc.to_text``."""
    import re
    from .qtalgebra import parse_qt
    text = text.strip()
    if text == "0":
        return SymFunc.zero()
    terms = re.findall(r"\(([^()]*(?:\([^()]*\)[^()]*)*)\)\s*(S\*|[mps])\[([^\]]*)\]", text)
    if not terms:
        raise ValueError(f"cannot parse symmetric function {text!r}")
    basis = Basis(terms[0][1])
    out: dict = {}
    for coeff, letter, lam in terms:
        if Basis(letter) is not basis:
            raise MixedBasisError("mixed bases in text")
        p = parse_partition(lam)
        out[p] = out.get(p, ZERO) + parse_qt(coeff)
    return SymFunc(basis, out)


# ---------------------------------------------------------------------------
# monomial products
# ---------------------------------------------------------------------------

def distinct_permutations(vec: Sequence[int]) -> list[tuple]:
    """Distinct rearrangements of vec, in lexicographic order."""
    items = sorted(vec)
    out = []
    n = len(items)

    def rec(prefix: list, pool: list):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        prev = None
        for k, x in enumerate(pool):
            if x == prev:
                continue
            prev = x
            rec(prefix + [x], pool[:k] + pool[k + 1:])

    rec([], items)
    return out


@lru_cache(maxsize=None)
def monomial_product(a: tuple, b: tuple) -> tuple:
    """m_a m_b as ((nu, coefficient), ...), expanding in len(a) + len(b)
    variables, which is enough to see every monomial of the product."""
    if not a or not b:
        return ((Partition._trusted(tuple(a or b)), 1),)
    n_vars = len(a) + len(b)
    A = tuple(a) + (0,) * (n_vars - len(a))
    B = tuple(sorted(tuple(b) + (0,) * (n_vars - len(b)), reverse=True))
    perms_a = distinct_permutations(A)
    out = []
    for nu in enumerate_partitions(sum(a) + sum(b)):
        if len(nu) > n_vars:
            continue
        v = tuple(nu) + (0,) * (n_vars - len(nu))
        count = 0
        for alpha in perms_a:
            diff = [x - y for x, y in zip(v, alpha)]
            if min(diff) >= 0 and tuple(sorted(diff, reverse=True)) == B:
                count += 1
        if count:
            out.append((nu, count))
    return tuple(out)


def multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    f._check(g)
    if f.basis is Basis.MONOMIAL:
        acc: dict = {}
        for a, ca in f.coeffs.items():
            for b, cb in g.coeffs.items():
                c = ca * cb
                for nu, k in monomial_product(tuple(a), tuple(b)):
                    acc.setdefault(nu, []).append(c * k if k != 1 else c)
        return SymFunc._raw(Basis.MONOMIAL, _sum_lists(acc))
    if f.basis is Basis.POWERSUM:
        acc = {}
        for a, ca in f.coeffs.items():
            for b, cb in g.coeffs.items():
                nu = Partition._trusted(tuple(sorted(a + b, reverse=True)))
                acc.setdefault(nu, []).append(ca * cb)
        return SymFunc._raw(Basis.POWERSUM, _sum_lists(acc))
    pf = change_basis(f, Basis.POWERSUM)
    pg = change_basis(g, Basis.POWERSUM)
    return change_basis(multiply(pf, pg), f.basis)


def _sum_lists(acc: Mapping) -> dict:
    out = {}
    for k, vals in acc.items():
        v = sum_qt(vals)
        if v:
            out[k] = v
    return out


def sum_qt(vals: Iterable[QTRatio]) -> QTRatio:
    """Sum of QTRatios, grouping equal denominators to save gcds."""
    groups: dict = {}
    for v in vals:
        key = frozenset(v.den.items())
        groups.setdefault(key, []).append(v)
    total = ZERO
    for grp in groups.values():
        if len(grp) == 1:
            total = total + grp[0]
            continue
        num: dict = {}
        for v in grp:
            for k, c in v.num.items():
                num[k] = num.get(k, 0) + c
        num = {k: c for k, c in num.items() if c}
        total = total + QTRatio(num, grp[0].den)
    return total


# ---------------------------------------------------------------------------
# rational transition matrices
# ---------------------------------------------------------------------------

_lock = threading.Lock()


def _p_in_m_row(rho: Partition) -> dict[Partition, int]:
    """p_rho = sum_lam R[rho][lam] m_lam: count ways to place the parts of
    rho into bins with sizes given by lam."""
    n = sum(rho)
    out = {}
    for lam in enumerate_partitions(n):
        if len(lam) > len(rho):
            continue
        out_count = _count_fillings(tuple(rho), tuple(lam))
        if out_count:
            out[lam] = out_count
    return out


@lru_cache(maxsize=None)
def _count_fillings(parts: tuple, bins: tuple) -> int:
    if not parts:
        return 1 if not any(bins) else 0
    head, rest = parts[0], parts[1:]
    total = 0
    for k, cap in enumerate(bins):
        if cap >= head:
            nb = list(bins)
            nb[k] -= head
            total += _count_fillings(rest, tuple(nb))
    return total


def _invert_rational(rows: dict, order: list) -> dict:
    """Inverse of a square matrix given as {row: {col: Fraction}}."""
    n = len(order)
    idx = {p: k for k, p in enumerate(order)}
    M = [[Fraction(0)] * n + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for r, row in rows.items():
        for c, v in row.items():
            M[idx[r]][idx[c]] = Fraction(v)
    for col in range(n):
        piv = next(k for k in range(col, n) if M[k][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for k in range(n):
            if k != col and M[k][col] != 0:
                f = M[k][col]
                M[k] = [x - f * y for x, y in zip(M[k], M[col])]
    # rows of the inverse: for basis element c, its expansion
    return {order[i]: {order[j]: M[i][n + j] for j in range(n) if M[i][n + j] != 0} for i in range(n)}


class _Tables:
    """Rational transition matrices for one degree."""

    def __init__(self, n: int):
        parts = enumerate_partitions(n)
        self.parts = parts
        # p_rho in m
        self.p_to_m = {rho: {k: Fraction(v) for k, v in _p_in_m_row(rho).items()} for rho in parts}
        self.m_to_p = _transpose_inverse(self.p_to_m, parts)
        # s_lam in p via Jacobi-Trudi
        self.s_to_p = {lam: _jacobi_trudi(lam) for lam in parts}
        self.p_to_s = _transpose_inverse(self.s_to_p, parts)
        self.s_to_m = _compose(self.s_to_p, self.p_to_m)
        self.m_to_s = _compose(self.m_to_p, self.p_to_s)


def _transpose_inverse(rows: dict, order: list) -> dict:
    """Given b_i = sum_j A[i][j] c_j, return c_j = sum_i Inv[j][i] b_i."""
    # as matrices: b = A c  =>  c = A^{-1} b
    return _invert_rational(rows, order)


def _compose(ab: dict, bc: dict) -> dict:
    out = {}
    for x, row in ab.items():
        acc: dict = {}
        for y, v in row.items():
            for z, w in bc[y].items():
                acc[z] = acc.get(z, 0) + v * w
        out[x] = {z: v for z, v in acc.items() if v}
    return out


@lru_cache(maxsize=None)
def _h_in_p(n: int) -> dict:
    """h_n = sum_{rho |- n} p_rho / z_rho."""
    return {rho: Fraction(1, rho.z()) for rho in enumerate_partitions(n)}


def _p_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for x, u in a.items():
        for y, v in b.items():
            k = Partition._trusted(tuple(sorted(x + y, reverse=True)))
            out[k] = out.get(k, 0) + u * v
    return {k: v for k, v in out.items() if v}


def _jacobi_trudi(lam: Partition) -> dict:
    """s_lam = det(h_{lam_i - i + j}) expanded in power sums."""
    n = len(lam)
    if n == 0:
        return {EMPTY: Fraction(1)}
    total: dict = {}
    for perm in itertools.permutations(range(n)):
        degs = [lam[i] - i + perm[i] for i in range(n)]
        if min(degs) < 0:
            continue
        sign = _perm_sign(perm)
        term = {EMPTY: Fraction(sign)}
        for d in degs:
            if d:
                term = _p_mul(term, _h_in_p(d))
        for k, v in term.items():
            total[k] = total.get(k, 0) + v
    return {k: v for k, v in total.items() if v}


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


_TABLES: dict[int, _Tables] = {}


def tables(n: int) -> _Tables:
    tab = _TABLES.get(n)
    if tab is None:
        with _lock:
            tab = _TABLES.get(n)
            if tab is None:
                tab = _TABLES[n] = _Tables(n)
    return tab


def kostka_number(lam: Partition, mu: Partition) -> int:
    """Classical Kostka number K_{lam, mu}: coefficient of m_mu in s_lam."""
    v = tables(sum(lam)).s_to_m[lam].get(mu, 0)
    assert v.denominator == 1
    return int(v)


@lru_cache(maxsize=None)
def _pleth_factor(rho: Partition) -> QTRatio:
    """prod (1 - t^rho_i)."""
    out = QTPoly(1)
    for k in rho:
        out = out * QTPoly({(0, 0): 1, (0, k): -1})
    return QTRatio.from_poly(out)


def _apply_rows(f: SymFunc, rows_for_degree: Callable[[int], dict], target: Basis) -> SymFunc:
    acc: dict = {}
    for lam, c in f.coeffs.items():
        for mu, v in rows_for_degree(sum(lam))[lam].items():
            acc.setdefault(mu, []).append(c * _coerce_scalar(v))
    return SymFunc._raw(target, _sum_lists(acc))


def _coerce_scalar(v) -> QTRatio:
    if isinstance(v, QTRatio):
        return v
    return QTRatio.from_fraction(v) if isinstance(v, Fraction) else QTRatio.from_int(v)


def _to_powersum(f: SymFunc) -> SymFunc:
    b = f.basis
    if b is Basis.POWERSUM:
        return f
    if b is Basis.MONOMIAL:
        return _apply_rows(f, lambda n: tables(n).m_to_p, Basis.POWERSUM)
    if b is Basis.SCHUR:
        return _apply_rows(f, lambda n: tables(n).s_to_p, Basis.POWERSUM)
    # plethystic Schur: s_lam in p, then p_rho -> prod(1 - t^rho_i) p_rho
    acc: dict = {}
    for lam, c in f.coeffs.items():
        for rho, v in tables(sum(lam)).s_to_p[lam].items():
            acc.setdefault(rho, []).append(c * _coerce_scalar(v) * _pleth_factor(rho))
    return SymFunc._raw(Basis.POWERSUM, _sum_lists(acc))


def _from_powersum(f: SymFunc, target: Basis) -> SymFunc:
    if target is Basis.POWERSUM:
        return f
    if target is Basis.MONOMIAL:
        return _apply_rows(f, lambda n: tables(n).p_to_m, Basis.MONOMIAL)
    if target is Basis.SCHUR:
        return _apply_rows(f, lambda n: tables(n).p_to_s, Basis.SCHUR)
    # p_rho = sum_lam chi^lam(rho) / prod(1 - t^rho_i) s_lam[X(1-t)]
    acc: dict = {}
    for rho, c in f.coeffs.items():
        scale = c / _pleth_factor(rho)
        for lam, v in tables(sum(rho)).p_to_s[rho].items():
            acc.setdefault(lam, []).append(scale * _coerce_scalar(v))
    return SymFunc._raw(Basis.PLETHYSTIC_SCHUR, _sum_lists(acc))


def change_basis(f: SymFunc, target: Basis) -> SymFunc:
    target = Basis(target)
    if f.basis is target:
        return f
    if {f.basis, target} == {Basis.MONOMIAL, Basis.SCHUR}:
        rows = (lambda n: tables(n).s_to_m) if f.basis is Basis.SCHUR else (lambda n: tables(n).m_to_s)
        return _apply_rows(f, rows, target)
    return _from_powersum(_to_powersum(f), target)


def plethysm_one_minus_t(f: SymFunc) -> SymFunc:
    """Image under the ring map p_k -> (1 - t^k) p_k, in the input basis."""
    if f.basis is Basis.SCHUR:
        return change_basis(SymFunc._raw(Basis.PLETHYSTIC_SCHUR, dict(f.coeffs)), Basis.SCHUR)
    pf = _to_powersum(f)
    out = SymFunc._raw(Basis.POWERSUM, {rho: c * _pleth_factor(rho) for rho, c in pf.coeffs.items()})
    return _from_powersum(out, f.basis)


def expand_in_plethystic_schur(f: SymFunc, n: int | None = None) -> SymFunc:
    """Coefficients c_mu with f = sum_mu c_mu s_mu[X(1-t)]."""
    degs = {sum(p) for p in f.coeffs}
    if n is not None and degs - {n}:
        raise ValueError(f"expected a homogeneous function of degree {n}, got degrees {sorted(degs)}")
    return change_basis(f, Basis.PLETHYSTIC_SCHUR)


# ---------------------------------------------------------------------------
# evaluation and truncation
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _padded_perms(lam: tuple, N: int) -> tuple:
    if len(lam) > N:
        return ()
    return tuple(distinct_permutations(tuple(lam) + (0,) * (N - len(lam))))


def monomial_at_exponent_point(lam: Partition, point: Sequence[tuple[int, int]]) -> QTPoly:
    """m_lam at a point whose coordinates are monomials q^a t^b."""
    terms: dict = {}
    for alpha in _padded_perms(tuple(lam), len(point)):
        a = b = 0
        for e, (x, y) in zip(alpha, point):
            if e:
                a += e * x
                b += e * y
        terms[(a, b)] = terms.get((a, b), 0) + 1
    return QTPoly(terms)


def _monomial_exponents(x: QTRatio) -> tuple[int, int] | None:
    if len(x.num) == 1 and x.den == {(0, 0): 1}:
        ((k, c),) = x.num.items()
        if c == 1:
            return k
    if len(x.den) == 1 and x.num == {(0, 0): 1}:
        ((k, c),) = x.den.items()
        if c == 1:
            return (-k[0], -k[1])
    return None


def evaluate(f: SymFunc, point: Sequence) -> QTRatio:
    """Substitute x_i = point[i] into a monomial-basis symmetric function."""
    if f.basis is not Basis.MONOMIAL:
        raise MixedBasisError("evaluate expects the monomial basis")
    pt = [QTRatio.coerce(x) for x in point]
    exps = [_monomial_exponents(x) for x in pt]
    if all(e is not None for e in exps):
        vals = [c * QTRatio.from_poly(monomial_at_exponent_point(lam, exps)) for lam, c in f.coeffs.items()]
        return sum_qt(vals)
    powers: dict = {}

    def pw(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = pt[i] ** e
        return powers[key]

    vals = []
    for lam, c in f.coeffs.items():
        for alpha in _padded_perms(tuple(lam), len(pt)):
            term = c
            for i, e in enumerate(alpha):
                if e:
                    term = term * pw(i, e)
            vals.append(term)
    return sum_qt(vals)


def top_degree_part(f: SymFunc) -> SymFunc:
    if f.basis is not Basis.MONOMIAL:
        raise MixedBasisError("top_degree_part expects the monomial basis")
    d = f.degree()
    return SymFunc._raw(f.basis, {k: v for k, v in f.coeffs.items() if sum(k) == d})


def homogeneous_part(f: SymFunc, d: int) -> SymFunc:
    return SymFunc._raw(f.basis, {k: v for k, v in f.coeffs.items() if sum(k) == d})
