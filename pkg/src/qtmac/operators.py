"""Polynomials in x_1..x_N over Q(q,t) and the operators E and D.

With ``A_i = prod_{j != i} (t x_i - x_j) / (x_i - x_j)`` and ``T_i`` the
q-shift of ``x_i``:

* ``E = sum_i A_i T_i``;
* ``D = sum_i A_i (1 - 1/x_i) (T_i - 1)``;
* ``D_j = sum_i A_i (x_i^j - x_i^(j-1)) d^j/dx_i^j``.

For any operators ``O_i`` acting on ``x_i`` alone,
``sum_i A_i O_i = a_delta^-1 sum_w sgn(w) x^(w delta) sum_i t^((w delta)_i) O_i``.
On ``m_lam`` this collapses to a signed sum of antisymmetrized monomials
``a_(beta + delta) / a_delta``, which straighten to Schur polynomials.
The action on the monomial basis is therefore exact with entries in Z[q,t].
A direct route that divides by the Vandermonde product is kept as an
independent oracle.
"""
from __future__ import annotations

import itertools
import math
import threading
from typing import Callable, Iterable, Mapping, Sequence

from .partitions import Partition, enumerate_partitions
from .qtalgebra import QTPoly, QTRatio
from .symfunc import Basis, SymFunc, distinct_permutations, sum_qt, tables

ZERO = QTRatio.from_int(0)


class NotSymmetric(ValueError):
    pass


class NVarPoly:
    """A polynomial in N variables: {exponent vector: QTRatio}."""

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms: Mapping | None = None):
        self.N = N
        out = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != N or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e} for N={N}")
            c = QTRatio.coerce(c)
            if c:
                out[e] = out[e] + c if e in out else c
        self.terms: dict[tuple, QTRatio] = {e: c for e, c in out.items() if c}

    @classmethod
    def _raw(cls, N: int, terms: dict) -> "NVarPoly":
        obj = object.__new__(cls)
        obj.N = N
        obj.terms = terms
        return obj

    @classmethod
    def from_symfunc(cls, f: SymFunc, N: int) -> "NVarPoly":
        if f.basis is not Basis.MONOMIAL:
            raise ValueError("expected the monomial basis")
        terms = {}
        for lam, c in f.coeffs.items():
            if len(lam) > N:
                continue
            for alpha in distinct_permutations(tuple(lam) + (0,) * (N - len(lam))):
                terms[alpha] = c
        return cls._raw(N, terms)

    @classmethod
    def variable(cls, N: int, i: int) -> "NVarPoly":
        e = [0] * N
        e[i] = 1
        return cls._raw(N, {tuple(e): QTRatio.from_int(1)})

    @classmethod
    def constant(cls, N: int, c) -> "NVarPoly":
        return cls(N, {(0,) * N: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, NVarPoly) and self.N == other.N and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.N, frozenset(self.terms.items())))

    def __add__(self, other: "NVarPoly") -> "NVarPoly":
        return _combine(self, other, 1)

    def __sub__(self, other: "NVarPoly") -> "NVarPoly":
        return _combine(self, other, -1)

    def __neg__(self) -> "NVarPoly":
        return NVarPoly._raw(self.N, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, NVarPoly):
            if other.N != self.N:
                raise ValueError("variable counts differ")
            acc: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    acc.setdefault(e, []).append(c1 * c2)
            return NVarPoly._raw(self.N, _collect(acc))
        c = QTRatio.coerce(other)
        if not c:
            return NVarPoly._raw(self.N, {})
        return NVarPoly._raw(self.N, {e: v * c for e, v in self.terms.items()})

    __rmul__ = __mul__

    def permute(self, perm: Sequence[int]) -> "NVarPoly":
        """Rename x_i -> x_perm[i]."""
        out = {}
        for e, c in self.terms.items():
            new = [0] * self.N
            for i, k in enumerate(perm):
                new[k] = e[i]
            out[tuple(new)] = c
        return NVarPoly._raw(self.N, out)

    def is_symmetric(self) -> bool:
        for e, c in self.terms.items():
            s = tuple(sorted(e, reverse=True))
            if self.terms.get(s) != c:
                return False
        # every rearrangement of a dominant exponent must be present
        return all(self.terms.get(a) == c for s, c in self.terms.items()
                   if list(s) == sorted(s, reverse=True)
                   for a in distinct_permutations(s))

    def to_symfunc(self) -> SymFunc:
        if not self.is_symmetric():
            raise NotSymmetric("polynomial is not symmetric")
        out = {}
        for e, c in self.terms.items():
            if list(e) == sorted(e, reverse=True):
                out[Partition(e)] = c
        return SymFunc(Basis.MONOMIAL, out)

    def derivative(self, i: int, order: int = 1) -> "NVarPoly":
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k >= order:
                new = list(e)
                new[i] = k - order
                out[tuple(new)] = c * (math.factorial(k) // math.factorial(k - order))
        return NVarPoly._raw(self.N, out)

    def q_shift(self, i: int) -> "NVarPoly":
        """T_{q, x_i}: x_i -> q x_i."""
        return NVarPoly._raw(self.N, {e: c * QTRatio.monomial(e[i], 0) if e[i] else c
                                      for e, c in self.terms.items()})

    def times_monomial(self, e: Sequence[int], c=1) -> "NVarPoly":
        c = QTRatio.coerce(c)
        return NVarPoly._raw(self.N, {tuple(x + y for x, y in zip(k, e)): v * c for k, v in self.terms.items()})

    def map_coeffs(self, fn: Callable[[QTRatio], QTRatio]) -> "NVarPoly":
        out = {}
        for e, c in self.terms.items():
            w = fn(c)
            if w:
                out[e] = w
        return NVarPoly._raw(self.N, out)

    def __repr__(self) -> str:
        body = " + ".join(f"({c.to_text()})*x^{list(e)}" for e, c in sorted(self.terms.items(), reverse=True))
        return f"NVarPoly[{self.N}]({body or '0'})"


def _combine(a: NVarPoly, b: NVarPoly, sign: int) -> NVarPoly:
    if a.N != b.N:
        raise ValueError("variable counts differ")
    out = dict(a.terms)
    for e, c in b.terms.items():
        v = out.get(e)
        v = (c if sign > 0 else -c) if v is None else (v + c if sign > 0 else v - c)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return NVarPoly._raw(a.N, out)


def _collect(acc: Mapping) -> dict:
    out = {}
    for k, vals in acc.items():
        v = sum_qt(vals)
        if v:
            out[k] = v
    return out


# ---------------------------------------------------------------------------
# action on the monomial basis through straightened alternants
# ---------------------------------------------------------------------------

def _straighten(v: Sequence[int], N: int) -> tuple[int, Partition] | None:
    """a_{v} / a_delta = sign * s_mu for v = beta + delta; None if zero."""
    if len(set(v)) < len(v):
        return None
    order = sorted(range(N), key=lambda k: -v[k])
    # sign of the sorting permutation
    sign = 1
    seen = [False] * N
    for i in range(N):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = order[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    srt = [v[k] for k in order]
    mu = Partition(tuple(srt[i] - (N - 1 - i) for i in range(N)))
    return sign, mu


def _schur_in_n_vars(mu: Partition, N: int) -> dict[Partition, int]:
    """s_mu(x_1..x_N) in monomials (Kostka numbers, length <= N)."""
    if not mu:
        return {mu: 1}
    row = tables(sum(mu)).s_to_m[mu]
    out = {}
    for nu, v in row.items():
        if len(nu) <= N:
            assert v.denominator == 1
            out[nu] = int(v)
    return out


def _add_term(acc: dict, nu: Partition, key: tuple, c: int) -> None:
    row = acc.setdefault(nu, {})
    v = row.get(key, 0) + c
    if v:
        row[key] = v
    else:
        row.pop(key, None)


def _alternant_sum(lam: Partition, N: int, weight: Callable[[tuple, int], Iterable[tuple[tuple, int, int]]]) -> dict:
    """Sum over beta in S_N lam of weight terms (key, shift k, c) meaning
    c * q^key[0] t^key[1] * a_{beta + delta - shift} / a_delta, where the
    shift subtracts e_k when k >= 0.  Returns {nu: QTPoly}."""
    delta = tuple(range(N - 1, -1, -1))
    acc: dict = {}
    for beta in distinct_permutations(tuple(lam) + (0,) * (N - len(lam))):
        base = [b + d for b, d in zip(beta, delta)]
        for key, k, c in weight(beta, N):
            v = list(base)
            if k >= 0:
                v[k] -= 1
            st = _straighten(v, N)
            if st is None:
                continue
            sign, mu = st
            for nu, kk in _schur_in_n_vars(mu, N).items():
                _add_term(acc, nu, key, sign * c * kk)
    return {nu: QTPoly(row) for nu, row in acc.items() if row}


def _weight_E(beta: tuple, N: int):
    for i in range(N):
        yield (beta[i], N - 1 - i), -1, 1


def _weight_D(beta: tuple, N: int):
    # t^(N-i) (q^beta_i - 1) [a_(beta+delta) - a_(beta+delta-e_i)]
    for i in range(N):
        if beta[i]:
            for key, c in (((beta[i], N - 1 - i), 1), ((0, N - 1 - i), -1)):
                yield key, -1, c
                yield key, i, -c


def _weight_Dj(j: int):
    def weight(beta: tuple, N: int):
        for i in range(N):
            c = math.factorial(j) * math.comb(beta[i], j)
            if c:
                yield (0, N - 1 - i), -1, c
                yield (0, N - 1 - i), i, -c
    return weight


_MATRICES: dict = {}
_MAT_LOCK = threading.Lock()
matrix_store_hooks: list = []  # (load, save) pairs consulted on cache misses


def operator_matrix(op: str, n: int, N: int, j: int = 0) -> dict[Partition, dict[Partition, QTPoly]]:
    """Action of an operator on {m_lam : lam |- n, len(lam) <= N} as
    {lam: {nu: coefficient}}.  ``op`` is ``E``, ``D`` or ``Dj``."""
    key = (op, n, N, j)
    mat = _MATRICES.get(key)
    if mat is not None:
        return mat
    for load, _ in matrix_store_hooks:
        mat = load(key)
        if mat is not None:
            break
    if mat is None:
        weight = {"E": _weight_E, "D": _weight_D}.get(op) or _weight_Dj(j)
        if op == "Dj" and j < 1:
            raise ValueError("derivative order must be >= 1")
        mat = {lam: _alternant_sum(lam, N, weight) for lam in enumerate_partitions(n) if len(lam) <= N}
        for _, save in matrix_store_hooks:
            save(key, mat)
    with _MAT_LOCK:
        _MATRICES.setdefault(key, mat)
    return _MATRICES[key]


def _apply_matrix(f: SymFunc, N: int, op: str, j: int = 0) -> SymFunc:
    acc: dict = {}
    for lam, c in f.coeffs.items():
        if len(lam) > N:
            continue
        for nu, v in operator_matrix(op, sum(lam), N, j)[lam].items():
            acc.setdefault(nu, []).append(c * QTRatio.from_poly(v))
    return SymFunc._raw(Basis.MONOMIAL, _collect(acc))


def _as_symfunc(f) -> tuple[SymFunc, int | None]:
    if isinstance(f, NVarPoly):
        return f.to_symfunc(), f.N
    return f, None


def apply_E(f, N: int | None = None):
    """E f for a symmetric polynomial (NVarPoly, or SymFunc with N given)."""
    g, n_vars = _as_symfunc(f)
    N = n_vars if n_vars is not None else N
    out = _apply_matrix(g, N, "E")
    return NVarPoly.from_symfunc(out, N) if n_vars is not None else out


def apply_D(f, N: int | None = None):
    g, n_vars = _as_symfunc(f)
    N = n_vars if n_vars is not None else N
    out = _apply_matrix(g, N, "D")
    return NVarPoly.from_symfunc(out, N) if n_vars is not None else out


def apply_D_diff_term(f, j: int, N: int | None = None):
    g, n_vars = _as_symfunc(f)
    N = n_vars if n_vars is not None else N
    out = _apply_matrix(g, N, "Dj", j)
    return NVarPoly.from_symfunc(out, N) if n_vars is not None else out


def eigenvalue_E(lam: Partition, N: int) -> QTPoly:
    """sum_i q^{lam_i} t^{N-i}."""
    terms: dict = {}
    for i in range(1, N + 1):
        k = (lam.part(i), N - i)
        terms[k] = terms.get(k, 0) + 1
    return QTPoly(terms)


def eigenvalue_D(lam: Partition, N: int) -> QTPoly:
    """ev(lam) = sum_i (q^{lam_i} - 1) t^{N-i}."""
    terms: dict = {}
    for i in range(1, N + 1):
        p = lam.part(i)
        if p:
            terms[(p, N - i)] = terms.get((p, N - i), 0) + 1
            terms[(0, N - i)] = terms.get((0, N - i), 0) - 1
    return QTPoly(terms)


# ---------------------------------------------------------------------------
# direct oracle: one numerator over the Vandermonde product, divided exactly
# ---------------------------------------------------------------------------

def _divide_by_difference(f: NVarPoly, a: int, b: int) -> NVarPoly:
    """Exact quotient of f by (x_a - x_b)."""
    quot: dict = {}
    rem: dict = {}
    for e, c in f.terms.items():
        k = e[a]
        # x_a^k = (x_a - x_b) sum_{m<k} x_a^(k-1-m) x_b^m + x_b^k
        for m in range(k):
            new = list(e)
            new[a] = k - 1 - m
            new[b] = e[b] + m
            quot.setdefault(tuple(new), []).append(c)
        new = list(e)
        new[a] = 0
        new[b] = e[b] + k
        rem.setdefault(tuple(new), []).append(c)
    if _collect(rem):
        raise ArithmeticError(f"not divisible by x_{a + 1} - x_{b + 1}")
    return NVarPoly._raw(f.N, _collect(quot))


def _linear(N: int, coeffs: Mapping[int, QTRatio]) -> NVarPoly:
    terms = {}
    for i, c in coeffs.items():
        e = [0] * N
        e[i] = 1
        terms[tuple(e)] = c
    return NVarPoly(N, terms)


def apply_A_sum_direct(parts: Sequence[NVarPoly]) -> NVarPoly:
    """sum_i A_i h_i for arbitrary polynomials h_i, via
    sum_i (-1)^(i-1) Vand_i prod_{j != i} (t x_i - x_j) h_i / Vand,
    where Vand_i omits x_i.  Inputs need not be symmetric."""
    N = parts[0].N
    tt = QTRatio.t()
    one = QTRatio.from_int(1)
    num = NVarPoly(N)
    for i, h in enumerate(parts):
        if h.is_zero():
            continue
        acc = h
        for j in range(N):
            if j != i:
                acc = acc * _linear(N, {i: tt, j: -one})
        for a, b in itertools.combinations([k for k in range(N) if k != i], 2):
            acc = acc * _linear(N, {a: one, b: -one})
        num = num + (acc if i % 2 == 0 else -acc)
    for a, b in itertools.combinations(range(N), 2):
        num = _divide_by_difference(num, a, b)
    return num


def _drop_inverse(f: NVarPoly, i: int) -> NVarPoly:
    """(1 - 1/x_i) f, requiring f to be divisible by x_i where needed."""
    res: dict = {}
    for e, c in f.terms.items():
        if e[i] == 0:
            raise ArithmeticError("negative exponent would appear")
        new = list(e)
        new[i] -= 1
        res[tuple(new)] = c
    return f - NVarPoly._raw(f.N, res)


def apply_E_direct(f: NVarPoly) -> NVarPoly:
    return apply_A_sum_direct([f.q_shift(i) for i in range(f.N)])


def apply_D_direct(f: NVarPoly) -> NVarPoly:
    return apply_A_sum_direct([_drop_inverse(f.q_shift(i) - f, i) for i in range(f.N)])


def apply_D_diff_term_direct(f: NVarPoly, j: int) -> NVarPoly:
    parts = []
    for i in range(f.N):
        d = f.derivative(i, j)
        e_hi = [0] * f.N
        e_hi[i] = j
        e_lo = [0] * f.N
        e_lo[i] = j - 1
        parts.append(d.times_monomial(e_hi) - d.times_monomial(e_lo))
    return apply_A_sum_direct(parts)
