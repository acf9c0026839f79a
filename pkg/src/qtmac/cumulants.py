"""Partial cumulants of subset-indexed families and the (q-1)-order checks.

A family assigns a ring element u_I to every subset I of [r] (u_{} = 1).
Cumulants are Moebius-weighted sums over set partitions; the error terms
T_H are alternating products.  The verifiers build families from Macdonald
or interpolation polynomials and measure vanishing orders at q = 1.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Iterable, Mapping, Sequence

from .operators import NVarPoly, apply_A_sum_direct, apply_D, apply_D_diff_term
from .partitions import Partition, family_sum, family_text, hook_factors, hook_poly
from .qtalgebra import INFINITY, QTPoly, QTRatio, invert_params, ord_at_q1, taylor_coeff_at_q1
from .setpartitions import mobius_to_top, set_partitions_of
from .symfunc import SymFunc, multiply

Subset = frozenset


class ZeroValue(ZeroDivisionError):
    """A family value that must be inverted is zero."""


def subsets(ground: Iterable[int]) -> list[frozenset]:
    """All subsets, ordered by size then lexicographically."""
    g = sorted(set(ground))
    return [frozenset(c) for k in range(len(g) + 1) for c in itertools.combinations(g, k)]


def full(r: int) -> frozenset:
    return frozenset(range(1, r + 1))


def _mul(a, b):
    if isinstance(a, SymFunc) and isinstance(b, SymFunc):
        return multiply(a, b)
    return a * b


def _prod(items: Sequence):
    it = iter(items)
    acc = next(it)
    for x in it:
        acc = _mul(acc, x)
    return acc


def _sum(items: Sequence):
    it = iter(items)
    acc = next(it)
    for x in it:
        acc = acc + x
    return acc


def _scale(x, c: int):
    if c == 1:
        return x
    if isinstance(x, SymFunc):
        return x.scale(c)
    return x * c


@dataclass
class IndexedFamily:
    """Values u_I for all nonempty I subset of [r].

    u_{} is the unit unless given explicitly; only T_error reads it."""

    r: int
    values: dict
    description: str = ""

    def __post_init__(self):
        self.values = {frozenset(k): v for k, v in self.values.items()}
        missing = [sorted(s) for s in subsets(range(1, self.r + 1)) if s and s not in self.values]
        if missing:
            raise ValueError(f"family is missing values for {missing}")

    @classmethod
    def build(cls, r: int, fn: Callable[[frozenset], Any], description: str = "") -> "IndexedFamily":
        return cls(r, {s: fn(s) for s in subsets(range(1, r + 1)) if s}, description)

    def __getitem__(self, I) -> Any:
        return self.values[frozenset(I)]

    def entrywise(self, other: "IndexedFamily", op: Callable) -> "IndexedFamily":
        if other.r != self.r:
            raise ValueError("families of different sizes")
        return IndexedFamily(self.r, {s: op(v, other.values[s]) for s, v in self.values.items()})


def _values(family) -> Mapping:
    return family.values if isinstance(family, IndexedFamily) else {frozenset(k): v for k, v in family.items()}


# ---------------------------------------------------------------------------
# cumulants, moments, error terms
# ---------------------------------------------------------------------------

def kappa(family, H: Iterable[int]):
    """kappa_H = sum over set partitions pi of H of mu(pi, {H}) prod_B u_B."""
    H = frozenset(H)
    if not H:
        raise ValueError("cumulants need a nonempty index set")
    vals = _values(family)
    terms = []
    for pi in set_partitions_of(H):
        term = _prod([vals[frozenset(b)] for b in pi.blocks])
        terms.append(_scale(term, mobius_to_top(pi)))
    return _sum(terms)


def all_kappas(family, ground: Iterable[int] | None = None) -> dict:
    vals = _values(family)
    if ground is None:
        ground = set().union(*vals)
    return {s: kappa(vals, s) for s in subsets(ground) if s}


def moments_from_cumulants(kappas: Mapping, H: Iterable[int]):
    """u_H = sum over set partitions pi of H of prod_B kappa_B."""
    H = frozenset(H)
    if not H:
        raise ValueError("need a nonempty index set")
    ks = {frozenset(k): v for k, v in kappas.items()}
    return _sum([_prod([ks[frozenset(b)] for b in pi.blocks]) for pi in set_partitions_of(H)])


def T_error(family, H: Iterable[int]) -> QTRatio:
    """prod over G subset of H of u_G^((-1)^(|H|-|G|)), minus 1.

    The empty set contributes u_{} when the family supplies it, else 1."""
    H = frozenset(H)
    if len(H) < 2:
        raise ValueError("T_H needs |H| >= 2")
    vals = _values(family)
    num = QTRatio.from_int(1)
    den = QTRatio.from_int(1)
    for G in subsets(H):
        if not G and G not in vals:
            continue
        u = QTRatio.coerce(vals[G])
        if not u:
            raise ZeroValue(f"u_{sorted(G)} is zero")
        if (len(H) - len(G)) % 2 == 0:
            num = num * u
        else:
            den = den * u
    return num / den - 1


def scalar_orders(family, r: int) -> dict:
    """For every H with |H| >= 2: (ord T_H, ord kappa_H - sum_h ord u_h)."""
    vals = _values(family)
    out = {}
    for H in subsets(range(1, r + 1)):
        if len(H) < 2:
            continue
        k = kappa(vals, H)
        base = sum(ord_at_q1(vals[frozenset([h])]) for h in H)
        ko = ord_at_q1(k)
        out[H] = (ord_at_q1(T_error(vals, H)), ko if ko is INFINITY else ko - base)
    return out


def has_sfp(family, r: int) -> bool:
    return all(o[0] >= len(H) - 1 for H, o in scalar_orders(family, r).items())


def has_scp(family, r: int) -> bool:
    return all(o[1] >= len(H) - 1 for H, o in scalar_orders(family, r).items())


# ---------------------------------------------------------------------------
# inclusion-exclusion of partition binomials
# ---------------------------------------------------------------------------

def IE(family: Sequence[Partition], j: int, N: int) -> QTPoly:
    """sum over I subset of [r] of (-1)^(r-|I|) b^N_j(lam^I).

    Evaluated row by row: the t^(N-i) coefficient is the alternating sum of
    C(lam^I_i, j) over subsets I."""
    if j < 1:
        raise ValueError("j must be at least 1")
    r = len(family)
    length = max((len(p) for p in family), default=0)
    if N < length:
        raise ValueError(f"N={N} is smaller than the length of the family sum")
    terms: dict = {}
    for i in range(1, length + 1):
        row = [p.part(i) for p in family]
        acc = 0
        for I in subsets(range(r)):
            c = math.comb(sum(row[k] for k in I), j)
            acc += c if (r - len(I)) % 2 == 0 else -c
        if acc:
            terms[(0, N - i)] = acc
    return QTPoly(terms)


# ---------------------------------------------------------------------------
# deformed Leibniz action
# ---------------------------------------------------------------------------

def _iterate(d: Callable, x, k: int):
    for _ in range(k):
        x = d(x)
    return x


def deformed_action(family, k: int, d: Callable, H: Iterable[int] | None = None):
    """sum_pi mu(pi, 1) sum_{B in pi} d^k(u_B) prod_{B' != B} u_B'.

    This is the cumulant with d^k forced to act on one block at a time."""
    vals = _values(family)
    H = frozenset(H) if H is not None else frozenset().union(*vals)
    terms = []
    for pi in set_partitions_of(H):
        us = [vals[frozenset(b)] for b in pi.blocks]
        inner = []
        for a in range(len(us)):
            factors = list(us)
            factors[a] = _iterate(d, us[a], k)
            inner.append(_prod(factors))
        terms.append(_scale(_sum(inner), mobius_to_top(pi)))
    return _sum(terms)


def compositions(k: int, parts: int) -> Iterable[tuple[int, ...]]:
    """Ordered tuples of ``parts`` positive integers summing to k."""
    for cuts in itertools.combinations(range(1, k), parts - 1):
        bounds = (0,) + cuts + (k,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def multinomial(k: int, alpha: Sequence[int]) -> int:
    out = math.factorial(k)
    for a in alpha:
        out //= math.factorial(a)
    return out


def derivative_expansion(kappas: Mapping, H: Iterable[int], k: int, d: Callable, min_blocks: int = 1):
    """sum over pi of H with min_blocks <= #pi <= k, over alpha in N_+^pi with
    |alpha| = k, of multinomial(k, alpha) prod_B d^alpha(B) kappa_B.

    Returns None when the index set is empty."""
    H = frozenset(H)
    ks = {frozenset(a): v for a, v in kappas.items()}
    terms = []
    for pi in set_partitions_of(H):
        if not min_blocks <= len(pi) <= k:
            continue
        blocks = [ks[frozenset(b)] for b in pi.blocks]
        for alpha in compositions(k, len(pi)):
            term = _prod([_iterate(d, kb, a) for kb, a in zip(blocks, alpha)])
            terms.append(_scale(term, multinomial(k, alpha)))
    return _sum(terms) if terms else None


def deformed_action_rhs(family, k: int, d: Callable, H: Iterable[int] | None = None):
    """Right side of the cumulant differential identity, from the cumulants."""
    vals = _values(family)
    H = frozenset(H) if H is not None else frozenset().union(*vals)
    ks = {s: kappa(vals, s) for s in subsets(H) if s}
    out = derivative_expansion(ks, H, k, d)
    if out is None:
        raise ValueError("empty expansion")
    return out


# ---------------------------------------------------------------------------
# Macdonald families and reports
# ---------------------------------------------------------------------------

@dataclass
class CumulantReport:
    name: str
    target: int
    orders: dict = field(default_factory=dict)  # subset -> achieved order
    targets: dict = field(default_factory=dict)  # subset -> required order
    kappas: dict = field(default_factory=dict)

    @property
    def min_order(self):
        return min(self.orders.values(), default=INFINITY)

    @property
    def passed(self) -> bool:
        return all(self.orders[H] >= self.targets.get(H, self.target) for H in self.orders)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        parts = ", ".join(f"{_set_text(H)}:{o}" for H, o in sorted(self.orders.items(), key=_subset_key))
        return f"{status} {self.name} (orders {parts})"


def _subset_key(item):
    return (len(item[0]), sorted(item[0]))


def _set_text(H) -> str:
    return "{" + ",".join(map(str, sorted(H))) + "}"


def macdonald_family(kind: str, family: Sequence[Partition], N: int | None = None) -> IndexedFamily:
    """u_I = J_{lam^I} (kind 'J') or the interpolation polynomial in N
    variables (kind 'interp'), as monomial-basis SymFuncs."""
    from .macdonald import J, interp

    family = [Partition(p) for p in family]
    r = len(family)
    if kind == "J":
        fn = lambda I: J(family_sum(family, I))  # noqa: E731
    elif kind == "interp":
        if N is None:
            N = sum(map(sum, family))
        fn = lambda I: _truncate(interp(family_sum(family, I), N), N)  # noqa: E731
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return IndexedFamily.build(r, fn, f"{kind} {family_text(family)}" + (f" N={N}" if kind == "interp" else ""))


def _truncate(f: SymFunc, N: int) -> SymFunc:
    return SymFunc(f.basis, {nu: c for nu, c in f.coeffs.items() if len(nu) <= N})


def symfunc_order(f: SymFunc):
    """Minimum of ord_at_q1 over the coefficients (INFINITY for zero)."""
    return min((ord_at_q1(c) for c in f.coeffs.values()), default=INFINITY)


def check_small_cumulant(kind: str, family: Sequence[Partition], N: int | None = None,
                         all_subsets: bool = False) -> CumulantReport:
    """ord_at_q1 of kappa_{[r]} (or every kappa_H) against |H| - 1."""
    family = [Partition(p) for p in family]
    r = len(family)
    fam = macdonald_family(kind, family, N)
    vals = fam.values
    Nv = N if N is not None else sum(map(sum, family))
    rep = CumulantReport(f"scp {fam.description}", r - 1)
    targets = [H for H in subsets(range(1, r + 1)) if len(H) >= 2] if all_subsets else [full(r)]
    for H in targets:
        k = kappa(vals, H)
        if kind == "interp":
            k = _truncate(k, Nv)
        rep.kappas[H] = k
        rep.orders[H] = symfunc_order(k)
        rep.targets[H] = len(H) - 1
    return rep


@lru_cache(maxsize=None)
def _hook_counter(lam: tuple) -> Counter:
    return hook_factors(Partition(lam))


def _factor_poly(factors: Mapping[tuple[int, int], int]) -> QTPoly:
    acc = QTPoly(1)
    for (a, b), n in sorted(factors.items()):
        f = QTPoly({(0, 0): 1, (a, b): -1})
        for _ in range(n):
            acc = acc * f
    return acc


def hook_T_order(family: Sequence[Partition], H: Iterable[int]):
    """ord_at_q1 of T_H for the hook family u_I = h(lam^I), by cancelling
    hook factors (1 - q^a t^b) before expanding."""
    H = frozenset(H)
    net: Counter = Counter()
    for G in subsets(H):
        if not G:
            continue
        sign = 1 if (len(H) - len(G)) % 2 == 0 else -1
        for fac, n in _hook_counter(tuple(family_sum(family, G))).items():
            net[fac] += sign * n
    top = {f: n for f, n in net.items() if n > 0}
    bottom = {f: -n for f, n in net.items() if n < 0}
    # every factor has b >= 1, so the bottom product is a unit at q = 1
    return ord_at_q1(_factor_poly(top) - _factor_poly(bottom))


def hook_family(family: Sequence[Partition]) -> IndexedFamily:
    family = [Partition(p) for p in family]
    return IndexedFamily.build(len(family), lambda I: QTRatio.from_poly(hook_poly(family_sum(family, I))),
                               f"hook {family_text(family)}")


def check_strong_factorization(kind: str, family: Sequence[Partition], N: int | None = None) -> CumulantReport:
    """ord_at_q1(T_H) >= |H| - 1 for the scalar family of leading
    coefficients u_I = h(lam^I), shared by both kinds of polynomial."""
    if kind not in ("J", "interp", "hook"):
        raise ValueError(f"unknown kind {kind!r}")
    family = [Partition(p) for p in family]
    r = len(family)
    rep = CumulantReport(f"sfp hook {family_text(family)}", r - 1)
    for H in subsets(range(1, r + 1)):
        if len(H) >= 2:
            rep.orders[H] = hook_T_order(family, H)
            rep.targets[H] = len(H) - 1
    return rep


def geometric_family(K: Sequence[int], C, c: int, cs: Mapping[int, int]) -> IndexedFamily:
    """v_I = 1 - C q^(c + sum_{i in I} c_i) over all subsets I of K = [|K|],
    the empty one included."""
    C = QTRatio.coerce(C)
    fn = lambda I: 1 - C * QTRatio.monomial(c + sum(cs[i] for i in I), 0)  # noqa: E731
    fam = IndexedFamily.build(len(K), fn, f"geometric C={C} c={c} c_i={dict(cs)}")
    fam.values[frozenset()] = fn(frozenset())
    return fam


# ---------------------------------------------------------------------------
# operator identities on interpolation cumulants (NVarPoly valued)
# ---------------------------------------------------------------------------

def interp_family_nvar(family: Sequence[Partition], N: int) -> dict:
    """u_I = interpolation polynomial of lam^I with q, t inverted, in N variables."""
    from .macdonald import interp

    family = [Partition(p) for p in family]
    r = len(family)
    return {I: NVarPoly.from_symfunc(interp(family_sum(family, I), N).map_coeffs(invert_params), N)
            for I in subsets(range(1, r + 1)) if I}


def forced_D(vals: Mapping, H: Iterable[int]) -> NVarPoly:
    """D applied to the cumulant with the Leibniz rule forced."""
    return deformed_action(vals, 1, apply_D, H)


def A1_rhs(family: Sequence[Partition], N: int, kappas: Mapping) -> NVarPoly:
    """sum_j (q-1)^j sum_{sigma, #sigma <= j} IE_j(lam^B: B in sigma) prod kappa_B."""
    family = [Partition(p) for p in family]
    r = len(family)
    total = family_sum(family, range(1, r + 1))
    acc = NVarPoly(N)
    qm1 = QTRatio.monomial(1, 0) - 1
    for j in range(1, max(total, default=0) + 1):
        inner = NVarPoly(N)
        for sigma in set_partitions_of(range(1, r + 1)):
            if len(sigma) > j:
                continue
            blocks = [family_sum(family, b) for b in sigma.blocks]
            ie = IE(blocks, j, N)
            if ie.is_zero():
                continue
            term = _prod([kappas[frozenset(b)] for b in sigma.blocks])
            inner = inner + term * QTRatio.from_poly(ie)
        acc = acc + inner * qm1 ** j
    return acc


def A2_expansion(kappas: Mapping, H: Iterable[int], N: int, j_max: int) -> NVarPoly:
    """sum_{j>=2} (q-1)^j/j! sum_i A_i (x_i^j - x_i^(j-1)) times the
    derivative products over set partitions with 2 <= #pi <= j."""
    H = frozenset(H)
    acc = NVarPoly(N)
    qm1 = QTRatio.monomial(1, 0) - 1
    for j in range(2, j_max + 1):
        parts = []
        for i in range(N):
            d = lambda f, i=i: f.derivative(i)  # noqa: E731
            g = derivative_expansion(kappas, H, j, d, min_blocks=2)
            if g is None or g.is_zero():
                parts.append(NVarPoly(N))
                continue
            hi = [0] * N
            hi[i] = j
            lo = [0] * N
            lo[i] = j - 1
            parts.append(g.times_monomial(hi) - g.times_monomial(lo))
        if all(p.is_zero() for p in parts):
            continue
        acc = acc + apply_A_sum_direct(parts) * (qm1 ** j / math.factorial(j))
    return acc


@dataclass
class IdentityCheck:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def check_A1(family: Sequence[Partition], N: int) -> IdentityCheck:
    family = [Partition(p) for p in family]
    r = len(family)
    vals = interp_family_nvar(family, N)
    ks = {s: kappa(vals, s) for s in vals}
    lhs = forced_D(vals, full(r))
    rhs = A1_rhs(family, N, ks)
    diff = lhs - rhs
    return IdentityCheck(f"A1 {family_text(family)} N={N}", diff.is_zero(),
                         "" if diff.is_zero() else repr(diff))


def check_A2(family: Sequence[Partition], N: int) -> IdentityCheck:
    """D kappa - (forced D) kappa equals minus the derivative-product expansion."""
    family = [Partition(p) for p in family]
    r = len(family)
    vals = interp_family_nvar(family, N)
    ks = {s: kappa(vals, s) for s in vals}
    top = ks[full(r)]
    lhs = apply_D(top) - forced_D(vals, full(r))
    degree = sum(map(sum, family))
    rhs = -A2_expansion(ks, full(r), N, degree)
    diff = lhs - rhs
    return IdentityCheck(f"A2 {family_text(family)} N={N}", diff.is_zero(),
                         "" if diff.is_zero() else repr(diff))


def nvar_taylor(f: NVarPoly, k: int) -> NVarPoly:
    """Coefficient of (q-1)^k, taken coefficientwise (zero for k < 0)."""
    if k < 0:
        return NVarPoly(f.N)
    return f.map_coeffs(lambda c: taylor_coeff_at_q1(c, k))


def check_expansion_identities(family: Sequence[Partition], N: int, k_max: int) -> list[IdentityCheck]:
    """Coefficientwise forms of the decomposition of D kappa about q = 1.

    For each k <= k_max checks
      [k] D kappa = sum_j D_j([k-j] kappa) / j!,
      [k] forced D kappa = sum_j sum_sigma IE_j [k-j] prod kappa_B,
      [k] (D - forced D) kappa = -sum_{j>=2} (1/j!) sum_i A_i(...) [k-j] (products),
    and that the first right side is the sum of the other two.
    """
    family = [Partition(p) for p in family]
    r = len(family)
    vals = interp_family_nvar(family, N)
    ks = {s: kappa(vals, s) for s in vals}
    top = ks[full(r)]
    degree = sum(map(sum, family))
    d_top = apply_D(top)
    forced = forced_D(vals, full(r))
    out = []
    for k in range(k_max + 1):
        lhs1 = nvar_taylor(d_top, k)
        rhs1 = NVarPoly(N)
        for j in range(1, k + 1):
            rhs1 = rhs1 + apply_D_diff_term(nvar_taylor(top, k - j), j) * QTRatio(1, math.factorial(j))
        rhs3 = NVarPoly(N)
        for j in range(1, k + 1):
            for sigma in set_partitions_of(range(1, r + 1)):
                if len(sigma) > j:
                    continue
                ie = IE([family_sum(family, b) for b in sigma.blocks], j, N)
                if ie.is_zero():
                    continue
                prod = _prod([ks[frozenset(b)] for b in sigma.blocks])
                rhs3 = rhs3 + nvar_taylor(prod, k - j) * QTRatio.from_poly(ie)
        rhs2 = NVarPoly(N)
        for j in range(2, min(k, degree) + 1):
            parts = []
            for i in range(N):
                d = lambda f, i=i: f.derivative(i)  # noqa: E731
                g = derivative_expansion(ks, full(r), j, d, min_blocks=2)
                g = nvar_taylor(g, k - j) if g is not None else NVarPoly(N)
                hi = [0] * N
                hi[i] = j
                lo = [0] * N
                lo[i] = j - 1
                parts.append(g.times_monomial(hi) - g.times_monomial(lo))
            if any(not p.is_zero() for p in parts):
                rhs2 = rhs2 - apply_A_sum_direct(parts) * QTRatio(1, math.factorial(j))
        tag = f"{family_text(family)} N={N} k={k}"
        out.append(IdentityCheck(f"expand-D {tag}", (lhs1 - rhs1).is_zero()))
        out.append(IdentityCheck(f"forced-part {tag}", (nvar_taylor(forced, k) - rhs3).is_zero()))
        out.append(IdentityCheck(f"difference-part {tag}", (lhs1 - nvar_taylor(forced, k) - rhs2).is_zero()))
        out.append(IdentityCheck(f"split {tag}", (rhs1 - rhs3 - rhs2).is_zero()))
    return out
