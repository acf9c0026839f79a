"""Exact arithmetic in Z[q^+-1, t^+-1] and in the fraction field Q(q, t).

``QTPoly`` is a sparse Laurent polynomial with integer coefficients stored as
``{(e_q, e_t): c}``.  ``QTRatio`` is a reduced fraction of two polynomials.

Canonical form of a ``QTRatio``:

* numerator and denominator are genuine polynomials (no negative exponents),
  with no common monomial factor ``q^a t^b``;
* they are coprime in Z[q, t] (integer content included), using a
  heuristic evaluation GCD that falls back to the subresultant PRS with
  ``q`` as the main variable over Z[t];
* the leading coefficient of the denominator, under the lexicographic order
  on ``(e_q, e_t)``, is positive.

Equal values therefore have identical term maps, so ``==`` and ``hash`` are
structural.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterable, Mapping, TypeVar

R = TypeVar("R")


class NonExactDivision(ArithmeticError):
    """An exact division left a nonzero remainder."""


class PoleAtQ1(ArithmeticError):
    """A rational function was evaluated or expanded at a pole q = 1."""


# ---------------------------------------------------------------------------
# dense univariate helpers over Z: lists low -> high, no trailing zeros
# ---------------------------------------------------------------------------

def _u_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _u_add(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, c in enumerate(b):
        r[i] += c
    return _u_trim(r)


def _u_sub(a: list, b: list) -> list:
    r = list(a)
    if len(r) < len(b):
        r.extend([0] * (len(b) - len(r)))
    for i, c in enumerate(b):
        r[i] -= c
    return _u_trim(r)


def _u_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    if len(a) == 1:
        x = a[0]
        return [x * y for y in b]
    if len(b) == 1:
        y = b[0]
        return [x * y for x in a]
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return r


def _u_pow(a: list, e: int) -> list:
    r = [1]
    while e:
        if e & 1:
            r = _u_mul(r, a)
        e >>= 1
        if e:
            a = _u_mul(a, a)
    return r


def _u_exquo(a: list, b: list) -> list:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return []
    if len(b) == 1:
        d = b[0]
        out = []
        for x in a:
            qq, rem = divmod(x, d)
            if rem:
                raise NonExactDivision("integer content does not divide")
            out.append(qq)
        return out
    db = len(b) - 1
    if len(a) < len(b):
        raise NonExactDivision("divisor has larger degree")
    a = list(a)
    lb = b[-1]
    out = [0] * (len(a) - db)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + db]
        if c:
            qq, rem = divmod(c, lb)
            if rem:
                raise NonExactDivision("leading coefficient does not divide")
            out[k] = qq
            for j, y in enumerate(b):
                a[k + j] -= qq * y
    if any(a[:db]):
        raise NonExactDivision("nonzero remainder")
    return _u_trim(out)


def _u_content(a: list) -> int:
    return math.gcd(*a)


def _u_prem(a: list, b: list) -> list:
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        s = len(r) - 1 - db
        r = [lb * x for x in r]
        for j, y in enumerate(b):
            r[s + j] -= lr * y
        _u_trim(r)
        e -= 1
    if e > 0 and r:
        f = lb ** e
        r = [f * x for x in r]
    return r


def _u_gcd(a: list, b: list) -> list:
    """Primitive-normalized gcd in Z[t] times the gcd of the contents."""
    if not a and not b:
        return []
    if not a:
        a, b = b, a
    if not b:
        return a if a[-1] > 0 else [-x for x in a]
    ca, cb = _u_content(a), _u_content(b)
    c = math.gcd(ca, cb)
    if len(a) == 1 or len(b) == 1:
        return [c]
    A = [x // ca for x in a]
    B = [x // cb for x in b]
    if len(A) < len(B):
        A, B = B, A
    g = h = 1
    while True:
        d = len(A) - len(B)
        r = _u_prem(A, B)
        if not r:
            break
        if len(r) == 1:
            return [c]
        A = B
        div = g * h ** d
        B = [x // div for x in r]
        g = A[-1]
        if d:
            h = g ** d // h ** (d - 1)
    cB = _u_content(B)
    if B[-1] < 0:
        cB = -cB
    return [c * (x // cB) for x in B]


# ---------------------------------------------------------------------------
# dense bivariate helpers: q-main lists of Z[t] lists
# ---------------------------------------------------------------------------

def _b_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _b_content(a: list) -> list:
    c: list = []
    for x in a:
        if x:
            c = _u_gcd(c, x) if c else (x if x[-1] > 0 else [-y for y in x])
            if c == [1]:
                break
    return c


def _b_prem(a: list, b: list) -> list:
    r = [list(x) for x in a]
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        s = len(r) - 1 - db
        r = [_u_mul(lb, x) for x in r]
        for j, y in enumerate(b):
            if y:
                r[s + j] = _u_sub(r[s + j], _u_mul(lr, y))
        _b_trim(r)
        e -= 1
    if e > 0 and r:
        f = _u_pow(lb, e)
        r = [_u_mul(f, x) for x in r]
    return r


def _b_exquo(a: list, b: list) -> list:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return []
    db = len(b) - 1
    if len(a) < len(b):
        raise NonExactDivision("divisor has larger q-degree")
    r = [list(x) for x in a]
    lb = b[-1]
    out: list = [[] for _ in range(len(r) - db)]
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if c:
            qq = _u_exquo(c, lb)
            out[k] = qq
            for j, y in enumerate(b):
                if y:
                    r[k + j] = _u_sub(r[k + j], _u_mul(qq, y))
    if any(r):
        raise NonExactDivision("nonzero remainder")
    return _b_trim(out)


def _b_subresultant(a: list, b: list) -> list:
    """gcd of two q-primitive polynomials of positive q-degree."""
    A, B = (a, b) if len(a) >= len(b) else (b, a)
    g: list = [1]
    h: list = [1]
    while True:
        d = len(A) - len(B)
        r = _b_prem(A, B)
        if not r:
            break
        if len(r) == 1:
            return [[1]]
        A = B
        div = _u_mul(g, _u_pow(h, d))
        B = [_u_exquo(x, div) if x else [] for x in r]
        g = A[-1]
        if d:
            h = _u_exquo(_u_pow(g, d), _u_pow(h, d - 1))
    c = _b_content(B)
    if B[-1][-1] < 0:
        c = [-x for x in c]
    return [_u_exquo(x, c) if x else [] for x in B]


class _HeuristicFailed(Exception):
    pass


_HEU_TRIES = 6


def _heu_next(x: int) -> int:
    return 73794 * x * math.isqrt(math.isqrt(x)) // 27011


def _sym_digits(h: int, x: int) -> list:
    """Symmetric base-x digits of h, low -> high."""
    out = []
    half = x // 2
    while h:
        d = h % x
        if d > half:
            d -= x
        out.append(d)
        h = (h - d) // x
    return out


def _u_eval(a: list, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _u_heu_gcd(a: list, b: list) -> list:
    """Heuristic gcd in Z[t] for primitive a, b of positive degree."""
    na = max(abs(c) for c in a)
    nb = max(abs(c) for c in b)
    B = 2 * min(na, nb) + 29
    x = max(min(B, 99 * math.isqrt(B)), 2 * min(na // abs(a[-1]), nb // abs(b[-1])) + 2)
    for _ in range(_HEU_TRIES):
        fa, fb = _u_eval(a, x), _u_eval(b, x)
        if fa and fb:
            h = _sym_digits(math.gcd(fa, fb), x)
            if h:
                c = _u_content(h)
                h = [v // c for v in h]
                try:
                    _u_exquo(a, h)
                    _u_exquo(b, h)
                    return h if h[-1] > 0 else [-v for v in h]
                except NonExactDivision:
                    pass
        x = _heu_next(x)
    raise _HeuristicFailed


def _b_eval(a: list, x: int) -> list:
    """Evaluate the main variable q at the integer x."""
    acc: list = []
    for row in reversed(a):
        acc = _u_add([v * x for v in acc], row) if acc else list(row)
    return acc


def _b_heu_gcd(a: list, b: list) -> list:
    """Heuristic gcd for q-main bivariate polynomials with integer content 1."""
    na = max(abs(c) for row in a for c in row)
    nb = max(abs(c) for row in b for c in row)
    la = abs(a[-1][-1])
    lb = abs(b[-1][-1])
    B = 2 * min(na, nb) + 29
    x = max(min(B, 99 * math.isqrt(B)), 2 * min(na // la, nb // lb) + 2)
    for _ in range(_HEU_TRIES):
        ea, eb = _b_eval(a, x), _b_eval(b, x)
        if ea and eb:
            if len(ea) == 1 or len(eb) == 1:
                hh = [math.gcd(*ea, *eb)]
            else:
                ca, cb = _u_content(ea), _u_content(eb)
                try:
                    hh = _u_heu_gcd([v // ca for v in ea], [v // cb for v in eb])
                except _HeuristicFailed:
                    x = _heu_next(x)
                    continue
                hh = [v * math.gcd(ca, cb) for v in hh]
            rows: list = []
            for tdeg, coeff in enumerate(hh):
                for qdeg, d in enumerate(_sym_digits(coeff, x)):
                    while len(rows) <= qdeg:
                        rows.append([])
                    row = rows[qdeg]
                    while len(row) <= tdeg:
                        row.append(0)
                    row[tdeg] = d
            rows = _b_trim([_u_trim(r) for r in rows])
            if rows:
                c = math.gcd(*(v for r in rows for v in r))
                rows = [[v // c for v in r] for r in rows]
                if rows[-1][-1] < 0:
                    rows = [[-v for v in r] for r in rows]
                try:
                    _b_exquo(a, rows)
                    _b_exquo(b, rows)
                    return rows
                except NonExactDivision:
                    pass
        x = _heu_next(x)
    raise _HeuristicFailed


def _to_qmain(terms: Mapping[tuple, int]) -> list:
    """Polynomial terms (nonnegative exponents) -> q-main dense form."""
    dq = max(a for a, _ in terms)
    widths = [0] * (dq + 1)
    for a, b in terms:
        if b + 1 > widths[a]:
            widths[a] = b + 1
    rows = [[0] * w for w in widths]
    for (a, b), c in terms.items():
        rows[a][b] = c
    return rows


def _from_qmain(rows: list) -> dict:
    out = {}
    for a, row in enumerate(rows):
        for b, c in enumerate(row):
            if c:
                out[(a, b)] = c
    return out


def _b_gcd(a: list, b: list) -> list:
    if len(a) == 1 or len(b) == 1:
        # one side is a pure polynomial in t
        c = reduce(lambda x, y: _u_gcd(x, y) if x != [1] else x, [x for x in a + b if x])
        return [c]
    ia = math.gcd(*(v for r in a for v in r))
    ib = math.gcd(*(v for r in b for v in r))
    try:
        g = _b_heu_gcd([[v // ia for v in r] for r in a], [[v // ib for v in r] for r in b])
    except _HeuristicFailed:
        pass
    else:
        ig = math.gcd(ia, ib)
        return [[v * ig for v in r] for r in g] if ig != 1 else g
    return _b_gcd_subresultant(a, b)


def _b_gcd_subresultant(a: list, b: list) -> list:
    """gcd via content splitting and the subresultant PRS in q over Z[t]."""
    if len(a) == 1 or len(b) == 1:
        c = reduce(lambda x, y: _u_gcd(x, y) if x != [1] else x, [x for x in a + b if x])
        return [c]
    ca, cb = _b_content(a), _b_content(b)
    c = _u_gcd(ca, cb)
    pa = [_u_exquo(x, ca) if x else [] for x in a] if ca != [1] else a
    pb = [_u_exquo(x, cb) if x else [] for x in b] if cb != [1] else b
    g = _b_subresultant(pa, pb)
    if c != [1]:
        g = [_u_mul(c, x) for x in g]
    return g


# ---------------------------------------------------------------------------
# sparse term-map helpers
# ---------------------------------------------------------------------------

def _t_add(a: Mapping, b: Mapping, sign: int = 1) -> dict:
    r = dict(a)
    for k, c in b.items():
        v = r.get(k, 0) + sign * c
        if v:
            r[k] = v
        else:
            r.pop(k, None)
    return r


def _t_mul(a: Mapping, b: Mapping) -> dict:
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        ((kb, cb),) = b.items()
        bq, bt = kb
        return {(x + bq, y + bt): c * cb for (x, y), c in a.items()}
    r: dict = {}
    get = r.get
    for (x1, y1), c1 in a.items():
        for (x2, y2), c2 in b.items():
            k = (x1 + x2, y1 + y2)
            r[k] = get(k, 0) + c1 * c2
    return {k: v for k, v in r.items() if v}


def _t_shift(a: Mapping, dq: int, dt: int) -> dict:
    if not dq and not dt:
        return dict(a)
    return {(x + dq, y + dt): c for (x, y), c in a.items()}


def _t_min(a: Mapping) -> tuple[int, int]:
    return min(x for x, _ in a), min(y for _, y in a)


def _t_lead(a: Mapping) -> tuple:
    return max(a)


def _t_gcd(a: Mapping, b: Mapping) -> dict:
    """gcd of two polynomials with no monomial factor, positive leading coeff."""
    return _from_qmain(_b_gcd(_to_qmain(a), _to_qmain(b)))


def _t_exquo(a: Mapping, b: Mapping) -> dict:
    """Exact quotient of polynomials (nonnegative exponents)."""
    if len(b) == 1:
        ((kb, cb),) = b.items()
        out = {}
        for (x, y), c in a.items():
            qq, rem = divmod(c, cb)
            if rem or x < kb[0] or y < kb[1]:
                raise NonExactDivision("monomial does not divide")
            out[(x - kb[0], y - kb[1])] = qq
        return out
    return _from_qmain(_b_exquo(_to_qmain(a), _to_qmain(b)))


# ---------------------------------------------------------------------------
# QTPoly
# ---------------------------------------------------------------------------

class QTPoly:
    """Laurent polynomial in q, t with integer coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | int | None = None):
        if terms is None:
            self.terms: dict = {}
        elif isinstance(terms, int):
            self.terms = {(0, 0): terms} if terms else {}
        else:
            self.terms = {(int(a), int(b)): int(c) for (a, b), c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "QTPoly":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, eq: int = 0, et: int = 0, coeff: int = 1) -> "QTPoly":
        return cls._raw({(eq, et): coeff} if coeff else {})

    @classmethod
    def q(cls) -> "QTPoly":
        return cls.monomial(1, 0)

    @classmethod
    def t(cls) -> "QTPoly":
        return cls.monomial(0, 1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0) in self.terms)

    def is_polynomial(self) -> bool:
        return all(a >= 0 and b >= 0 for a, b in self.terms)

    def constant(self) -> int:
        return self.terms.get((0, 0), 0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QTPoly(other)
        if isinstance(other, QTPoly):
            return self.terms == other.terms
        if isinstance(other, QTRatio):
            return other == QTRatio.from_poly(self)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, QTPoly):
            return other
        if isinstance(other, int):
            return QTPoly(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QTPoly._raw(_t_add(self.terms, o.terms))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QTPoly._raw(_t_add(self.terms, o.terms, -1))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QTPoly._raw({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return QTPoly._raw({})
        return QTPoly._raw(_t_mul(self.terms, o.terms))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial QTPoly")
            ((a, b), c), = self.terms.items()
            if abs(c) != 1:
                raise ValueError("negative power of a non-unit QTPoly")
            return QTPoly._raw({(a * e, b * e): c ** (-e)})
        r = QTPoly(1)
        base = self
        while e:
            if e & 1:
                r = r * base
            e >>= 1
            if e:
                base = base * base
        return r

    def __truediv__(self, other):
        return QTRatio.from_poly(self) / other

    def __rtruediv__(self, other):
        return QTRatio.coerce(other) / QTRatio.from_poly(self)

    def exquo(self, other: "QTPoly") -> "QTPoly":
        """Exact quotient in the Laurent ring; raises ``NonExactDivision``."""
        if not other.terms:
            raise ZeroDivisionError("division by zero QTPoly")
        if not self.terms:
            return QTPoly()
        aq, at = _t_min(self.terms)
        bq, bt = _t_min(other.terms)
        a = _t_shift(self.terms, -aq, -at)
        b = _t_shift(other.terms, -bq, -bt)
        return QTPoly._raw(_t_shift(_t_exquo(a, b), aq - bq, at - bt))

    def min_exponents(self) -> tuple[int, int]:
        return _t_min(self.terms)

    def degree_q(self) -> int:
        return max(a for a, _ in self.terms)

    def degree_t(self) -> int:
        return max(b for _, b in self.terms)

    def leading_term(self) -> tuple[tuple[int, int], int]:
        k = _t_lead(self.terms)
        return k, self.terms[k]

    def shift(self, dq: int, dt: int) -> "QTPoly":
        return QTPoly._raw(_t_shift(self.terms, dq, dt))

    def invert_params(self) -> "QTPoly":
        """Substitute q -> 1/q, t -> 1/t (stays a Laurent polynomial)."""
        return QTPoly._raw({(-a, -b): c for (a, b), c in self.terms.items()})

    def subs(self, q=None, t=None):
        """Substitute values for q and/or t; unspecified variables stay symbolic."""
        return QTRatio.from_poly(self).subs(q=q, t=t)

    def coefficients_in_q(self) -> dict[int, "QTPoly"]:
        """Group as ``{e_q: coefficient polynomial in t}``."""
        out: dict[int, dict] = {}
        for (a, b), c in self.terms.items():
            out.setdefault(a, {})[(0, b)] = c
        return {a: QTPoly._raw(d) for a, d in out.items()}

    def to_text(self) -> str:
        return _poly_text(self.terms)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"QTPoly({self.to_text()!r})"


# ---------------------------------------------------------------------------
# QTRatio
# ---------------------------------------------------------------------------

_ONE = {(0, 0): 1}


def _normalize(num: dict, den: dict) -> tuple[dict, dict]:
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, dict(_ONE)
    an, bn = _t_min(num)
    ad, bd = _t_min(den)
    nq, nt = an - ad, bn - bd
    N = _t_shift(num, -an, -bn)
    D = _t_shift(den, -ad, -bd)
    if len(D) == 1:
        c = D[(0, 0)]
        g = math.gcd(c, *N.values())
        if g != 1:
            N = {k: v // g for k, v in N.items()}
            c //= g
        D = {(0, 0): c}
    elif len(N) == 1:
        c = N[(0, 0)]
        g = math.gcd(c, *D.values())
        if g != 1:
            D = {k: v // g for k, v in D.items()}
            N = {(0, 0): c // g}
    elif N == D:
        N, D = dict(_ONE), dict(_ONE)
    else:
        G = _t_gcd(N, D)
        if len(G) != 1 or G.get((0, 0)) != 1:
            N = _t_exquo(N, G)
            D = _t_exquo(D, G)
    if D[_t_lead(D)] < 0:
        N = {k: -v for k, v in N.items()}
        D = {k: -v for k, v in D.items()}
    if nq or nt:
        N = _t_shift(N, max(nq, 0), max(nt, 0))
        D = _t_shift(D, max(-nq, 0), max(-nt, 0))
    return N, D


class QTRatio:
    """Element of Q(q, t) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: "QTPoly | int | Mapping" = 0, den: "QTPoly | int | Mapping" = 1):
        n = _terms_of(num)
        d = _terms_of(den)
        self.num, self.den = _normalize(n, d)
        self._hash = None

    @classmethod
    def _raw(cls, num: dict, den: dict) -> "QTRatio":
        r = cls.__new__(cls)
        r.num = num
        r.den = den
        r._hash = None
        return r

    @classmethod
    def _make(cls, num: dict, den: dict) -> "QTRatio":
        n, d = _normalize(num, den)
        return cls._raw(n, d)

    @classmethod
    def from_poly(cls, p: QTPoly) -> "QTRatio":
        if not p.terms:
            return cls._raw({}, dict(_ONE))
        aq, at = _t_min(p.terms)
        if aq >= 0 and at >= 0:
            return cls._raw(dict(p.terms), dict(_ONE))
        sq, st = max(-aq, 0), max(-at, 0)
        return cls._raw(_t_shift(p.terms, sq, st), {(sq, st): 1})

    @classmethod
    def from_int(cls, n: int) -> "QTRatio":
        return cls._raw({(0, 0): n} if n else {}, dict(_ONE))

    @classmethod
    def from_fraction(cls, f: Fraction) -> "QTRatio":
        if not f:
            return cls._raw({}, dict(_ONE))
        return cls._raw({(0, 0): f.numerator}, {(0, 0): f.denominator})

    @classmethod
    def coerce(cls, x) -> "QTRatio":
        if isinstance(x, QTRatio):
            return x
        if isinstance(x, int):
            return cls.from_int(x)
        if isinstance(x, QTPoly):
            return cls.from_poly(x)
        if isinstance(x, Fraction):
            return cls.from_fraction(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to QTRatio")

    @classmethod
    def q(cls) -> "QTRatio":
        return cls._raw({(1, 0): 1}, dict(_ONE))

    @classmethod
    def t(cls) -> "QTRatio":
        return cls._raw({(0, 1): 1}, dict(_ONE))

    @classmethod
    def monomial(cls, eq: int, et: int, coeff: int = 1) -> "QTRatio":
        return cls.from_poly(QTPoly.monomial(eq, et, coeff))

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_polynomial(self) -> bool:
        """True when the value lies in Q[q, t] with a constant denominator 1."""
        return self.den == _ONE

    def is_laurent(self) -> bool:
        """True when the denominator is a monomial with coefficient 1."""
        return len(self.den) == 1 and next(iter(self.den.values())) == 1

    def is_constant(self) -> bool:
        return (not self.num or set(self.num) == {(0, 0)}) and set(self.den) == {(0, 0)}

    @property
    def numerator(self) -> QTPoly:
        return QTPoly._raw(dict(self.num))

    @property
    def denominator(self) -> QTPoly:
        return QTPoly._raw(dict(self.den))

    def to_laurent(self) -> QTPoly:
        """The value as a Laurent polynomial; raises if it is not one."""
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        ((a, b), _), = self.den.items()
        return QTPoly._raw(_t_shift(self.num, -a, -b))

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(self.num.get((0, 0), 0), self.den[(0, 0)])

    # -- equality ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, QTRatio):
            try:
                other = QTRatio.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            if self.den == _ONE and (not self.num or set(self.num) == {(0, 0)}):
                self._hash = hash(self.num.get((0, 0), 0))
            else:
                self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QTRatio):
            try:
                other = QTRatio.coerce(other)
            except TypeError:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if self.den == _ONE:
                return QTRatio._raw(_t_add(self.num, other.num), self.den)
            return QTRatio._make(_t_add(self.num, other.num), self.den)
        n = _t_add(_t_mul(self.num, other.den), _t_mul(other.num, self.den))
        return QTRatio._make(n, _t_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return QTRatio._raw({k: -v for k, v in self.num.items()}, self.den)

    def __sub__(self, other):
        if not isinstance(other, QTRatio):
            try:
                other = QTRatio.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return QTRatio.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, QTRatio):
            if isinstance(other, int):
                if not other or not self.num:
                    return QTRatio._raw({}, dict(_ONE))
                if self.den == _ONE:
                    return QTRatio._raw({k: v * other for k, v in self.num.items()}, self.den)
            try:
                other = QTRatio.coerce(other)
            except TypeError:
                return NotImplemented
        if not self.num or not other.num:
            return QTRatio._raw({}, dict(_ONE))
        if self.den == _ONE and other.den == _ONE:
            return QTRatio._raw(_t_mul(self.num, other.num), self.den)
        # cross-cancel first: both operands are already reduced
        n1, d2 = _cancel(self.num, other.den)
        n2, d1 = _cancel(other.num, self.den)
        return QTRatio._make(_t_mul(n1, n2), _t_mul(d1, d2))

    __rmul__ = __mul__

    def inverse(self) -> "QTRatio":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(q,t)")
        n, d = self.den, self.num
        if d[_t_lead(d)] < 0:
            n = {k: -v for k, v in n.items()}
            d = {k: -v for k, v in d.items()}
        return QTRatio._raw(n, d)

    def __truediv__(self, other):
        if not isinstance(other, QTRatio):
            try:
                other = QTRatio.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QTRatio.coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r = QTRatio.from_int(1)
        base = self
        while e:
            if e & 1:
                r = r * base
            e >>= 1
            if e:
                base = base * base
        return r

    # -- substitution -----------------------------------------------------
    def invert_params(self) -> "QTRatio":
        """q -> 1/q, t -> 1/t.  Coprimality is preserved, so no gcd is needed."""
        return QTRatio._make_coprime(
            {(-a, -b): c for (a, b), c in self.num.items()},
            {(-a, -b): c for (a, b), c in self.den.items()},
        )

    @classmethod
    def _make_coprime(cls, num: dict, den: dict) -> "QTRatio":
        if not num:
            return cls._raw({}, dict(_ONE))
        an, bn = _t_min(num)
        ad, bd = _t_min(den)
        nq, nt = an - ad, bn - bd
        N = _t_shift(num, -an + max(nq, 0), -bn + max(nt, 0))
        D = _t_shift(den, -ad + max(-nq, 0), -bd + max(-nt, 0))
        if D[_t_lead(D)] < 0:
            N = {k: -v for k, v in N.items()}
            D = {k: -v for k, v in D.items()}
        return cls._raw(N, D)

    def subs(self, q=None, t=None) -> "QTRatio":
        """Substitute integer, Fraction or QTRatio values for q and/or t."""
        def ev(terms):
            acc = QTRatio.from_int(0)
            qv = QTRatio.coerce(q) if q is not None else QTRatio.q()
            tv = QTRatio.coerce(t) if t is not None else QTRatio.t()
            for (a, b), c in terms.items():
                acc = acc + (qv ** a) * (tv ** b) * c
            return acc
        if q is not None and t is None and q == 1:
            # fast path used for q = 1 specializations
            n = _specialize_q1(self.num)
            d = _specialize_q1(self.den)
            if not d:
                raise PoleAtQ1(f"{self} has a pole at q = 1")
            return QTRatio._make(n, d)
        den = ev(self.den)
        if den.is_zero():
            raise ZeroDivisionError(f"denominator of {self} vanishes at the substitution")
        return ev(self.num) / den

    # -- text -------------------------------------------------------------
    def to_text(self) -> str:
        if self.den == _ONE:
            return _poly_text(self.num)
        n = _poly_text(self.num)
        d = _poly_text(self.den)
        if len(self.num) > 1:
            n = f"({n})"
        if not d.isdigit():
            d = f"({d})"
        return f"{n} / {d}"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"QTRatio({self.to_text()!r})"


def _specialize_q1(terms: Mapping) -> dict:
    out: dict = {}
    for (_, b), c in terms.items():
        out[(0, b)] = out.get((0, b), 0) + c
    return {k: v for k, v in out.items() if v}


def _cancel(a: dict, b: dict) -> tuple[dict, dict]:
    """Divide the polynomials a and b by their gcd."""
    if b == _ONE or a == _ONE:
        return a, b
    aq, at = _t_min(a)
    bq, bt = _t_min(b)
    mq, mt = min(aq, bq), min(at, bt)
    A = _t_shift(a, -aq, -at)
    B = _t_shift(b, -bq, -bt)
    if len(A) == 1 or len(B) == 1:
        g = math.gcd(*A.values(), *B.values())
        if g != 1:
            A = {k: v // g for k, v in A.items()}
            B = {k: v // g for k, v in B.items()}
    else:
        G = _t_gcd(A, B)
        if len(G) != 1 or G.get((0, 0)) != 1:
            A = _t_exquo(A, G)
            B = _t_exquo(B, G)
    return _t_shift(A, aq - mq, at - mt), _t_shift(B, bq - mq, bt - mt)


def _terms_of(x) -> dict:
    if isinstance(x, QTPoly):
        return dict(x.terms)
    if isinstance(x, int):
        return {(0, 0): x} if x else {}
    if isinstance(x, Mapping):
        return {k: v for k, v in x.items() if v}
    raise TypeError(f"cannot build polynomial terms from {type(x).__name__}")


def poly_gcd(a: QTPoly, b: QTPoly) -> QTPoly:
    """gcd in the Laurent ring, normalized to a polynomial without monomial
    factor and with positive leading coefficient (lex on ``(e_q, e_t)``)."""
    if not a.terms and not b.terms:
        return QTPoly()
    if not a.terms or not b.terms:
        p = a if a.terms else b
        terms = _t_shift(p.terms, *(-e for e in _t_min(p.terms)))
        if terms[_t_lead(terms)] < 0:
            terms = {k: -v for k, v in terms.items()}
        return QTPoly._raw(terms)
    A = _t_shift(a.terms, *(-e for e in _t_min(a.terms)))
    B = _t_shift(b.terms, *(-e for e in _t_min(b.terms)))
    return QTPoly._raw(_t_gcd(A, B))


# ---------------------------------------------------------------------------
# vanishing order and (q - 1)-expansions
# ---------------------------------------------------------------------------

class _OrdInfinity:
    """Order of the zero function; larger than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("qtmac-ord-infinity")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


INFINITY = _OrdInfinity()


def _ord_terms(terms: Mapping) -> int:
    """Multiplicity of q = 1 as a root of a nonzero polynomial (Laurent ok)."""
    shift = min(a for a, _ in terms)
    k = 0
    while True:
        acc: dict = {}
        for (a, b), c in terms.items():
            w = math.comb(a - shift, k)
            if w:
                acc[b] = acc.get(b, 0) + w * c
        if any(acc.values()):
            return k
        k += 1


def ord_at_q1(f) -> "int | _OrdInfinity":
    """The sharp k with f = O_1((q-1)^k); ``INFINITY`` for f = 0."""
    if isinstance(f, QTPoly):
        return _ord_terms(f.terms) if f.terms else INFINITY
    f = QTRatio.coerce(f)
    if not f.num:
        return INFINITY
    return _ord_terms(f.num) - _ord_terms(f.den)


def divide_by_qm1(f, k: int) -> QTRatio:
    """Exact division of f by (q - 1)^k by repeated synthetic division in q.

    Raises ``NonExactDivision`` when ``ord_at_q1(f) < k``."""
    f = QTRatio.coerce(f)
    if not f.num or k == 0:
        return f
    rows = _to_qmain(f.num)
    for _ in range(k):
        # synthetic division by (q - 1): coefficients from the top down
        out: list = [[] for _ in range(len(rows) - 1)]
        carry: list = []
        for a in range(len(rows) - 1, 0, -1):
            carry = _u_add(carry, rows[a])
            out[a - 1] = carry
        if _u_add(carry, rows[0]):
            raise NonExactDivision(f"{f} is not divisible by (q-1)^{k}")
        rows = _b_trim(out)
    return QTRatio._raw(_from_qmain(rows), f.den)


def _shift_to_q1(terms: Mapping) -> dict[int, dict]:
    """Coefficients of P(1 + s, t) = sum_k P_k(t) s^k, as ``{k: {e_t: c}}``."""
    out: dict[int, dict] = {}
    for (a, b), c in terms.items():
        if a < 0:
            raise ValueError("negative q-exponent in polynomial")
        for k in range(a + 1):
            row = out.setdefault(k, {})
            row[b] = row.get(b, 0) + math.comb(a, k) * c
    return out


def taylor_coeff_at_q1(f, k: int) -> QTRatio:
    """Coefficient of (q-1)^k in the Taylor expansion of f about q = 1.

    The coefficient is an element of Q(t); f must not have a pole at q = 1."""
    f = QTRatio.coerce(f)
    if not f.num:
        return QTRatio.from_int(0)
    n = _shift_to_q1(f.num)
    d = _shift_to_q1(f.den)

    def as_ratio(row):
        return QTRatio._make({(0, b): c for b, c in row.items() if c} if row else {}, dict(_ONE))

    d0 = as_ratio(d.get(0, {}))
    if d0.is_zero():
        raise PoleAtQ1(f"{f} has a pole at q = 1")
    coeffs: list[QTRatio] = []
    for j in range(k + 1):
        acc = as_ratio(n.get(j, {}))
        for i in range(1, j + 1):
            di = d.get(i)
            if di:
                acc = acc - as_ratio(di) * coeffs[j - i]
        coeffs.append(acc / d0)
    return coeffs[k]


def qm1_coeff(f, k: int, zero: R | None = None) -> R:
    """The coefficient [(q-1)^k] f of a Laurent polynomial in q.

    ``f`` is either a ``QTPoly`` (the coefficient ring is then the Laurent
    ring in t and the result a ``QTPoly``) or a mapping ``{e_q: coeff}``
    with coefficients in any ring supporting ``+`` and ``* int``.  The
    expansion is of ``q^deg(f) f`` about q = 1, where ``deg(f)`` is the
    smallest nonnegative integer making that product a polynomial in q.
    """
    if isinstance(f, QTPoly):
        mapping: Mapping = f.coefficients_in_q()
        zero = QTPoly() if zero is None else zero
    else:
        mapping = f
    if not mapping:
        if zero is None:
            raise ValueError("zero Laurent polynomial needs an explicit zero")
        return zero
    deg = max(0, -min(mapping))
    acc = zero
    for e, c in mapping.items():
        w = math.comb(e + deg, k)
        if w:
            acc = c * w if acc is None else acc + c * w
    if acc is None:
        acc = zero if zero is not None else next(iter(mapping.values())) * 0
    return acc


def invert_params(f):
    """Substitute q -> 1/q and t -> 1/t."""
    if isinstance(f, QTPoly):
        return f.invert_params()
    return QTRatio.coerce(f).invert_params()


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

def _mono_text(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("q" if a == 1 else f"q^{a}")
    if b:
        parts.append("t" if b == 1 else f"t^{b}")
    return "*".join(parts)


def _poly_text(terms: Mapping) -> str:
    if not terms:
        return "0"
    out = []
    for k in sorted(terms):
        c = terms[k]
        m = _mono_text(*k)
        mag = abs(c)
        if m:
            body = m if mag == 1 else f"{mag}*{m}"
        else:
            body = str(mag)
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)


_TERM_RE = re.compile(r"\s*([+-])?\s*((?:\d+)|(?:[qt](?:\^-?\d+)?))((?:\s*\*\s*[qt](?:\^-?\d+)?)*)")


def parse_poly(text: str) -> QTPoly:
    """Inverse of ``QTPoly.to_text``; accepts ``3*q^2*t - t^-1 + 5`` etc."""
    text = text.strip()
    if text == "0":
        return QTPoly()
    pos = 0
    terms: dict = {}
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial text at {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        head, rest = m.group(2), m.group(3)
        factors = [head] + [x.strip() for x in rest.split("*") if x.strip()]
        coeff, a, b = 1, 0, 0
        for fac in factors:
            if fac[0].isdigit():
                coeff *= int(fac)
            else:
                e = int(fac[2:]) if "^" in fac else 1
                if fac[0] == "q":
                    a += e
                else:
                    b += e
        terms[(a, b)] = terms.get((a, b), 0) + sign * coeff
        pos = m.end()
    return QTPoly(terms)


def parse_qt(text: str) -> QTRatio:
    """Parse the canonical text form ``num`` or ``num / den``."""
    depth = 0
    split_at = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            split_at = i
    def strip_parens(s: str) -> str:
        s = s.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        return s
    if split_at is None:
        return QTRatio.from_poly(parse_poly(strip_parens(text)))
    return QTRatio(parse_poly(strip_parens(text[:split_at])),
                   parse_poly(strip_parens(text[split_at + 1:])))


q = QTRatio.q()
t = QTRatio.t()


def qt_sum(items: Iterable) -> QTRatio:
    acc = QTRatio.from_int(0)
    for x in items:
        acc = acc + x
    return acc


def apply_coeffwise(f: Callable[[QTRatio], QTRatio], mapping: Mapping) -> dict:
    out = {}
    for k, v in mapping.items():
        w = f(v)
        if w:
            out[k] = w
    return out
