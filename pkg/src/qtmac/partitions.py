"""Integer partitions, dominance, entry-wise sums and hook statistics.

Young diagrams use French coordinates: the box ``(i, j)`` sits in column
``i`` and row ``j`` and belongs to ``lam`` iff ``i <= lam[j-1]``.
"""
from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .qtalgebra import QTPoly, QTRatio


class Order(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"

    def __str__(self) -> str:
        return self.value


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts: tuple) -> "Partition":
        return tuple.__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, j: int) -> int:
        """1-based part with zero padding."""
        return self[j - 1] if 1 <= j <= len(self) else 0

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition._trusted(tuple(sum(1 for p in self if p >= i) for i in range(1, self[0] + 1)))

    def boxes(self) -> Iterator["Box"]:
        for j, row in enumerate(self, start=1):
            for i in range(1, row + 1):
                yield Box(i, j)

    def padded(self, n: int) -> tuple:
        if n < len(self):
            raise ValueError(f"{self} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))

    def n_stat(self) -> int:
        """n(lam) = sum (j-1) lam_j."""
        return sum(j * p for j, p in enumerate(self))

    def z(self) -> int:
        """Centralizer order z_lam = prod i^{m_i} m_i!."""
        out = 1
        for part, mult in Counter(self).items():
            out *= part**mult * math.factorial(mult)
        return out

    def to_text(self) -> str:
        return ",".join(map(str, self)) if self else "-"

    def __repr__(self) -> str:
        return f"Partition({self.to_text()})"

    def __str__(self) -> str:
        return self.to_text()


EMPTY = Partition()


@dataclass(frozen=True, order=True)
class Box:
    i: int  # column
    j: int  # row

    def __post_init__(self):
        if self.i < 1 or self.j < 1:
            raise ValueError(f"box coordinates start at 1: {self}")


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("-", ""):
        return EMPTY
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"cannot parse partition {text!r}") from None
    return Partition(parts)


def parse_family(text: str) -> list[Partition]:
    return [parse_partition(x) for x in text.split(";")]


def family_text(family: Sequence[Partition]) -> str:
    return ";".join(p.to_text() for p in family)


def oplus(*parts: Sequence[int]) -> Partition:
    """Entry-wise sum; with no arguments returns the empty partition."""
    n = max((len(p) for p in parts), default=0)
    return Partition._trusted(tuple(sum(p[k] for p in parts if k < len(p)) for k in range(n)))


def family_sum(family: Sequence[Partition], subset: Iterable[int]) -> Partition:
    """lam^I for a subset I of 1-based indices."""
    return oplus(*(family[i - 1] for i in subset))


def dominance(lam: Partition, mu: Partition) -> Order:
    if sum(lam) != sum(mu):
        raise ValueError(f"dominance needs equal sizes: {lam} vs {mu}")
    if tuple(lam) == tuple(mu):
        return Order.EQUAL
    le = ge = True
    a = b = 0
    for k in range(max(len(lam), len(mu))):
        a += lam[k] if k < len(lam) else 0
        b += mu[k] if k < len(mu) else 0
        if a > b:
            le = False
        elif a < b:
            ge = False
        if not le and not ge:
            return Order.INCOMPARABLE
    return Order.LESS if le else Order.GREATER


def extended_preceq(lam: Partition, mu: Partition) -> Order:
    """Dominance refined by size: strictly smaller sizes are below."""
    a, b = sum(lam), sum(mu)
    if a < b:
        return Order.LESS
    if a > b:
        return Order.GREATER
    return dominance(lam, mu)


def dominated_by(lam: Partition, mu: Partition) -> bool:
    """lam <= mu in dominance (equal sizes required)."""
    return dominance(lam, mu) in (Order.LESS, Order.EQUAL)


def _check_box(lam: Partition, b: Box) -> None:
    if b.j > len(lam) or b.i > lam[b.j - 1]:
        raise ValueError(f"box {b} is not in {lam}")


def arm(lam: Partition, b: Box) -> int:
    _check_box(lam, b)
    return lam[b.j - 1] - b.i


def leg(lam: Partition, b: Box) -> int:
    _check_box(lam, b)
    return sum(1 for p in lam if p >= b.i) - b.j


def hook_factors(lam: Partition) -> Counter:
    """Multiset of exponent pairs (arm, leg + 1), one per box."""
    conj = lam.conjugate()
    out: Counter = Counter()
    for j, row in enumerate(lam, start=1):
        for i in range(1, row + 1):
            out[(row - i, conj[i - 1] - j + 1)] += 1
    return out


def factors_to_poly(factors: Counter) -> QTPoly:
    """prod (1 - q^a t^b)^m over a multiset of exponent pairs."""
    out = QTPoly(1)
    for (a, b), m in sorted(factors.items()):
        out = out * QTPoly({(0, 0): 1, (a, b): -1}) ** m
    return out


@lru_cache(maxsize=None)
def _hook_poly(lam: tuple) -> QTPoly:
    return factors_to_poly(hook_factors(Partition._trusted(lam)))


def hook_poly(lam: Partition) -> QTPoly:
    """The (q,t)-hook polynomial prod over boxes of 1 - q^arm t^(leg+1)."""
    return _hook_poly(tuple(lam))


def partition_binomial(lam: Partition, j: int, N: int) -> QTPoly:
    """b^N_j(lam) = sum_i C(lam_i, j) t^(N-i)."""
    if j < 1:
        raise ValueError("j must be at least 1")
    if N < len(lam):
        raise ValueError(f"N={N} is smaller than the length of {lam}")
    terms: dict = {}
    for i, p in enumerate(lam, start=1):
        c = math.comb(p, j)
        if c:
            terms[(0, N - i)] = c
    return QTPoly(terms)


def tilde_point(mu: Partition, N: int) -> list[QTRatio]:
    """The evaluation point (q^{mu_i} t^{N-i})_{i=1..N}."""
    if N < len(mu):
        raise ValueError(f"N={N} is smaller than the length of {mu}")
    return [QTRatio.monomial(mu.part(i), N - i) for i in range(1, N + 1)]


def _sorted_columns(family: Sequence[Partition], subset: Iterable[int]) -> list[tuple[int, int, int]]:
    """Columns of the diagrams in the subset as (length, diagram, column),
    sorted by decreasing length, ties broken by diagram then column."""
    cols = []
    for g in sorted(subset):
        conj = family[g - 1].conjugate()
        for c, length in enumerate(conj, start=1):
            cols.append((length, g, c))
    cols.sort(key=lambda x: (-x[0], x[1], x[2]))
    return cols


def arm_in_sum(family: Sequence[Partition], g: int, b: Box, subset: Iterable[int]) -> int:
    """a_I(b): the arm of the box b of lam^g inside lam^I, via the
    column-sorting identification of boxes."""
    subset = set(subset)
    if g not in subset:
        raise ValueError(f"index {g} not in subset {sorted(subset)}")
    _check_box(family[g - 1], b)
    cols = _sorted_columns(family, subset)
    pos = cols.index((family[g - 1].conjugate()[b.i - 1], g, b.i))
    return sum(1 for length, _, _ in cols[pos + 1:] if length >= b.j)


def arm_split(family: Sequence[Partition], g: int, b: Box, subset: Iterable[int]) -> dict[int, int]:
    """The contributions a_i(b), i in I, whose sum is a_I(b).

    For i < g count boxes in row b.j of lam^i whose column is strictly
    shorter than the column of b; for i > g count those whose column is at
    most as long; for i = g it is the usual arm.
    """
    subset = sorted(set(subset))
    if g not in subset:
        raise ValueError(f"index {g} not in subset {subset}")
    lam = family[g - 1]
    _check_box(lam, b)
    height = lam.conjugate()[b.i - 1]
    out = {}
    for i in subset:
        if i == g:
            out[i] = arm(lam, b)
            continue
        other = family[i - 1]
        conj = other.conjugate()
        row_len = other.part(b.j)
        if i < g:
            out[i] = sum(1 for c in range(1, row_len + 1) if conj[c - 1] < height)
        else:
            out[i] = sum(1 for c in range(1, row_len + 1) if conj[c - 1] <= height)
    return out


@lru_cache(maxsize=None)
def _partitions(n: int, cap: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [Partition._trusted(p) for p in _partitions(n, n)]


def enumerate_up_to(n: int) -> list[Partition]:
    """All partitions of size <= n, by size then reverse-lex."""
    return [p for k in range(n + 1) for p in enumerate_partitions(k)]


def partitions_with_max_part(n: int, max_part: int) -> list[Partition]:
    return [Partition._trusted(p) for p in _partitions(n, min(n, max_part))] if n else [EMPTY]


def families(r: int, max_size: int, min_part_size: int = 1) -> Iterator[tuple[Partition, ...]]:
    """Ordered r-tuples of nonempty partitions with total size <= max_size."""
    def rec(k: int, budget: int):
        if k == 0:
            yield ()
            return
        for s in range(min_part_size, budget - min_part_size * (k - 1) + 1):
            for lam in enumerate_partitions(s):
                for rest in rec(k - 1, budget - s):
                    yield (lam,) + rest
    yield from rec(r, max_size)


def multisets_of_partitions(r: int, max_size: int) -> Iterator[tuple[Partition, ...]]:
    """Families up to reordering: weakly decreasing in (size, reverse-lex) order."""
    order = {p: k for k, p in enumerate(enumerate_up_to(max_size))}
    for fam in families(r, max_size):
        keys = [order[p] for p in fam]
        if keys == sorted(keys):
            yield fam
