"""Ordinary and multivariate q,t-Kostka numbers and their audits.

The multivariate numbers K_{mu; lam^1..lam^r} are the coefficients of
s_mu[X(1-t)] in the J-cumulant of the family, divided by (q-1)^(r-1).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cumulants import full, kappa, macdonald_family
from .partitions import Partition, enumerate_partitions, family_text
from .qtalgebra import NonExactDivision, QTRatio, divide_by_qm1
from .symfunc import Basis, SymFunc, change_basis, expand_in_plethystic_schur

ZERO = QTRatio.from_int(0)


class KostkaDivisionError(ArithmeticError):
    """The cumulant coefficient is not divisible by (q-1)^(r-1)."""


@dataclass(frozen=True)
class EntryFlags:
    polynomial: bool
    integer: bool
    nonnegative: bool


def flags_of(x: QTRatio) -> EntryFlags:
    den = x.den
    if list(den) != [(0, 0)] or any(a < 0 or b < 0 for a, b in x.num):
        return EntryFlags(False, False, False)
    # canonical form: integer numerator coprime to a positive constant denominator
    integer = den[(0, 0)] == 1
    return EntryFlags(True, integer, integer and all(c >= 0 for c in x.num.values()))


@dataclass
class KostkaTable:
    family: tuple
    entries: dict  # Partition -> QTRatio, every mu of the right size
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        # reverse-lexicographic order, independent of where entries came from
        self.entries = dict(sorted(self.entries.items(), key=lambda kv: tuple(kv[0]), reverse=True))
        if not self.flags:
            self.flags = {mu: flags_of(c) for mu, c in self.entries.items()}

    @property
    def r(self) -> int:
        return len(self.family)

    @property
    def size(self) -> int:
        return sum(map(sum, self.family))

    def __getitem__(self, mu) -> QTRatio:
        return self.entries.get(Partition(mu), ZERO)

    def to_symfunc(self) -> SymFunc:
        return SymFunc(Basis.PLETHYSTIC_SCHUR, {mu: c for mu, c in self.entries.items() if c})

    def rows(self) -> list[tuple[str, str]]:
        return [(mu.to_text(), c.to_text()) for mu, c in self.entries.items()]


def multivariate_kostka(family: Sequence[Partition]) -> KostkaTable:
    family = tuple(Partition(p) for p in family)
    r = len(family)
    if r < 1:
        raise ValueError("need at least one partition")
    fam = macdonald_family("J", family)
    k = kappa(fam.values, full(r))
    n = sum(map(sum, family))
    if k.is_zero():
        pleth = SymFunc(Basis.PLETHYSTIC_SCHUR)
    else:
        pleth = expand_in_plethystic_schur(k, n)
    entries = {}
    for mu in enumerate_partitions(n):
        c = pleth[mu]
        try:
            entries[mu] = divide_by_qm1(c, r - 1)
        except NonExactDivision:
            raise KostkaDivisionError(
                f"coefficient of s_{mu.to_text()}[X(1-t)] for {family_text(family)} "
                f"is not divisible by (q-1)^{r - 1}: {c}") from None
    return KostkaTable(family, entries)


def reexpand(table: KostkaTable) -> SymFunc:
    """(q-1)^(r-1) sum_mu K_mu s_mu[X(1-t)], in the monomial basis."""
    scale = (QTRatio.monomial(1, 0) - 1) ** (table.r - 1)
    return change_basis(table.to_symfunc().scale(scale), Basis.MONOMIAL)


@dataclass
class KostkaAudit:
    family: tuple
    polynomial: bool
    integer: bool
    nonnegative: bool
    scaled_integer: bool
    offenders: dict = field(default_factory=dict)  # flag name -> list of mu

    @property
    def integrality_ok(self) -> bool:
        return self.polynomial and self.integer and self.scaled_integer

    def line(self) -> str:
        fam = family_text(self.family)
        status = "PASS" if self.integrality_ok else "FAIL"
        conj = "holds" if self.nonnegative else "VIOLATED"
        return (f"{status} kostka {fam}: polynomial={self.polynomial} integer={self.integer}; "
                f"positivity (conjecture) {conj}")


def audit(table: KostkaTable) -> KostkaAudit:
    offenders: dict = {"polynomial": [], "integer": [], "nonnegative": [], "scaled": []}
    scale = (QTRatio.monomial(1, 0) - 1) ** (table.r - 1)
    for mu, c in table.entries.items():
        f = table.flags[mu]
        if not f.polynomial:
            offenders["polynomial"].append(mu)
        if not f.integer:
            offenders["integer"].append(mu)
        if not f.nonnegative:
            offenders["nonnegative"].append(mu)
        if not flags_of(c * scale).integer:
            offenders["scaled"].append(mu)
    return KostkaAudit(
        table.family,
        polynomial=not offenders["polynomial"],
        integer=not offenders["integer"],
        nonnegative=not offenders["nonnegative"],
        scaled_integer=not offenders["scaled"],
        offenders={k: v for k, v in offenders.items() if v},
    )
