"""Property suites over all families within a size budget.

Each suite returns a ``SuiteResult``; families are visited in increasing
total size, so the first recorded failure is a smallest counterexample.
"""
from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import cumulants as cu
from .kostka import KostkaDivisionError, audit, multivariate_kostka
from .macdonald import (
    J,
    check_interp_properties,
    compute_interp,
    compute_J_gram_schmidt,
    compute_P_then_J,
    verify_interp_eigen,
)
from .operators import NVarPoly
from .partitions import (
    Partition,
    enumerate_partitions,
    enumerate_up_to,
    families,
    family_text,
    multisets_of_partitions,
    oplus,
)
from .qtalgebra import QTRatio
from .setpartitions import (
    SetPartition,
    enumerate_set_partitions,
    interval,
    mobius,
    weisner_sum,
)
from .symfunc import SymFunc


@dataclass
class Budget:
    max_size: int = 5
    r: int = 3
    N: int | None = None  # None: N = |lam^[r]|
    jobs: int = 1
    seed: int = 0
    samples: int = 100


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    lines: list = field(default_factory=list)
    counterexample: str = ""
    conjecture: bool = False  # a failure is evidence against a conjecture, not a bug

    def summary(self) -> str:
        if self.conjecture:
            status = "HOLDS" if self.passed else "COUNTEREXAMPLE"
            head = f"{status} {self.name} (conjecture): {self.checked} cases"
        else:
            head = f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.checked} cases"
        return head + (f"; first failure: {self.counterexample}" if self.counterexample else "")


def parallel_map(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    """Order-preserving map; a process pool when jobs > 1."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _by_size(fams: Iterable) -> list:
    return sorted(fams, key=lambda f: (sum(map(sum, f)), [tuple(-x for x in p) for p in f]))


def _collect(name: str, outcomes: list, conjecture: bool = False) -> SuiteResult:
    """outcomes: list of (passed, line)."""
    lines = [line for _, line in outcomes]
    bad = [line for ok, line in outcomes if not ok]
    return SuiteResult(name, not bad, len(outcomes), lines, bad[0] if bad else "", conjecture)


# ---------------------------------------------------------------------------
# Macdonald polynomials
# ---------------------------------------------------------------------------

def _dual(lam: Partition):
    a = compute_P_then_J(lam).expansion
    b = compute_J_gram_schmidt(lam).expansion
    return a == b, f"dual-route {lam.to_text()}"


def suite_dual_route(b: Budget) -> SuiteResult:
    lams = [lam for n in range(1, b.max_size + 1) for lam in enumerate_partitions(n)]
    return _collect("dual-route", parallel_map(_dual, lams, b.jobs))


def _at_q1(f: SymFunc) -> SymFunc:
    return f.map_coeffs(lambda c: c.subs(q=1))


def _q1_pair(pair):
    lam, mu = pair
    lhs = _at_q1(J(oplus(lam, mu)))
    rhs = _at_q1(cu._mul(J(lam), J(mu)))
    return lhs == rhs, f"q1-factorization {lam.to_text()} + {mu.to_text()}"


def suite_q1_factorization(b: Budget) -> SuiteResult:
    pairs = [(lam, mu) for lam in enumerate_up_to(b.max_size) if lam
             for mu in enumerate_up_to(b.max_size - sum(lam)) if mu]
    pairs.sort(key=lambda p: (sum(p[0]) + sum(p[1]), p))
    return _collect("q1-factorization", parallel_map(_q1_pair, pairs, b.jobs))


def _eigen(lam: Partition):
    rep = verify_interp_eigen(compute_interp(lam))
    return rep.passed, rep.line()


def suite_eigen(b: Budget) -> SuiteResult:
    lams = [lam for lam in enumerate_up_to(b.max_size) if lam]
    return _collect("eigen", parallel_map(_eigen, lams, b.jobs))


def _interp_props(lam: Partition):
    rep = check_interp_properties(lam)
    return rep.passed, rep.line()


def suite_interp(b: Budget) -> SuiteResult:
    lams = [lam for lam in enumerate_up_to(b.max_size) if lam]
    return _collect("interp-properties", parallel_map(_interp_props, lams, b.jobs))


# ---------------------------------------------------------------------------
# cumulant properties
# ---------------------------------------------------------------------------

def _scp(args):
    kind, fam, N = args
    rep = cu.check_small_cumulant(kind, fam, N)
    return rep.passed, rep.line()


def scp_cases(b: Budget, kinds=("J", "interp"), interp_max: int | None = None) -> list:
    cases = []
    for kind in kinds:
        cap = b.max_size if kind == "J" or interp_max is None else min(b.max_size, interp_max)
        for r in range(2, b.r + 1):
            for fam in _by_size(families(r, cap)):
                N = None if kind == "J" else (b.N or sum(map(sum, fam)))
                if N is not None and N < max(len(p) for p in fam):
                    continue
                cases.append((kind, fam, N))
    return cases


def suite_scp(b: Budget, kinds=("J", "interp"), interp_max: int | None = None) -> SuiteResult:
    return _collect("scp", parallel_map(_scp, scp_cases(b, kinds, interp_max), b.jobs))


def _sfp(fam):
    rep = cu.check_strong_factorization("hook", fam)
    return rep.passed, rep.line()


def suite_sfp(b: Budget) -> SuiteResult:
    fams = [f for r in range(2, b.r + 1) for f in _by_size(families(r, b.max_size))]
    return _collect("sfp", parallel_map(_sfp, fams, b.jobs))


def _boxed(max_part: int, max_len: int) -> list[Partition]:
    out = []
    for n in range(1, max_part * max_len + 1):
        out.extend(p for p in enumerate_partitions(n) if p[0] <= max_part and len(p) <= max_len)
    return out


def _ie_family(args):
    fam, n_max = args
    r = len(fam)
    length = max(len(p) for p in fam)
    for N in range(length, n_max + 1):
        for j in range(1, r):
            v = cu.IE(fam, j, N)
            if not v.is_zero():
                return False, f"IE_{j}({family_text(fam)}) N={N} = {v}"
    return True, f"IE {family_text(fam)}"


def suite_ie(b: Budget, max_part: int | None = None, n_max: int | None = None) -> SuiteResult:
    """IE_j vanishes for 1 <= j < r.  Families are taken up to reordering
    (IE is symmetric in its arguments).  With ``max_part`` set, partitions
    range over the box with parts <= max_part and length <= n_max; otherwise
    over total size <= max_size."""
    if max_part is not None:
        n_max = n_max or 4
        pool = _boxed(max_part, n_max)
        fams = [f for r in range(2, b.r + 1) for f in itertools.combinations_with_replacement(pool, r)]
    else:
        fams = [f for r in range(2, b.r + 1) for f in multisets_of_partitions(r, b.max_size)]
        n_max = n_max or b.max_size
    cases = [(f, n_max) for f in fams]
    return _collect("ie", parallel_map(_ie_family, cases, b.jobs))


def ie_one_matches_binomial(lams: Iterable[Partition], n_max: int) -> list:
    from .partitions import partition_binomial

    out = []
    for lam in lams:
        for N in range(len(lam), n_max + 1):
            ok = cu.IE([lam], 1, N) == partition_binomial(lam, 1, N)
            out.append((ok, f"IE_1({lam.to_text()}) N={N}"))
    return out


# ---------------------------------------------------------------------------
# set partitions
# ---------------------------------------------------------------------------

def _mobius_recurrence(r: int) -> list:
    out = []
    parts = enumerate_set_partitions(r)
    for pi in parts:
        for sigma in parts:
            if not pi.refines(sigma):
                continue
            total = sum(mobius(pi, w) for w in interval(pi, sigma))
            ok = total == (1 if pi == sigma else 0)
            out.append((ok, f"mobius-sum {pi} {sigma}"))
    return out


def _weisner_all(r: int, rng: random.Random | None = None, samples: int = 0) -> list:
    parts = enumerate_set_partitions(r)
    triples = []
    for pi in parts:
        ups = [s for s in parts if pi.refines(s)]
        for tau in ups:
            if tau == pi:
                continue
            for sigma in ups:
                if tau.refines(sigma):
                    triples.append((pi, tau, sigma))
    if rng is not None:
        triples = rng.sample(triples, min(samples, len(triples)))
    return [(weisner_sum(*tr) == 0, f"weisner {tr[0]} {tr[1]} {tr[2]}") for tr in triples]


def suite_weisner(b: Budget, exhaustive_up_to: int = 5, sampled: int = 6) -> SuiteResult:
    out = []
    for r in range(1, exhaustive_up_to + 1):
        out += _mobius_recurrence(r)
        out += _weisner_all(r)
    if sampled:
        rng = random.Random(b.seed)
        out += _weisner_all(sampled, rng, b.samples * 5)
        parts = enumerate_set_partitions(sampled)
        for pi in rng.sample(parts, min(b.samples, len(parts))):
            sigma = SetPartition.coarsest(range(1, sampled + 1))
            total = sum(mobius(pi, w) for w in interval(pi, sigma))
            out.append((total == (1 if pi == sigma else 0), f"mobius-sum {pi} {sigma}"))
    return _collect("weisner", out)


# ---------------------------------------------------------------------------
# deformed Leibniz identity
# ---------------------------------------------------------------------------

def random_nvar(rng: random.Random, N: int, degree: int, terms: int = 4) -> NVarPoly:
    out = {}
    for _ in range(terms):
        e = [0] * N
        for _ in range(rng.randint(0, degree)):
            e[rng.randrange(N)] += 1
        out[tuple(e)] = QTRatio.from_int(rng.randint(-3, 3))
    return NVarPoly(N, out)


def leibniz_instance(rng: random.Random):
    r = rng.randint(1, 3)
    k = rng.randint(1, 3)
    N = rng.randint(1, 2)
    i = rng.randrange(N)
    vals = {s: random_nvar(rng, N, 3) for s in cu.subsets(range(1, r + 1)) if s}
    d = lambda f: f.derivative(i)  # noqa: E731
    lhs = cu.deformed_action(vals, k, d)
    rhs = cu.deformed_action_rhs(vals, k, d)
    return lhs == rhs, f"leibniz r={r} k={k} N={N} d/dx_{i + 1}"


def suite_leibniz(b: Budget) -> SuiteResult:
    rng = random.Random(b.seed)
    return _collect("leibniz", [leibniz_instance(rng) for _ in range(max(b.samples, 100))])


# ---------------------------------------------------------------------------
# scalar families: stability and equivalence
# ---------------------------------------------------------------------------

QM1 = QTRatio.monomial(1, 0) - 1


def random_unit_family(rng: random.Random, r: int, excess: Callable[[int], int]) -> cu.IndexedFamily:
    """u_G = prod_{g in G} u_g * prod_{H subset G, |H|>=2} (1 + T_H), with T_H
    a random multiple of (q-1)^e, e = max(1, |H|-1+excess(|H|)), so every
    value is 1 + O((q-1))."""
    tt = QTRatio.t()
    singles = {g: 1 + QM1 * rng.randint(-2, 2) * tt ** rng.randint(0, 2) for g in range(1, r + 1)}
    ts = {}
    for H in cu.subsets(range(1, r + 1)):
        if len(H) >= 2:
            e = max(1, len(H) - 1 + excess(len(H)))
            c = rng.choice([1, -1, 2]) * tt ** rng.randint(0, 2) + rng.randint(-1, 1)
            ts[H] = QM1 ** e * c
    vals = {}
    for G in cu.subsets(range(1, r + 1)):
        if not G:
            continue
        v = QTRatio.from_int(1)
        for g in G:
            v = v * singles[g]
        for H, T in ts.items():
            if H <= G:
                v = v * (1 + T)
        vals[G] = v
    return cu.IndexedFamily(r, vals, "random units")


def suite_stability(b: Budget) -> SuiteResult:
    """Entrywise products and quotients of families with the strong
    factorization property keep it."""
    rng = random.Random(b.seed)
    out = []
    for n in range(max(b.samples // 2, 20)):
        r = rng.randint(2, min(b.r, 3) if b.r >= 2 else 2)
        sources = [
            lambda: random_unit_family(rng, r, lambda h: rng.randint(0, 1)),
            lambda: cu.hook_family([Partition(rng.choice(enumerate_up_to(3)[1:])) for _ in range(r)]),
        ]
        u = rng.choice(sources)()
        v = rng.choice(sources)()
        if not (cu.has_sfp(u, r) and cu.has_sfp(v, r)):
            out.append((False, f"stability sample {n}: source family lacks the property"))
            continue
        prod = u.entrywise(v, lambda a, c: a * c)
        quot = u.entrywise(v, lambda a, c: a / c)
        ok = cu.has_sfp(prod, r) and cu.has_sfp(quot, r) and cu.has_scp(prod, r) and cu.has_scp(quot, r)
        out.append((ok, f"stability sample {n} r={r}"))
    return _collect("stability", out)


def suite_equivalence(b: Budget) -> SuiteResult:
    """For random unit families the two properties hold or fail together."""
    rng = random.Random(b.seed + 1)
    out = []
    for n in range(b.samples):
        r = rng.randint(2, max(2, min(b.r, 4)))
        fam = random_unit_family(rng, r, lambda h: rng.choice([-1, 0, 0, 1]))
        sfp, scp = cu.has_sfp(fam, r), cu.has_scp(fam, r)
        out.append((sfp == scp, f"equivalence sample {n} r={r} sfp={sfp} scp={scp}"))
    return _collect("equivalence", out)


def suite_geometric_family(b: Budget) -> SuiteResult:
    rng = random.Random(b.seed + 2)
    out = []
    tt = QTRatio.t()
    for n in range(b.samples):
        size = rng.randint(1, 3)
        C = rng.choice([tt, tt ** 2, QTRatio.from_int(2)])
        c = rng.randint(0, 3)
        cs = {i: rng.randint(0, 3) for i in range(1, size + 1)}
        fam = cu.geometric_family(list(range(1, size + 1)), C, c, cs)
        ok = all(cu.ord_at_q1(cu.T_error(fam, H)) >= len(H)
                 for H in cu.subsets(range(1, size + 1)) if len(H) >= 2)
        out.append((ok, f"geometric-family C={C} c={c} c_i={cs}"))
    return _collect("geometric-family", out)


def _top_monomial(fam):
    from .partitions import Order, extended_preceq, family_sum

    r = len(fam)
    N = sum(map(sum, fam))
    rep = cu.check_small_cumulant("interp", fam, N)
    k = rep.kappas[cu.full(r)]
    top = family_sum(fam, range(1, r + 1))
    support_ok = all(extended_preceq(mu, top) in (Order.LESS, Order.EQUAL) for mu in k.coeffs)
    lead_ok = cu.ord_at_q1(k[top]) >= r - 1
    return support_ok and lead_ok, f"top-monomial {family_text(fam)}"


def suite_top_monomial(b: Budget) -> SuiteResult:
    fams = [f for r in range(2, b.r + 1) for f in _by_size(families(r, b.max_size))]
    return _collect("top-monomial", parallel_map(_top_monomial, fams, b.jobs))


# ---------------------------------------------------------------------------
# Kostka
# ---------------------------------------------------------------------------

def _kostka(fam):
    try:
        a = audit(multivariate_kostka(fam))
    except KostkaDivisionError as exc:
        return False, False, f"kostka {family_text(fam)}: {exc}"
    return a.integrality_ok, a.nonnegative, a.line()


def _kostka_cases(b: Budget) -> list:
    return [f for r in range(1, b.r + 1) for f in _by_size(families(r, b.max_size))]


def suite_kostka_integrality(b: Budget) -> SuiteResult:
    res = parallel_map(_kostka, _kostka_cases(b), b.jobs)
    return _collect("kostka-integrality", [(ok, line) for ok, _, line in res])


def suite_kostka_positivity(b: Budget) -> SuiteResult:
    res = parallel_map(_kostka, _kostka_cases(b), b.jobs)
    return _collect("kostka-positivity", [(pos, line) for _, pos, line in res], conjecture=True)


SUITES: dict[str, Callable[[Budget], SuiteResult]] = {
    "sfp": suite_sfp,
    "scp": suite_scp,
    "ie": suite_ie,
    "weisner": suite_weisner,
    "leibniz": suite_leibniz,
    "eigen": suite_eigen,
    "kostka-integrality": suite_kostka_integrality,
    "kostka-positivity": suite_kostka_positivity,
    "q1-factorization": suite_q1_factorization,
    "stability": suite_stability,
    "dual-route": suite_dual_route,
    "interp": suite_interp,
    "equivalence": suite_equivalence,
    "geometric-family": suite_geometric_family,
    "top-monomial": suite_top_monomial,
}
