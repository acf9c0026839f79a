"""Exact Gaussian elimination over Q(q,t)."""
from __future__ import annotations

from typing import Hashable, Sequence

from .qtalgebra import QTRatio

ZERO = QTRatio.from_int(0)


class SingularSystem(ArithmeticError):
    pass


def _cost(x: QTRatio) -> int:
    return len(x.num) + len(x.den)


def select_and_solve(rows: Sequence[dict], rhs: Sequence[QTRatio], unknowns: Sequence[Hashable]):
    """Solve an overdetermined system ``sum_u rows[k][u] x_u = rhs[k]``.

    Gaussian elimination picks, column by column, the cheapest available
    pivot row; the chosen rows form an invertible square subsystem.
    Returns ``(solution, pivot_rows)``; the caller verifies the other rows.
    Raises ``SingularSystem`` when some unknown has no pivot.
    """
    work = [(dict(r), QTRatio.coerce(b)) for r, b in zip(rows, rhs)]
    used: set = set()
    pivots: list[tuple[Hashable, int]] = []
    for u in unknowns:
        best = None
        for k, (row, _) in enumerate(work):
            if k in used:
                continue
            v = row.get(u)
            if v is not None and v:
                if best is None or _cost(v) < _cost(work[best][0][u]):
                    best = k
        if best is None:
            raise SingularSystem(f"no pivot for unknown {u!r}")
        used.add(best)
        pivots.append((u, best))
        prow, pb = work[best]
        inv = prow[u].inverse()
        prow = {w: c * inv for w, c in prow.items() if c}
        pb = pb * inv
        work[best] = (prow, pb)
        for k, (row, b) in enumerate(work):
            if k == best:
                continue
            f = row.get(u)
            if f is None or not f:
                continue
            new = dict(row)
            for w, c in prow.items():
                v = new.get(w, ZERO) - f * c
                if v:
                    new[w] = v
                else:
                    new.pop(w, None)
            work[k] = (new, b - f * pb)
    sol = {u: work[k][1] for u, k in pivots}
    return sol, [k for _, k in pivots]


def solve_square(rows: Sequence[dict], rhs: Sequence[QTRatio], unknowns: Sequence[Hashable]) -> dict:
    if len(rows) != len(unknowns):
        raise ValueError("square system expected")
    sol, _ = select_and_solve(rows, rhs, unknowns)
    return sol
