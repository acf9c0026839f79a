"""Command-line driver: ``python -m qtmac compute ...`` and ``... verify ...``.

Exit codes: 0 pass, 1 usage error, 2 verification failure, 3 internal error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import cumulants as cu
from .cache import ENV_VAR, DiskCache, default_cache_dir, install, uninstall
from .kostka import KostkaDivisionError, KostkaTable, audit, multivariate_kostka
from .linalg import SingularSystem
from .macdonald import InconsistentConditions, ZeroPivot, compute_interp, compute_P_then_J
from .partitions import Partition, family_text, parse_family, parse_partition
from .qtalgebra import ord_at_q1
from .symfunc import SymFunc
from .verify import SUITES, Budget, SuiteResult

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("qtmac")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qtmac", description="Macdonald cumulants and q,t-Kostka numbers with exact arithmetic.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "records"), default="plain")
    common.add_argument("--cache-dir", default=None,
                        help=f"directory of the on-disk cache (default: ${ENV_VAR}, else no cache)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for verification sweeps")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="compute one object")
    c.add_argument("kind", choices=("J", "interp", "kappa", "T", "IE", "kostka"))
    c.add_argument("--lambda", dest="lam", help="partition, e.g. 2,1 (empty: -)")
    c.add_argument("--family", help="family of partitions, e.g. 2,1;1;1")
    c.add_argument("--n", type=int, default=None, help="number of variables N")
    c.add_argument("--j", type=int, default=None, help="binomial order for IE (default: all)")
    c.add_argument("--of", choices=("J", "interp"), default="J", help="polynomials used by kappa")

    v = sub.add_parser("verify", parents=[common], help="run a property suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--r", type=int, default=3)
    v.add_argument("--max-size", type=int, default=5)
    v.add_argument("--n", type=int, default=None, help="fixed N for interpolation families")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--verbose", action="store_true", help="print every case")
    return p


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------

def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _parse_lambda(text: str) -> Partition:
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_family(text: str) -> list[Partition]:
    try:
        fam = parse_family(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if any(not p for p in fam):
        raise UsageError("family members must be nonempty partitions")
    return fam


def _emit_symfunc(name: str, f: SymFunc, fmt: str, extra: dict) -> str:
    if fmt == "plain":
        return f"{name} = {f.to_text()}"
    rec = dict(extra)
    rec["basis"] = f.basis.value
    rec["terms"] = [{"mu": mu.to_text(), "coeff": f[mu].to_text()} for mu in f.support()]
    return json.dumps(rec, sort_keys=True)


def _kostka_table(fam: list[Partition], cache: DiskCache | None) -> KostkaTable:
    if cache is not None:
        entries = cache.load_kostka(fam)
        if entries is not None:
            return KostkaTable(tuple(fam), entries)
    table = multivariate_kostka(fam)
    if cache is not None:
        cache.save_kostka(fam, table.entries)
    return table


def cmd_compute(args, cache: DiskCache | None) -> tuple[int, list[str]]:
    fmt = args.format
    kind = args.kind
    if kind in ("J", "interp"):
        lam = _parse_lambda(_need(args.lam, "--lambda"))
        if kind == "J":
            f = compute_P_then_J(lam).expansion
            return EXIT_OK, [_emit_symfunc(f"J[{lam.to_text()}]", f, fmt, {"kind": "J", "lambda": lam.to_text()})]
        N = args.n if args.n is not None else sum(lam)
        if N < len(lam):
            raise UsageError(f"--n {N} is smaller than the length of {lam.to_text()}")
        f = compute_interp(lam, N).expansion
        return EXIT_OK, [_emit_symfunc(f"interp[{lam.to_text()}; N={N}]", f, fmt,
                                       {"kind": "interp", "lambda": lam.to_text(), "N": N})]
    fam = _parse_family(_need(args.family, "--family"))
    ftext = family_text(fam)
    size = sum(map(sum, fam))
    if kind == "kappa":
        N = None
        if args.of == "interp":
            N = args.n if args.n is not None else size
        fam_u = cu.macdonald_family(args.of, fam, N)
        k = cu.kappa(fam_u.values, cu.full(len(fam)))
        if N is not None:
            k = cu._truncate(k, N)
        extra = {"kind": "kappa", "of": args.of, "family": ftext, "order": str(cu.symfunc_order(k))}
        if N is not None:
            extra["N"] = N
        name = f"kappa[{args.of}; {ftext}" + (f"; N={N}]" if N is not None else "]")
        lines = [_emit_symfunc(name, k, fmt, extra)]
        if fmt == "plain":
            lines.append(f"ord_at_q1 = {cu.symfunc_order(k)}")
        return EXIT_OK, lines
    if kind == "T":
        hook = cu.hook_family(fam)
        lines = []
        for H in cu.subsets(range(1, len(fam) + 1)):
            if len(H) < 2:
                continue
            T = cu.T_error(hook, H)
            o = ord_at_q1(T)
            hs = cu._set_text(H)
            if fmt == "plain":
                lines.append(f"T{hs} = {T.to_text()}    (ord_at_q1 = {o})")
            else:
                lines.append(json.dumps({"kind": "T", "family": ftext, "H": hs, "value": T.to_text(),
                                         "order": str(o)}, sort_keys=True))
        return EXIT_OK, lines
    if kind == "IE":
        N = args.n if args.n is not None else size
        if N < max(len(p) for p in fam):
            raise UsageError(f"--n {N} is smaller than the length of the family sum")
        js = [args.j] if args.j is not None else list(range(1, max(p[0] for p in fam) * len(fam) + 1))
        lines = []
        for j in js:
            v = cu.IE(fam, j, N)
            if fmt == "plain":
                lines.append(f"IE_{j}({ftext}; N={N}) = {v.to_text()}")
            else:
                lines.append(json.dumps({"kind": "IE", "family": ftext, "j": j, "N": N, "value": v.to_text()},
                                        sort_keys=True))
        return EXIT_OK, lines
    if kind == "kostka":
        table = _kostka_table(fam, cache)
        a = audit(table)
        if fmt == "plain":
            width = max(len(mu.to_text()) for mu in table.entries)
            lines = [f"K[mu; {ftext}]"]
            lines += [f"  {mu.to_text():<{width}}  {c.to_text()}" for mu, c in table.entries.items()]
            lines.append(a.line())
        else:
            lines = [json.dumps({"kind": "kostka", "family": ftext, "mu": mu.to_text(), "value": c.to_text(),
                                 "polynomial": table.flags[mu].polynomial, "integer": table.flags[mu].integer,
                                 "nonnegative": table.flags[mu].nonnegative}, sort_keys=True)
                     for mu, c in table.entries.items()]
        return EXIT_OK, lines
    raise UsageError(f"unknown kind {kind}")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args) -> tuple[int, list[str]]:
    if args.r < 1 or args.max_size < 0 or args.jobs < 1:
        raise UsageError("--r, --jobs must be positive and --max-size nonnegative")
    budget = Budget(max_size=args.max_size, r=args.r, N=args.n, jobs=args.jobs, seed=args.seed,
                    samples=args.samples)
    res: SuiteResult = SUITES[args.suite](budget)
    lines = []
    if args.format == "plain":
        if args.verbose:
            lines += res.lines
        lines.append(res.summary())
        if res.conjecture and not res.passed:
            lines.append("NOTE: this is evidence against a conjecture, not a program failure")
    else:
        lines.append(json.dumps({"suite": res.name, "passed": res.passed, "cases": res.checked,
                                 "counterexample": res.counterexample, "conjecture": res.conjecture},
                                sort_keys=True))
    code = EXIT_OK if (res.passed or res.conjecture) else EXIT_FAIL
    return code, lines


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    cache = None
    try:
        directory = args.cache_dir or default_cache_dir()
        if directory:
            cache = DiskCache(directory)
            install(cache)
        if args.command == "compute":
            code, lines = cmd_compute(args, cache)
        else:
            code, lines = cmd_verify(args)
    except UsageError as exc:
        print(f"qtmac: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AssertionError, KostkaDivisionError, InconsistentConditions, ZeroPivot, SingularSystem) as exc:
        print(f"qtmac: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # anything else is a bug, not a usage problem
        log.debug("unexpected error", exc_info=True)
        print(f"qtmac: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    finally:
        if cache is not None:
            uninstall()
    for line in lines:
        print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
