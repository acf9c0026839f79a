"""On-disk result cache: one JSON-lines file per kind of object.

Each line holds a key, a schema version, a payload and a SHA-256 checksum of
the canonical payload text.  Integers are written as decimal strings so the
files stay exact and diff-able.  Lines that fail to parse or to validate are
skipped with a warning, so the value is simply recomputed.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
from pathlib import Path
from typing import Any

from .partitions import Partition
from .qtalgebra import QTPoly, QTRatio
from .symfunc import Basis, SymFunc

SCHEMA = 1
ENV_VAR = "QTMAC_CACHE_DIR"
KINDS = ("J", "interp", "operator-matrix", "kostka")

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _terms_out(terms: dict) -> list:
    return [[a, b, str(c)] for (a, b), c in sorted(terms.items())]


def _terms_in(rows: list) -> dict:
    return {(int(a), int(b)): int(c) for a, b, c in rows}


def encode_ratio(x: QTRatio) -> dict:
    return {"num": _terms_out(x.num), "den": _terms_out(x.den)}


def decode_ratio(d: dict) -> QTRatio:
    return QTRatio(QTPoly(_terms_in(d["num"])), QTPoly(_terms_in(d["den"])))


def encode_symfunc(f: SymFunc) -> dict:
    return {"basis": f.basis.value,
            "terms": [[list(lam), encode_ratio(c)] for lam, c in sorted(f.coeffs.items())]}


def decode_symfunc(d: dict) -> SymFunc:
    return SymFunc(Basis(d["basis"]), {Partition(lam): decode_ratio(c) for lam, c in d["terms"]})


def encode_matrix(mat: dict) -> list:
    return [[list(lam), [[list(nu), _terms_out(v.terms)] for nu, v in sorted(row.items())]]
            for lam, row in sorted(mat.items())]


def decode_matrix(rows: list) -> dict:
    return {Partition(lam): {Partition(nu): QTPoly(_terms_in(v)) for nu, v in row} for lam, row in rows}


def encode_kostka(entries: dict) -> list:
    return [[list(mu), encode_ratio(c)] for mu, c in sorted(entries.items())]


def decode_kostka(rows: list) -> dict:
    return {Partition(mu): decode_ratio(c) for mu, c in rows}


def _canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def checksum(payload: Any) -> str:
    return hashlib.sha256(_canonical(payload).encode()).hexdigest()


# ---------------------------------------------------------------------------
# store
# ---------------------------------------------------------------------------

def default_cache_dir() -> Path | None:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


class DiskCache:
    """Append-only JSON-lines store; reads come from an in-memory index."""

    def __init__(self, directory: str | os.PathLike):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._index: dict[str, dict] = {}
        self.corrupt = 0
        for kind in KINDS:
            self._index[kind] = self._read(kind)

    def _path(self, kind: str) -> Path:
        return self.dir / f"{kind}.jsonl"

    def _read(self, kind: str) -> dict:
        out: dict = {}
        path = self._path(kind)
        if not path.exists():
            return out
        with path.open() as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                    ok = rec["schema"] == SCHEMA and rec["checksum"] == checksum(rec["payload"])
                except (ValueError, KeyError, TypeError):
                    ok = False
                if not ok:
                    self.corrupt += 1
                    log.warning("cache %s line %d is corrupt; it will be recomputed", path.name, lineno)
                    continue
                out[_canonical(rec["key"])] = rec["payload"]
        return out

    def get(self, kind: str, key: Any):
        return self._index[kind].get(_canonical(key))

    def put(self, kind: str, key: Any, payload: Any) -> None:
        k = _canonical(key)
        with self._lock:
            if k in self._index[kind]:
                return
            self._index[kind][k] = payload
            rec = {"key": key, "schema": SCHEMA, "payload": payload, "checksum": checksum(payload)}
            with self._path(kind).open("a") as fh:
                fh.write(_canonical(rec) + "\n")

    # hooks for the computation modules

    def load_polynomial(self, kind: str, lam: Partition, N: int):
        d = self.get(kind, {"lambda": list(lam), "N": N})
        return decode_symfunc(d) if d is not None else None

    def save_polynomial(self, kind: str, lam: Partition, N: int, f: SymFunc) -> None:
        self.put(kind, {"lambda": list(lam), "N": N}, encode_symfunc(f))

    def load_matrix(self, key: tuple):
        op, n, N, j = key
        d = self.get("operator-matrix", {"op": op, "n": n, "N": N, "j": j})
        return decode_matrix(d) if d is not None else None

    def save_matrix(self, key: tuple, mat: dict) -> None:
        op, n, N, j = key
        self.put("operator-matrix", {"op": op, "n": n, "N": N, "j": j}, encode_matrix(mat))

    def load_kostka(self, family) -> dict | None:
        d = self.get("kostka", {"family": [list(p) for p in family]})
        return decode_kostka(d) if d is not None else None

    def save_kostka(self, family, entries: dict) -> None:
        self.put("kostka", {"family": [list(p) for p in family]}, encode_kostka(entries))


_INSTALLED: list = []


def install(cache: DiskCache) -> None:
    """Route J, interpolation and operator-matrix misses through the cache."""
    from . import macdonald, operators

    uninstall()
    pair_j = (cache.load_polynomial, cache.save_polynomial)
    pair_m = (cache.load_matrix, cache.save_matrix)
    macdonald.j_store_hooks.append(pair_j)
    operators.matrix_store_hooks.append(pair_m)
    _INSTALLED.extend([(macdonald.j_store_hooks, pair_j), (operators.matrix_store_hooks, pair_m)])


def uninstall() -> None:
    while _INSTALLED:
        lst, pair = _INSTALLED.pop()
        if pair in lst:
            lst.remove(pair)
