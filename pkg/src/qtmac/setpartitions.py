"""The lattice of set partitions of a finite set of integers."""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Iterator


class SetPartition:
    """Blocks partitioning a ground set, stored sorted by minimum element."""

    __slots__ = ("blocks", "ground", "_hash")

    def __init__(self, blocks: Iterable[Iterable[int]]):
        bl = [tuple(sorted(set(b))) for b in blocks]
        if any(not b for b in bl):
            raise ValueError("blocks must be non-empty")
        ground: set = set()
        for b in bl:
            if ground.intersection(b):
                raise ValueError(f"blocks overlap: {bl}")
            ground.update(b)
        self.blocks: tuple[tuple[int, ...], ...] = tuple(sorted(bl))
        self.ground: frozenset = frozenset(ground)
        self._hash = hash(self.blocks)

    @classmethod
    def finest(cls, ground: Iterable[int]) -> "SetPartition":
        return cls([x] for x in ground)

    @classmethod
    def coarsest(cls, ground: Iterable[int]) -> "SetPartition":
        g = list(ground)
        return cls([g] if g else [])

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other) -> bool:
        return isinstance(other, SetPartition) and self.blocks == other.blocks

    def __hash__(self) -> int:
        return self._hash

    def _block_of(self) -> dict:
        return {x: k for k, b in enumerate(self.blocks) for x in b}

    def _same_ground(self, other: "SetPartition") -> None:
        if self.ground != other.ground:
            raise ValueError("set partitions of different ground sets")

    def refines(self, other: "SetPartition") -> bool:
        """self <= other: every block of self lies inside a block of other."""
        self._same_ground(other)
        where = other._block_of()
        return all(len({where[x] for x in b}) == 1 for b in self.blocks)

    def __le__(self, other: "SetPartition") -> bool:
        return self.refines(other)

    def __lt__(self, other: "SetPartition") -> bool:
        return self != other and self.refines(other)

    def join(self, other: "SetPartition") -> "SetPartition":
        self._same_ground(other)
        parent = {x: x for x in self.ground}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for b in self.blocks + other.blocks:
            r0 = find(b[0])
            for x in b[1:]:
                rx = find(x)
                if rx != r0:
                    parent[rx] = r0
        groups: dict = {}
        for x in self.ground:
            groups.setdefault(find(x), []).append(x)
        return SetPartition(groups.values())

    def meet(self, other: "SetPartition") -> "SetPartition":
        self._same_ground(other)
        where = other._block_of()
        groups: dict = {}
        for k, b in enumerate(self.blocks):
            for x in b:
                groups.setdefault((k, where[x]), []).append(x)
        return SetPartition(groups.values())

    def to_text(self) -> str:
        return "{" + "|".join(",".join(map(str, b)) for b in self.blocks) + "}"

    def __repr__(self) -> str:
        return f"SetPartition({self.to_text()})"

    __str__ = to_text


def parse_set_partition(text: str) -> SetPartition:
    body = text.strip().removeprefix("{").removesuffix("}")
    return SetPartition([int(x) for x in b.split(",")] for b in body.split("|") if b)


def _rgs(n: int) -> Iterator[list[int]]:
    """Restricted growth strings of length n in lexicographic order."""
    if n == 0:
        yield []
        return
    a = [0] * n

    def rec(k: int, m: int):
        if k == n:
            yield list(a)
            return
        for v in range(m + 2):
            a[k] = v
            yield from rec(k + 1, max(m, v))

    a[0] = 0
    yield from rec(1, 0)


@lru_cache(maxsize=None)
def _set_partitions(ground: tuple) -> tuple:
    out = []
    for s in _rgs(len(ground)):
        blocks: dict = {}
        for x, v in zip(ground, s):
            blocks.setdefault(v, []).append(x)
        out.append(SetPartition(blocks.values()))
    return tuple(out)


def set_partitions_of(ground: Iterable[int]) -> tuple[SetPartition, ...]:
    """All set partitions of a finite set (empty set has one, with no blocks)."""
    return _set_partitions(tuple(sorted(set(ground))))


def enumerate_set_partitions(r: int) -> list[SetPartition]:
    if r < 1:
        raise ValueError("r must be at least 1")
    return list(set_partitions_of(range(1, r + 1)))


def mobius(pi: SetPartition, sigma: SetPartition) -> int:
    """mu(pi, sigma) = prod over blocks B of sigma of (-1)^(n_B - 1) (n_B - 1)!,
    with n_B the number of blocks of pi inside B."""
    if not pi.refines(sigma):
        raise ValueError(f"{pi} does not refine {sigma}")
    where = sigma._block_of()
    counts = [0] * len(sigma.blocks)
    for b in pi.blocks:
        counts[where[b[0]]] += 1
    out = 1
    for n in counts:
        out *= (-1) ** (n - 1) * math.factorial(n - 1)
    return out


def mobius_to_top(pi: SetPartition) -> int:
    """mu(pi, {ground}) = (-1)^(#pi - 1) (#pi - 1)!."""
    n = len(pi.blocks)
    return (-1) ** (n - 1) * math.factorial(n - 1) if n else 1


def interval(pi: SetPartition, sigma: SetPartition) -> list[SetPartition]:
    """All omega with pi <= omega <= sigma."""
    if not pi.refines(sigma):
        raise ValueError(f"{pi} does not refine {sigma}")
    # merge blocks of pi inside each block of sigma independently
    per_block = []
    where = sigma._block_of()
    groups: dict = {}
    for k, b in enumerate(pi.blocks):
        groups.setdefault(where[b[0]], []).append(k)
    for idx in sorted(groups):
        choices = []
        for sp in set_partitions_of(groups[idx]):
            choices.append([[x for k in part for x in pi.blocks[k]] for part in sp])
        per_block.append(choices)
    out = []

    def rec(i: int, acc: list):
        if i == len(per_block):
            out.append(SetPartition(acc))
            return
        for choice in per_block[i]:
            rec(i + 1, acc + choice)

    rec(0, [])
    return out


def weisner_sum(pi: SetPartition, tau: SetPartition, sigma: SetPartition) -> int:
    """sum of mu(pi, omega) over pi <= omega <= sigma with omega v tau = sigma.

    Vanishes whenever pi < tau <= sigma."""
    if not (pi < tau and tau.refines(sigma)):
        raise ValueError("need pi < tau <= sigma")
    return sum(mobius(pi, w) for w in interval(pi, sigma) if w.join(tau) == sigma)
