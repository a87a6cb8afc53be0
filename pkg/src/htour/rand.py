"""Seeded random instances for the property drivers.

All generators take an explicit random.Random so every driver is
reproducible from its seed.
"""

from __future__ import annotations

import random
from math import comb

from .core import HOLE, MINUS, PLUS, HoleyHT


def random_full_ht(rng: random.Random, n: int) -> HoleyHT:
    """Uniformly random hole-free structure on 1..n."""
    return HoleyHT(n, bytes(rng.choice((PLUS, MINUS)) for _ in range(comb(n, 3))))


def random_holey_ht(rng: random.Random, n: int, holes: int) -> HoleyHT:
    """Random full structure with `holes` distinct triples punched out."""
    table = bytearray(random_full_ht(rng, n).table)
    holes = min(holes, len(table))
    for r in rng.sample(range(len(table)), holes):
        table[r] = HOLE
    return HoleyHT(n, bytes(table))


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> frozenset:
    """Erdos-Renyi style edge set over 1..n."""
    return frozenset(
        (a, b)
        for a in range(1, n + 1)
        for b in range(a + 1, n + 1)
        if rng.random() < p
    )


def random_order(rng: random.Random, n: int) -> tuple[int, ...]:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return tuple(perm)
