"""Numerical classes of exceptional bundles on the projective plane.

Every exceptional bundle is reached from ``(O, O(1), O(2))`` by mutating
exceptional triples.  A triple ``(A, M, B)`` with increasing slopes has two
children, ``(A, L_M B, M)`` and ``(M, R_M A, B)``, whose new middle terms fill
the slope gaps on either side of ``M``.  Inside one period this is a binary
tree; the integer translates come from twisting by line bundles.
"""
from __future__ import annotations

import csv
import enum
import io
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .errors import DegenerateMutation
from .ktheory import (
    KClass,
    discriminant,
    euler_p2,
    line_bundle,
    slope,
    twist_by_line_bundle,
)


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class ExceptionalClass:
    v: KClass
    depth: int = 0
    parents: Optional[tuple[Fraction, Fraction]] = None

    def __post_init__(self):
        if self.v.r <= 0:
            raise ValueError(f"exceptional class needs positive rank, got {self.v}")

    @property
    def rank(self) -> int:
        return self.v.r

    @property
    def mu(self) -> Fraction:
        return slope(self.v)

    @property
    def delta(self) -> Fraction:
        return discriminant(self.v)

    def twist(self, k: int) -> "ExceptionalClass":
        """Translate by ``- (x) O(k)``; slopes (and parent slopes) shift by k."""
        if k == 0:
            return self
        parents = None
        if self.parents is not None:
            parents = (self.parents[0] + k, self.parents[1] + k)
        return ExceptionalClass(twist_by_line_bundle(self.v, k), self.depth, parents)

    def __str__(self) -> str:
        return f"E[{self.mu}] (rank {self.rank})"


def seed_collection() -> tuple[ExceptionalClass, ExceptionalClass, ExceptionalClass]:
    return tuple(ExceptionalClass(line_bundle(n)) for n in (-1, 0, 1))


def mutate(pair: tuple[ExceptionalClass, ExceptionalClass], side: Side) -> ExceptionalClass:
    """Left: ``chi(e1,e2) e1 - e2``; Right: ``chi(e1,e2) e2 - e1``; rank made positive."""
    e1, e2 = pair
    chi = euler_p2(e1.v, e2.v)
    if side is Side.LEFT:
        w = chi * e1.v - e2.v
    else:
        w = chi * e2.v - e1.v
    if w.r == 0:
        raise DegenerateMutation(f"{side.value} mutation of {e1}, {e2} has rank 0")
    if w.r < 0:
        w = -w
    return ExceptionalClass(w, max(e1.depth, e2.depth) + 1, (e1.mu, e2.mu))


@lru_cache(maxsize=None)
def _period_tree(max_rank: int):
    """Classes with slope in [0, 1) and the mutation triples that produced them."""
    o0, o1, o2 = (ExceptionalClass(line_bundle(n)) for n in (0, 1, 2))
    classes = [o0]
    triples = [(o0, o1, o2)]
    half = mutate((o1, o2), Side.LEFT)
    if half.rank > max_rank:
        return tuple(classes), tuple(triples)
    classes.append(half)
    queue = deque([(o0, half, o1)])
    while queue:
        a, m, b = queue.popleft()
        triples.append((a, m, b))
        for child in ((a, mutate((m, b), Side.LEFT), m), (m, mutate((a, m), Side.RIGHT), b)):
            if child[1].rank <= max_rank:
                classes.append(child[1])
                queue.append(child)
    return tuple(classes), tuple(triples)


def markov_triples(max_rank: int) -> list[tuple[int, int, int]]:
    """Rank triples of all mutation triples whose members have rank <= max_rank."""
    _, triples = _period_tree(max_rank)
    return [tuple(e.rank for e in t) for t in triples]


def enumerate_exceptional(
    max_rank: int,
    lo=Fraction(0),
    hi=Fraction(1),
    include_hi: bool = False,
) -> list[ExceptionalClass]:
    """All exceptional classes of rank <= max_rank with slope in [lo, hi).

    ``include_hi`` closes the interval on the right.  Sorted by (rank, slope).
    """
    if max_rank < 1:
        raise ValueError("max_rank must be >= 1")
    lo, hi = Fraction(lo), Fraction(hi)
    base, _ = _period_tree(max_rank)
    out = []
    for e in base:
        k_min = math.ceil(lo - e.mu)
        k_max = math.floor(hi - e.mu)
        for k in range(k_min, k_max + 1):
            mu = e.mu + k
            if mu < hi or (include_hi and mu == hi):
                out.append(e.twist(k))
    out.sort(key=lambda e: (e.rank, e.mu))
    return out


def exceptional_at_slope(q, max_rank: int) -> Optional[ExceptionalClass]:
    q = Fraction(q)
    if q.denominator > max_rank:
        return None
    k = math.floor(q)
    e = _period_index(max_rank).get(q - k)
    return None if e is None else e.twist(k)


@lru_cache(maxsize=None)
def _period_index(max_rank: int) -> dict:
    return {e.mu: e for e in _period_tree(max_rank)[0]}


CSV_COLUMNS = (
    "rank", "slope_num", "slope_den", "cK", "d", "r",
    "ch2_times_2", "delta_num", "delta_den", "depth",
)


def csv_row(e: ExceptionalClass) -> tuple[int, ...]:
    v = e.v
    return (
        e.rank, e.mu.numerator, e.mu.denominator, v.c, v.d, v.r,
        int(2 * v.ch2), e.delta.numerator, e.delta.denominator, e.depth,
    )


def to_csv(classes: Iterable[ExceptionalClass]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for e in classes:
        writer.writerow(csv_row(e))
    return buf.getvalue()
