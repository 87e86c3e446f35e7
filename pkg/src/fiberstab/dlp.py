"""Finite-order Drezet--Le Potier envelope.

``delta_N(mu)`` is the maximum, over exceptional classes E of rank <= N with
``|mu - mu_E| <= 3/2``, of ``P(-|mu - mu_E|) - Delta_E``.  Each term is the
discriminant at which ``chi(E, F)`` or ``chi(F, E)`` vanishes for a class F of
slope mu, so the envelope is the bound a stable non-exceptional F must clear.
"""
from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import OutOfWindow
from .exceptional import ExceptionalClass, enumerate_exceptional
from .ktheory import euler_poly

CUTOFF = Fraction(3, 2)


class Verdict(enum.Enum):
    BELOW = "Below"
    ON_OR_ABOVE_CURVE = "OnOrAboveCurve"
    AT_EXCEPTIONAL_VIOLATION = "AtExceptionalViolation"


@dataclass(frozen=True)
class EnvelopeModel:
    """Contributors are the exceptional classes of rank <= order whose slopes
    lie within 3/2 of the window, sorted by slope."""

    order: int
    lo: Fraction
    hi: Fraction
    contributors: tuple[ExceptionalClass, ...]
    _mus: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)
    _by_slope: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_mus", tuple(e.mu for e in self.contributors))
        object.__setattr__(self, "_by_slope", {e.mu: e for e in self.contributors})

    @classmethod
    def build(cls, order: int, lo=0, hi=1) -> "EnvelopeModel":
        return _build(order, Fraction(lo), Fraction(hi))

    @property
    def window(self) -> tuple[Fraction, Fraction]:
        return (self.lo, self.hi)

    def contains(self, mu) -> bool:
        return self.lo <= mu <= self.hi

    def reduce(self, mu) -> Fraction:
        """Integer translate of mu into the window (the envelope has period 1)."""
        mu = Fraction(mu)
        if self.contains(mu):
            return mu
        if self.hi - self.lo < 1:
            raise OutOfWindow(f"slope {mu} outside window {self.window} of width < 1")
        return mu - math.floor(mu - self.lo)

    def exceptional_at(self, mu) -> Optional[ExceptionalClass]:
        return self._by_slope.get(Fraction(mu))

    def near(self, mu, radius=CUTOFF) -> tuple[ExceptionalClass, ...]:
        i = bisect.bisect_left(self._mus, mu - radius)
        j = bisect.bisect_right(self._mus, mu + radius)
        return self.contributors[i:j]


@lru_cache(maxsize=64)
def _build(order: int, lo: Fraction, hi: Fraction) -> EnvelopeModel:
    if lo > hi:
        raise ValueError("empty window")
    contributors = enumerate_exceptional(order, lo - CUTOFF, hi + CUTOFF, include_hi=True)
    contributors.sort(key=lambda e: e.mu)
    return EnvelopeModel(order, lo, hi, tuple(contributors))


def branch_value(e: ExceptionalClass, mu) -> Fraction:
    return euler_poly(-abs(Fraction(mu) - e.mu)) - e.delta


def delta_at(m: EnvelopeModel, mu) -> Fraction:
    mu = Fraction(mu)
    if not m.contains(mu):
        raise OutOfWindow(f"slope {mu} outside window {m.window}")
    return max(branch_value(e, mu) for e in m.near(mu))


def delta_float(m: EnvelopeModel, mu: float) -> float:
    """Float evaluation for CSV emission and search heuristics only."""
    best = -math.inf
    for e in m.near(Fraction(mu)):
        x = abs(mu - float(e.mu))
        best = max(best, (x * x - 3 * x + 2) / 2 - float(e.delta))
    return best


def strictly_below(m: EnvelopeModel, x, y) -> Verdict:
    x, y = Fraction(x), Fraction(y)
    if not y < delta_at(m, x):
        return Verdict.ON_OR_ABOVE_CURVE
    e = m.exceptional_at(x)
    if e is not None and not y < e.delta:
        return Verdict.AT_EXCEPTIONAL_VIOLATION
    return Verdict.BELOW


def curve(m: EnvelopeModel, lo, hi, step) -> list[tuple[Fraction, Fraction]]:
    lo, hi, step = Fraction(lo), Fraction(hi), Fraction(step)
    n = int((hi - lo) / step)
    return [(lo + k * step, delta_at(m, lo + k * step)) for k in range(n + 1)]
