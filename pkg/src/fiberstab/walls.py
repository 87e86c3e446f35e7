"""Walls of the geometric chamber, crossing detection and twist normalization.

The wall attached to an exceptional class E sits over the vertical segment
``B = mu_E, Delta_E < g < delta(B)`` of the (B, g) plane.  Approaching it with
B increasing (E still in the torsion part) gives the W+ side, where ι_*E is a
subobject of O_x; approaching with B decreasing gives W-.
"""
from __future__ import annotations

import bisect
import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .autgroup import apply, half_twist_matrix, inverse3
from .chamber import (
    CentralCharge,
    SlicePoint,
    in_closure,
    normalize,
    projection_f,
)
from .dlp import EnvelopeModel, delta_at
from .errors import BudgetExhausted, DegenerateCharge, DomainError, WallGraze
from .exceptional import ExceptionalClass, enumerate_exceptional
from .ktheory import POINT, KClass


class WallSide(enum.Enum):
    PLUS = "Plus"
    MINUS = "Minus"
    BOUNDARY = "Boundary"


def _pq(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class WallRecord:
    E: ExceptionalClass
    side: WallSide
    witness: SlicePoint
    segment: int = 0
    t: Fraction = Fraction(0)

    def to_json(self) -> dict:
        return {
            "slope": _pq(self.E.mu),
            "rank": self.E.rank,
            "side": self.side.value,
            "t": _pq(self.segment + self.t),
        }


@dataclass(frozen=True)
class PathSpec:
    waypoints: tuple[SlicePoint, ...]

    @classmethod
    def from_json(cls, obj) -> "PathSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(tuple(SlicePoint.from_json(w) for w in obj["waypoints"]))

    def to_json(self) -> dict:
        return {"waypoints": [w.to_json() for w in self.waypoints]}

    def subdivided(self, fractions: Sequence[Fraction]) -> "PathSpec":
        """Insert points at the given parameters (in (0,1)) on every segment."""
        pts = [self.waypoints[0]]
        for p0, p1 in zip(self.waypoints, self.waypoints[1:]):
            for s in sorted(fractions):
                pts.append(_lerp(p0, p1, Fraction(s)))
            pts.append(p1)
        return PathSpec(tuple(pts))


def _lerp(p0: SlicePoint, p1: SlicePoint, t: Fraction) -> SlicePoint:
    return SlicePoint(p0.a + (p1.a - p0.a) * t, p0.b + (p1.b - p0.b) * t)


def on_wall_locus(p: SlicePoint, E: ExceptionalClass, m: EnvelopeModel) -> bool:
    B, g = projection_f(p)
    if B != E.mu:
        return False
    return E.delta < g < delta_at(m, m.reduce(B))


# --- Jordan-Hölder classes ----------------------------------------------------

@dataclass(frozen=True)
class ShiftedClass:
    """``multiplicity * base`` placed in cohomological degree ``-shift``."""

    base: KClass
    shift: int = 0
    multiplicity: int = 1

    @property
    def k_class(self) -> KClass:
        sign = -1 if self.shift % 2 else 1
        return (sign * self.multiplicity) * self.base


class JHClasses(NamedTuple):
    sub: ShiftedClass
    quot: ShiftedClass

    def total(self) -> KClass:
        return self.sub.k_class + self.quot.k_class


def kernel_class(E: ExceptionalClass) -> KClass:
    """Class of E^x, the kernel of the evaluation ι_*E^{⊕r} -> O_x."""
    return E.rank * E.v - POINT


def jh_classes(E: ExceptionalClass) -> JHClasses:
    """W+ triangle ``ι_*E^{⊕r} -> O_x -> E^x[1]``."""
    return JHClasses(ShiftedClass(E.v, 0, E.rank), ShiftedClass(kernel_class(E), 1))


def jh_classes_minus(E: ExceptionalClass) -> JHClasses:
    """W- triangle ``H_E^{-1}(E^x[1]) -> O_x -> ι_*E^{⊕r}[2]``."""
    inv = inverse3(half_twist_matrix(E.v))
    return JHClasses(
        ShiftedClass(apply(inv, kernel_class(E)), 1),
        ShiftedClass(E.v, 2, E.rank),
    )


# --- path crossings -----------------------------------------------------------

def _segment_crossings(
    seg: int, p0: SlicePoint, p1: SlicePoint, m: EnvelopeModel, last: bool
) -> list[WallRecord]:
    ia0, ib0 = p0.a.im, p0.b.im
    dia, dib = p1.a.im - ia0, p1.b.im - ib0
    if p0 == p1:
        return []
    B0, _ = projection_f(p0)
    B1, _ = projection_f(p1)
    lo, hi = min(B0, B1), max(B0, B1)
    out = []
    for E in enumerate_exceptional(m.order, lo, hi, include_hi=True):
        q = E.mu
        coef = dib + q * dia
        const = ib0 + q * ia0
        curve = delta_at(m, m.reduce(q))
        if coef == 0:
            if const != 0:
                continue
            # B is constant = q along the whole segment
            g0, g1 = projection_f(p0)[1], projection_f(p1)[1]
            gmin, gmax = min(g0, g1), max(g0, g1)
            if (gmin == gmax and E.delta < gmin < curve) or (
                gmin < gmax and max(gmin, E.delta) < min(gmax, curve)
            ):
                raise WallGraze(f"segment {seg} runs along the wall of {E}")
            continue
        t = -const / coef
        if not (0 <= t < 1 or (last and t == 1)):
            continue
        p = _lerp(p0, p1, t)
        _, g = projection_f(p)
        if E.delta < g < curve:
            side = WallSide.PLUS if coef < 0 else WallSide.MINUS
        elif g == E.delta or g == curve:
            side = WallSide.BOUNDARY
        else:
            continue
        out.append(WallRecord(E, side, p, seg, t))
    out.sort(key=lambda r: r.t)
    return out


def detect_crossings(path: PathSpec, m: EnvelopeModel) -> list[WallRecord]:
    pts = path.waypoints
    out: list[WallRecord] = []
    n = len(pts) - 1
    for k in range(n):
        out.extend(_segment_crossings(k, pts[k], pts[k + 1], m, last=(k == n - 1)))
    return out


# --- normalization by twist words ----------------------------------------------

def transport(z: CentralCharge, matrix) -> CentralCharge:
    """Charge of Φ·σ for Φ acting on K by ``matrix``: ``Z o Φ^{-1}``."""
    return z.pullback(inverse3(matrix))


def apply_word(z: CentralCharge, word: Sequence[tuple[ExceptionalClass, int]]) -> CentralCharge:
    """Apply ``H_{E_1}^{e_1}`` first, then ``H_{E_2}^{e_2}``, and so on."""
    for E, eps in word:
        mat = half_twist_matrix(E.v)
        z = transport(z, mat if eps > 0 else inverse3(mat))
    return z


def default_generators(max_rank: int = 5, lo=-2, hi=2) -> list[ExceptionalClass]:
    return sorted(enumerate_exceptional(max_rank, lo, hi, include_hi=True), key=lambda e: e.mu)


def geometric_point(z: CentralCharge, m: EnvelopeModel) -> Optional[SlicePoint]:
    """The slice point of Z if it lies in the closure of the chamber, else None."""
    try:
        p = normalize(z).point
    except DomainError:
        return None
    return p if in_closure(p, m) else None


class _FloatEnvelope:
    def __init__(self, m: EnvelopeModel):
        self.lo, self.hi = float(m.lo), float(m.hi)
        self.mus = [float(e.mu) for e in m.contributors]
        self.deltas = [float(e.delta) for e in m.contributors]

    def __call__(self, mu: float) -> float:
        mu = mu - math.floor(mu - self.lo) if not self.lo <= mu <= self.hi else mu
        i = bisect.bisect_left(self.mus, mu - 1.5 - 1e-12)
        j = bisect.bisect_right(self.mus, mu + 1.5 + 1e-12)
        best = -math.inf
        for k in range(i, j):
            x = abs(mu - self.mus[k])
            best = max(best, (x * x - 3 * x + 2) / 2 - self.deltas[k])
        return best


def _float_in_closure(zf, env: _FloatEnvelope, slack: float = 1e-7) -> bool:
    zx, zl, zo = zf
    if zx == 0:
        return False
    w = -1 / zx
    a = w * zl - 0.5
    b = w * zo
    if a.imag <= 0:
        return False
    B = -b.imag / a.imag
    g = -b.real - B * a.real + B * B / 2
    return g <= env(B) + slack


def normalize_to_geometric(
    z: CentralCharge,
    m: EnvelopeModel,
    max_word: int,
    generators: Optional[Sequence[ExceptionalClass]] = None,
) -> tuple[list[tuple[ExceptionalClass, int]], SlicePoint]:
    """Shortest word of half twists bringing Z into the closure of the chamber.

    Breadth-first search runs in floating point; every float hit is confirmed
    in exact arithmetic before it is returned.
    """
    if m.hi - m.lo < 1:
        raise ValueError("normalization needs an envelope window of width >= 1")
    if not z.zx:
        raise DegenerateCharge("Z(O_x) = 0")
    p = geometric_point(z, m)
    if p is not None:
        return [], p
    gens = list(generators) if generators is not None else default_generators()
    moves = []
    for E in gens:
        mat = half_twist_matrix(E.v)
        inv = inverse3(mat)
        # transporting by H^{+1} pulls back along H^{-1}, and vice versa
        moves.append((E, 1, inv))
        moves.append((E, -1, mat))
    env = _FloatEnvelope(m)
    start = tuple(complex(x) for x in (z.zx, z.zl, z.zo))
    frontier = [((), start)]
    seen = {_key(start)}
    for _ in range(max_word):
        nxt = []
        for word, zf in frontier:
            last = word[-1] if word else None
            for idx, (E, eps, pull) in enumerate(moves):
                if last is not None and last ^ 1 == idx:
                    continue
                zn = tuple(sum(pull[i][j] * zf[i] for i in range(3)) for j in range(3))
                k = _key(zn)
                if k in seen:
                    continue
                seen.add(k)
                w = word + (idx,)
                if _float_in_closure(zn, env):
                    exact_word = [(moves[i][0], moves[i][1]) for i in w]
                    p = geometric_point(apply_word(z, exact_word), m)
                    if p is not None:
                        return exact_word, p
                nxt.append((w, zn))
        frontier = nxt
    raise BudgetExhausted(f"no twist word of length <= {max_word} reaches the chamber")


def _key(zf) -> tuple:
    return tuple((round(x.real, 9), round(x.imag, 9)) for x in zf)
