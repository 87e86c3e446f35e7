"""Central charges on the (a, b) slice and membership in the geometric chamber.

On the slice ``Z(O_x) = -1`` a charge is ``Z_{a,b}(v) = -ch2(v) + a d(v) + b r(v)``
with ``Im a > 0``.  The projection ``f(a, b) = (B, g)`` lands in the
slope/discriminant plane where the chamber is cut out by the envelope and the
exceptional points.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .dlp import EnvelopeModel, Verdict, delta_at, delta_float, strictly_below
from .errors import DegenerateCharge, DomainError, ZeroCharge
from .exceptional import ExceptionalClass
from .ktheory import KClass, slope


def _q(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass(frozen=True)
class QComplex:
    """Complex number with exact rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _q(self.re))
        object.__setattr__(self, "im", _q(self.im))

    @classmethod
    def of(cls, x) -> "QComplex":
        if isinstance(x, QComplex):
            return x
        if isinstance(x, complex):
            return cls(x.real, x.imag)
        if isinstance(x, (tuple, list)):
            return cls(*x)
        return cls(x)

    @classmethod
    def parse(cls, text: str) -> "QComplex":
        """``"re,im"`` with each part an integer or ``p/q``."""
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 're,im', got {text!r}")
        return cls(_q(parts[0]), _q(parts[1]))

    def __add__(self, other) -> "QComplex":
        o = QComplex.of(other)
        return QComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> "QComplex":
        o = QComplex.of(other)
        return QComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "QComplex":
        return QComplex.of(other) - self

    def __neg__(self) -> "QComplex":
        return QComplex(-self.re, -self.im)

    def __mul__(self, other) -> "QComplex":
        o = QComplex.of(other)
        return QComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QComplex":
        o = QComplex.of(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero complex")
        return self * QComplex(o.re / n, -o.im / n)

    def __rtruediv__(self, other) -> "QComplex":
        return QComplex.of(other) / self

    def __eq__(self, other) -> bool:
        try:
            o = QComplex.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __str__(self) -> str:
        return f"{self.re},{self.im}"


I = QComplex(0, 1)


@dataclass(frozen=True)
class SlicePoint:
    a: QComplex
    b: QComplex

    def __post_init__(self):
        object.__setattr__(self, "a", QComplex.of(self.a))
        object.__setattr__(self, "b", QComplex.of(self.b))
        if self.a.im <= 0:
            raise DomainError(f"Im a must be positive, got a = {self.a}")

    def to_json(self) -> dict:
        return {"a": [str(self.a.re), str(self.a.im)], "b": [str(self.b.re), str(self.b.im)]}

    @classmethod
    def from_json(cls, obj) -> "SlicePoint":
        return cls(QComplex(*map(_q, obj["a"])), QComplex(*map(_q, obj["b"])))


@dataclass(frozen=True)
class CentralCharge:
    """A homomorphism K -> C, stored by its values on O_x, O_l, O."""

    zx: QComplex
    zl: QComplex
    zo: QComplex

    @classmethod
    def from_slice(cls, p: SlicePoint) -> "CentralCharge":
        # Z(O_l) = -ch2(O_l) + a = 1/2 + a
        return cls(QComplex(-1), p.a + Fraction(1, 2), p.b)

    def __call__(self, v: KClass) -> QComplex:
        return self.zx * v.c + self.zl * v.d + self.zo * v.r

    def pullback(self, matrix: Sequence[Sequence[int]]) -> "CentralCharge":
        """``Z o M`` for an integer matrix acting on (c, d, r) column vectors."""
        vals = (self.zx, self.zl, self.zo)
        cols = []
        for j in range(3):
            acc = QComplex(0)
            for i in range(3):
                if matrix[i][j]:
                    acc = acc + vals[i] * matrix[i][j]
            cols.append(acc)
        return CentralCharge(*cols)

    def scaled(self, w) -> "CentralCharge":
        w = QComplex.of(w)
        return CentralCharge(self.zx * w, self.zl * w, self.zo * w)


def central_charge(p: SlicePoint, v: KClass) -> QComplex:
    return -QComplex(v.ch2) + p.a * v.d + p.b * v.r


def projection_f(p: SlicePoint) -> tuple[Fraction, Fraction]:
    B = -p.b.im / p.a.im
    g = -p.b.re - B * p.a.re + B * B / 2
    return B, g


class Normalized(NamedTuple):
    point: SlicePoint
    lam: complex
    rotation: QComplex  # exact e^{i pi lam}; Z = rotation^{-1} * Z_slice


def normalize(z: CentralCharge) -> Normalized:
    """Bring Z to the slice ``Z(O_x) = -1`` by the C-action.

    The action is ``Z . lam = e^{-i pi lam} Z``.  The rotation ``w = -1/Z(O_x)``
    is exact; ``lam = log(w)/(i pi)`` uses the principal logarithm, so
    ``Re lam`` lies in (-1, 1].  Raises DomainError when the rotated charge
    has ``Im a <= 0``, i.e. Z is not in the image of the upper slice.
    """
    if not z.zx:
        raise DegenerateCharge("Z(O_x) = 0")
    w = QComplex(-1) / z.zx
    rotated = z.scaled(w)
    point = SlicePoint(rotated.zl - Fraction(1, 2), rotated.zo)
    wc = complex(w)
    lam = complex(cmath.phase(wc) / math.pi, -math.log(abs(wc)) / math.pi)
    return Normalized(point, lam, w)


def act(z: CentralCharge, lam: complex) -> tuple[complex, complex, complex]:
    """Float image of Z under the C-action (values on O_x, O_l, O)."""
    f = cmath.exp(-1j * math.pi * lam)
    return tuple(f * complex(x) for x in (z.zx, z.zl, z.zo))


def phase_and_mass(p: SlicePoint, classes: Sequence[KClass]) -> list[tuple[float, float]]:
    out = []
    for v in classes:
        z = central_charge(p, v)
        if not z:
            raise ZeroCharge(f"Z({v}) = 0")
        phi = cmath.phase(complex(z)) / math.pi
        # fold into (0, 1]; negative and positive reals both land on 1
        phi = phi % 1.0 or 1.0
        out.append((phi, math.sqrt(float(z.abs2()))))
    return out


def heart_part(v: KClass, B) -> str:
    """Which half of the tilted heart a class is sorted into at parameter B."""
    if v.r > 0 and slope(v) <= B:
        return "F[1]"
    return "T"


class ChamberKind(enum.Enum):
    INSIDE = "Inside"
    ON_WALL_BAND = "OnWallBand"
    OUTSIDE = "Outside"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class ChamberVerdict:
    kind: ChamberKind
    wall: Optional[ExceptionalClass] = None

    def __str__(self) -> str:
        if self.kind is ChamberKind.ON_WALL_BAND:
            mu = self.wall.mu
            return f"OnWallBand({mu.numerator}/{mu.denominator})"
        return self.kind.value


def classify_image(m: EnvelopeModel, x, y) -> ChamberVerdict:
    """Chamber verdict for a point (x, y) = (B, g) of the slope/discriminant plane."""
    x, y = Fraction(x), Fraction(y)
    v = strictly_below(m, x, y)
    if v is Verdict.BELOW:
        return ChamberVerdict(ChamberKind.INSIDE)
    e = m.exceptional_at(x)
    if e is not None and e.delta < y < delta_at(m, x):
        return ChamberVerdict(ChamberKind.ON_WALL_BAND, e)
    return ChamberVerdict(ChamberKind.OUTSIDE)


def in_geometric_chamber(p: SlicePoint, m: EnvelopeModel) -> ChamberVerdict:
    B, g = projection_f(p)
    return classify_image(m, B, g)


def in_closure(p: SlicePoint, m: EnvelopeModel) -> bool:
    """Whether f(p) lies in the closure of the chamber image, i.e. g <= delta(B).

    The window is used modulo the period of the envelope.
    """
    B, g = projection_f(p)
    return g <= delta_at(m, m.reduce(B))


def classify_float(a: complex, b: complex, m: EnvelopeModel, tol: float = 1e-12) -> ChamberVerdict:
    """Float path: ties within ``tol`` of a boundary are Indeterminate."""
    if a.imag <= 0:
        raise DomainError(f"Im a must be positive, got a = {a}")
    B = -b.imag / a.imag
    g = -b.real - B * a.real + B * B / 2
    if not m.contains(B):
        raise DomainError(f"B = {B} outside window {m.window}")
    curve = delta_float(m, B)
    if abs(g - curve) <= tol:
        return ChamberVerdict(ChamberKind.INDETERMINATE)
    if g > curve:
        return ChamberVerdict(ChamberKind.OUTSIDE)
    for e in m.near(Fraction(B), Fraction(1, 10**6)):
        if abs(float(e.mu) - B) <= tol and g > float(e.delta) - tol:
            return ChamberVerdict(ChamberKind.INDETERMINATE)
    if g < curve:
        return ChamberVerdict(ChamberKind.INSIDE)
    return ChamberVerdict(ChamberKind.OUTSIDE)
