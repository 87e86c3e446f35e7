"""The rank-3 K-lattice of sheaves supported on the plane component.

Classes are stored in the integral basis ``([O_x], [O_l], [O])`` as
``KClass(c, d, r)``.  The Chern coordinates are ``(r, d, ch2)`` with
``ch2 = c - d/2``; every slope/discriminant formula below uses ``ch2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ZeroRank

# chi(e_i, e_j) for the basis O_x, O_l, O (rows = first argument).
GRAM = (
    (0, 0, 1),
    (0, -1, -2),
    (1, 1, 1),
)
# GRAM - GRAM^T
SKEW = tuple(tuple(GRAM[i][j] - GRAM[j][i] for j in range(3)) for i in range(3))


@dataclass(frozen=True, order=True)
class KClass:
    c: int
    d: int
    r: int

    @classmethod
    def from_chern(cls, r: int, d: int, ch2) -> "KClass":
        c = Fraction(ch2) + Fraction(d, 2)
        if c.denominator != 1:
            raise ValueError(f"ch2={ch2} is not integral for d={d}")
        return cls(int(c), d, r)

    @property
    def ch2(self) -> Fraction:
        return Fraction(2 * self.c - self.d, 2)

    def chern(self) -> tuple[int, int, Fraction]:
        return (self.r, self.d, self.ch2)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.c, self.d, self.r)

    def __add__(self, other: "KClass") -> "KClass":
        return KClass(self.c + other.c, self.d + other.d, self.r + other.r)

    def __sub__(self, other: "KClass") -> "KClass":
        return KClass(self.c - other.c, self.d - other.d, self.r - other.r)

    def __neg__(self) -> "KClass":
        return KClass(-self.c, -self.d, -self.r)

    def __mul__(self, k: int) -> "KClass":
        return KClass(k * self.c, k * self.d, k * self.r)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"c": self.c, "d": self.d, "r": self.r}

    @classmethod
    def from_json(cls, obj: Mapping) -> "KClass":
        return cls(int(obj["c"]), int(obj["d"]), int(obj["r"]))


POINT = KClass(1, 0, 0)
LINE = KClass(0, 1, 0)
PLANE = KClass(0, 0, 1)


def line_bundle(n: int) -> KClass:
    """Class of O(n) on the plane."""
    return KClass(n * (n + 1) // 2, n, 1)


def twist_by_line_bundle(v: KClass, k: int = 1) -> KClass:
    """Class of ``v (x) O(k)``."""
    r, d = v.r, v.d
    return KClass.from_chern(r, d + k * r, v.ch2 + k * d + Fraction(k * k * r, 2))


def euler_p2(v: KClass, w: KClass) -> int:
    a, b = v.as_tuple(), w.as_tuple()
    return sum(a[i] * GRAM[i][j] * b[j] for i in range(3) for j in range(3))


def skew_pairing(v: KClass, w: KClass) -> int:
    return euler_p2(v, w) - euler_p2(w, v)


def slope(v: KClass) -> Fraction:
    if v.r == 0:
        raise ZeroRank(f"slope undefined for rank-0 class {v}")
    return Fraction(v.d, v.r)


def discriminant(v: KClass) -> Fraction:
    if v.r == 0:
        raise ZeroRank(f"discriminant undefined for rank-0 class {v}")
    return Fraction(v.d * v.d, 2 * v.r * v.r) - v.ch2 / v.r


def euler_poly(x) -> Fraction:
    """``P(x) = (x^2 + 3x + 2)/2``, the Hilbert polynomial of O on the plane."""
    x = Fraction(x)
    return (x * x + 3 * x + 2) / 2


def normalized_euler(v: KClass, w: KClass) -> Fraction:
    """``P(mu_w - mu_v) - Delta_v - Delta_w``, i.e. chi(v, w)/(r_v r_w)."""
    return euler_poly(slope(w) - slope(v)) - discriminant(v) - discriminant(w)


def euler_identity_check(v: KClass, w: KClass) -> bool:
    return Fraction(euler_p2(v, w), v.r * w.r) == normalized_euler(v, w)


@dataclass(frozen=True)
class AmbientKClass:
    """Class in K(D_c) = K(Z_0) + sum over points x outside Z_0 of Z[O_x]."""

    core: KClass
    points: tuple[tuple[str, int], ...] = field(default=())

    def __post_init__(self):
        merged: dict[str, int] = {}
        for label, n in self.points:
            merged[label] = merged.get(label, 0) + n
        object.__setattr__(
            self, "points", tuple(sorted((k, n) for k, n in merged.items() if n))
        )

    @classmethod
    def embed(cls, v: KClass) -> "AmbientKClass":
        return cls(v)

    @classmethod
    def point(cls, label: str, n: int = 1) -> "AmbientKClass":
        return cls(KClass(0, 0, 0), ((label, n),))

    def __add__(self, other: "AmbientKClass") -> "AmbientKClass":
        return AmbientKClass(self.core + other.core, self.points + other.points)

    def __neg__(self) -> "AmbientKClass":
        return AmbientKClass(-self.core, tuple((k, -n) for k, n in self.points))

    def __sub__(self, other: "AmbientKClass") -> "AmbientKClass":
        return self + (-other)


def integer_kernel(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Basis of ``{x in Z^n : A x = 0}`` by unimodular column elimination.

    Column operations reduce ``A`` to a lower echelon form ``A U``; the columns
    of ``U`` matching zero columns of ``A U`` span the integer kernel.
    """
    a = [list(row) for row in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(j: int, k: int, p: int, q: int, s: int, t: int) -> None:
        # (col_j, col_k) <- (p col_j + q col_k, s col_j + t col_k), det = +-1
        for mat in (a, u):
            for row in mat:
                x, y = row[j], row[k]
                row[j], row[k] = p * x + q * y, s * x + t * y

    pivot = 0
    for i in range(m):
        if pivot >= n:
            break
        for k in range(pivot + 1, n):
            while a[i][k] != 0:
                if a[i][pivot] == 0:
                    colop(pivot, k, 0, 1, 1, 0)
                    continue
                q = a[i][k] // a[i][pivot]
                colop(pivot, k, 1, 0, -q, 1)
                if a[i][k] != 0:
                    colop(pivot, k, 0, 1, 1, 0)
        if a[i][pivot] != 0:
            pivot += 1
    return [tuple(u[r][j] for r in range(n)) for j in range(pivot, n)]


def skew_kernel() -> list[KClass]:
    return [KClass(*vec) for vec in integer_kernel(SKEW)]
