"""Line bundles on the non-compact part W = Z_1 ∪ Z_2 ∪ Z_3 and on X.

A line bundle on W is ``O(n_i E_i)`` on each blown-up plane glued by scalars
``(φ21, φ32, φ13)``; only the product of the scalars (the holonomy) survives
up to isomorphism, so Pic(W) = Z^3 × C*.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .autgroup import scalar_equal


def _inv(x):
    if isinstance(x, (int, Fraction)):
        return 1 / Fraction(x)
    return 1 / x


def _canon(x):
    if isinstance(x, int):
        return Fraction(x)
    return x


@dataclass(frozen=True)
class GluingData:
    n: tuple[int, int, int]
    phi: tuple = (1, 1, 1)

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(k) for k in self.n))
        object.__setattr__(self, "phi", tuple(_canon(p) for p in self.phi))
        if len(self.n) != 3 or len(self.phi) != 3:
            raise ValueError("gluing data needs three multiplicities and three scalars")
        if any(p == 0 for p in self.phi):
            raise ValueError("transition scalars must be nonzero")

    @property
    def holonomy(self):
        p21, p32, p13 = self.phi
        return p21 * p32 * p13


@dataclass(frozen=True)
class NormalForm:
    n: tuple[int, int, int]
    holonomy: object

    def same_as(self, other: "NormalForm") -> bool:
        return self.n == other.n and scalar_equal(self.holonomy, other.holonomy)

    def to_json(self) -> dict:
        h = self.holonomy
        hs = str(h) if isinstance(h, Fraction) else repr(complex(h))
        return {"n": list(self.n), "holonomy": hs}


@dataclass(frozen=True)
class CycleBundle:
    """Line bundle on the triangle of lines E_1 ∪ E_2 ∪ E_3: degrees and monodromy."""

    deg: tuple[int, int, int]
    mono: object

    def same_as(self, other: "CycleBundle") -> bool:
        return self.deg == other.deg and scalar_equal(self.mono, other.mono)


def normal_form(g: GluingData) -> NormalForm:
    return NormalForm(g.n, g.holonomy)


def isomorphic(g: GluingData, h: GluingData) -> bool:
    return normal_form(g).same_as(normal_form(h))


def tensor(g: GluingData, h: GluingData) -> GluingData:
    return GluingData(
        tuple(a + b for a, b in zip(g.n, h.n)),
        tuple(x * y for x, y in zip(g.phi, h.phi)),
    )


def dual(g: GluingData) -> GluingData:
    return GluingData(tuple(-a for a in g.n), tuple(_inv(x) for x in g.phi))


def trivial() -> GluingData:
    return GluingData((0, 0, 0), (1, 1, 1))


def restrict_to_cycle(g: GluingData) -> CycleBundle:
    # O(n E) restricted to E has degree -n since E.E = -1
    return CycleBundle(tuple(-k for k in g.n), g.holonomy)


def cycle_restriction_of_O_X(m: int) -> CycleBundle:
    """O_X(m) seen from the plane: degree m on each of the three lines, trivial monodromy."""
    return CycleBundle((m, m, m), Fraction(1))


def glue_on_X(deg0: int, g: GluingData) -> Optional[int]:
    """Degree m of the line bundle on X obtained by gluing O(deg0) on the plane
    to g on W, or None when the two restrictions to the cycle disagree."""
    if restrict_to_cycle(g).same_as(cycle_restriction_of_O_X(deg0)):
        return deg0
    return None
