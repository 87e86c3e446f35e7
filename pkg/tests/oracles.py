"""Reference computations that avoid the package's own formulas."""
from fractions import Fraction


def chi_line_bundles(a: int, b: int) -> int:
    """χ(O(a), O(b)) = h^0 - h^2 of O(b - a) on the plane."""
    n = b - a
    return (n + 1) * (n + 2) // 2


# [O_x], [O_l], [O] written as combinations of [O(-2)], [O(-1)], [O]
RESOLUTION = {
    "x": {-2: 1, -1: -2, 0: 1},
    "l": {-1: -1, 0: 1},
    "o": {0: 1},
}


def chi_basis(u: str, w: str) -> int:
    return sum(
        cu * cw * chi_line_bundles(i, j)
        for i, cu in RESOLUTION[u].items()
        for j, cw in RESOLUTION[w].items()
    )


def chi_hrr(v, w) -> Fraction:
    """Hirzebruch-Riemann-Roch with Chern data (r, d, ch2) and td = (1, 3/2, 1)."""
    r, d, c = v.r, v.d, Fraction(v.c) - Fraction(v.d, 2)
    r2, d2, c2 = w.r, w.d, Fraction(w.c) - Fraction(w.d, 2)
    return r * r2 + Fraction(3, 2) * (r * d2 - d * r2) + r * c2 + r2 * c - d * d2


def _dlp_delta(mu: Fraction) -> Fraction:
    r = mu.denominator
    return (1 - Fraction(1, r * r)) / 2


def _dot(a: Fraction, b: Fraction) -> Fraction:
    """Slope between two adjacent exceptional slopes a < b."""
    return (a + b) / 2 + (_dlp_delta(b) - _dlp_delta(a)) / (3 + a - b)


def dyadic_exceptional_slopes(max_rank: int) -> set:
    """Exceptional slopes in [0, 1] generated from 0 and 1 by the dyadic
    midpoint rule on slopes alone; no K-theory involved."""
    out = {Fraction(0), Fraction(1)}
    stack = [(Fraction(0), Fraction(1))]
    while stack:
        a, b = stack.pop()
        c = _dot(a, b)
        if c.denominator > max_rank:
            continue
        out.add(c)
        stack.extend([(a, c), (c, b)])
    return out
