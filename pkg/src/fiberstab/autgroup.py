"""Autoequivalences at the level of the K-lattice, and the abstract Aut(X).

Matrices act on column vectors ``(c, d, r)``.  A word is read as a matrix
product from left to right, so ``"β α β⁻¹"`` is ``M_β @ M_α @ M_β⁻¹``.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BudgetExhausted, ShiftPresent
from .exceptional import ExceptionalClass
from .ktheory import KClass, PLANE, line_bundle

Mat3 = tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]

IDENTITY: Mat3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))

ALPHA, ALPHA_INV, BETA, BETA_INV = "α", "α⁻¹", "β", "β⁻¹"
SHIFT, SHIFT_INV = "[1]", "[-1]"
_INVERSE = {ALPHA: ALPHA_INV, ALPHA_INV: ALPHA, BETA: BETA_INV, BETA_INV: BETA,
            SHIFT: SHIFT_INV, SHIFT_INV: SHIFT}
_ASCII = {"a": ALPHA, "A": ALPHA_INV, "b": BETA, "B": BETA_INV, "s": SHIFT, "S": SHIFT_INV}


def matmul(x: Sequence[Sequence[int]], y: Sequence[Sequence[int]]) -> tuple:
    n, k, m = len(x), len(y), len(y[0])
    return tuple(tuple(sum(x[i][t] * y[t][j] for t in range(k)) for j in range(m)) for i in range(n))


def det3(m: Sequence[Sequence[int]]) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def inverse3(m: Sequence[Sequence[int]]) -> Mat3:
    """Inverse of a unimodular integer matrix via the adjugate."""
    d = det3(m)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det {d})")
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            minor = (m[rows[0]][cols[0]] * m[rows[1]][cols[1]]
                     - m[rows[0]][cols[1]] * m[rows[1]][cols[0]])
            cof[i][j] = (-1) ** (i + j) * minor
    return tuple(tuple(d * cof[j][i] for j in range(3)) for i in range(3))


def apply(m: Sequence[Sequence[int]], v: KClass) -> KClass:
    x = v.as_tuple()
    return KClass(*(sum(m[i][j] * x[j] for j in range(3)) for i in range(3)))


def twist_token(e: ExceptionalClass, exponent: int = 1) -> str:
    tok = f"H({e.mu})"
    return tok if exponent == 1 else tok + "⁻¹"


def invert_word(word: Sequence[str]) -> tuple[str, ...]:
    out = []
    for tok in reversed(word):
        if tok in _INVERSE:
            out.append(_INVERSE[tok])
        elif tok.endswith("⁻¹"):
            out.append(tok[: -len("⁻¹")])
        else:
            out.append(tok + "⁻¹")
    return tuple(out)


@dataclass(frozen=True)
class KAutomorphism:
    matrix: Mat3
    word: tuple[str, ...] = ()

    def __matmul__(self, other: "KAutomorphism") -> "KAutomorphism":
        return KAutomorphism(matmul(self.matrix, other.matrix), self.word + other.word)

    def __pow__(self, n: int) -> "KAutomorphism":
        base = self if n >= 0 else self.inverse()
        out = KAutomorphism(IDENTITY)
        for _ in range(abs(n)):
            out = out @ base
        return out

    def inverse(self) -> "KAutomorphism":
        return KAutomorphism(inverse3(self.matrix), invert_word(self.word))

    def __call__(self, v: KClass) -> KClass:
        return apply(self.matrix, v)

    @property
    def det(self) -> int:
        return det3(self.matrix)

    def is_identity(self) -> bool:
        return self.matrix == IDENTITY

    def word_str(self) -> str:
        return " ".join(self.word)

    def to_json(self) -> dict:
        return {"word": list(self.word), "matrix": [list(r) for r in self.matrix]}


def matrix_shift() -> KAutomorphism:
    return KAutomorphism(((-1, 0, 0), (0, -1, 0), (0, 0, -1)), (SHIFT,))


def matrix_beta() -> KAutomorphism:
    """``- (x) O(1)``: (c, d, r) -> (c + d + r, d + r, r)."""
    return KAutomorphism(((1, 1, 1), (0, 1, 1), (0, 0, 1)), (BETA,))


def half_twist_matrix(e: KClass) -> Mat3:
    """``v -> v - <e, v> e = v + 3 (d_e r_v - r_e d_v) e``."""
    ec = e.as_tuple()
    # coefficient row of v -> 3 (d_e r_v - r_e d_v)
    row = (0, -3 * e.r, 3 * e.d)
    return tuple(
        tuple(int(i == j) + ec[i] * row[j] for j in range(3)) for i in range(3)
    )


def matrix_half_twist(e: ExceptionalClass) -> KAutomorphism:
    return KAutomorphism(half_twist_matrix(e.v), (twist_token(e),))


def matrix_alpha() -> KAutomorphism:
    return KAutomorphism(half_twist_matrix(PLANE), (ALPHA,))


GENERATORS = {
    ALPHA: matrix_alpha(),
    BETA: matrix_beta(),
    SHIFT: matrix_shift(),
}
GENERATORS[ALPHA_INV] = KAutomorphism(GENERATORS[ALPHA].inverse().matrix, (ALPHA_INV,))
GENERATORS[BETA_INV] = KAutomorphism(GENERATORS[BETA].inverse().matrix, (BETA_INV,))
GENERATORS[SHIFT_INV] = KAutomorphism(GENERATORS[SHIFT].matrix, (SHIFT_INV,))


def parse_word(text: str | Iterable[str]) -> tuple[str, ...]:
    """Tokens ``α α⁻¹ β β⁻¹ [1] [-1]`` or the ascii letters ``a A b B s S``."""
    if isinstance(text, str):
        toks = text.replace(".", " ").split()
        if len(toks) == 1 and toks[0] not in GENERATORS and set(toks[0]) <= set(_ASCII):
            toks = list(toks[0])
    else:
        toks = list(text)
    out = []
    for t in toks:
        t = _ASCII.get(t, t)
        if t not in GENERATORS:
            raise ValueError(f"unknown generator token {t!r}")
        out.append(t)
    return tuple(out)


def from_word(word: str | Iterable[str]) -> KAutomorphism:
    out = KAutomorphism(IDENTITY)
    for t in parse_word(word):
        out = out @ GENERATORS[t]
    return out


def verify_braid_relation() -> bool:
    ab = GENERATORS[ALPHA] @ GENERATORS[BETA]
    return (ab ** 3).is_identity() and not ab.is_identity()


def gamma13_image(a: KAutomorphism) -> tuple[tuple[int, int], tuple[int, int]]:
    """Action on K / Z[O_x] in the coordinates (d, r)."""
    if any(t in (SHIFT, SHIFT_INV) for t in a.word):
        raise ShiftPresent("gamma13_image is defined on shift-free words")
    m = a.matrix
    return ((m[1][1], m[1][2]), (m[2][1], m[2][2]))


def in_gamma1_3(m2: Sequence[Sequence[int]]) -> bool:
    (p, q), (s, t) = m2
    return p * t - q * s == 1 and p % 3 == 1 and t % 3 == 1 and s % 3 == 0


def _reduced_words(max_len: int, letters=(ALPHA, ALPHA_INV, BETA, BETA_INV)):
    """Freely reduced words in order of length, each with its matrix."""
    frontier = [((), IDENTITY)]
    yield (), IDENTITY
    for _ in range(max_len):
        nxt = []
        for word, mat in frontier:
            for t in letters:
                if word and _INVERSE[word[-1]] == t:
                    continue
                w = word + (t,)
                m = matmul(mat, GENERATORS[t].matrix)
                nxt.append((w, m))
                yield w, m
        frontier = nxt


def express_twist_as_word(e: ExceptionalClass, max_len: int) -> KAutomorphism:
    """Shortest word in α, β whose matrix equals the half twist along e (BFS)."""
    target = half_twist_matrix(e.v)
    for word, mat in _reduced_words(max_len):
        if mat == target:
            return KAutomorphism(mat, word)
    raise BudgetExhausted(f"no word of length <= {max_len} for the twist along {e}")


def free_product_normal_form(word: Sequence[str]) -> tuple[tuple[str, int], ...]:
    """Normal form in Z * Z/3 under the relation (αβ)^3 = 1.

    With x = β and y = αβ (of order 3) one has α = y x⁻¹; a reduced word is an
    alternating sequence of syllables x^k (k != 0) and y^{1,2}.
    """
    letters: list[tuple[str, int]] = []
    subst = {ALPHA: [("y", 1), ("x", -1)], ALPHA_INV: [("x", 1), ("y", -1)],
             BETA: [("x", 1)], BETA_INV: [("x", -1)]}
    for tok in word:
        for gen, k in subst[tok]:
            if letters and letters[-1][0] == gen:
                g, k0 = letters.pop()
                k = k0 + k
            if gen == "y":
                k %= 3
            if k:
                letters.append((gen, k))
    return tuple(letters)


# --- Aut(X) = S_3 ⋉ (C*)^3 -------------------------------------------------

PAIRS = ((1, 2), (2, 3), (3, 1))


def _pair_index(i: int, j: int) -> int:
    s = {i, j}
    for n, p in enumerate(PAIRS):
        if set(p) == s:
            return n
    raise ValueError((i, j))


@dataclass(frozen=True)
class AutXElement:
    """Permutation of the components Z_1, Z_2, Z_3 (as images of 1, 2, 3)
    and scalings of the lines Z_12, Z_23, Z_31."""

    perm: tuple[int, int, int] = (1, 2, 3)
    scalars: tuple = (1, 1, 1)

    def __post_init__(self):
        if sorted(self.perm) != [1, 2, 3]:
            raise ValueError(f"not a permutation of 1,2,3: {self.perm}")
        if any(s == 0 for s in self.scalars):
            raise ValueError("scalars must be nonzero")

    def act_on_scalars(self, lam: Sequence) -> tuple:
        """Conjugation action: the scaling on Z_ij moves to Z_{σ(i)σ(j)}."""
        out = [None] * 3
        for n, (i, j) in enumerate(PAIRS):
            out[_pair_index(self.perm[i - 1], self.perm[j - 1])] = lam[n]
        return tuple(out)

    def __mul__(self, other: "AutXElement") -> "AutXElement":
        return autx_compose(self, other)

    def inverse(self) -> "AutXElement":
        inv = [0, 0, 0]
        for i, p in enumerate(self.perm, start=1):
            inv[p - 1] = i
        pinv = AutXElement(tuple(inv))
        return AutXElement(tuple(inv), pinv.act_on_scalars(tuple(_recip(s) for s in self.scalars)))

    def to_json(self) -> dict:
        return {"perm": list(self.perm), "scalars": [_scalar_str(s) for s in self.scalars]}


def _recip(s):
    return Fraction(1) / s if isinstance(s, (int, Fraction)) else 1 / s


def _scalar_str(s) -> str:
    if isinstance(s, (int, Fraction)):
        return str(Fraction(s))
    return repr(complex(s))


def autx_compose(f: AutXElement, g: AutXElement) -> AutXElement:
    """``(σ, λ)(τ, μ) = (στ, λ · σ(μ))``."""
    perm = tuple(f.perm[g.perm[i] - 1] for i in range(3))
    moved = f.act_on_scalars(g.scalars)
    return AutXElement(perm, tuple(x * y for x, y in zip(f.scalars, moved)))


def scalar_equal(x, y, tol: float = 1e-12) -> bool:
    if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
        return Fraction(x) == Fraction(y)
    return abs(complex(x) - complex(y)) <= tol


def autx_extends_over_base(f: AutXElement) -> bool:
    p = 1
    for s in f.scalars:
        p = p * s
    return scalar_equal(p, 1)


# --- Z × Γ₁(3) × Aut(X) ----------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    shift: int = 0
    gamma: KAutomorphism = KAutomorphism(IDENTITY)
    aut: AutXElement = AutXElement()

    def __post_init__(self):
        if any(t in (SHIFT, SHIFT_INV) for t in self.gamma.word):
            raise ShiftPresent("shifts belong in the Z factor")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return group_compose(self, other)

    def inverse(self) -> "GroupElement":
        return GroupElement(-self.shift, self.gamma.inverse(), self.aut.inverse())

    def k_action(self) -> Mat3:
        """Aut(X) acts trivially on K; the shift contributes a sign."""
        s = -1 if self.shift % 2 else 1
        return tuple(tuple(s * x for x in row) for row in self.gamma.matrix)

    def to_json(self) -> dict:
        return {
            "shift": self.shift,
            "word": list(self.gamma.word),
            "gamma": [list(r) for r in self.gamma.matrix],
            "k_action": [list(r) for r in self.k_action()],
            **self.aut.to_json(),
        }


def group_compose(x: GroupElement, y: GroupElement) -> GroupElement:
    return GroupElement(x.shift + y.shift, x.gamma @ y.gamma, x.aut * y.aut)


def cube_root_of_unity() -> complex:
    return cmath.exp(2j * cmath.pi / 3)


def conjugate_twist_check(n: int) -> bool:
    """``β^n α β^-n`` equals the half twist along O(n) on the lattice."""
    w = GENERATORS[BETA] ** n @ GENERATORS[ALPHA] @ GENERATORS[BETA] ** (-n)
    return w.matrix == half_twist_matrix(line_bundle(n))


def random_word(rng, length: int, letters=(ALPHA, ALPHA_INV, BETA, BETA_INV)) -> tuple[str, ...]:
    return tuple(rng.choice(letters) for _ in range(length))


def words_up_to(max_len: int):
    """All freely reduced α/β words of length <= max_len with their matrices."""
    return list(_reduced_words(max_len))

