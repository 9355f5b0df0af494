"""Discriminant forms of the binary forms ``x^2 + xy - (m-1)/4 y^2`` and ``x^2 - m/4 y^2``.

Group elements are stored as tuples of fractions reduced into ``[0, 1)``.
The bilinear pairing is ``<x, y> = x^T S y mod 1``, so ``<x, x> = 2 Q(x)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

Vec = tuple[Fraction, ...]


def frac1(x) -> Fraction:
    """Reduce a rational into ``[0, 1)``."""
    x = Fraction(x)
    return x - math.floor(x)


def _reduce(v) -> Vec:
    return tuple(frac1(x) for x in v)


def _matvec(S, v):
    return tuple(sum(S[i][j] * v[j] for j in range(len(v))) for i in range(len(S)))


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def qform(S, v) -> Fraction:
    """Exact value ``v^T S v / 2`` (not reduced mod 1)."""
    return Fraction(_dot(v, _matvec(S, v))) / 2


def bilinear(S, u, v) -> Fraction:
    """Exact value ``u^T S v`` (not reduced mod 1)."""
    return Fraction(_dot(u, _matvec(S, v)))


def det(M) -> int:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    return sum((-1) ** j * M[0][j] * det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(n))


@dataclass(frozen=True)
class GroupElement:
    rep: Vec

    @property
    def order(self) -> int:
        """Denominator ``d_gamma``: least ``d > 0`` with ``d * rep`` integral."""
        return math.lcm(*(x.denominator for x in self.rep))

    def __add__(self, other):
        return GroupElement(_reduce(a + b for a, b in zip(self.rep, other.rep)))

    def __neg__(self):
        return GroupElement(_reduce(-a for a in self.rep))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return GroupElement(_reduce(k * a for a in self.rep))

    def is_zero(self):
        return not any(self.rep)

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.rep) + ")"


def check_discriminant(m: int):
    if m < 1 or m % 4 not in (0, 1):
        raise ValueError(f"m must be a positive integer = 0, 1 mod 4, got {m}")


def gram_matrix(m: int) -> tuple[tuple[int, int], tuple[int, int]]:
    check_discriminant(m)
    if m % 4 == 1:
        return ((2, 1), (1, -(m - 1) // 2))
    return ((2, 0), (0, -m // 2))


@dataclass
class DiscriminantForm:
    m: int
    gram: tuple
    elements: list[GroupElement] = field(repr=False)
    beta: GroupElement
    _index: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        self._index = {g: i for i, g in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def zero(self) -> GroupElement:
        return self.elements[0]

    def element(self, *coords) -> GroupElement:
        g = GroupElement(_reduce(coords))
        if g not in self._index:
            raise ValueError(f"{g} is not in the discriminant group for m={self.m}")
        return g

    def index(self, g: GroupElement) -> int:
        return self._index[g]

    def q(self, g: GroupElement) -> Fraction:
        """Q(g) in ``[0, 1)``."""
        return frac1(qform(self.gram, g.rep))

    def pairing(self, g: GroupElement, h: GroupElement) -> Fraction:
        """``g^T S h`` in ``[0, 1)``."""
        return frac1(bilinear(self.gram, g.rep, h.rep))

    def beta_pairing(self, g: GroupElement) -> Fraction:
        return self.pairing(g, self.beta)

    @property
    def level(self) -> int:
        return math.lcm(*(self.q(g).denominator for g in self.elements))

    def orbit_representatives(self) -> list[GroupElement]:
        """One element from each pair ``{g, -g}``, in enumeration order."""
        seen, reps = set(), []
        for g in self.elements:
            if g not in seen:
                reps.append(g)
                seen.update((g, -g))
        return reps

    def elements_with_norm(self, value) -> list[GroupElement]:
        """All ``g`` with ``Q(g) = value mod 1``."""
        value = frac1(value)
        return [g for g in self.elements if self.q(g) == value]


def build_discriminant_form(m: int) -> DiscriminantForm:
    """Discriminant form of the binary form of discriminant ``m``.

    ``m = 1 mod 4``: Gram ``[[2, 1], [1, -(m-1)/2]]`` and ``beta = (-1/m, 2/m)``;
    ``m = 0 mod 4``: Gram ``[[2, 0], [0, -m/2]]`` and ``beta = (0, 2/m)``.
    """
    S = gram_matrix(m)
    elements = []
    for i, j in itertools.product(range(m), repeat=2):
        v = (Fraction(i, m), Fraction(j, m))
        if all(x.denominator == 1 for x in _matvec(S, v)):
            elements.append(GroupElement(v))
    elements.sort(key=lambda g: (g.order != 1, g.rep))
    if m % 4 == 1:
        beta = GroupElement(_reduce((Fraction(-1, m), Fraction(2, m))))
    else:
        beta = GroupElement(_reduce((Fraction(0), Fraction(2, m))))
    df = DiscriminantForm(m, S, elements, beta)
    assert len(elements) == abs(det(S)) == m
    assert df.q(beta) == frac1(Fraction(-1, m))
    return df


def ternary_gram(m: int) -> tuple[tuple[int, ...], ...]:
    """Gram matrix of the ternary form attached to ``m``.

    ``Q(x, y) + 2xz + z^2`` for odd ``m``; ``Q(x, y) - yz`` for even ``m``.
    """
    check_discriminant(m)
    if m % 4 == 1:
        return ((2, 1, 2), (1, -(m - 1) // 2, 0), (2, 0, 2))
    return ((2, 0, 0), (0, -m // 2, -1), (0, -1, 0))


def ternary_block_gram(df: DiscriminantForm) -> tuple[tuple[Fraction, ...], ...]:
    """``[[S, S b], [b^T S, 2 (1/m + Q(b))]]`` for the reduced representative ``b`` of beta."""
    S, b = df.gram, df.beta.rep
    Sb = _matvec(S, b)
    corner = 2 * (Fraction(1, df.m) + qform(S, b))
    return (
        (Fraction(S[0][0]), Fraction(S[0][1]), Sb[0]),
        (Fraction(S[1][0]), Fraction(S[1][1]), Sb[1]),
        (Sb[0], Sb[1], corner),
    )


def ternary_check(m: int) -> int:
    """Determinant of :func:`ternary_gram`; equals -2 for every valid ``m``."""
    return det([list(r) for r in ternary_gram(m)])


def zero_count_check(df: DiscriminantForm, gamma: GroupElement, r, n, p: int, k: int = 1) -> tuple[int, int]:
    """Count zeros mod ``p**k`` of the binary-plus-lambda and ternary polynomials.

    Left: ``(v, lam)`` in ``(Z/p^k)^3`` with ``Q(v + lam*beta - gamma) + lam^2/m - r*lam + n = 0``.
    Right: ``w`` in ``(Z/p^k)^3`` with ``Qt(w - gamma_r) + n - m r^2/4 = 0``, where
    ``gamma_r = (gamma - (rm/2) beta, rm/2)`` and ``Qt`` is the ternary form.
    A rational value counts as zero when ``p**k`` divides its numerator.
    """
    m = df.m
    r, n = Fraction(r), Fraction(n)
    if p < 2 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"{p} is not prime")
    if m % p == 0:
        raise ValueError(f"p = {p} divides m = {m}")
    pk = p**k
    if pk > 10**4:
        raise ValueError("p**k too large")
    if frac1(r + df.beta_pairing(gamma)) != 0:
        raise ValueError("r is not in Z - <gamma, beta>")
    if frac1(n + df.q(gamma)) != 0:
        raise ValueError("n is not in Z - Q(gamma)")

    S, b, g = df.gram, df.beta.rep, gamma.rep
    G = ternary_block_gram(df)

    def is_zero(x: Fraction) -> bool:
        if x.denominator % p == 0:
            raise ArithmeticError(f"value {x} is not p-integral")
        return x.numerator % pk == 0

    left = 0
    for v0, v1, lam in itertools.product(range(pk), repeat=3):
        x = (v0 + lam * b[0] - g[0], v1 + lam * b[1] - g[1])
        left += is_zero(qform(S, x) + Fraction(lam * lam, m) - r * lam + n)

    t = r * m / 2
    gr = (g[0] - t * b[0], g[1] - t * b[1], t)
    shift = n - m * r * r / 4
    right = 0
    for w in itertools.product(range(pk), repeat=3):
        x = tuple(wi - ci for wi, ci in zip(w, gr))
        right += is_zero(qform(G, x) + shift)
    return left, right
