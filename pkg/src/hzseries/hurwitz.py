"""Hurwitz class numbers.

Two independent routes are provided: :func:`hurwitz_formula` goes through the
fundamental discriminant and the Moebius-twisted divisor sum, and
:func:`hurwitz_oracle` counts reduced forms of discriminant ``-n`` directly.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import divisor_list, kronecker, moebius, sigma1, squarefree_part


@lru_cache(maxsize=None)
def class_number(D: int) -> int:
    """Number of reduced primitive positive definite forms of discriminant ``D < 0``."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"bad negative discriminant {D}")
    n = -D
    h = 0
    a = 1
    while 3 * a * a <= n:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b + n
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (b < 0 and a == c):
                continue
            if math.gcd(math.gcd(a, abs(b)), c) == 1:
                h += 1
        a += 1
    return h


def fundamental_decomposition(n: int) -> tuple[int, int]:
    """For ``n > 0`` with ``n = 0, 3 mod 4`` return ``(D, f)`` with ``-n = D f**2``, ``D`` fundamental."""
    s, g = squarefree_part(n)
    if (-s) % 4 == 1:
        return -s, g
    if g % 2:
        raise ValueError(f"{n} is not a discriminant up to sign")
    return -4 * s, g // 2


def hurwitz_formula(n: int) -> Fraction:
    """H(n) through the class number of the fundamental discriminant."""
    if n == 0:
        return Fraction(-1, 12)
    if n < 0 or n % 4 in (1, 2):
        return Fraction(0)
    D, f = fundamental_decomposition(n)
    w = {-3: 6, -4: 4}.get(D, 2)
    s = sum(moebius(d) * kronecker(D, d) * sigma1(f // d) for d in divisor_list(f))
    return Fraction(2 * class_number(D) * s, w)


def hurwitz_oracle(n: int) -> Fraction:
    """H(n) by counting all reduced forms of discriminant ``-n``.

    Forms equivalent to multiples of ``x^2 + y^2`` count 1/2, multiples of
    ``x^2 + xy + y^2`` count 1/3.
    """
    if n <= 0 or n % 4 not in (0, 3):
        raise ValueError(f"hurwitz_oracle needs n > 0 with n = 0, 3 mod 4, got {n}")
    total = Fraction(0)
    a = 1
    while 3 * a * a <= n:
        for b in range(n % 2, a + 1, 2):
            num = b * b + n
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b == 0:
                total += Fraction(1, 2) if a == c else 1
            elif b == a:
                total += Fraction(1, 3) if a == c else 1
            else:
                # b and -b are both reduced unless a == c
                total += 1 if a == c else 2
        a += 1
    return total


class TableTooSmall(LookupError):
    pass


@dataclass
class HurwitzTable:
    """H(0), ..., H(max_index) as exact fractions."""

    max_index: int
    values: list[Fraction] = field(repr=False)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n > self.max_index:
            raise TableTooSmall(f"H({n}) requested but table stops at {self.max_index}")
        return self.values[n]

    def __len__(self):
        return self.max_index + 1

    def extend(self, max_index: int) -> HurwitzTable:
        if max_index > self.max_index:
            self.values.extend(hurwitz_formula(n) for n in range(self.max_index + 1, max_index + 1))
            self.max_index = max_index
        return self

    def save(self, path) -> None:
        with open(path, "w") as fh:
            for n, v in enumerate(self.values):
                fh.write(f"{n} {v.numerator}/{v.denominator}\n")

    @classmethod
    def load(cls, path) -> HurwitzTable:
        values = []
        with open(path) as fh:
            for lineno, line in enumerate(fh):
                if not line.strip():
                    continue
                idx, val = line.split()
                if int(idx) != lineno:
                    raise ValueError(f"{path}: line {lineno + 1} has index {idx}")
                values.append(Fraction(val))
        if not values:
            raise ValueError(f"{path}: empty table")
        return cls(len(values) - 1, values)


def build_table(max_index: int) -> HurwitzTable:
    if max_index < 0:
        raise ValueError("max_index must be nonnegative")
    return HurwitzTable(max_index, [hurwitz_formula(n) for n in range(max_index + 1)])


_default = HurwitzTable(0, [Fraction(-1, 12)])


def default_table(min_index: int = 0) -> HurwitzTable:
    """Process-wide table, grown on demand to cover ``min_index``."""
    return _default.extend(min_index)


def load_or_build(path, max_index: int) -> HurwitzTable:
    """Read a cached table from ``path``; build and write it if missing or short.

    A cached table is trusted as-is (no recomputation of existing entries).
    """
    if path and os.path.exists(path):
        table = HurwitzTable.load(path)
        if table.max_index >= max_index:
            return table
        table.extend(max_index)
    else:
        table = build_table(max_index)
    if path:
        table.save(path)
    return table
