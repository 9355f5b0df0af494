"""Exact integer arithmetic: Kronecker symbols, divisors, twisted divisor sums.

Everything here works on Python ints, which are arbitrary precision, and
on :class:`fractions.Fraction` for rational values.  Factorization is by
trial division; inputs are expected to stay below about 10**7.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Rational = Fraction


@dataclass(frozen=True)
class ResidueClass:
    """The congruence class ``residue (mod modulus)``."""

    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if not 0 <= self.residue < self.modulus:
            object.__setattr__(self, "residue", self.residue % self.modulus)

    def __contains__(self, n: int) -> bool:
        return n % self.modulus == self.residue

    def __str__(self):
        return f"{self.residue} mod {self.modulus}"


@lru_cache(maxsize=65536)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``|n|`` as ``((p, e), ...)`` with p ascending."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    result = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            result.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        result.append((n, 1))
    return tuple(result)


def divisor_list(n: int) -> list[int]:
    """Positive divisors of ``n`` in ascending order."""
    if n <= 0:
        raise ValueError(f"divisor_list needs n >= 1, got {n}")
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def sigma1(n: int) -> int:
    return sum(divisor_list(n))


def moebius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def squarefree_part(n: int) -> tuple[int, int]:
    """Write ``n = s * g**2`` with ``s`` squarefree and ``g > 0``; returns ``(s, g)``."""
    if n == 0:
        raise ValueError("0 has no squarefree part")
    s, g = (1 if n > 0 else -1), 1
    for p, e in factorize(n):
        g *= p ** (e // 2)
        if e % 2:
            s *= p
    return s, g


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return squarefree_part(d)[1] == 1
    if d % 4 == 0:
        q = d // 4
        return q % 4 in (2, 3) and squarefree_part(q)[1] == 1
    return False


def _jacobi(a: int, n: int) -> int:
    # n odd and positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol ``(a/n)``, total on all integer pairs.

    ``(a/0)`` is 1 for ``a = ±1`` and 0 otherwise; ``(a/-1)`` is the sign of
    ``a``; ``(a/2)`` is 0 for even ``a`` and ``(-1)**((a*a-1)/8)`` for odd ``a``.
    """
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    if a % 2 == 0 and n % 2 == 0:
        return 0
    v = (n & -n).bit_length() - 1
    n >>= v
    if v % 2 and a % 8 in (3, 5):
        result = -result
    return result * _jacobi(a, n)


def _check_disc(m: int):
    if m % 4 not in (0, 1):
        raise ValueError(f"m must be 0 or 1 mod 4, got {m}")


def sigma1_twisted(n: int, m: int) -> int:
    """``sum_{d | n} d * (m / (n/d))``; for ``m = 1`` this is the divisor sum."""
    _check_disc(m)
    return sum(d * kronecker(m, n // d) for d in divisor_list(n))


def fraction_str(x: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` (always with a slash)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s.strip())
