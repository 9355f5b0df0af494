"""Units and norm equations in real quadratic orders.

An element ``lam = (X + Y sqrt(m)) / 2`` is stored as the integer pair
``(X, Y)``; its norm is ``(X**2 - m*Y**2) / 4``.  All decisions are made in
exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import is_square


def sqrt_cf_period(m: int) -> tuple[int, list[int]]:
    """Continued fraction ``sqrt(m) = [a0; period...]`` via exact ``(P, Q, a)`` recurrences."""
    a0 = math.isqrt(m)
    if a0 * a0 == m:
        raise ValueError(f"{m} is a perfect square")
    P, Q, a = 0, 1, a0
    period = []
    while True:
        P = a * Q - P
        Q = (m - P * P) // Q
        a = (a0 + P) // Q
        period.append(a)
        if Q == 1:
            return a0, period


def pell_fundamental(m: int) -> tuple[int, int]:
    """Least ``(x, y)`` with ``x, y > 0`` and ``x**2 - m*y**2 = 1``."""
    a0, period = sqrt_cf_period(m)
    terms = period if len(period) % 2 == 0 else period + period
    h0, h1 = 1, a0
    k0, k1 = 0, 1
    for a in terms[:-1]:
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
    assert h1 * h1 - m * k1 * k1 == 1
    return h1, k1


def _lucas_v(k: int, t: int) -> int:
    """Trace of ``e**k`` for a norm-one unit ``e`` of trace ``t``."""
    v0, v1 = 2, t
    for _ in range(k - 1):
        v0, v1 = v1, t * v1 - v0
    return v1 if k else v0


@dataclass(frozen=True)
class FundamentalUnitPlus:
    """``eps = (T + U sqrt(m)) / 2`` with ``T**2 - m*U**2 = 4`` minimal, ``T, U > 0``."""

    m: int
    T: int
    U: int

    @property
    def value(self) -> float:
        return (self.T + self.U * math.sqrt(self.m)) / 2

    def mul(self, X: int, Y: int, power: int = 1) -> tuple[int, int]:
        """Multiply ``(X + Y sqrt m)/2`` by ``eps**power``."""
        T, U, m = self.T, self.U, self.m
        if power < 0:
            U = -U
        for _ in range(abs(power)):
            X, Y = (T * X + m * U * Y) // 2, (U * X + T * Y) // 2
        return X, Y

    def compatible(self, X: int, Y: int) -> bool:
        """Whether the orbit map keeps ``(X, Y)`` integral."""
        return not (self.T % 2 and (X - Y) % 2)


def fundamental_unit(m: int) -> FundamentalUnitPlus:
    """The smallest totally positive unit ``> 1`` of the order of discriminant ``m`` (or ``4m``)."""
    if m < 2 or is_square(m):
        raise ValueError(f"fundamental_unit needs a nonsquare m >= 2, got {m}")
    if m % 4 == 0:
        x, y = pell_fundamental(m // 4)
        return FundamentalUnitPlus(m, 2 * x, y)
    x, y = pell_fundamental(m)
    if m % 4 == 1:
        # the unit of Z[sqrt m] is eps or eps**3
        lo, hi = 3, 2 * x
        while lo < hi:
            mid = (lo + hi) // 2
            if _lucas_v(3, mid) < 2 * x:
                lo = mid + 1
            else:
                hi = mid
        if _lucas_v(3, lo) == 2 * x and (lo * lo - 4) % m == 0 and is_square((lo * lo - 4) // m):
            return FundamentalUnitPlus(m, lo, math.isqrt((lo * lo - 4) // m))
    return FundamentalUnitPlus(m, 2 * x, 2 * y)


def _sign_sqrt_sum(X: int, Y: int, m: int) -> int:
    """Sign of ``X + Y sqrt(m)``."""
    if X >= 0 and Y >= 0:
        return 0 if X == Y == 0 else 1
    if X <= 0 and Y <= 0:
        return -1
    d = X * X - m * Y * Y
    if d == 0:
        return 0
    return (1 if d > 0 else -1) * (1 if X > 0 else -1)


def is_totally_positive(X: int, Y: int, m: int) -> bool:
    return X > 0 and X * X > m * Y * Y


@dataclass
class PellOrbitSet:
    """Solutions of ``X**2 - m*Y**2 = C`` with ``(X + Y sqrt m)/2 > 0`` up to multiplication by ``eps``.

    Each orbit representative minimizes ``X**2 + m*Y**2`` in its orbit; among
    two minimizers the one with ``X > 0`` and then ``Y > 0`` is kept.
    """

    m: int
    C: int
    orbit_reps: list[tuple[int, int]]
    generator: FundamentalUnitPlus

    def __len__(self):
        return len(self.orbit_reps)


def _size(X, Y, m):
    return X * X + m * Y * Y


def canonical_rep(X: int, Y: int, unit: FundamentalUnitPlus) -> tuple[int, int]:
    m = unit.m
    while True:
        up, down = unit.mul(X, Y, 1), unit.mul(X, Y, -1)
        s, su, sd = _size(X, Y, m), _size(*up, m), _size(*down, m)
        if su < s:
            X, Y = up
        elif sd < s:
            X, Y = down
        else:
            break
    best = (X, Y)
    for cand in (unit.mul(X, Y, 1), unit.mul(X, Y, -1)):
        if _size(*cand, m) == _size(*best, m) and (cand[0], cand[1]) > best:
            best = cand
    return best


def norm_equation_orbits(m: int, C: int, totally_positive: bool = False) -> PellOrbitSet:
    """All ``eps``-orbits of solutions of ``X**2 - m*Y**2 = C`` with ``X + Y sqrt(m) > 0``.

    With ``totally_positive`` only elements with both conjugates positive are kept.
    Every solution is ``eps**k`` times exactly one representative.
    """
    unit = fundamental_unit(m)
    if C == 0:
        return PellOrbitSet(m, C, [], unit)
    # balanced elements have |lam|, |lam'| <= sqrt(|C|/4 * eps), so m*Y**2 <= |C| * eps
    eps_num = unit.T + unit.U * (math.isqrt(m) + 1)
    ymax = math.isqrt(abs(C) * eps_num // (2 * m) + 1) + 1
    reps = set()
    for Y in range(-ymax, ymax + 1):
        d = C + m * Y * Y
        if d < 0 or not is_square(d):
            continue
        x = math.isqrt(d)
        for X in {x, -x}:
            if _sign_sqrt_sum(X, Y, m) <= 0 or not unit.compatible(X, Y):
                continue
            if totally_positive and not is_totally_positive(X, Y, m):
                continue
            reps.add(canonical_rep(X, Y, unit))
    return PellOrbitSet(m, C, sorted(reps), unit)


def walk_smaller_conjugates(X: int, Y: int, unit: FundamentalUnitPlus):
    """Yield the orbit elements of a totally positive ``(X, Y)`` whose value is below its conjugate.

    Starts at the element closest to balance and moves by ``eps**-1``; the
    smaller conjugate ``(X - |Y| sqrt m)/2`` shrinks by the factor ``eps`` each step.
    Elements with ``Y = 0`` are never produced.
    """
    # smaller conjugate means Y < 0 in (X + Y sqrt m)/2
    while Y >= 0:
        X, Y = unit.mul(X, Y, -1)
    while True:
        up = unit.mul(X, Y, 1)
        if up[1] < 0:
            X, Y = up
        else:
            break
    while True:
        yield X, Y
        X, Y = unit.mul(X, Y, -1)


def square_condition_solvable(m: int, n, coset) -> bool:
    """Whether ``m r**2 - 4n`` is a perfect square for some ``r`` in ``Z - coset``."""
    return next(iter(square_condition_solutions(m, n, coset, limit=1)), None) is not None


def square_condition_solutions(m: int, n, coset, limit=None):
    """Pairs ``(r, s)`` with ``r in Z - coset``, ``s >= 0`` and ``m r**2 - 4n = s**2``.

    For square ``m`` (or ``n <= 0``) the set is finite and fully enumerated
    (``n = 0``, square ``m``: only ``r = 0`` is reported).  For nonsquare ``m``
    and ``n > 0`` one period of each unit orbit is produced: the coset
    condition is periodic along an orbit, so any solution shows up there.
    """
    n, coset = Fraction(n), Fraction(coset)
    rho = -coset - math.floor(-coset)
    count = 0
    for r, s in _solutions(m, n, rho):
        yield r, s
        count += 1
        if limit is not None and count >= limit:
            return


def _in_coset(r: Fraction, rho: Fraction) -> bool:
    return (r - rho).denominator == 1


def _solutions(m, n, rho):
    k = math.isqrt(m)
    if k * k == m:
        yield from _square_solutions(k, n, rho)
    elif n <= 0:
        if n == 0:
            if rho == 0:
                yield Fraction(0), 0
            return
        yield from _nonsquare_negative(m, n, rho)
    else:
        yield from _nonsquare_positive(m, n, rho)


def _square_solutions(k, n, rho):
    """``k**2 r**2 - 4n = s**2``: factor ``(k r - s)(k r + s) = 4n``."""
    d = rho.denominator
    if n == 0:
        if _in_coset(Fraction(0), rho):
            yield Fraction(0), 0
        return
    M = 4 * n * d * d
    if M.denominator != 1:
        return
    M = int(M)
    found = set()
    if M > 0:
        # (k u - s d)(k u + s d) = M with both factors positive
        pairs = ((e, M // e) for e in range(1, math.isqrt(M) + 1) if M % e == 0)
        for e, f in pairs:
            if (e + f) % (2 * k) or (f - e) % (2 * d):
                continue
            u, s = (e + f) // (2 * k), (f - e) // (2 * d)
            for r in {Fraction(u, d), Fraction(-u, d)}:
                if _in_coset(r, rho) and r not in found:
                    found.add(r)
                    yield r, s
    else:
        # (s d - k u)(s d + k u) = -M, u >= 0
        M = -M
        for e in range(1, math.isqrt(M) + 1):
            if M % e:
                continue
            f = M // e
            if (e + f) % (2 * d) or (f - e) % (2 * k):
                continue
            s, u = (e + f) // (2 * d), (f - e) // (2 * k)
            for r in {Fraction(u, d), Fraction(-u, d)}:
                if _in_coset(r, rho) and r not in found:
                    found.add(r)
                    yield r, s


def _one_period(elements, modulus):
    """Take elements until the pair of consecutive traces mod ``modulus`` repeats.

    Traces along an orbit satisfy ``X[k+1] = T X[k] - X[k-1]``, so this pair
    determines all later trace classes.
    """
    seen = set()
    prev = None
    for X, Y in elements:
        if prev is not None:
            state = (prev % modulus, X % modulus)
            if state in seen:
                return
            seen.add(state)
        prev = X
        yield X, Y


def _nonsquare_positive(m, n, rho):
    C = 4 * m * n
    if C.denominator != 1:
        return
    C = int(C)
    if is_square(C):
        X = math.isqrt(C)
        for r in {Fraction(X, m), Fraction(-X, m)}:
            if _in_coset(r, rho):
                yield r, 0
    orbits = norm_equation_orbits(m, C, totally_positive=True)
    # trace classes repeat with the period of the orbit map mod 4m
    for rep in orbits.orbit_reps:
        ray = walk_smaller_conjugates(*rep, orbits.generator)
        for X, Y in _one_period(ray, m * rho.denominator):
            for r in (Fraction(X, m), Fraction(-X, m)):
                if _in_coset(r, rho):
                    yield r, -Y


def _nonsquare_negative(m, n, rho):
    # X**2 - m Y**2 = 4mn < 0; finitely many r would need |r| bounded, but
    # solutions come in infinite orbits: report one period of each orbit
    C = int(4 * m * n)
    orbits = norm_equation_orbits(m, C)
    unit = orbits.generator

    def forward(X, Y):
        while True:
            yield X, Y
            X, Y = unit.mul(X, Y, 1)

    for rep in orbits.orbit_reps:
        for X, Y in _one_period(forward(*rep), m * rho.denominator):
            for r in {Fraction(X, m), Fraction(-X, m)}:
                if _in_coset(r, rho):
                    yield r, abs(Y)
