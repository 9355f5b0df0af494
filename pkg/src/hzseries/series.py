"""Coefficients of the vector-valued Hirzebruch-Zagier series.

For a discriminant form attached to ``m`` and ``n in Z - Q(gamma)``::

    C(n, gamma) = -12 sum_r H(4n - m r^2)
                  - 6 sqrt(m) sum_{m r^2 - 4n square} (|r| - sqrt(r^2 - 4n/m))
                  + 6 sqrt(n) * #{r : m r^2 = 4n}

with ``r`` running over ``Z - <gamma, beta>``.  Square ``m`` gives exact
rationals.  Nonsquare ``m`` gives exact rationals whenever the correction
sum is empty and a float with a rigorous error bound otherwise.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import fraction_str, is_square
from .discform import DiscriminantForm, GroupElement, build_discriminant_form, frac1
from .hurwitz import HurwitzTable, default_table
from .quadratic import (
    norm_equation_orbits,
    square_condition_solutions,
    square_condition_solvable,
    walk_smaller_conjugates,
)

ULP = sys.float_info.epsilon / 2


@dataclass(frozen=True)
class CoefficientValue:
    """Either an exact rational or a float with ``|value - true| <= error_bound``."""

    exact: Fraction | None = None
    approx: float | None = None
    error_bound: float = 0.0

    @classmethod
    def of(cls, x) -> CoefficientValue:
        return cls(exact=Fraction(x))

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def tag(self) -> str:
        return "exact" if self.is_exact else "approximate"

    @property
    def value(self):
        return self.exact if self.is_exact else self.approx

    def __float__(self):
        return float(self.value)

    def interval(self) -> tuple[float, float]:
        v = float(self)
        return v - self.error_bound, v + self.error_bound

    def agrees_with(self, other, slack: float = 0.0) -> bool:
        """Whether the two values can coincide given both error bounds."""
        other = other if isinstance(other, CoefficientValue) else CoefficientValue.of(other)
        if self.is_exact and other.is_exact:
            return self.exact == other.exact
        gap = abs(float(self) - float(other))
        return gap <= self.error_bound + other.error_bound + slack

    def to_json(self):
        if self.is_exact:
            return fraction_str(self.exact)
        return {"value": self.approx, "error_bound": self.error_bound}

    @classmethod
    def from_json(cls, obj) -> CoefficientValue:
        if isinstance(obj, str):
            return cls(exact=Fraction(obj))
        return cls(approx=float(obj["value"]), error_bound=float(obj["error_bound"]))

    def __str__(self):
        if self.is_exact:
            return fraction_str(self.exact)
        return f"{self.approx!r} +- {self.error_bound:.3g}"


@lru_cache(maxsize=None)
def discriminant_form(m: int) -> DiscriminantForm:
    return build_discriminant_form(m)


def _form(m_or_df) -> DiscriminantForm:
    if isinstance(m_or_df, DiscriminantForm):
        return m_or_df
    return discriminant_form(int(m_or_df))


def _resolve_gamma(df: DiscriminantForm, gamma) -> GroupElement:
    if gamma is None:
        return df.zero
    if isinstance(gamma, GroupElement):
        return gamma
    return df.element(*gamma)


def _check_n(df, gamma, n) -> Fraction:
    n = Fraction(n)
    if frac1(n + df.q(gamma)) != 0:
        raise ValueError(f"n = {n} is not in Z - Q(gamma) = Z - {df.q(gamma)}")
    return n


def r_coset(df: DiscriminantForm, gamma: GroupElement) -> Fraction:
    """The fractional part shared by all ``r in Z - <gamma, beta>``."""
    return frac1(-df.beta_pairing(gamma))


def class_number_sum(m, gamma, n, table: HurwitzTable | None = None) -> Fraction:
    """``sum_{r in Z - <gamma, beta>, m r^2 <= 4n} H(4n - m r^2)``."""
    df = _form(m)
    gamma = _resolve_gamma(df, gamma)
    n = _check_n(df, gamma, n)
    if n < 0:
        return Fraction(0)
    if table is None:
        table = default_table(int(4 * n) + 1)
    rho = r_coset(df, gamma)
    total = Fraction(0)
    jmax = math.isqrt(int(4 * n / df.m) + 1) + 1
    for j in range(-jmax - 1, jmax + 1):
        r = j + rho
        arg = 4 * n - df.m * r * r
        if arg < 0:
            continue
        assert arg.denominator == 1, (df.m, gamma, n, r)
        total += table[int(arg)]
    return total


def _delta_roots(df, gamma, n) -> list[Fraction]:
    """The ``r in Z - <gamma, beta>`` with ``m r^2 = 4n``."""
    rho = r_coset(df, gamma)
    q = 4 * n / df.m
    if q < 0 or not (is_square(q.numerator) and is_square(q.denominator)):
        return []
    r0 = Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))
    return [r for r in {r0, -r0} if (r - rho).denominator == 1]


def delta_term(df, gamma, n):
    """``6 sqrt(n)`` for each ``r`` in the coset with ``m r^2 = 4n``.

    Exact (a Fraction) when ``sqrt(n)`` is rational, else a float.  When both
    ``+r`` and ``-r`` lie in the coset (e.g. ``gamma = 0``) this is ``12 sqrt(n)``.
    """
    roots = _delta_roots(df, gamma, n)
    if not roots or n == 0:
        return Fraction(0)
    if is_square(n.numerator) and is_square(n.denominator):
        return 6 * len(roots) * Fraction(math.isqrt(n.numerator), math.isqrt(n.denominator))
    return 6 * len(roots) * math.sqrt(n)


def correction_sum(m, gamma, n, tol: float | None = None) -> CoefficientValue:
    """``sum (|r| - sqrt(r^2 - 4n/m))`` over ``r in Z - <gamma, beta>`` with ``m r^2 - 4n`` square.

    Exact for square ``m`` and whenever the sum is empty.  Otherwise the sum
    runs over unit orbits in ``Q(sqrt m)``: along each orbit the terms shrink
    by the exact factor ``eps`` so the truncated tail is bounded
    geometrically.  ``error_bound <= tol`` is guaranteed.
    """
    df = _form(m)
    gamma = _resolve_gamma(df, gamma)
    n = _check_n(df, gamma, n)
    if tol is not None and tol <= 0:
        raise ValueError("tol must be positive")
    if n < 0:
        raise ValueError("correction_sum needs n >= 0")
    m = df.m
    rho = r_coset(df, gamma)
    k = math.isqrt(m)
    if n == 0:
        return CoefficientValue.of(0)
    if k * k == m:
        total = Fraction(0)
        for r, s in square_condition_solutions(m, n, -rho):
            total += abs(r) - Fraction(s, k)
        return CoefficientValue.of(total)
    if not square_condition_solvable(m, n, -rho):
        return CoefficientValue.of(0)
    if tol is None:
        raise ValueError(f"nonsquare m = {m} with a nonempty correction needs tol")
    return _orbit_sum(m, n, rho, tol)


def _mult(X: int, m: int, rho: Fraction) -> int:
    return sum((Fraction(s * X, m) - rho).denominator == 1 for s in (1, -1))


def _orbit_sum(m: int, n: Fraction, rho: Fraction, tol: float) -> CoefficientValue:
    C = int(4 * m * n)
    exact = Fraction(0)
    if is_square(C):
        # the balanced element lam = lam' = sqrt(mn): r = +-X/m, s = 0
        X = math.isqrt(C)
        exact += _mult(X, m, rho) * Fraction(X, m)
    orbits = norm_equation_orbits(m, C, totally_positive=True)
    unit = orbits.generator
    eps = unit.value * (1 - 8 * ULP)
    sqrt_m = math.sqrt(m)
    nf = 4 * float(n)
    budget = tol / 2 / max(1, len(orbits))
    terms = []
    truncation = 0.0
    for rep in orbits.orbit_reps:
        for X, Y in walk_smaller_conjugates(*rep, unit):
            # (X - |Y| sqrt m)/m computed as 4n/(X + |Y| sqrt m) to avoid cancellation
            t = nf / (float(X) + float(-Y) * sqrt_m)
            mult = _mult(X, m, rho)
            if mult:
                terms.append(mult * t)
            # the rest of this ray is at most 2 t (1/eps + 1/eps^2 + ...)
            tail = 2 * t / (eps - 1) * (1 + 1e-12)
            if tail <= budget:
                truncation += tail
                break
    S = math.fsum(terms)
    rounding = 8 * ULP * math.fsum(abs(t) for t in terms) + ULP * abs(S)
    value = float(exact) + S
    rounding += ULP * (abs(float(exact)) + abs(value))
    bound = truncation + rounding
    if bound > tol:
        raise ValueError(f"tol = {tol} is below the attainable accuracy {bound:.3g}")
    return CoefficientValue(approx=value, error_bound=bound)


def hz_coefficient(m, gamma, n, tol: float | None = None, table: HurwitzTable | None = None) -> CoefficientValue:
    """The coefficient of ``q^n e_gamma`` in the Hirzebruch-Zagier series."""
    df = _form(m)
    gamma = _resolve_gamma(df, gamma)
    n = _check_n(df, gamma, n)
    if n < 0:
        return CoefficientValue.of(0)
    main = -12 * class_number_sum(df, gamma, n, table)
    delta = delta_term(df, gamma, n)
    m = df.m
    k = math.isqrt(m)
    if k * k == m:
        corr = correction_sum(df, gamma, n)
        return CoefficientValue.of(main - 6 * k * corr.exact + delta)
    sqrt_m = math.sqrt(m)
    inner_tol = None if tol is None else tol / (12 * sqrt_m)
    corr = correction_sum(df, gamma, n, inner_tol)
    if corr.is_exact and corr.exact == 0 and isinstance(delta, Fraction):
        return CoefficientValue.of(main + delta)
    corr_f, delta_f = float(corr), float(delta)
    value = float(main) - 6 * sqrt_m * corr_f + delta_f
    rounding = 8 * ULP * (abs(float(main)) + abs(6 * sqrt_m * corr_f) + abs(delta_f) + abs(value))
    bound = 6 * sqrt_m * corr.error_bound * (1 + 4 * ULP) + rounding
    if tol is not None and bound > tol:
        raise ValueError(f"tol = {tol} is below the attainable accuracy {bound:.3g}")
    return CoefficientValue(approx=value, error_bound=bound)


def coset_values(df: DiscriminantForm, gamma: GroupElement, max_n) -> list[Fraction]:
    """All ``0 <= n <= max_n`` in ``Z - Q(gamma)``."""
    start = frac1(-df.q(gamma))
    out = []
    n = start
    while n <= max_n:
        out.append(n)
        n += 1
    return out


@dataclass
class SeriesTable:
    m: int
    max_n: Fraction
    rows: dict = field(default_factory=dict)

    def sorted_rows(self):
        return sorted(self.rows.items(), key=lambda kv: (kv[0][0].rep, kv[0][1]))

    def __getitem__(self, key) -> CoefficientValue:
        return self.rows[key]

    def to_json_obj(self):
        return {
            "m": self.m,
            "rows": [
                {"gamma": [fraction_str(x) for x in g.rep], "n": fraction_str(n), "value": v.to_json()}
                for (g, n), v in self.sorted_rows()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=1)

    @classmethod
    def from_json_obj(cls, obj) -> SeriesTable:
        rows = {}
        for row in obj["rows"]:
            g = GroupElement(tuple(Fraction(x) for x in row["gamma"]))
            rows[(g, Fraction(row["n"]))] = CoefficientValue.from_json(row["value"])
        max_n = max((n for _, n in rows), default=Fraction(0))
        return cls(obj["m"], max_n, rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["gamma", "n", "value", "error_bound"])
        for (g, n), v in self.sorted_rows():
            gs = ";".join(fraction_str(x) for x in g.rep)
            if v.is_exact:
                w.writerow([gs, fraction_str(n), fraction_str(v.exact), ""])
            else:
                w.writerow([gs, fraction_str(n), repr(v.approx), repr(v.error_bound)])
        return buf.getvalue()


def series_table(m, max_n, tol: float | None = None, table: HurwitzTable | None = None) -> SeriesTable:
    """All coefficients ``C(n, gamma)`` with ``0 <= n <= max_n``.

    Computed on one element of each pair ``{gamma, -gamma}`` and mirrored.
    """
    df = _form(m)
    max_n = Fraction(max_n)
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    if table is None:
        table = default_table(int(4 * max_n) + 4)
    result = SeriesTable(df.m, max_n)
    for g in df.orbit_representatives():
        for n in coset_values(df, g, max_n):
            c = hz_coefficient(df, g, n, tol, table)
            result.rows[(g, n)] = c
            result.rows[(-g, n)] = c
    return result
