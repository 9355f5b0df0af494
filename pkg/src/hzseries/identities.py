"""Calibration against twisted divisor sums and the identity catalog.

Where the series has no cusp-form part, ``C(n, gamma)`` is a multiple of
``-12 sigma_1(n d^2, chi_m)`` (``d`` the order of ``gamma``) on congruence
classes of ``n``.  :func:`calibrate` finds those multiples from the data;
:func:`verify_catalog` checks the stored identities exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .arith import ResidueClass, divisor_list, is_prime, kronecker, sigma1, sigma1_twisted
from .discform import GroupElement, frac1
from .hurwitz import HurwitzTable, default_table
from .quadratic import norm_equation_orbits, walk_smaller_conjugates
from .series import (
    ULP,
    CoefficientValue,
    _form,
    _resolve_gamma,
    coset_values,
    hz_coefficient,
)

# m with no cusp forms in weight 2 for the attached discriminant form
NO_CUSP_FORMS = (1, 4, 5, 8, 9, 12, 13, 16, 17, 20, 21, 25)


class CalibrationError(ArithmeticError):
    """A class where the ratio to the divisor sum is not constant."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"m = {report.m}, gamma = {report.gamma}: {report.violations[0]}")


class RouteDisagreement(ArithmeticError):
    pass


def _catalog():
    text = resources.files("hzseries").joinpath("data/catalog.json").read_text()
    return json.loads(text)


CATALOG = _catalog()


# -- calibration ------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    residue_class: ResidueClass
    n: Fraction
    anchor: CoefficientValue | None
    kappa: CoefficientValue | None
    coefficient: CoefficientValue

    def to_json(self):
        return {
            "class": str(self.residue_class),
            "n": str(self.n),
            "anchor": None if self.anchor is None else self.anchor.to_json(),
            "kappa": None if self.kappa is None else self.kappa.to_json(),
            "coefficient": self.coefficient.to_json(),
        }


@dataclass
class CalibrationReport:
    """Ratios ``C(n, gamma) / (-12 sigma_1(N, chi_m))`` by class of ``N = n d^2``.

    ``kappa`` maps residue classes modulo ``modulus`` to a CoefficientValue.
    Classes on which the divisor sum and the coefficient both vanish carry no
    information and are absent.
    """

    m: int
    gamma: GroupElement
    sample_max: int
    base_modulus: int
    modulus: int
    kappa: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(k.is_exact for k in self.kappa.values())

    @property
    def ok(self) -> bool:
        return not self.violations

    def kappa_for(self, N: int) -> CoefficientValue | None:
        return self.kappa.get(ResidueClass(self.modulus, N % self.modulus))

    def to_json_obj(self):
        return {
            "m": self.m,
            "gamma": [str(x) for x in self.gamma.rep],
            "sample_max": self.sample_max,
            "modulus": self.modulus,
            "exact": self.exact,
            "kappa": {
                str(c.residue): k.to_json() for c, k in sorted(self.kappa.items(), key=lambda kv: kv[0].residue)
            },
            "violations": [v.to_json() for v in self.violations],
        }


def _ratio(c: CoefficientValue, s: int) -> CoefficientValue:
    if c.is_exact:
        return CoefficientValue.of(c.exact / (-12 * s))
    v = c.approx / (-12 * s)
    return CoefficientValue(approx=v, error_bound=c.error_bound / (12 * abs(s)) + 2 * ULP * abs(v))


def _same(a: CoefficientValue, b: CoefficientValue) -> bool:
    return a.agrees_with(b, slack=1e-12 * (abs(float(a)) + abs(float(b))))


def calibrate(m, gamma=None, sample_max: int = 200, tol: float = 1e-6, table: HurwitzTable | None = None,
              strict: bool = False, override: bool = False) -> CalibrationReport:
    """Find the multiples of the twisted divisor sum class by class.

    Classes are taken on ``N = n d^2`` modulo ``4 m d^2``, then merged to the
    smallest modulus on which the multiple is still well defined.  The value
    for a class comes from its smallest ``n``; later ``n`` must agree within
    the error bounds or they are recorded as violations.
    """
    df = _form(m)
    if df.m not in NO_CUSP_FORMS and not override:
        raise ValueError(f"m = {df.m} has cusp forms; pass override=True for a partial comparison")
    gamma = _resolve_gamma(df, gamma)
    d = gamma.order
    base = 4 * df.m * d * d
    if table is None:
        table = default_table(4 * sample_max + 4)
    per_class: dict[int, CoefficientValue] = {}
    violations = []
    for n in coset_values(df, gamma, sample_max):
        if n == 0:
            continue
        N = int(n * d * d)
        c = hz_coefficient(df, gamma, n, tol, table)
        s = sigma1_twisted(N, df.m)
        key = N % base
        cls = ResidueClass(base, key)
        if s == 0:
            if not c.agrees_with(0):
                violations.append(Violation(cls, n, per_class.get(key), None, c))
            continue
        k = _ratio(c, s)
        anchor = per_class.get(key)
        if anchor is None:
            per_class[key] = k
        elif not _same(anchor, k):
            violations.append(Violation(cls, n, anchor, k, c))
        elif k.is_exact and not anchor.is_exact:
            per_class[key] = k
    modulus = _merge_modulus(base, per_class)
    merged = {}
    for key, k in sorted(per_class.items()):
        cls = ResidueClass(modulus, key % modulus)
        if cls not in merged or (k.is_exact and not merged[cls].is_exact):
            merged[cls] = k
    report = CalibrationReport(df.m, gamma, sample_max, base, modulus, merged, violations)
    if strict and violations and df.m in NO_CUSP_FORMS:
        raise CalibrationError(report)
    return report


def _merge_modulus(base: int, per_class: dict) -> int:
    for M in divisor_list(base):
        seen: dict[int, CoefficientValue] = {}
        for key, k in per_class.items():
            prev = seen.setdefault(key % M, k)
            if not _same(prev, k):
                break
        else:
            return M
    return base


# -- catalog ----------------------------------------------------------------


@dataclass(frozen=True)
class IdentityRecord:
    m: int
    gamma: tuple | None
    residue_class: ResidueClass
    kappa: Fraction | None
    source: str
    verified_to: int = 0


@dataclass
class IdentityResult:
    record: IdentityRecord
    passed: bool
    checked: int
    witness: dict | None = None

    def to_json(self):
        r = self.record
        return {
            "source": r.source,
            "m": r.m,
            "gamma": None if r.gamma is None else [str(x) for x in r.gamma],
            "class": str(r.residue_class),
            "kappa": None if r.kappa is None else str(r.kappa),
            "verified_to": r.verified_to,
            "checked": self.checked,
            "status": "pass" if self.passed else "fail",
            "witness": self.witness,
        }


def _hsum(m: int, n: int, table: HurwitzTable) -> Fraction:
    """``sum_{r in Z} H(4n - m r^2)``."""
    total = Fraction(0)
    r = 0
    while m * r * r <= 4 * n:
        total += table[4 * n - m * r * r] * (1 if r == 0 else 2)
        r += 1
    return total


def _check_identity(entry: dict, max_n: int, table: HurwitzTable, with_series: bool) -> list[IdentityResult]:
    m, kappa = entry["m"], Fraction(entry["kappa"])
    max_n = min(max_n, entry.get("max_n", max_n))
    out = []
    for a in entry["residues"]:
        cls = ResidueClass(entry["modulus"], a)
        witness, checked, last = None, 0, 0
        for n in range(a if a > 0 else entry["modulus"], max_n + 1, entry["modulus"]):
            rhs = kappa * sigma1_twisted(n, m)
            lhs = [_hsum(k, n, table) for k in entry["sums"]]
            if with_series:
                c = hz_coefficient(m, None, n, table=table)
                lhs.append(c.exact / -12 if c.is_exact else None)
            checked += 1
            last = n
            if any(x != rhs for x in lhs):
                witness = {"m": m, "n": n, "lhs": [None if x is None else str(x) for x in lhs], "rhs": str(rhs)}
                break
        rec = IdentityRecord(m, None, cls, kappa, entry["tag"], last if witness is None else 0)
        out.append(IdentityResult(rec, witness is None, checked, witness))
    return out


def _check_kronecker_hurwitz(max_n: int, table: HurwitzTable) -> IdentityResult:
    witness, last = None, 0
    for n in range(1, max_n + 1):
        lhs = _hsum(1, n, table)
        rhs = sum(max(t, n // t) for t in divisor_list(n))
        if lhs != rhs:
            witness = {"m": 1, "n": n, "lhs": [str(lhs)], "rhs": str(rhs)}
            break
        last = n
    rec = IdentityRecord(1, None, ResidueClass(1, 0), None, "kronecker-hurwitz", last)
    return IdentityResult(rec, witness is None, last + (witness is not None), witness)


def proposition_constant(n: int, a: int) -> Fraction:
    """The multiple of ``sigma_1(n)`` equal to ``restricted_sum(5, a, n)``."""
    key = [n % 5, a % 5]
    for k, pairs in CATALOG["restricted_mod5"].items():
        if key in pairs:
            return Fraction(k)
    raise ValueError(f"5 divides n = {n}")


def _m25_gamma_for(a: int):
    df = _form(25)
    for g in df.elements:
        if df.q(g) == 0 and frac1(5 * df.beta_pairing(g)) == 0:
            if int(5 * frac1(df.beta_pairing(g))) in (a % 5, -a % 5):
                return g
    raise AssertionError(a)


def _check_proposition(max_n: int, table: HurwitzTable, with_series: bool) -> list[IdentityResult]:
    out = []
    for a in range(5):
        g = _m25_gamma_for(a)
        for b in range(1, 5):
            kappa = proposition_constant(b, a)
            witness, checked, last = None, 0, 0
            for n in range(b, max_n + 1, 5):
                lhs = [restricted_sum(5, a, n, table)]
                if with_series:
                    lhs.append(hz_coefficient(25, g, n, table=table).exact / -12)
                rhs = kappa * sigma1(n)
                checked += 1
                last = n
                if any(x != rhs for x in lhs):
                    witness = {"m": 25, "n": n, "a": a, "lhs": [str(x) for x in lhs], "rhs": str(rhs)}
                    break
            rec = IdentityRecord(25, g.rep, ResidueClass(5, b), kappa, f"restricted-mod5-a{a}", last if witness is None else 0)
            out.append(IdentityResult(rec, witness is None, checked, witness))
    return out


SELECTIONS = ("all", "no-cusp", "progression", "kronecker-hurwitz", "restricted")


def verify_catalog(selection="all", max_n: int = 1000, table: HurwitzTable | None = None,
                   with_series: bool = True) -> list[IdentityResult]:
    """Check catalog identities for every ``n <= max_n`` in their classes.

    ``selection`` is ``"all"``, a group name from :data:`SELECTIONS`, a
    catalog tag, or a list of those.  Comparisons are exact.  With
    ``with_series`` the series coefficient itself is a third side.
    """
    if isinstance(selection, str):
        selection = [selection]
    selection = set(selection)
    tags = {e["tag"] for e in CATALOG["identities"]}
    unknown = selection - set(SELECTIONS) - tags
    if unknown:
        raise ValueError(f"unknown catalog selection {sorted(unknown)}")
    if table is None:
        table = default_table(4 * max_n + 4)
    elif table.max_index < 4 * max_n:
        raise ValueError(f"Hurwitz table holds n <= {table.max_index}, need {4 * max_n}")
    everything = "all" in selection
    results = []
    for entry in CATALOG["identities"]:
        if everything or entry["group"] in selection or entry["tag"] in selection:
            results += _check_identity(entry, max_n, table, with_series)
    if everything or "kronecker-hurwitz" in selection:
        results.append(_check_kronecker_hurwitz(max_n, table))
    if everything or "restricted" in selection:
        results += _check_proposition(max_n, table, with_series)
    return results


def m25_table_check(sample_max: int = 200, table: HurwitzTable | None = None) -> list[dict]:
    """Compare calibration at ``m = 25`` with the stored Eisenstein constants.

    Returns the mismatches (empty when everything agrees).
    """
    df = _form(25)
    bad = []
    for key, by_class in CATALOG["m25_eisenstein"].items():
        if key == "comment":
            continue
        g = df.element(*(Fraction(x) for x in key.split(",")))
        for h in (g, -g):
            rep = calibrate(25, h, sample_max, table=table)
            d2 = h.order ** 2
            for b, c in by_class.items():
                N = int(b) * d2
                k = rep.kappa_for(N)
                # sigma_1(n d^2, chi_25) is a fixed multiple of sigma_1(n) for 5 not dividing n
                want = Fraction(c, -12) * sigma1(int(b)) / sigma1_twisted(N, 25)
                if k is None or not k.is_exact or k.exact != want:
                    bad.append({"gamma": [str(x) for x in h.rep], "n mod 5": int(b),
                                "expected": str(want), "got": None if k is None else str(k)})
    return bad


# -- restricted sums --------------------------------------------------------


def restricted_sum(d: int, a: int, n: int, table: HurwitzTable | None = None) -> Fraction:
    """``sum_{r = a (d)} H(4n - r^2) + eps_a sum_{t | n, t + n/t = +-a (d)} min(t, n/t)``.

    ``eps_a`` is 1 for ``a = 0`` and 1/2 otherwise.
    """
    if d not in (2, 3, 5, 7):
        raise ValueError("d must be one of 2, 3, 5, 7")
    if n <= 0 or math.gcd(n, d) != 1:
        raise ValueError(f"n = {n} must be positive and prime to {d}")
    a %= d
    if table is None:
        table = default_table(4 * n)
    total = Fraction(0)
    rmax = math.isqrt(4 * n)
    for r in range(-rmax, rmax + 1):
        if r % d == a:
            total += table[4 * n - r * r]
    eps = Fraction(1) if a == 0 else Fraction(1, 2)
    for t in divisor_list(n):
        if (t + n // t) % d in (a, -a % d):
            total += eps * min(t, n // t)
    return total


# -- scalar cross-check -------------------------------------------------------


@dataclass(frozen=True)
class ScalarCoefficient:
    N: int
    vector: CoefficientValue
    direct: CoefficientValue

    @property
    def agree(self) -> bool:
        return self.vector.agrees_with(self.direct, slack=1e-12 * (1 + abs(float(self.vector))))

    def to_json(self):
        return {"N": self.N, "vector": self.vector.to_json(), "direct": self.direct.to_json()}


def _direct_coefficient(p: int, N: int, tol: float, table: HurwitzTable) -> CoefficientValue:
    """``-12 [sum H((4N - r^2)/p) + p^(-1/2) sum_{lam >> 0, N(lam) = N} min(lam, lam')]``."""
    hsum = Fraction(0)
    rmax = math.isqrt(4 * N)
    for r in range(-rmax, rmax + 1):
        if (4 * N - r * r) % p == 0:
            hsum += table[(4 * N - r * r) // p]
    if N == 0:
        return CoefficientValue.of(-12 * hsum)
    C = 4 * N
    balanced = 0.0
    if math.isqrt(C) ** 2 == C:
        balanced = math.isqrt(C) / 2
    orbits = norm_equation_orbits(p, C, totally_positive=True)
    sqrt_p = math.sqrt(p)
    eps = orbits.generator.value * (1 - 8 * ULP)
    # each ray element and its conjugate contribute the same minimum
    budget = tol * sqrt_p / 12 / 4 / max(1, len(orbits))
    terms, truncation = [], 0.0
    for rep in orbits.orbit_reps:
        for X, Y in walk_smaller_conjugates(*rep, orbits.generator):
            t = 2 * N / (float(X) - float(Y) * sqrt_p)
            terms.append(2 * t)
            tail = 2 * (2 * t / (eps - 1)) * (1 + 1e-12)
            if tail <= budget:
                truncation += tail
                break
    S = math.fsum(terms) + balanced
    rounding = 8 * ULP * (math.fsum(terms) + balanced + 1)
    if not orbits.orbit_reps and balanced == 0:
        return CoefficientValue.of(-12 * hsum)
    value = -12 * (float(hsum) + S / sqrt_p)
    bound = 12 / sqrt_p * (truncation + rounding) * (1 + 4 * ULP) + 8 * ULP * (abs(value) + 12 * float(hsum))
    return CoefficientValue(approx=value, error_bound=bound)


def scalarize_prime(p: int, max_N: int, tol: float = 1e-8, table: HurwitzTable | None = None,
                    check: bool = True) -> list[ScalarCoefficient]:
    """The coefficients ``b(N)``, ``0 <= N <= max_N``, of the scalar form attached to ``p``.

    ``vector`` sums the components ``C(N/p, gamma)`` over all ``gamma`` with
    ``N/p in Z - Q(gamma)``; ``direct`` evaluates the class number and unit
    orbit expression in ``Q(sqrt p)`` directly.  With ``check`` a
    disagreement beyond the combined bounds raises :class:`RouteDisagreement`.
    """
    if not is_prime(p) or p % 4 != 1:
        raise ValueError(f"p = {p} must be a prime = 1 mod 4")
    if table is None:
        table = default_table(4 * max_N + 4)
    df = _form(p)
    out = []
    for N in range(max_N + 1):
        n = Fraction(N, p)
        comps = [g for g in df.elements if frac1(n + df.q(g)) == 0]
        parts = [hz_coefficient(df, g, n, tol / max(1, len(comps)), table) for g in comps]
        if all(c.is_exact for c in parts):
            vec = CoefficientValue.of(sum((c.exact for c in parts), Fraction(0)))
        else:
            v = math.fsum(float(c) for c in parts)
            b = sum(c.error_bound for c in parts) + 4 * ULP * sum(abs(float(c)) for c in parts)
            vec = CoefficientValue(approx=v, error_bound=b)
        item = ScalarCoefficient(N, vec, _direct_coefficient(p, N, tol, table))
        if check and not item.agree:
            raise RouteDisagreement(f"p = {p}, N = {N}: vector {item.vector} vs direct {item.direct}")
        out.append(item)
    return out


def plus_space_zero(p: int, N: int) -> bool:
    """Whether ``b(N)`` is forced to vanish, i.e. ``(p/N) = -1``."""
    return kronecker(p, N) == -1
