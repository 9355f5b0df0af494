"""Acceptance criteria, one test each.  A summary line per criterion is printed at the end of the run."""

import math
import random
import time
from fractions import Fraction

import numpy as np

from hzseries.arith import divisor_list, kronecker, sigma1
from hzseries.discform import frac1, zero_count_check
from hzseries.hurwitz import hurwitz_formula, hurwitz_oracle
from hzseries.identities import CATALOG, calibrate, m25_table_check, scalarize_prime, verify_catalog
from hzseries.series import discriminant_form, hz_coefficient
from hzseries.weil import (
    compatibility_residual,
    gamma0_matrix,
    heisenberg_mul,
    is_unitary,
    proportionality,
    rho_generator,
    rho_word,
    select_orientation,
    sigma_beta,
)


def test_01_hurwitz_dual_route(criterion):
    criterion("1 Hurwitz formula = reduced-form oracle, n <= 5000, < 60 s")
    t0 = time.perf_counter()
    bad = [n for n in range(1, 5001) if n % 4 in (0, 3) and hurwitz_formula(n) != hurwitz_oracle(n)]
    elapsed = time.perf_counter() - t0
    assert bad == []
    assert elapsed < 60


def test_02_kronecker_hurwitz(criterion, table):
    criterion("2 Kronecker-Hurwitz relation, n <= 2000, < 10 s")
    t0 = time.perf_counter()
    for n in range(1, 2001):
        rmax = math.isqrt(4 * n)
        lhs = sum(table[4 * n - r * r] for r in range(-rmax, rmax + 1))
        assert lhs == sum(max(d, n // d) for d in divisor_list(n)), n
    assert time.perf_counter() - t0 < 10


def test_03_m1_closed_form(criterion, table):
    criterion("3 m = 1 series is 1 - 24 sum sigma_1(n) q^n, n <= 500")
    assert hz_coefficient(1, None, 0).exact == 1
    for n in range(1, 501):
        c = hz_coefficient(1, None, n, table=table)
        assert c.is_exact and c.exact == -24 * sigma1(n), n


def _kappas(group):
    return [Fraction(e["kappa"]) for e in CATALOG["identities"] if e["group"] == group]


def test_04_no_cusp_catalog(criterion, table):
    criterion("4 class number identities for m = 5, 8, 12, 13, 17, 20, 21, n <= 1000, < 2 min")
    assert _kappas("no-cusp") == [Fraction(x) for x in ("5/3", "7/6", "1", "5/6", "1", "2/3", "2/3", "1", "2/3")]
    t0 = time.perf_counter()
    results = verify_catalog("no-cusp", 1000, table)
    assert time.perf_counter() - t0 < 120
    failed = [r.to_json() for r in results if not r.passed]
    assert failed == []
    assert {r.record.m for r in results} == {5, 8, 12, 13, 17, 20, 21}


def test_05_progression_catalog(criterion, table):
    criterion("5 identities in progressions for m = 24, 28, 32, 40, n <= 1000 (m = 24 also to 512)")
    results = verify_catalog("progression", 1000, table)
    failed = [r.to_json() for r in results if not r.passed]
    assert failed == []
    by_tag = {}
    for r in results:
        by_tag.setdefault(r.record.source, []).append(r)
    assert {t: {r.record.kappa for r in rs} for t, rs in by_tag.items()} == {
        "m24": {Fraction(1, 2)}, "m24-sturm": {Fraction(1, 2)}, "m28": {Fraction(1, 2)},
        "m32-1": {Fraction(1, 2)}, "m32-3": {Fraction(2, 3)}, "m40": {Fraction(1, 2)},
    }
    assert max(r.record.verified_to for r in by_tag["m24-sturm"]) > 500
    assert all(r.record.verified_to > 950 for t, rs in by_tag.items() if t != "m24-sturm" for r in rs)


def test_06_restricted_sums_mod5(criterion, table):
    criterion("6 restricted sums mod 5 for all a, 5 not dividing n <= 1000; m = 25 constants by calibration")
    results = verify_catalog("restricted", 1000, table)
    assert len(results) == 20
    assert all(r.passed for r in results), [r.to_json() for r in results if not r.passed]
    assert m25_table_check(200, table) == []


CALIBRATION_M = (5, 8, 12, 13, 17, 20, 21)


def test_07_calibration_constancy(criterion, table):
    criterion("7 calibration ratio constant on every class mod 4m, all gamma, n <= 200, tol 1e-6")
    failures = []
    for m in CALIBRATION_M:
        df = discriminant_form(m)
        for g in df.orbit_representatives():
            rep = calibrate(m, g, 200, 1e-6, table)
            d2 = g.order ** 2
            failures += [(m, str(g), math.gcd(int(v.n * d2), m), v.to_json()) for v in rep.violations]
    coprime = [f for f in failures if f[2] == 1]
    assert failures == [], (
        f"{len(failures)} non-constant samples, {len(coprime)} of them with gcd(n d^2, m) = 1; "
        f"first {failures[0]}"
    )


def test_08_scalar_routes(criterion, table):
    criterion("8 vector and direct routes of the scalar form agree, p = 5, 13, 17, N <= 60")
    for p in (5, 13, 17):
        items = scalarize_prime(p, 60, 1e-7, table)
        for it in items:
            assert it.agree, it.to_json()
            assert it.vector.error_bound + it.direct.error_bound <= 1e-6
            if kronecker(p, it.N) == -1:
                assert it.vector.is_exact and it.vector.exact == 0
                assert it.direct.agrees_with(0)
        assert items[0].vector.exact == 1 and items[0].direct.exact == 1
        if p == 5:
            b5 = items[5]
            assert abs(float(b5.vector) + 30) <= 1e-6 and abs(float(b5.direct) + 30) <= 1e-6


def _random_sl2(rng, steps=8):
    M = np.eye(2, dtype=np.int64)
    for _ in range(steps):
        k = rng.randint(-3, 3)
        M = M @ np.array([[1, k], [0, 1]]) @ np.array([[0, -1], [1, 0]])
    return tuple(tuple(int(x) for x in row) for row in M)


def _random_gamma0(rng, N):
    while True:
        c = N * rng.randint(-4, 4)
        d = rng.randint(-30, 30)
        if math.gcd(c, d) != 1:
            continue
        # a d - b c = 1
        g, x, y = _egcd(d, c)
        a, b = x * g, -y * g
        if a * d - b * c == 1:
            return ((a, b), (c, d))


def _egcd(a, b):
    if b == 0:
        return (1 if a >= 0 else -1), (1 if a >= 0 else -1), 0
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def test_09_representation_suite(criterion):
    criterion("9 Weil and Schroedinger representation identities, m <= 40, 20 samples each, 1e-9")
    rng = random.Random(20261019)
    for m in [m for m in range(1, 41) if m % 4 in (0, 1)]:
        df = discriminant_form(m)
        assert m % df.level == 0
        S, T = rho_generator(df, "S"), rho_generator(df, "T")
        I = np.eye(len(df))
        assert np.abs(np.linalg.matrix_power(S, 4) - I).max() < 1e-9
        assert np.abs(np.linalg.matrix_power(S @ T, 3) - S @ S).max() < 1e-9
        orientation = select_orientation(df)
        for _ in range(20):
            M = _random_sl2(rng)
            assert is_unitary(rho_word(df, M))
            G = _random_gamma0(rng, m)
            c, resid = proportionality(rho_word(df, G), gamma0_matrix(df, G))
            assert resid < 1e-9 and abs(abs(c) - 1) < 1e-9, (m, G)
            h1 = tuple(rng.randint(-5, 5) for _ in range(3))
            h2 = tuple(rng.randint(-5, 5) for _ in range(3))
            prod = sigma_beta(df, *h1) @ sigma_beta(df, *h2)
            assert np.abs(prod - sigma_beta(df, *heisenberg_mul(h1, h2))).max() < 1e-9
            assert compatibility_residual(df, h1, M, orientation) < 1e-9


def test_10_zero_counts(criterion):
    criterion("10 zero counts of both quadratic polynomials agree, m = 5, 8, 13, p^k in {2,4,8,3,9,7}")
    checked = 0
    for m in (5, 8, 13):
        df = discriminant_form(m)
        for g in df.elements:
            r = frac1(-df.beta_pairing(g))
            n = frac1(-df.q(g))
            for p, k in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (7, 1)):
                if m % p == 0:
                    continue
                left, right = zero_count_check(df, g, r, n, p, k)
                assert left == right, (m, g, p, k, left, right)
                checked += 1
    assert checked > 0


def test_11_error_bound_honesty(criterion, table):
    criterion("11 recomputing at tol/10 stays inside the first error bound, m = 5, 13, n <= 30")
    tol = 1e-6
    for m in (5, 13):
        df = discriminant_form(m)
        for g in df.elements:
            start = frac1(-df.q(g))
            n = start
            while n <= 30:
                c1 = hz_coefficient(df, g, n, tol, table)
                c2 = hz_coefficient(df, g, n, tol / 10, table)
                assert c1.error_bound <= tol and c2.error_bound <= tol / 10
                assert abs(float(c2) - float(c1)) <= c1.error_bound, (m, g, n, c1, c2)
                n += 1
