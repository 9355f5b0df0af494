import math

import numpy as np
import pytest

from hzseries.quadratic import (
    fundamental_unit,
    is_totally_positive,
    norm_equation_orbits,
    pell_fundamental,
    square_condition_solutions,
    square_condition_solvable,
    walk_smaller_conjugates,
)

NONSQUARE = [m for m in range(2, 300) if math.isqrt(m) ** 2 != m and m % 4 in (0, 1)]


@pytest.mark.parametrize("m, TU", [(5, (3, 1)), (13, (11, 3)), (8, (6, 2)), (12, (4, 1)), (21, (5, 1))])
def test_fundamental_unit_examples(m, TU):
    u = fundamental_unit(m)
    assert (u.T, u.U) == TU


def _squares_mask(vals):
    r = np.floor(np.sqrt(vals.astype(np.float64))).astype(np.int64)
    for _ in range(2):
        r = np.where(r * r > vals, r - 1, r)
        r = np.where((r + 1) * (r + 1) <= vals, r + 1, r)
    return r, r * r == vals


def test_fundamental_unit_minimal():
    # brute force over all smaller U (capped at 10**6 for the rare huge units)
    for m in NONSQUARE:
        u = fundamental_unit(m)
        assert u.T * u.T - m * u.U * u.U == 4
        U = np.arange(1, min(u.U, 10**6), dtype=np.int64)
        _, ok = _squares_mask(m * U * U + 4)
        assert not ok.any(), m


def test_pell():
    assert pell_fundamental(2) == (3, 2)
    assert pell_fundamental(61) == (1766319049, 226153980)


def test_orbit_examples():
    orb = norm_equation_orbits(5, 20, totally_positive=True)
    assert orb.orbit_reps == [(5, 1)]
    assert orb.generator.mul(5, 1) == (10, 4)
    assert norm_equation_orbits(5, -4).orbit_reps == [(1, 1)]
    assert norm_equation_orbits(5, 12).orbit_reps == []


def test_recurrence_stays_on_the_curve():
    for m in (5, 8, 12, 13, 17, 21):
        u = fundamental_unit(m)
        for C in (4 * m, 4 * m * 5, -4, 44):
            for X, Y in norm_equation_orbits(m, C).orbit_reps:
                for k in (1, 2, 3):
                    X2, Y2 = u.mul(X, Y, k)
                    assert X2 * X2 - m * Y2 * Y2 == C


def _orbit_of(X, Y, unit, bound):
    out = set()
    for step in (1, -1):
        x, y = X, Y
        while abs(x) <= bound:
            out.add((x, y))
            x, y = unit.mul(x, y, step)
    return out


def test_orbit_completeness():
    bound = 10**6
    for m in (5, 8, 13):
        unit = fundamental_unit(m)
        for n in range(1, 21):
            C = 4 * m * n
            orb = norm_equation_orbits(m, C, totally_positive=True)
            covered = set()
            for rep in orb.orbit_reps:
                covered |= _orbit_of(*rep, unit, bound)
            Ymax = math.isqrt((bound * bound - C) // m) + 1
            Y = np.arange(-Ymax, Ymax + 1, dtype=np.int64)
            X, ok = _squares_mask(C + m * Y * Y)
            for x, y in zip(X[ok & (X <= bound)].tolist(), Y[ok & (X <= bound)].tolist()):
                if is_totally_positive(x, y, m):
                    assert (x, y) in covered, (m, n, x, y)


def test_minimum_shrinks_by_unit_along_a_ray():
    # each step multiplies the smaller conjugate by 1/eps (not 1/eps**2)
    for m in (5, 8, 13, 12):
        unit = fundamental_unit(m)
        for rep in norm_equation_orbits(m, 4 * m * 11, True).orbit_reps:
            mins = []
            for i, (X, Y) in enumerate(walk_smaller_conjugates(*rep, unit)):
                mins.append(2 * 11 * m / (X - Y * math.sqrt(m)))
                if i == 6:
                    break
            for a, b in zip(mins, mins[1:]):
                assert abs(b / a * unit.value - 1) < 1e-12


def test_square_condition_examples():
    assert not square_condition_solvable(5, 3, 0)
    assert (1, 1) in list(square_condition_solutions(5, 1, 0, limit=4))
    for n in range(1, 30):
        assert square_condition_solvable(1, n, 0)
        assert (n + 1, n - 1) in list(square_condition_solutions(1, n, 0))


def test_square_condition_matches_brute_force():

    for m in (5, 8, 13, 12):
        for n in range(1, 25):
            brute = any(
                math.isqrt(m * r * r - 4 * n) ** 2 == m * r * r - 4 * n
                for r in range(1, 4000) if m * r * r >= 4 * n
            )
            assert square_condition_solvable(m, n, 0) == brute, (m, n)
