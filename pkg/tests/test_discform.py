from fractions import Fraction

import pytest

from hzseries.discform import (
    build_discriminant_form,
    det,
    frac1,
    ternary_block_gram,
    ternary_check,
    zero_count_check,
)

F = Fraction
VALID_M = [m for m in range(1, 101) if m % 4 in (0, 1)]


def test_group_orders():
    for m in VALID_M:
        df = build_discriminant_form(m)
        assert len(df) == abs(det([list(r) for r in df.gram])) == m


def test_m5_cyclic():
    df = build_discriminant_form(5)
    assert df.q(df.beta) == F(4, 5)
    assert {df.index(j * df.beta) for j in range(5)} == set(range(5))
    assert df.pairing(df.beta, df.beta) == F(3, 5)


def test_m8_not_cyclic():
    df = build_discriminant_form(8)
    assert df.beta.rep == (0, F(1, 4)) and df.q(df.beta) == F(7, 8)
    assert max(g.order for g in df.elements) < 8


def test_trivial_m1():
    df = build_discriminant_form(1)
    assert len(df) == 1 and df.elements[0].is_zero()


def test_m25_pairings():
    df = build_discriminant_form(25)
    gammas = [(0, 0), (F(1, 5), F(3, 5)), (F(2, 5), F(1, 5)), (F(3, 5), F(4, 5)), (F(4, 5), F(2, 5))]
    assert [df.beta_pairing(df.element(*g)) for g in gammas] == [0, F(2, 5), F(4, 5), F(1, 5), F(3, 5)]
    assert all(df.q(df.element(*g)) == 0 for g in gammas)
    assert df.pairing(df.zero, df.beta) == 0


def test_q_quadratic_in_multiples():
    for m in (5, 13, 17, 29):
        df = build_discriminant_form(m)
        for j in range(-7, 8):
            assert df.q(j * df.beta) == frac1(j * j * df.q(df.beta))


def test_integrality_of_4n_minus_mr2():
    for m in [m for m in VALID_M if m <= 50]:
        df = build_discriminant_form(m)
        for g in df.elements:
            r0, n0 = frac1(-df.beta_pairing(g)), frac1(-df.q(g))
            for j in range(-10, 11):
                for k in range(-10, 11):
                    val = 4 * (n0 + k) - m * (r0 + j) ** 2
                    assert val.denominator == 1


@pytest.mark.parametrize("m", [5, 8, 13, 12, 17, 40])
def test_ternary_determinant(m):
    assert ternary_check(m) == -2
    assert det([list(r) for r in ternary_block_gram(build_discriminant_form(m))]) == -2


def test_zero_count_examples():
    df5 = build_discriminant_form(5)
    assert zero_count_check(df5, df5.zero, 0, 1, 2) == (4, 4)
    left, right = zero_count_check(df5, df5.zero, 0, 1, 3)
    assert left == right
    df13 = build_discriminant_form(13)
    b = df13.beta
    left, right = zero_count_check(df13, b, 1 - df13.pairing(b, b), 1 - df13.q(b), 3)
    assert left == right


def test_zero_counts_m12():
    df = build_discriminant_form(12)
    for g in df.elements:
        r, n = frac1(-df.beta_pairing(g)), frac1(-df.q(g))
        for p, k in ((5, 1), (7, 1)):
            left, right = zero_count_check(df, g, r, n, p, k)
            assert left == right


def test_zero_count_rejects():
    df = build_discriminant_form(5)
    with pytest.raises(ValueError):
        zero_count_check(df, df.zero, 0, 1, 5)
    with pytest.raises(ValueError):
        zero_count_check(df, df.zero, F(1, 2), 1, 3)
    with pytest.raises(ValueError):
        zero_count_check(df, df.zero, 0, 1, 2, 14)


def test_bad_m():
    with pytest.raises(ValueError):
        build_discriminant_form(7)
