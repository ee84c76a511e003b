import random

import pytest

from uphocore.series import PowerSeriesTrunc, series_invert


def naive_inverse(coeffs, N):
    # long division, the textbook way
    out = []
    for i in range(N + 1):
        acc = (1 if i == 0 else 0) - sum(coeffs[j] * out[i - j] for j in range(1, min(i, len(coeffs) - 1) + 1))
        out.append(acc * coeffs[0])
    return out


def test_matches_long_division_oracle():
    rng = random.Random(7)
    for _ in range(50):
        c = [rng.choice((1, -1))] + [rng.randint(-9, 9) for _ in range(6)]
        assert list(series_invert(PowerSeriesTrunc(c, 6)).coeffs) == naive_inverse(c, 6)


def test_square_of_one_minus_x():
    s = PowerSeriesTrunc([1, -2, 1], 3)
    assert series_invert(s).coeffs == (1, 2, 3, 4)


def test_dominating_char_poly():
    s = PowerSeriesTrunc([1, -3, 2], 4)
    assert series_invert(s).coeffs == (1, 3, 7, 15, 31)


def test_identity():
    assert series_invert(PowerSeriesTrunc([1])).coeffs == (1,)


def test_negative_unit():
    s = PowerSeriesTrunc([-1, 1], 3)
    assert (series_invert(s) * s).is_one()


def test_non_unit_rejected():
    with pytest.raises(ValueError):
        series_invert(PowerSeriesTrunc([2, 1], 3))


def test_product_truncates_to_shorter():
    a = PowerSeriesTrunc([1, 1], 5)
    b = PowerSeriesTrunc([1, 1], 2)
    assert (a * b).coeffs == (1, 2, 1)


def test_arithmetic_and_str():
    a = PowerSeriesTrunc([1, 3, 7], 2)
    assert str(a) == "1 + 3x + 7x^2"
    assert (a - a).coeffs == (0, 0, 0)
    assert (a + PowerSeriesTrunc.one(2)).coeffs == (2, 3, 7)
    assert str(PowerSeriesTrunc([1, -3, 2])) == "1 - 3x + 2x^2"


def test_exact_big_integers():
    s = PowerSeriesTrunc([1, -(10**30)], 4)
    assert series_invert(s).coeffs[4] == 10**120
