from math import gcd

import pytest

from src.mildp.arith.modular import is_squarefree, p_valuation, strip_p_part, tonelli_shanks, xgcd


def test_xgcd_bezout():
    for a, b in [(240, 46), (3, 2), (-7, 5), (0, 9), (12, 18)]:
        g, x, y = xgcd(a, b)
        assert g >= 0
        assert a * x + b * y == g
        assert g == gcd(a, b)


def test_tonelli_shanks_returns_the_smaller_root():
    assert tonelli_shanks(-23, 13) == 4
    assert tonelli_shanks(-23, 31) == 15
    assert tonelli_shanks(-23, 211) == 71
    assert tonelli_shanks(-23, 3) == 1
    assert tonelli_shanks(0, 7) == 0


def test_tonelli_shanks_large_two_adic_part():
    # 257 - 1 = 2^8
    for a in range(1, 257):
        if pow(a, 128, 257) == 1:
            r = tonelli_shanks(a, 257)
            assert r * r % 257 == a
            assert r <= 257 - r


def test_tonelli_shanks_rejects_nonresidues():
    with pytest.raises(ValueError):
        tonelli_shanks(5, 7)


def test_squarefree_and_valuations():
    assert is_squarefree(-23)
    assert is_squarefree(-1)
    assert not is_squarefree(-4)
    assert not is_squarefree(-18)
    assert p_valuation(54, 3) == 3
    assert strip_p_part(54, 3) == 2
    assert strip_p_part(5, 3) == 5
