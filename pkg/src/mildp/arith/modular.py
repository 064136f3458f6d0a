"""Elementary modular arithmetic shared by the field and class-group layers."""
from functools import lru_cache
from typing import Tuple

from sympy import factorint, legendre_symbol, multiplicity


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Returns (g, x, y) with g = gcd(a, b) = a*x + b*y."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@lru_cache(maxsize=None)
def smallest_nonresidue(ell: int) -> int:
    """Least quadratic nonresidue modulo an odd prime."""
    n = 2
    while legendre_symbol(n, ell) != -1:
        n += 1
    return n


def tonelli_shanks(a: int, ell: int) -> int:
    """
    Least square root of a modulo the prime ell, in [0, ell).

    Uses the smallest nonresidue so the output never depends on randomness.
    Raises ValueError when a is not a square.
    """
    a %= ell
    if a == 0 or ell == 2:
        return a
    if legendre_symbol(a, ell) != 1:
        raise ValueError(f"{a} is not a square modulo {ell}")

    s, e = ell - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1

    x = pow(a, (s + 1) // 2, ell)
    b = pow(a, s, ell)
    g = pow(smallest_nonresidue(ell), s, ell)
    r = e
    while b != 1:
        t, m = b, 0
        while t != 1:
            t = t * t % ell
            m += 1
        gs = pow(g, 1 << (r - m - 1), ell)
        g = gs * gs % ell
        x = x * gs % ell
        b = b * g % ell
        r = m
    return min(x, ell - x)


def is_squarefree(n: int) -> bool:
    return all(exponent == 1 for exponent in factorint(abs(n)).values())


def p_valuation(n: int, p: int) -> int:
    """Exponent of the prime p in the nonzero integer n."""
    return int(multiplicity(p, n))


def strip_p_part(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n
