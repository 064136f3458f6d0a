"""
Exact arithmetic in an imaginary quadratic field k = Q(sqrt(d)).

Elements are stored as (a + b*sqrt(d)) / denominator in lowest terms. Ideals
use the standardized two-element form (norm_a, (b_root + sqrt(D)) / 2) times
a rational integer m, and are multiplied through their Hermite normal form in
the integral basis {1, omega}.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Tuple, Union

from sympy import isprime, legendre_symbol

from src.mildp.arith.modular import is_squarefree, tonelli_shanks
from src.mildp.core.config import get_logger
from src.mildp.core.exceptions import InvalidFieldError, InvalidPlaceError, ResidueError

logger = get_logger(__name__)

Vector = Tuple[int, int]


@dataclass(frozen=True)
class QuadField:
    d: int

    def __post_init__(self):
        if self.d >= 0:
            raise InvalidFieldError(
                f"radicand must be negative, got {self.d}",
                suggestions=["only imaginary quadratic fields are supported"],
            )
        if not is_squarefree(self.d):
            raise InvalidFieldError(
                f"radicand {self.d} is not squarefree",
                suggestions=["pass the squarefree part, e.g. -1 instead of -4"],
            )

    @property
    def D(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def delta(self) -> int:
        """D mod 2; omega satisfies omega^2 = delta*omega + (D - delta)/4."""
        return self.D % 2

    def element(self, a: int, b: int = 0, denominator: int = 1) -> "FieldElement":
        return FieldElement(self, a, b, denominator)

    def from_omega(self, x: int, y: int) -> "FieldElement":
        """The integer x + y*omega."""
        if self.delta:
            return FieldElement(self, 2 * x + y, y, 2)
        return FieldElement(self, x, y, 1)

    def units(self) -> List["FieldElement"]:
        if self.d == -1:
            return [self.element(1), self.element(-1), self.element(0, 1), self.element(0, -1)]
        if self.d == -3:
            return [self.element(1), self.element(-1)] + [
                self.element(s, t, 2) for s in (1, -1) for t in (1, -1)
            ]
        return [self.element(1), self.element(-1)]

    def __str__(self) -> str:
        return f"Q(sqrt({self.d}))"


def make_field(d: int) -> QuadField:
    return QuadField(d)


def _mul_vectors(field: QuadField, u: Vector, v: Vector) -> Vector:
    """Product of x1 + y1*omega and x2 + y2*omega in omega coordinates."""
    k = (field.D - field.delta) // 4
    x = u[0] * v[0] + u[1] * v[1] * k
    y = u[0] * v[1] + u[1] * v[0] + field.delta * u[1] * v[1]
    return x, y


@dataclass(frozen=True)
class FieldElement:
    field: QuadField
    a: int
    b: int
    denominator: int = 1

    def __post_init__(self):
        if self.denominator == 0:
            raise ZeroDivisionError("field element with zero denominator")
        g = gcd(gcd(self.a, self.b), self.denominator)
        sign = -1 if self.denominator < 0 else 1
        object.__setattr__(self, "a", sign * self.a // g)
        object.__setattr__(self, "b", sign * self.b // g)
        object.__setattr__(self, "denominator", sign * self.denominator // g)

    def _coerce(self, other: Union["FieldElement", int]) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise InvalidFieldError(f"cannot combine elements of {self.field} and {other.field}")
            return other
        return FieldElement(self.field, other, 0, 1)

    def __add__(self, other):
        y = self._coerce(other)
        return FieldElement(
            self.field,
            self.a * y.denominator + y.a * self.denominator,
            self.b * y.denominator + y.b * self.denominator,
            self.denominator * y.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.a, -self.b, self.denominator)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return elem_mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        y = self._coerce(other)
        n = y.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in a quadratic field")
        c = self * y.conj()
        return FieldElement(self.field, c.a * n.denominator, c.b * n.denominator, c.denominator * n.numerator)

    def __pow__(self, e: int):
        base = self if e >= 0 else self.field.element(1) / self
        e = abs(e)
        result = self.field.element(1)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def norm(self) -> Fraction:
        return elem_norm(self)

    def conj(self) -> "FieldElement":
        return elem_conj(self)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_integral(self) -> bool:
        if self.denominator == 1:
            return True
        return bool(self.field.delta) and self.denominator == 2 and self.a % 2 == 1 and self.b % 2 == 1

    def omega_coords(self) -> Vector:
        if not self.is_integral():
            raise ValueError(f"{self} is not an algebraic integer")
        if self.field.delta:
            y = self.b * 2 // self.denominator
            return (self.a * 2 // self.denominator - y) // 2, y
        return self.a, self.b

    def sort_key(self) -> Tuple[Fraction, Fraction]:
        return Fraction(self.a, self.denominator), Fraction(self.b, self.denominator)

    def canonical_associate(self) -> "FieldElement":
        """Associate maximizing (a, b); for +-1 units this means a > 0, or a = 0 and b > 0."""
        return max((u * self for u in self.field.units()), key=FieldElement.sort_key)

    def __str__(self) -> str:
        root = f"sqrt({self.field.d})"
        if self.b == 0:
            body = str(self.a)
        else:
            coeff = "" if abs(self.b) == 1 else f"{abs(self.b)}*"
            if self.a == 0:
                body = f"{'-' if self.b < 0 else ''}{coeff}{root}"
            else:
                body = f"{self.a} {'-' if self.b < 0 else '+'} {coeff}{root}"
        if self.denominator == 1:
            return body
        return f"({body})/{self.denominator}"


def elem_mul(x: FieldElement, y: FieldElement) -> FieldElement:
    d = x.field.d
    return FieldElement(
        x.field,
        x.a * y.a + d * x.b * y.b,
        x.a * y.b + x.b * y.a,
        x.denominator * y.denominator,
    )


def elem_norm(x: FieldElement) -> Fraction:
    return Fraction(x.a * x.a - x.field.d * x.b * x.b, x.denominator * x.denominator)


def elem_conj(x: FieldElement) -> FieldElement:
    return FieldElement(x.field, x.a, -x.b, x.denominator)


def _hnf(vectors: Iterable[Vector]) -> Tuple[int, int, int]:
    """Hermite basis (A, 0), (B, C) of the lattice spanned by the vectors, with 0 <= B < A."""
    rows = [[x, y] for x, y in vectors if (x, y) != (0, 0)]
    while True:
        live = sorted((r for r in rows if r[1] != 0), key=lambda r: abs(r[1]))
        if len(live) <= 1:
            break
        pivot = live[0]
        for r in live[1:]:
            q = r[1] // pivot[1]
            r[0] -= q * pivot[0]
            r[1] -= q * pivot[1]
    pivots = [r for r in rows if r[1] != 0]
    if not pivots:
        raise ValueError("vectors do not span a full-rank lattice")
    B, C = pivots[0]
    if C < 0:
        B, C = -B, -C
    A = 0
    for r in rows:
        if r[1] == 0:
            A = gcd(A, r[0])
    if A == 0:
        raise ValueError("vectors do not span a full-rank lattice")
    return A, B % A, C


@dataclass(frozen=True)
class IntegralIdeal:
    field: QuadField
    norm_a: int
    b_root: int
    m: int = 1

    def __post_init__(self):
        D = self.field.D
        if self.norm_a <= 0 or self.m <= 0:
            raise ValueError("ideal parameters must be positive")
        if not 0 <= self.b_root < 2 * self.norm_a or (self.b_root ** 2 - D) % (4 * self.norm_a):
            raise ValueError(f"b_root {self.b_root} is not standardized for norm {self.norm_a}")

    @classmethod
    def unit(cls, field: QuadField) -> "IntegralIdeal":
        return cls(field, 1, field.delta)

    @classmethod
    def from_hnf(cls, field: QuadField, A: int, B: int, C: int) -> "IntegralIdeal":
        if A % C or B % C:
            raise ValueError(f"[{A}, {B} + {C}w] is not an ideal basis")
        norm_a, t = A // C, (B // C) % (A // C)
        return cls(field, norm_a, 2 * t + field.delta, C)

    @classmethod
    def principal(cls, x: FieldElement) -> "IntegralIdeal":
        if x.is_zero() or not x.is_integral():
            raise ValueError(f"{x} does not generate a nonzero integral ideal")
        u = x.omega_coords()
        return cls.from_hnf(x.field, *_hnf([u, _mul_vectors(x.field, u, (0, 1))]))

    def hnf(self) -> Tuple[int, int, int]:
        t = (self.b_root - self.field.delta) // 2
        return self.m * self.norm_a, self.m * t, self.m

    def basis(self) -> Tuple[Vector, Vector]:
        A, B, C = self.hnf()
        return (A, 0), (B, C)

    def norm(self) -> int:
        return self.m * self.m * self.norm_a

    def conj(self) -> "IntegralIdeal":
        return IntegralIdeal(self.field, self.norm_a, (-self.b_root) % (2 * self.norm_a), self.m)

    def contains(self, x: FieldElement) -> bool:
        if not x.is_integral():
            return False
        A, B, C = self.hnf()
        x0, y0 = x.omega_coords()
        if y0 % C:
            return False
        return (x0 - (y0 // C) * B) % A == 0

    def __mul__(self, other: "IntegralIdeal") -> "IntegralIdeal":
        products = [_mul_vectors(self.field, u, v) for u in self.basis() for v in other.basis()]
        return IntegralIdeal.from_hnf(self.field, *_hnf(products))

    def __pow__(self, e: int) -> "IntegralIdeal":
        if e < 0:
            raise ValueError("negative powers need FractionalIdeal")
        result, base = IntegralIdeal.unit(self.field), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __str__(self) -> str:
        prefix = f"{self.m}*" if self.m != 1 else ""
        return f"{prefix}({self.norm_a}, ({self.b_root} + sqrt({self.field.D}))/2)"


@dataclass(frozen=True)
class FractionalIdeal:
    """numerator / denominator with an integral numerator and a positive rational integer denominator."""
    numerator: IntegralIdeal
    denominator: int = 1

    def is_generated_by(self, x: FieldElement) -> bool:
        scaled = x * self.denominator
        return scaled.is_integral() and not scaled.is_zero() and IntegralIdeal.principal(scaled) == self.numerator


class PlaceKind(str, Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class Place:
    """
    A finite place of k above a rational prime ell.

    For odd ell, split and ramified places carry root r with r^2 = d (mod ell)
    and the place is (ell, sqrt(d) - r); reduction sends sqrt(d) to r. Split
    places above 2 carry root b in {1, 3} and are (2, (b + sqrt(d))/2).
    Dyadic places can be named and classified but never belong to S.
    """
    field: QuadField
    ell: int
    kind: PlaceKind
    root: Optional[int] = None

    @property
    def f(self) -> int:
        return 2 if self.kind is PlaceKind.INERT else 1

    @property
    def q(self) -> int:
        return self.ell ** self.f

    @property
    def b_root(self) -> int:
        if self.kind is PlaceKind.INERT:
            return self.field.delta
        if self.ell == 2:
            if self.kind is PlaceKind.SPLIT:
                return self.root
            return 0 if self.field.d % 4 == 2 else 2
        s = (-self.root) % self.ell
        if not self.field.delta:
            return 2 * s
        return s if s % 2 == 1 else s + self.ell

    def ideal(self) -> IntegralIdeal:
        if self.kind is PlaceKind.INERT:
            return IntegralIdeal(self.field, 1, self.field.delta, self.ell)
        return IntegralIdeal(self.field, self.ell, self.b_root)

    def sort_key(self) -> Tuple[int, int]:
        return self.ell, -1 if self.root is None else self.root

    def token(self) -> str:
        return f"{self.ell}:i" if self.root is None else f"{self.ell}:{self.root}"

    def describe(self) -> str:
        if self.kind is PlaceKind.INERT:
            return f"({self.ell})"
        if self.ell == 2 and self.kind is PlaceKind.SPLIT:
            return f"(2, ({self.root} + sqrt({self.field.d}))/2)"
        return f"({self.ell}, sqrt({self.field.d}) - {self.root})"

    def __str__(self) -> str:
        return str(self.ell) if self.root is None else f"{self.ell}:{self.root}"


def split_prime(field: QuadField, ell: int) -> List[Place]:
    """Places above ell, smaller root first for split primes."""
    if not isprime(ell):
        raise InvalidPlaceError(f"{ell} is not prime")
    if ell == 2:
        return _dyadic_places(field)
    symbol = legendre_symbol(field.d % ell, ell)
    if symbol == 0:
        return [Place(field, ell, PlaceKind.RAMIFIED, 0)]
    if symbol == -1:
        return [Place(field, ell, PlaceKind.INERT)]
    r = tonelli_shanks(field.d, ell)
    return [Place(field, ell, PlaceKind.SPLIT, r), Place(field, ell, PlaceKind.SPLIT, ell - r)]


def _dyadic_places(field: QuadField) -> List[Place]:
    """Places above 2, classified by d mod 8."""
    residue = field.d % 8
    if residue == 1:
        return [Place(field, 2, PlaceKind.SPLIT, 1), Place(field, 2, PlaceKind.SPLIT, 3)]
    if residue == 5:
        return [Place(field, 2, PlaceKind.INERT)]
    return [Place(field, 2, PlaceKind.RAMIFIED, 0)]


def place_from_root(field: QuadField, ell: int, root: Optional[int]) -> Place:
    """The place above ell named by a root of d mod ell, or the unique place when root is None."""
    places = split_prime(field, ell)
    if root is None:
        if len(places) != 1:
            raise InvalidPlaceError(
                f"{ell} splits in {field}; name one of the two places",
                suggestions=[f"use {p} to select a place" for p in places],
            )
        return places[0]
    modulus = 4 if ell == 2 else ell
    for place in places:
        if place.root is not None and place.root == root % modulus:
            return place
    raise InvalidPlaceError(
        f"{root} is not a square root of {field.d} modulo {ell}",
        suggestions=[f"valid places above {ell}: {', '.join(str(p) for p in places)}"],
    )


@dataclass(frozen=True)
class ResidueElement:
    """c0 + c1*s in F_ell[s]/(s^2 - sq), or c0 in F_ell when sq is None."""
    c0: int
    c1: int
    ell: int
    sq: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "c0", self.c0 % self.ell)
        object.__setattr__(self, "c1", self.c1 % self.ell)
        if self.sq is None and self.c1:
            raise ValueError("prime-field residue with a nonzero s-component")

    def _like(self, c0: int, c1: int) -> "ResidueElement":
        return ResidueElement(c0, c1, self.ell, self.sq)

    def one(self) -> "ResidueElement":
        return self._like(1, 0)

    def __add__(self, other: "ResidueElement") -> "ResidueElement":
        return self._like(self.c0 + other.c0, self.c1 + other.c1)

    def __sub__(self, other: "ResidueElement") -> "ResidueElement":
        return self._like(self.c0 - other.c0, self.c1 - other.c1)

    def __mul__(self, other: "ResidueElement") -> "ResidueElement":
        if self.sq is None:
            return self._like(self.c0 * other.c0, 0)
        return self._like(
            self.c0 * other.c0 + self.sq * self.c1 * other.c1,
            self.c0 * other.c1 + self.c1 * other.c0,
        )

    def __pow__(self, e: int) -> "ResidueElement":
        return residue_pow(self, e)

    def frobenius(self) -> "ResidueElement":
        return self._like(self.c0, -self.c1)

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def is_one(self) -> bool:
        return self.c0 == 1 and self.c1 == 0

    def __str__(self) -> str:
        return str(self.c0) if self.c1 == 0 else f"{self.c0}+{self.c1}s"


def residue_pow(r: ResidueElement, e: int) -> ResidueElement:
    if e < 0:
        raise ValueError("residue_pow takes a nonnegative exponent")
    result, base = r.one(), r
    while e:
        if e & 1:
            result = result * base
        base = base * base
        e >>= 1
    return result


def residue_from_index(v: Place, n: int) -> ResidueElement:
    """The n-th residue field element in scan order: c0 = n mod ell, c1 = n div ell."""
    if v.kind is PlaceKind.INERT:
        return ResidueElement(n % v.ell, n // v.ell, v.ell, v.field.D % v.ell)
    return ResidueElement(n, 0, v.ell)


def reduce_mod_place(x: FieldElement, v: Place) -> ResidueElement:
    if x.field != v.field:
        raise InvalidFieldError(f"{x} and {v} live in different fields")
    if v.ell == 2:
        raise InvalidPlaceError(f"no residue map is defined at the dyadic place {v.describe()}")
    if x.denominator % v.ell == 0:
        raise ResidueError(f"{x} has {v.ell} in its denominator")
    inv = pow(x.denominator, -1, v.ell)
    if v.kind is PlaceKind.INERT:
        # sqrt(d) is s when D = d and s/2 when D = 4d
        kappa = 1 if v.field.delta else pow(2, -1, v.ell)
        return ResidueElement(x.a * inv, x.b * kappa * inv, v.ell, v.field.D % v.ell)
    return ResidueElement((x.a + x.b * v.root) * inv, 0, v.ell)
