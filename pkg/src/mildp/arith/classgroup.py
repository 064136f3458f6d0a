"""
Class group of an imaginary quadratic field through reduced binary quadratic forms.

Ideal (norm_a, (b + sqrt(D))/2) corresponds to the form (norm_a, b, c) with
b^2 - 4*norm_a*c = D. Besides the group itself this module recovers the
distinguished prime a_1 generating Cl/p, its order q_1 and generator a_1, and
the elements varpi_w with (varpi_w) = w^h * a_1^(-l_{w,1}).
"""
from dataclasses import dataclass, replace
from math import gcd, isqrt
from typing import Iterable, List, Optional, Tuple, Union

from sympy import isprime, nextprime

from src.mildp.arith.modular import p_valuation, strip_p_part, xgcd
from src.mildp.arith.quadfield import (
    FieldElement,
    FractionalIdeal,
    IntegralIdeal,
    Place,
    PlaceKind,
    QuadField,
    ResidueElement,
    reduce_mod_place,
    residue_pow,
    split_prime,
)
from src.mildp.core.config import get_logger
from src.mildp.core.exceptions import (
    InternalArithmeticError,
    InvalidFieldError,
    MalformedSetError,
    NotPrincipalError,
    PRankError,
    ResidueError,
)

logger = get_logger(__name__)

A1_SCAN_LIMIT = 100_000


@dataclass(frozen=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        if not abs(self.b) <= self.a <= self.c:
            return False
        return self.b >= 0 or (abs(self.b) != self.a and self.a != self.c)

    def reduced(self) -> "QuadForm":
        return reduce_form(self)

    def inverse(self) -> "QuadForm":
        return QuadForm(self.a, -self.b, self.c).reduced()

    def __mul__(self, other: "QuadForm") -> "QuadForm":
        return compose(self, other)

    def __pow__(self, n: int) -> "QuadForm":
        base = self.reduced() if n >= 0 else self.inverse()
        n = abs(n)
        result = QuadForm.principal(self.discriminant)
        while n:
            if n & 1:
                result = compose(result, base)
            base = compose(base, base)
            n >>= 1
        return result

    def as_tuple(self) -> Tuple[int, int, int]:
        return self.a, self.b, self.c

    @classmethod
    def principal(cls, D: int) -> "QuadForm":
        delta = D % 2
        return cls(1, delta, (delta - D) // 4)

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


def reduce_form(f: QuadForm) -> QuadForm:
    if f.a <= 0 or f.discriminant >= 0:
        raise ValueError(f"{f} is not positive definite")
    a, b, c = f.as_tuple()
    while True:
        if a > c:
            a, b, c = c, -b, a
            continue
        if abs(b) > a:
            r = b % (2 * a)
            if r > a:
                r -= 2 * a
            q = (b - r) // (2 * a)
            c = c - q * b + q * q * a
            b = r
            continue
        if (abs(b) == a or a == c) and b < 0:
            b = -b
            continue
        return QuadForm(a, b, c)


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    D = f.discriminant
    if g.discriminant != D:
        raise ValueError(f"cannot compose forms of discriminants {D} and {g.discriminant}")
    if f.a == 1:
        return reduce_form(g)
    if g.a == 1:
        return reduce_form(f)
    a1, b1, _ = f.as_tuple()
    a2, b2, _ = g.as_tuple()
    s = (b1 + b2) // 2
    d1, u1, v1 = xgcd(a1, a2)
    d, u2, v2 = xgcd(d1, s)
    a3 = a1 * a2 // (d * d)
    b3 = (u2 * u1 * a1 * b2 + u2 * v1 * a2 * b1 + v2 * (b1 * b2 + D) // 2) // d
    b3 %= 2 * a3
    c3 = (b3 * b3 - D) // (4 * a3)
    return reduce_form(QuadForm(a3, b3, c3))


def ideal_to_form(ideal: IntegralIdeal) -> QuadForm:
    """Reduced form of the ideal class; the scalar m does not change the class."""
    D = ideal.field.D
    c = (ideal.b_root ** 2 - D) // (4 * ideal.norm_a)
    return reduce_form(QuadForm(ideal.norm_a, ideal.b_root, c))


def form_to_ideal(f: QuadForm, field: QuadField) -> IntegralIdeal:
    if f.discriminant != field.D:
        raise InvalidFieldError(f"{f} does not have discriminant {field.D}")
    return IntegralIdeal(field, f.a, f.b % (2 * f.a))


def class_dlog(target: QuadForm, base: QuadForm) -> Optional[int]:
    """Smallest e >= 0 with base^e = target, or None outside the cyclic subgroup."""
    target, base = target.reduced(), base.reduced()
    identity = QuadForm.principal(base.discriminant)
    current, e = identity, 0
    while True:
        if current == target:
            return e
        current = compose(current, base)
        e += 1
        if current == identity:
            return None


def form_order(f: QuadForm) -> int:
    identity = QuadForm.principal(f.discriminant)
    base = f.reduced()
    current, n = base, 1
    while current != identity:
        current = compose(current, base)
        n += 1
    return n


@dataclass(frozen=True)
class ClassGroupData:
    field: QuadField
    p: int
    forms: Tuple[QuadForm, ...]
    h_K: int
    p_rank: int
    h: int
    frak_a1: Optional[Place] = None
    q1: Optional[int] = None
    a1: Optional[FieldElement] = None

    @property
    def principal_form(self) -> QuadForm:
        return QuadForm.principal(self.field.D)

    @property
    def p_part(self) -> int:
        return self.h_K // self.h

    def class_of(self, ideal: IntegralIdeal) -> QuadForm:
        return ideal_to_form(ideal)

    def p_powers(self) -> set:
        return {f ** self.p for f in self.forms}

    def order(self, f: QuadForm) -> int:
        return form_order(f)


def enumerate_class_group(field: QuadField, p: int) -> ClassGroupData:
    """All reduced forms of discriminant D; h, p-rank and the prime-to-p order."""
    D = field.D
    forms: List[QuadForm] = []
    for a in range(1, isqrt(-D // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            numerator = b * b - D
            if numerator % (4 * a):
                continue
            c = numerator // (4 * a)
            if c < a or ((b < 0) and a == c):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            forms.append(QuadForm(a, b, c))
    forms.sort(key=lambda f: (f.a, abs(f.b), -f.b))
    h_K = len(forms)
    p_powers = {f ** p for f in forms}
    p_rank = p_valuation(h_K // len(p_powers), p) if h_K % p == 0 else 0
    cl = ClassGroupData(field, p, tuple(forms), h_K, p_rank, strip_p_part(h_K, p))
    logger.debug(f"[CLASSGROUP] D={D} h_K={h_K} p_rank={p_rank} h={cl.h}")
    return cl


def principal_generator(ideal: Union[IntegralIdeal, FractionalIdeal]) -> FieldElement:
    """
    Generator of a principal ideal, via Lagrange-Gauss reduction of its Z-basis
    under the norm form; the shortest vector generates iff its norm is N(I).
    """
    if isinstance(ideal, FractionalIdeal):
        return principal_generator(ideal.numerator) / ideal.denominator

    field = ideal.field
    delta = field.delta
    k = (delta - field.D) // 4

    def norm(w):
        return w[0] * w[0] + delta * w[0] * w[1] + k * w[1] * w[1]

    def bilinear(u, v):
        return 2 * u[0] * v[0] + delta * (u[0] * v[1] + u[1] * v[0]) + 2 * k * u[1] * v[1]

    u, v = ideal.basis()
    if norm(u) > norm(v):
        u, v = v, u
    while True:
        nu = norm(u)
        mu = (2 * bilinear(u, v) + 2 * nu) // (4 * nu)
        v = (v[0] - mu * u[0], v[1] - mu * u[1])
        if norm(v) >= nu:
            break
        u, v = v, u

    if norm(u) != ideal.norm():
        raise NotPrincipalError(f"{ideal} is not principal")
    return field.from_omega(*u).canonical_associate()


def choose_a1(field: QuadField, cl: ClassGroupData, p: int,
              S: Iterable[Place] = ()) -> Tuple[Place, int, FieldElement]:
    """Smallest odd prime, smaller root first, giving a degree-one place outside S that generates Cl/p."""
    if cl.p_rank != 1:
        raise PRankError(
            f"the {p}-rank of Cl({field.D}) is {cl.p_rank}, expected 1",
            reference="p-rank one precondition",
        )
    excluded = set(S)
    p_powers = cl.p_powers()
    ell = 3
    while ell < A1_SCAN_LIMIT:
        for place in split_prime(field, ell):
            if place.kind is PlaceKind.INERT or place in excluded:
                continue
            form = cl.class_of(place.ideal())
            if form in p_powers:
                continue
            q1 = cl.order(form)
            a1 = principal_generator(place.ideal() ** q1)
            logger.debug(f"[CLASSGROUP] a1-prime {place.describe()} q1={q1} a1={a1}")
            return place, q1, a1
        ell = nextprime(ell)
    raise InternalArithmeticError(f"no prime below {A1_SCAN_LIMIT} generates Cl/{p}")


def build_class_group(field: QuadField, p: int, S: Iterable[Place] = ()) -> ClassGroupData:
    """enumerate_class_group followed by choose_a1, with the odd-prime checks."""
    if p == 2 or not isprime(p):
        raise InvalidFieldError(f"p must be an odd prime, got {p}")
    cl = enumerate_class_group(field, p)
    if cl.p_rank != 1:
        suggestions = ["pick (d, p) with p | h_K exactly once in the rank"]
        if cl.p_rank > 1:
            suggestions.append("with p-rank >= 2 the obstruction group V_S need not vanish")
        raise PRankError(
            f"the {p}-rank of Cl({field.D}) is {cl.p_rank}, expected 1",
            suggestions=suggestions,
            reference="p-rank one precondition",
        )
    frak_a1, q1, a1 = choose_a1(field, cl, p, S)
    return replace(cl, frak_a1=frak_a1, q1=q1, a1=a1)


@dataclass(frozen=True)
class PiData:
    """
    varpi_w = g * a1^(-k) with g generating the integral ideal w^h * a1-prime^e.

    varpi_w may carry the prime under the a1-prime in its denominator, so its
    residues go through residue_at, which reduces g and a1 separately.
    """
    w: Place
    l_w1: int
    varpi_w: FieldElement
    ideal: FractionalIdeal
    a1: FieldElement
    k: int

    def residue_at(self, v: Place) -> ResidueElement:
        integral = reduce_mod_place(self.varpi_w * self.a1 ** self.k, v)
        if self.k == 0:
            return integral
        a1 = reduce_mod_place(self.a1, v)
        if a1.is_zero():
            raise ResidueError(f"a1 vanishes modulo {v.describe()}")
        return integral * residue_pow(a1, (-self.k) % (v.q - 1))


def compute_pi(w: Place, cl: ClassGroupData) -> PiData:
    if cl.frak_a1 is None:
        raise ValueError("class group data has no a1-prime; use build_class_group")
    if w.kind is PlaceKind.RAMIFIED:
        raise MalformedSetError(f"{w.describe()} is ramified")
    if w == cl.frak_a1:
        raise MalformedSetError(f"{w.describe()} is the a1-prime")

    base = cl.class_of(cl.frak_a1.ideal())
    target = cl.class_of(w.ideal()) ** cl.h
    l = class_dlog(target, base)
    if l is None:
        raise InternalArithmeticError(f"[{w.describe()}]^{cl.h} is not a power of [a1]")

    # a1-prime^(-l) = a1-prime^e * (a1)^(-k) with e = -l mod q1
    e = (-l) % cl.q1
    k = (l + e) // cl.q1
    a1_ideal = cl.frak_a1.ideal()
    integral = (w.ideal() ** cl.h) * (a1_ideal ** e)
    varpi = (principal_generator(integral) * cl.a1 ** (-k)).canonical_associate()
    fractional = FractionalIdeal(integral * (a1_ideal.conj() ** (cl.q1 * k)), a1_ideal.norm() ** (cl.q1 * k))
    logger.debug(f"[CLASSGROUP] varpi[{w}] = {varpi}, l = {l}")
    return PiData(w, l, varpi, fractional, cl.a1, k)
