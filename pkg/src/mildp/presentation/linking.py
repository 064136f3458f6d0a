"""
Mod-p linking numbers of a set S of tame places.

Only the p-th root of unity zeta = alpha_v^((q-1)/p) of each residue field is
ever built; every linking number is a discrete log in mu_p found by scanning
its p elements.
"""
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from src.mildp.arith.classgroup import ClassGroupData, PiData, build_class_group, compute_pi
from src.mildp.arith.quadfield import (
    FieldElement,
    Place,
    PlaceKind,
    QuadField,
    ResidueElement,
    reduce_mod_place,
    residue_from_index,
    residue_pow,
)
from src.mildp.core.config import get_logger
from src.mildp.core.exceptions import (
    InternalArithmeticError,
    InvalidPlaceError,
    MalformedSetError,
    NoSingularPlaceError,
    NormCongruenceError,
    ResidueError,
)

logger = get_logger(__name__)

ONE = "1"
Label = Union[Place, str]


def label_str(label: Label) -> str:
    return ONE if label == ONE else str(label)


@dataclass(frozen=True)
class MuP:
    v: Place
    zeta: ResidueElement
    p: int

    def power(self, u: int) -> "MuP":
        """The same group with generator zeta^u."""
        if u % self.p == 0:
            raise ValueError("zeta^u must stay primitive")
        return MuP(self.v, residue_pow(self.zeta, u % self.p), self.p)


def make_mu_p(v: Place, p: int) -> MuP:
    if (v.q - 1) % p:
        raise NormCongruenceError(f"N({v.describe()}) = {v.q} is not 1 mod {p}")
    exponent = (v.q - 1) // p
    for n in range(2, v.q):
        zeta = residue_pow(residue_from_index(v, n), exponent)
        if not zeta.is_one():
            return MuP(v, zeta, p)
    raise InternalArithmeticError(f"no primitive {p}-th root of unity modulo {v.describe()}")


def power_residue(x: FieldElement, v: Place, p: int) -> ResidueElement:
    r = reduce_mod_place(x, v)
    if r.is_zero():
        raise ResidueError(f"{x} vanishes modulo {v.describe()}")
    return residue_pow(r, (v.q - 1) // p)


def varpi_power_residue(pi_w: PiData, v: Place, p: int) -> ResidueElement:
    """power_residue of varpi_w at v, valid even where varpi_w has the a1-prime's ell in its denominator."""
    r = pi_w.residue_at(v)
    if r.is_zero():
        raise ResidueError(f"varpi for {pi_w.w.describe()} vanishes modulo {v.describe()}")
    return residue_pow(r, (v.q - 1) // p)


def mu_dlog(y: ResidueElement, mu: MuP) -> int:
    current = y.one()
    for e in range(mu.p):
        if current == y:
            return e
        current = current * mu.zeta
    raise ResidueError(f"{y} is not a {mu.p}-th root of unity modulo {mu.v.describe()}")


def z_linking(a1: FieldElement, v: Place, mu: MuP) -> int:
    return mu_dlog(power_residue(a1, v, mu.p), mu)


def l_linking(w: Place, v: Place, pi_w: PiData, mu: MuP) -> int:
    if v == w:
        return 0
    try:
        residue = varpi_power_residue(pi_w, v, mu.p)
    except ResidueError as exc:
        raise MalformedSetError(
            f"varpi for {w.describe()} meets {v.describe()}",
            suggestions=["remove one of the two places from S"],
        ) from exc
    return (-mu_dlog(residue, mu)) % mu.p


def find_singular(S: Sequence[Place], a1: FieldElement, p: int) -> Optional[Place]:
    """First place of S, in input order, where a1 is not a p-th power residue."""
    for v in S:
        if not power_residue(a1, v, p).is_one():
            return v
    return None


@dataclass(frozen=True)
class ResidueRecord:
    element: str
    place: str
    residue: str
    dlog: int


def compute_tilde(p: int, S: Sequence[Place], z1: Mapping[Place, int], lw1: Mapping[Place, int],
                  lwv: Mapping[Tuple[Place, Place], int], h_inv: int, q1_mod: int) -> Dict[Tuple[Place, Label], int]:
    v0 = S[0]
    z0_inv = pow(z1[v0], -1, p)
    tilde: Dict[Tuple[Place, Label], int] = {}
    for w in S:
        for label in (ONE, *S[1:]):
            raw = lw1[w] if label == ONE else lwv[(w, label)]
            z = q1_mod if label == ONE else z1[label]
            tilde[(w, label)] = (raw - z * z0_inv * lwv[(w, v0)]) * h_inv % p
    return tilde


@dataclass(frozen=True, eq=True)
class LinkingData:
    p: int
    S: Tuple[Place, ...]
    z1: Dict[Place, int]
    lw1: Dict[Place, int]
    lwv: Dict[Tuple[Place, Place], int]
    h_inv: int
    q1_mod: int
    tilde: Dict[Tuple[Place, Label], int]
    residues: Tuple[ResidueRecord, ...] = dataclass_field(default=(), compare=False)

    @property
    def v0(self) -> Place:
        return self.S[0]

    @property
    def labels(self) -> Tuple[Label, ...]:
        return (ONE, *self.S[1:])

    def z(self, label: Label) -> int:
        return self.q1_mod if label == ONE else self.z1[label]

    def l(self, w: Place, label: Label) -> int:
        """Raw linking number, class linking l_{w,1} for the label 1."""
        return self.lw1[w] if label == ONE else self.lwv[(w, label)]

    def l_tilde(self, w: Place, label: Label) -> int:
        return self.tilde[(w, label)]

    @classmethod
    def synthetic(cls, p: int, S: Sequence[Place], z1: Mapping[Place, int], lw1: Mapping[Place, int],
                  lwv: Mapping[Tuple[Place, Place], int], h_inv: int = 1, q1_mod: int = 0) -> "LinkingData":
        """Linking data from given numbers, skipping all arithmetic."""
        S = tuple(S)
        full_lwv = {(w, v): (0 if w == v else lwv.get((w, v), 0) % p) for w in S for v in S}
        z1 = {v: z1[v] % p for v in S}
        lw1 = {w: lw1[w] % p for w in S}
        if z1[S[0]] == 0:
            raise NoSingularPlaceError("synthetic data must be singular at its first place")
        tilde = compute_tilde(p, S, z1, lw1, full_lwv, h_inv % p, q1_mod % p)
        return cls(p, S, z1, lw1, full_lwv, h_inv % p, q1_mod % p, tilde)


def validate_places(field: QuadField, p: int, S: Sequence[Place], frak_a1: Optional[Place] = None) -> None:
    if not S:
        raise MalformedSetError("S is empty")
    if len(set(S)) != len(S):
        raise MalformedSetError("S contains a place twice")
    for v in S:
        if v.field != field:
            raise MalformedSetError(f"{v} is not a place of {field}")
        if v.ell == 2:
            raise InvalidPlaceError(
                f"{v.describe()} is dyadic",
                suggestions=["choose places above odd primes"],
            )
        if v.ell == p:
            raise MalformedSetError(f"{v.describe()} lies above p = {p}; S must be tame")
        if v.kind is PlaceKind.RAMIFIED:
            raise MalformedSetError(f"{v.describe()} is ramified in {field}")
        if (v.q - 1) % p:
            raise NormCongruenceError(
                f"N({v.describe()}) = {v.q} is not 1 mod {p}",
                suggestions=["every place of S needs p | N(v) - 1"],
            )
        if frak_a1 is not None and v == frak_a1:
            raise MalformedSetError(
                f"{v.describe()} is the a1-prime and cannot belong to S",
                suggestions=["let the class group choose a1 with S excluded"],
            )


def build_linking_data(field: QuadField, p: int, S: Sequence[Place], cl: Optional[ClassGroupData] = None,
                       mus: Optional[Mapping[Place, MuP]] = None,
                       pis: Optional[Mapping[Place, PiData]] = None) -> LinkingData:
    """
    All z_{1,v}, l_{w,v}, l_{w,1} and the corrected l-tilde table for S.

    The first singular place of S becomes v0 and moves to the front; the
    other places keep their input order. mus and pis override or cache the
    roots of unity and the varpi_w.
    """
    S = list(S)
    validate_places(field, p, S)
    cl = cl or build_class_group(field, p, S)
    validate_places(field, p, S, cl.frak_a1)

    v0 = find_singular(S, cl.a1, p)
    if v0 is None:
        raise NoSingularPlaceError(
            f"a1 = {cl.a1} is a {p}-th power residue at every place of S",
            suggestions=["add a place v with a1^((N(v)-1)/p) != 1 mod v"],
            reference="the singular-set criterion (B_S may be nontrivial otherwise)",
        )
    S = [v0] + [v for v in S if v != v0]

    mus = dict(mus or {})
    pis = dict(pis or {})
    residues: List[ResidueRecord] = []
    z1: Dict[Place, int] = {}
    lw1: Dict[Place, int] = {}
    lwv: Dict[Tuple[Place, Place], int] = {}

    for v in S:
        if v not in mus:
            mus[v] = make_mu_p(v, p)
        if v not in pis:
            pis[v] = compute_pi(v, cl)
    for v in S:
        residue = power_residue(cl.a1, v, p)
        z1[v] = mu_dlog(residue, mus[v])
        residues.append(ResidueRecord("a1", str(v), str(residue), z1[v]))
    for w in S:
        lw1[w] = pis[w].l_w1 % p
        for v in S:
            lwv[(w, v)] = l_linking(w, v, pis[w], mus[v])
            if v != w:
                residue = varpi_power_residue(pis[w], v, p)
                residues.append(ResidueRecord(f"varpi[{w}]", str(v), str(residue), mu_dlog(residue, mus[v])))

    h_inv = pow(cl.h, -1, p)
    q1_mod = cl.q1 % p
    tilde = compute_tilde(p, S, z1, lw1, lwv, h_inv, q1_mod)
    logger.debug(f"[LINKING] S={[str(v) for v in S]} z1={[z1[v] for v in S]}")
    return LinkingData(p, tuple(S), z1, lw1, lwv, h_inv, q1_mod, tilde, tuple(residues))


def zeta_variants(S: Iterable[Place], p: int) -> List[Dict[Place, MuP]]:
    """Every assignment of a primitive p-th root of unity to each place of S."""
    assignments: List[Dict[Place, MuP]] = [{}]
    for v in S:
        base = make_mu_p(v, p)
        assignments = [{**a, v: base.power(u)} for a in assignments for u in range(1, p)]
    return assignments
