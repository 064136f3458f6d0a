"""
Mildness certification for G_S.

Given linking data for a singular set S, every circular ordering of the
generator labels (1 first) is tried. An ordering certifies when the cup
products of the even-position characters vanish on every relation and the
trace matrix A is invertible over F_p. The closed conditions (1)-(3) are
evaluated alongside and any disagreement with the direct checks is reported.
"""
from dataclasses import dataclass, field as dataclass_field
from enum import Enum
from itertools import permutations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from sympy import Matrix as IntegerMatrix

from src.mildp.arith.classgroup import ClassGroupData, PiData, build_class_group, compute_pi
from src.mildp.arith.quadfield import Place, PlaceKind, QuadField
from src.mildp.core.config import config_manager, get_logger
from src.mildp.core.exceptions import CardinalityError, OrderingError
from src.mildp.presentation.linking import (
    ONE,
    Label,
    LinkingData,
    MuP,
    build_linking_data,
    find_singular,
    label_str,
    power_residue,
    validate_places,
    varpi_power_residue,
)

logger = get_logger(__name__)

Ordering = Tuple[Label, ...]
Matrix = Tuple[Tuple[int, ...], ...]

MILD_CONSEQUENCES: Dict[str, Union[bool, int]] = {
    "fabulous": True,
    "duality_group": True,
    "scd": 3,
    "not_p_adic_analytic": True,
    "euler_characteristic": 1,
    "cd": 2,
}
MAX_DISCREPANCY_WARNINGS = 5

__all__ = [
    "MILD_CONSEQUENCES",
    "DirectChecks",
    "FailedStage",
    "MildnessCertificate",
    "Presentation",
    "Prop34Report",
    "Relation",
    "Theorem32Conditions",
    "Verdict",
    "certify_linking",
    "certify_mild",
    "check_prop34",
    "check_theorem32_conditions",
    "closed_form_det",
    "cup_trace",
    "det_mod_p",
    "enumerate_orderings",
    "export_presentation",
    "find_singular",
    "matrix_A",
    "v_cup_v_vanishes",
]


class Verdict(str, Enum):
    MILD_CERTIFIED = "mild_certified"
    NOT_CERTIFIED = "not_certified"


class FailedStage(str, Enum):
    NO_SINGULAR_PLACE = "no_singular_place"
    ODD_CARDINALITY = "odd_cardinality"
    NO_PASSING_ORDERING = "no_passing_ordering"


@dataclass(frozen=True)
class Relation:
    place: Place
    exponent: int
    y_vector: Dict[str, int]


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[str, ...]
    relations: Tuple[Relation, ...]
    d: int
    r: int
    koch_type: bool

    @property
    def deficiency(self) -> int:
        return self.d - self.r


def export_presentation(L: LinkingData) -> Presentation:
    generators = tuple(f"x[{label_str(label)}]" for label in L.labels)
    relations = tuple(
        Relation(v, v.q - 1, {label_str(label): L.l_tilde(v, label) for label in L.labels})
        for v in L.S
    )
    koch = all(rel.exponent % L.p == 0 for rel in relations) and len(relations) <= len(generators)
    return Presentation(generators, relations, len(generators), len(relations), koch)


def cup_trace(v: Place, v1: Label, v2: Label, L: LinkingData) -> int:
    """Trace of chi_{v1} cup chi_{v2} on the relation rho_v."""
    if v1 == v2:
        raise OrderingError(f"cup_trace needs two distinct labels, got {label_str(v1)} twice")
    p = L.p
    value = 0
    if v == v1:
        value -= L.l_tilde(v1, v2)
    if v == v2:
        value += L.l_tilde(v2, v1)
    if v == L.v0:
        z0_inv = pow(L.z1[L.v0], -1, p)
        value += (L.z(v1) * L.l_tilde(L.v0, v2) - L.z(v2) * L.l_tilde(L.v0, v1)) * z0_inv
    return value % p


def _check_ordering_shape(ordering: Sequence[Label]) -> int:
    d = len(ordering)
    if d < 4 or d % 2:
        raise CardinalityError(f"|S| = {d}; circular orderings need an even size of at least 4")
    if ordering[0] != ONE:
        raise OrderingError("orderings start with the label 1")
    return d


def check_theorem32_conditions(ordering: Sequence[Label], L: LinkingData) -> "Theorem32Conditions":
    d = _check_ordering_shape(ordering)
    p, v0 = L.p, L.v0

    c1 = (L.l(v0, ordering[d - 2]) == 0 and L.l(v0, ordering[2]) == 0
          and all(L.z(ordering[j]) == 0 for j in range(2, d - 1)))

    # pairs whose first index is 0 carry no linking number l_{1,.}; they are skipped
    c2 = all(
        L.l(ordering[2 * i], ordering[2 * j]) == 0
        for i in range(1, d // 2)
        for j in range(d // 2)
        if i != j
    )

    l01 = L.lw1[v0]
    forward, backward = 1, 1
    for i in range(1, d):
        forward *= L.l(ordering[i], ordering[(i + 1) % d])
        backward *= L.l(ordering[i], ordering[i - 1])
    lhs = L.z(ordering[1]) * l01 * forward
    rhs = L.z(ordering[d - 1]) * l01 * backward
    c3 = (lhs - rhs) % p != 0

    corrections = ((L.z(ordering[1]) * L.l(ordering[2], v0)) % p == 0
                   and (L.z(ordering[d - 1]) * L.l(ordering[d - 2], v0)) % p == 0)
    return Theorem32Conditions(c1, c2, c3, corrections)


@dataclass(frozen=True)
class Theorem32Conditions:
    c1: bool
    c2: bool
    c3: bool
    corrections_vanish: bool

    @property
    def all_hold(self) -> bool:
        return self.c1 and self.c2 and self.c3


@dataclass(frozen=True)
class DirectChecks:
    v_cup_v_vanishes: bool
    det_nonzero: bool

    @property
    def passed(self) -> bool:
        return self.v_cup_v_vanishes and self.det_nonzero


def det_mod_p(matrix: Sequence[Sequence[int]], p: int) -> int:
    if not matrix:
        return 1 % p
    return int(IntegerMatrix(matrix).det(method="bareiss")) % p


def matrix_A(ordering: Sequence[Label], L: LinkingData) -> Tuple[Matrix, int]:
    d = _check_ordering_shape(ordering)
    rows = []
    for i in range(d):
        relation = L.v0 if i == 0 else ordering[i]
        rows.append(tuple(cup_trace(relation, ordering[j], ordering[(j + 1) % d], L) for j in range(d)))
    matrix = tuple(rows)
    return matrix, det_mod_p(matrix, L.p)


def closed_form_det(ordering: Sequence[Label], L: LinkingData) -> int:
    """Product formula for det(A); equal to it when (1), (2) and corrections_vanish hold."""
    d = _check_ordering_shape(ordering)
    p, v0 = L.p, L.v0
    forward, backward = 1, 1
    for i in range(1, d):
        forward *= L.l(ordering[i], ordering[(i + 1) % d])
        backward *= L.l(ordering[i], ordering[i - 1])
    l01 = L.lw1[v0]
    scale = pow(L.z1[v0], -1, p) * pow(L.h_inv, d, p)
    return scale * (L.z(ordering[1]) * l01 * forward - L.z(ordering[d - 1]) * l01 * backward) % p


def v_cup_v_vanishes(ordering: Sequence[Label], L: LinkingData) -> bool:
    d = _check_ordering_shape(ordering)
    even = [ordering[2 * i] for i in range(d // 2)]
    return all(
        cup_trace(v, a, b, L) == 0
        for idx, a in enumerate(even)
        for b in even[idx + 1:]
        for v in L.S
    )


def enumerate_orderings(L: LinkingData) -> Iterator[Ordering]:
    """All (d-1)! orderings with 1 first, lexicographic in the S-index sequence."""
    for tail in permutations(L.S[1:]):
        yield (ONE, *tail)


def validate_ordering(ordering: Sequence[Label], L: LinkingData) -> Ordering:
    ordering = tuple(ordering)
    _check_ordering_shape(ordering)
    if sorted(map(label_str, ordering)) != sorted(map(label_str, L.labels)):
        raise OrderingError(
            f"ordering {[label_str(x) for x in ordering]} is not a permutation of "
            f"{[label_str(x) for x in L.labels]}",
            suggestions=[f"v0 = {L.v0} is the singular place and does not appear in orderings"],
        )
    return ordering


@dataclass(frozen=True)
class OrderingEvaluation:
    ordering: Ordering
    matrix: Matrix
    det: int
    direct: DirectChecks
    conditions: Theorem32Conditions


def evaluate_ordering(ordering: Sequence[Label], L: LinkingData) -> OrderingEvaluation:
    matrix, det = matrix_A(ordering, L)
    direct = DirectChecks(v_cup_v_vanishes(ordering, L), det != 0)
    return OrderingEvaluation(tuple(ordering), matrix, det, direct, check_theorem32_conditions(ordering, L))


@dataclass(frozen=True)
class MildnessCertificate:
    verdict: Verdict
    S: Tuple[Place, ...]
    failed_stage: Optional[FailedStage] = None
    witness_ordering: Optional[Ordering] = None
    reported: Optional[OrderingEvaluation] = None
    flags: Optional[Dict[str, Union[bool, int]]] = None
    linking: Optional[LinkingData] = None
    class_group: Optional[ClassGroupData] = None
    presentation: Optional[Presentation] = None
    warnings: Tuple[str, ...] = ()
    orderings_examined: int = 0

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.MILD_CERTIFIED

    @property
    def matrix_A(self) -> Optional[Matrix]:
        return self.reported.matrix if self.reported else None

    @property
    def det_A(self) -> Optional[int]:
        return self.reported.det if self.reported else None


def _discrepancy(evaluation: OrderingEvaluation) -> Optional[str]:
    conditions, direct = evaluation.conditions, evaluation.direct
    if conditions.all_hold == direct.passed:
        return None
    labels = ", ".join(label_str(x) for x in evaluation.ordering)
    if conditions.all_hold:
        extra = "" if conditions.corrections_vanish else " (v0-correction terms do not vanish)"
        return f"ordering ({labels}): conditions (1)-(3) hold but the direct checks fail{extra}"
    return f"ordering ({labels}): direct checks pass although conditions (1)-(3) do not all hold"


def _max_cardinality() -> int:
    return int(config_manager.setting("certify", "max_cardinality", 10))


def certify_linking(L: LinkingData, cl: Optional[ClassGroupData] = None,
                    ordering: Optional[Sequence[Label]] = None,
                    S_input: Optional[Sequence[Place]] = None) -> MildnessCertificate:
    """Search circular orderings of L's labels and certify on the first passing one."""
    d = len(L.S)
    cap = _max_cardinality()
    if d > cap:
        raise CardinalityError(f"|S| = {d} exceeds the ordering search cap of {cap}",
                               suggestions=["raise certify.max_cardinality in config.yml"])
    presentation = export_presentation(L)
    candidates = [validate_ordering(ordering, L)] if ordering is not None else enumerate_orderings(L)

    first: Optional[OrderingEvaluation] = None
    warnings: List[str] = []
    discrepancies = 0
    examined = 0
    for candidate in candidates:
        examined += 1
        evaluation = evaluate_ordering(candidate, L)
        first = first or evaluation
        message = _discrepancy(evaluation)
        if message:
            discrepancies += 1
            if discrepancies <= MAX_DISCREPANCY_WARNINGS:
                warnings.append(message)
        if evaluation.direct.passed:
            logger.debug(f"[MILDNESS] certified with ordering {[label_str(x) for x in candidate]}")
            return MildnessCertificate(
                verdict=Verdict.MILD_CERTIFIED,
                S=tuple(S_input or L.S),
                witness_ordering=evaluation.ordering,
                reported=evaluation,
                flags=dict(MILD_CONSEQUENCES),
                linking=L,
                class_group=cl,
                presentation=presentation,
                warnings=_close_warnings(warnings, discrepancies),
                orderings_examined=examined,
            )

    logger.debug(f"[MILDNESS] no passing ordering among {examined}")
    return MildnessCertificate(
        verdict=Verdict.NOT_CERTIFIED,
        S=tuple(S_input or L.S),
        failed_stage=FailedStage.NO_PASSING_ORDERING,
        reported=first,
        linking=L,
        class_group=cl,
        presentation=presentation,
        warnings=_close_warnings(warnings, discrepancies),
        orderings_examined=examined,
    )


def _close_warnings(warnings: List[str], discrepancies: int) -> Tuple[str, ...]:
    if discrepancies > MAX_DISCREPANCY_WARNINGS:
        warnings = warnings + [f"{discrepancies - MAX_DISCREPANCY_WARNINGS} further orderings disagree"]
    return tuple(warnings)


def certify_mild(field: QuadField, p: int, S: Sequence[Place], ordering: Optional[Sequence[Label]] = None,
                 strict: bool = True, cl: Optional[ClassGroupData] = None,
                 mus: Optional[Dict[Place, MuP]] = None,
                 pis: Optional[Dict[Place, PiData]] = None) -> MildnessCertificate:
    """
    Full pipeline from a field, p and S to a certificate.

    With strict=False an odd or small S and a set without singular place come
    back as not_certified certificates naming the failed stage instead of
    raising.
    """
    S = tuple(S)
    d = len(S)
    if d < 4 or d % 2:
        if strict:
            raise CardinalityError(
                f"|S| = {d}; the circular-set criterion needs an even |S| >= 4",
                reference="circular set criterion",
            )
        return MildnessCertificate(verdict=Verdict.NOT_CERTIFIED, S=S, failed_stage=FailedStage.ODD_CARDINALITY)

    validate_places(field, p, S)
    cl = cl or build_class_group(field, p, S)
    if not strict and find_singular(S, cl.a1, p) is None:
        return MildnessCertificate(verdict=Verdict.NOT_CERTIFIED, S=S, class_group=cl,
                                   failed_stage=FailedStage.NO_SINGULAR_PLACE)
    L = build_linking_data(field, p, S, cl, mus=mus, pis=pis)
    return certify_linking(L, cl, ordering, S_input=S)


@dataclass(frozen=True)
class Prop34Report:
    S: Tuple[Place, ...]
    cond1: bool
    cond2: bool
    cond3: bool
    cond4: bool
    cond5: bool
    residues: Dict[str, str] = dataclass_field(default_factory=dict)
    class_linking: Dict[str, int] = dataclass_field(default_factory=dict)
    warnings: Tuple[str, ...] = ()

    @property
    def conditions(self) -> Tuple[bool, bool, bool, bool, bool]:
        return self.cond1, self.cond2, self.cond3, self.cond4, self.cond5

    @property
    def verdict(self) -> bool:
        return all(self.conditions)


def check_prop34(field: QuadField, p: int, S: Sequence[Place], cl: Optional[ClassGroupData] = None,
                 pis: Optional[Dict[Place, PiData]] = None) -> Prop34Report:
    S = tuple(S)
    if len(S) != 4:
        raise CardinalityError(f"the four-place criterion takes exactly 4 places, got {len(S)}")
    validate_places(field, p, S)
    cl = cl or build_class_group(field, p, S)
    validate_places(field, p, S, cl.frak_a1)
    v0, v1, v2, v3 = S
    pis = dict(pis or {})

    def pi(w: Place) -> PiData:
        if w not in pis:
            pis[w] = compute_pi(w, cl)
        return pis[w]

    residues: Dict[str, str] = {}

    def trivial(name: str, x, v: Place) -> bool:
        residue = varpi_power_residue(x, v, p) if isinstance(x, PiData) else power_residue(x, v, p)
        residues[f"{name}@{v}"] = str(residue)
        return residue.is_one()

    cond1 = v0.f == 1 and v1.f == 1 and v3.f == 1 and v2.kind is PlaceKind.INERT
    cond2 = not trivial("a1", cl.a1, v0)
    cond3_pi = trivial(f"varpi[{v0}]", pi(v0), v2)
    cond3 = trivial("a1", cl.a1, v2) and cond3_pi
    cond4 = [not trivial("a1", cl.a1, v1),
             not trivial(f"varpi[{v1}]", pi(v1), v2),
             not trivial(f"varpi[{v2}]", pi(v2), v3)]
    class_linking = {str(w): pi(w).l_w1 % p for w in (v0, v1, v3)}
    cond5 = class_linking[str(v0)] != 0 and class_linking[str(v3)] != 0 and class_linking[str(v1)] == 0

    warnings: List[str] = []
    if cl.p_part > p:
        warnings.append(
            f"the {p}-part of Cl has order {cl.p_part} > {p}; condition (5) uses the class linking mod {p} only"
        )
    logger.debug(f"[MILDNESS] four-place check on {[str(v) for v in S]}")
    return Prop34Report(S, cond1, cond2, cond3, all(cond4), cond5, residues, class_linking, tuple(warnings))

