"""
Machine-readable documents for every command.

Each document echoes its input, so ``recompute`` can rerun the pipeline and
compare. Places are written the way the command line reads them.
"""
from typing import Dict, List, Literal, Optional, Sequence, Union

from pydantic import BaseModel, Field

from src.commands.config import MildpConfig
from src.commands.utils.placespec import parse_ordering, parse_place_spec, resolve_places
from src.mildp.arith.classgroup import ClassGroupData, build_class_group
from src.mildp.arith.quadfield import Place, make_field
from src.mildp.presentation.linking import LinkingData, build_linking_data, label_str
from src.mildp.presentation.mildness import (
    MildnessCertificate,
    OrderingEvaluation,
    Presentation,
    Prop34Report,
    certify_mild,
    check_prop34,
    closed_form_det,
    export_presentation,
)
from src.mildp.runtime.search import SearchHit

SCHEMA_VERSION = MildpConfig.SCHEMA_VERSION


class InputEcho(BaseModel):
    d: int
    p: int
    places: List[str] = Field(default_factory=list)
    ordering: Optional[List[str]] = None
    strict: bool = True


class ClassGroupSection(BaseModel):
    D: int
    forms: List[str]
    h_K: int
    p_rank: int
    h: int = Field(..., description="prime-to-p part of h_K")
    p_part: int
    a1_prime: str
    a1_prime_ideal: str
    q1: int
    a1: List[int] = Field(..., description="[a, b, den] for (a + b*sqrt(d))/den")
    a1_text: str


class ResidueSection(BaseModel):
    element: str
    place: str
    residue: str
    dlog: int


class LinkingSection(BaseModel):
    S: List[str]
    v0: str
    labels: List[str]
    z: Dict[str, int]
    l_w1: Dict[str, int]
    l: List[List[int]] = Field(..., description="rows and columns indexed by S")
    l_tilde: List[List[int]] = Field(..., description="rows indexed by S, columns by labels")
    h_inv: int
    q1_mod: int
    residues: List[ResidueSection] = Field(default_factory=list)


class RelationSection(BaseModel):
    place: str
    exponent: int
    y: Dict[str, int]


class PresentationSection(BaseModel):
    generators: List[str]
    relations: List[RelationSection]
    d: int
    r: int
    deficiency: int
    koch_type: bool


class ConditionsSection(BaseModel):
    c1: bool
    c2: bool
    c3: bool
    corrections_vanish: bool
    all_hold: bool


class DirectChecksSection(BaseModel):
    v_cup_v_vanishes: bool
    det_nonzero: bool


class OrderingSection(BaseModel):
    ordering: List[str]
    matrix_A: List[List[int]]
    det_A: int
    closed_form_det: int
    conditions: ConditionsSection
    direct: DirectChecksSection


class _Document(BaseModel):
    schema_version: int = SCHEMA_VERSION
    tool_version: str = MildpConfig.VERSION
    input: InputEcho


class ClassGroupDocument(_Document):
    kind: Literal["classgroup"] = "classgroup"
    class_group: ClassGroupSection


class LinkingDocument(_Document):
    kind: Literal["linking"] = "linking"
    class_group: ClassGroupSection
    linking: LinkingSection
    presentation: PresentationSection


class CertificateDocument(_Document):
    kind: Literal["certificate"] = "certificate"
    verdict: str
    failed_stage: Optional[str] = None
    S: List[str]
    witness_ordering: Optional[List[str]] = None
    reported: Optional[OrderingSection] = None
    orderings_examined: int = 0
    flags: Optional[Dict[str, Union[bool, int]]] = None
    class_group: Optional[ClassGroupSection] = None
    linking: Optional[LinkingSection] = None
    presentation: Optional[PresentationSection] = None
    warnings: List[str] = Field(default_factory=list)


class Prop34Document(_Document):
    kind: Literal["prop34"] = "prop34"
    S: List[str]
    conditions: List[bool]
    verdict: bool
    residues: Dict[str, str]
    class_linking: Dict[str, int]
    class_group: ClassGroupSection
    warnings: List[str] = Field(default_factory=list)


class SearchHitDocument(_Document):
    kind: Literal["search_hit"] = "search_hit"
    token: str
    roles: List[str]
    position: List[str]
    certificate: CertificateDocument
    prop34: Optional[Prop34Document] = None


class SearchEndDocument(BaseModel):
    kind: Literal["search_end"] = "search_end"
    hits: int
    checkpoint: Optional[str] = None


AnyDocument = Union[ClassGroupDocument, LinkingDocument, CertificateDocument, Prop34Document, SearchHitDocument]


def _echo(d: int, p: int, places: Sequence[Place] = (), ordering=None, strict: bool = True) -> InputEcho:
    return InputEcho(
        d=d,
        p=p,
        places=[str(v) for v in places],
        ordering=[label_str(x) for x in ordering] if ordering is not None else None,
        strict=strict,
    )


def class_group_section(cl: ClassGroupData) -> ClassGroupSection:
    return ClassGroupSection(
        D=cl.field.D,
        forms=[str(f) for f in cl.forms],
        h_K=cl.h_K,
        p_rank=cl.p_rank,
        h=cl.h,
        p_part=cl.p_part,
        a1_prime=str(cl.frak_a1),
        a1_prime_ideal=cl.frak_a1.describe(),
        q1=cl.q1,
        a1=[cl.a1.a, cl.a1.b, cl.a1.denominator],
        a1_text=str(cl.a1),
    )


def linking_section(L: LinkingData) -> LinkingSection:
    return LinkingSection(
        S=[str(v) for v in L.S],
        v0=str(L.v0),
        labels=[label_str(x) for x in L.labels],
        z={str(v): L.z1[v] for v in L.S},
        l_w1={str(w): L.lw1[w] for w in L.S},
        l=[[L.lwv[(w, v)] for v in L.S] for w in L.S],
        l_tilde=[[L.l_tilde(w, x) for x in L.labels] for w in L.S],
        h_inv=L.h_inv,
        q1_mod=L.q1_mod,
        residues=[ResidueSection(element=r.element, place=r.place, residue=r.residue, dlog=r.dlog)
                  for r in L.residues],
    )


def presentation_section(P: Presentation) -> PresentationSection:
    return PresentationSection(
        generators=list(P.generators),
        relations=[RelationSection(place=str(rel.place), exponent=rel.exponent, y=dict(rel.y_vector))
                   for rel in P.relations],
        d=P.d,
        r=P.r,
        deficiency=P.deficiency,
        koch_type=P.koch_type,
    )


def ordering_section(evaluation: OrderingEvaluation, L: LinkingData) -> OrderingSection:
    conditions = evaluation.conditions
    return OrderingSection(
        ordering=[label_str(x) for x in evaluation.ordering],
        matrix_A=[list(row) for row in evaluation.matrix],
        det_A=evaluation.det,
        closed_form_det=closed_form_det(evaluation.ordering, L),
        conditions=ConditionsSection(c1=conditions.c1, c2=conditions.c2, c3=conditions.c3,
                                     corrections_vanish=conditions.corrections_vanish,
                                     all_hold=conditions.all_hold),
        direct=DirectChecksSection(v_cup_v_vanishes=evaluation.direct.v_cup_v_vanishes,
                                   det_nonzero=evaluation.direct.det_nonzero),
    )


def class_group_document(cl: ClassGroupData) -> ClassGroupDocument:
    return ClassGroupDocument(input=_echo(cl.field.d, cl.p), class_group=class_group_section(cl))


def linking_document(L: LinkingData, cl: ClassGroupData, places: Sequence[Place]) -> LinkingDocument:
    return LinkingDocument(
        input=_echo(cl.field.d, cl.p, places),
        class_group=class_group_section(cl),
        linking=linking_section(L),
        presentation=presentation_section(export_presentation(L)),
    )


def certificate_document(cert: MildnessCertificate, d: int, p: int, ordering=None,
                         strict: bool = True) -> CertificateDocument:
    L = cert.linking
    return CertificateDocument(
        input=_echo(d, p, cert.S, ordering, strict),
        verdict=cert.verdict.value,
        failed_stage=cert.failed_stage.value if cert.failed_stage else None,
        S=[str(v) for v in cert.S],
        witness_ordering=[label_str(x) for x in cert.witness_ordering] if cert.witness_ordering else None,
        reported=ordering_section(cert.reported, L) if cert.reported and L else None,
        orderings_examined=cert.orderings_examined,
        flags=dict(cert.flags) if cert.flags else None,
        class_group=class_group_section(cert.class_group) if cert.class_group else None,
        linking=linking_section(L) if L else None,
        presentation=presentation_section(cert.presentation) if cert.presentation else None,
        warnings=list(cert.warnings),
    )


def prop34_document(report: Prop34Report, cl: ClassGroupData) -> Prop34Document:
    return Prop34Document(
        input=_echo(cl.field.d, cl.p, report.S),
        S=[str(v) for v in report.S],
        conditions=list(report.conditions),
        verdict=report.verdict,
        residues=dict(report.residues),
        class_linking=dict(report.class_linking),
        class_group=class_group_section(cl),
        warnings=list(report.warnings),
    )


def search_hit_document(hit: SearchHit, d: int, p: int) -> SearchHitDocument:
    cl = hit.certificate.class_group
    return SearchHitDocument(
        input=_echo(d, p, hit.position, strict=False),
        token=hit.token,
        roles=list(hit.roles),
        position=[str(v) for v in hit.position],
        certificate=certificate_document(hit.certificate, d, p, strict=False),
        prop34=prop34_document(hit.prop34_report, cl) if hit.prop34_report else None,
    )


def _places(doc: _Document, field) -> tuple:
    return resolve_places(field, [parse_place_spec(text) for text in doc.input.places])


def _certificate_places(doc: SearchHitDocument, field) -> tuple:
    return resolve_places(field, [parse_place_spec(text) for text in doc.certificate.input.places])


def recompute(doc: AnyDocument) -> AnyDocument:
    """Rerun the pipeline from the document's input echo and rebuild the document."""
    field = make_field(doc.input.d)
    p = doc.input.p
    S = _places(doc, field)

    if isinstance(doc, ClassGroupDocument):
        return class_group_document(build_class_group(field, p))
    if isinstance(doc, LinkingDocument):
        cl = build_class_group(field, p, S)
        return linking_document(build_linking_data(field, p, S, cl), cl, S)
    if isinstance(doc, Prop34Document):
        cl = build_class_group(field, p, S)
        return prop34_document(check_prop34(field, p, S, cl), cl)
    if isinstance(doc, CertificateDocument):
        ordering = parse_ordering(",".join(doc.input.ordering), S) if doc.input.ordering else None
        cert = certify_mild(field, p, S, ordering=ordering, strict=doc.input.strict)
        return certificate_document(cert, doc.input.d, p, ordering, doc.input.strict)
    if isinstance(doc, SearchHitDocument):
        cert = certify_mild(field, p, _certificate_places(doc, field), strict=False)
        report = None
        if doc.prop34 is not None:
            report = check_prop34(field, p, S, cert.class_group)
        return SearchHitDocument(
            input=doc.input.model_copy(),
            token=doc.token,
            roles=list(doc.roles),
            position=[str(v) for v in S],
            certificate=certificate_document(cert, doc.input.d, p, strict=False),
            prop34=prop34_document(report, cert.class_group) if report else None,
        )
    raise TypeError(f"cannot recompute {type(doc).__name__}")
