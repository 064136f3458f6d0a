"""
Textual place specifications used on the command line and in documents.

A place is written ``ell`` (inert or ramified prime) or ``ell:r`` with
r^2 = d (mod ell). A role prefix ``v1=13:4`` assigns the four-place roles; it
is either given on every entry of a list or on none.
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from src.mildp.arith.quadfield import Place, QuadField, place_from_root
from src.mildp.core.exceptions import InvalidPlaceError, OrderingError
from src.mildp.presentation.linking import ONE, Label

ROLE_NAMES = ("v0", "v1", "v2", "v3")


@dataclass(frozen=True)
class PlaceSpec:
    text: str
    ell: int
    root: Optional[int] = None
    role: Optional[str] = None

    def resolve(self, field: QuadField) -> Place:
        return place_from_root(field, self.ell, self.root)


def parse_place_spec(text: str) -> PlaceSpec:
    raw = text.strip()
    role = None
    body = raw
    if "=" in raw:
        role, _, body = raw.partition("=")
        role = role.strip()
        if role not in ROLE_NAMES:
            raise InvalidPlaceError(f"unknown role {role!r} in {raw!r}",
                                    suggestions=[f"roles are {', '.join(ROLE_NAMES)}"])
    ell_text, sep, root_text = body.strip().partition(":")
    try:
        ell = int(ell_text)
        root = int(root_text) if sep and root_text not in ("", "i") else None
    except ValueError as exc:
        raise InvalidPlaceError(f"cannot read place {raw!r}",
                                suggestions=["write places as ell or ell:root, e.g. 67 or 13:4"]) from exc
    return PlaceSpec(raw, ell, root, role)


def parse_place_list(text: str) -> List[PlaceSpec]:
    specs = [parse_place_spec(part) for part in text.split(",") if part.strip()]
    if not specs:
        raise InvalidPlaceError("no places given")
    tagged = [spec.role is not None for spec in specs]
    if any(tagged) and not all(tagged):
        raise InvalidPlaceError("role tags must be given on every place or on none")
    if all(tagged):
        roles = [spec.role for spec in specs]
        if len(set(roles)) != len(roles):
            raise InvalidPlaceError(f"repeated role in {text!r}")
        specs.sort(key=lambda spec: ROLE_NAMES.index(spec.role))
    return specs


def resolve_places(field: QuadField, specs: Sequence[PlaceSpec]) -> Tuple[Place, ...]:
    return tuple(spec.resolve(field) for spec in specs)


def parse_ordering(text: str, S: Sequence[Place]) -> Tuple[Label, ...]:
    """Comma separated labels; "1" is the class generator, others match places of S by name."""
    by_name = {str(v): v for v in S}
    by_name.update({v.token(): v for v in S})
    labels: List[Label] = []
    for part in (x.strip() for x in text.split(",") if x.strip()):
        if part == ONE:
            labels.append(ONE)
            continue
        if part not in by_name:
            raise OrderingError(f"{part!r} is not a place of S",
                                suggestions=[f"places of S: {', '.join(by_name)}"])
        labels.append(by_name[part])
    return tuple(labels)
