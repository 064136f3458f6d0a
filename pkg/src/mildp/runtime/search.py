"""
Deterministic, resumable scans for sets S whose G_S is certified mild.

Every candidate place is classified once (degree, class linking l_{v,1} mod p,
power residue of a1); the combinatorial scan only reads that cache. Work is
sharded by the rational prime under the first place and merged back in
lexicographic order, so the output never depends on the number of workers.
"""
import concurrent.futures
from dataclasses import dataclass
from enum import Enum
from functools import partial
from itertools import combinations
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import primerange

from src.mildp.arith.classgroup import ClassGroupData, PiData, build_class_group, compute_pi
from src.mildp.arith.quadfield import Place, PlaceKind, QuadField, ResidueElement, place_from_root, split_prime
from src.mildp.core.config import config_manager, get_logger
from src.mildp.core.exceptions import MildpError
from src.mildp.presentation.linking import MuP, make_mu_p, power_residue, varpi_power_residue
from src.mildp.presentation.mildness import MildnessCertificate, Prop34Report, certify_mild, check_prop34

logger = get_logger(__name__)

ROLES = ("v0", "v1", "v2", "v3")
EXECUTORS = {
    "thread": concurrent.futures.ThreadPoolExecutor,
    "process": concurrent.futures.ProcessPoolExecutor,
}
Key = Tuple[Tuple[int, int], ...]


class SearchMode(str, Enum):
    PROP34 = "prop34"
    THEOREM32 = "theorem32"


@dataclass(frozen=True)
class SearchSpec:
    field: QuadField
    p: int
    ell_bound: int
    mode: SearchMode = SearchMode.PROP34
    max_results: Optional[int] = None
    require_example_order: bool = True
    cardinality: int = 4
    workers: int = 1
    checkpoint: Optional[str] = None
    executor: str = "thread"

    def __post_init__(self):
        if self.ell_bound < self.p + 1:
            raise MildpError(f"ell_bound must be at least p + 1 = {self.p + 1}")
        if self.mode is SearchMode.PROP34 and self.cardinality != 4:
            raise MildpError("the four-place search always uses |S| = 4")
        if self.cardinality < 4 or self.cardinality % 2:
            raise MildpError(f"cardinality must be even and at least 4, got {self.cardinality}")
        if self.workers < 1:
            raise MildpError("workers must be positive")
        if self.executor not in EXECUTORS:
            raise MildpError(f"unknown executor {self.executor!r}", suggestions=[f"use one of {sorted(EXECUTORS)}"])

    @classmethod
    def from_config(cls, field: QuadField, p: int, ell_bound: int, **overrides) -> "SearchSpec":
        defaults = {
            "workers": int(config_manager.setting("search", "workers", 1)),
            "max_results": config_manager.setting("search", "max_results", 10),
            "executor": config_manager.setting("search", "executor", "thread"),
        }
        mode = SearchMode(overrides.pop("mode", SearchMode.PROP34))
        if mode is SearchMode.THEOREM32:
            defaults["cardinality"] = int(config_manager.setting("search", "cardinality", 4))
        defaults.update({k: v for k, v in overrides.items() if v is not None})
        return cls(field, p, ell_bound, mode=mode, **defaults)


@dataclass(frozen=True)
class PlaceClassification:
    place: Place
    degree: int
    class_linking: int
    a1_residue: ResidueElement
    pi: PiData

    @property
    def a1_trivial(self) -> bool:
        return self.a1_residue.is_one()


@dataclass(frozen=True)
class SearchHit:
    S: Tuple[Place, ...]
    roles: Tuple[str, ...]
    position: Tuple[Place, ...]
    certificate: MildnessCertificate
    prop34_report: Optional[Prop34Report] = None

    @property
    def token(self) -> str:
        return checkpoint_token(self.position)


@dataclass(frozen=True)
class SearchResult:
    hits: Tuple[SearchHit, ...]
    checkpoint: Optional[str]


def checkpoint_token(places: Sequence[Place]) -> str:
    return "/".join(place.token() for place in places)


def parse_checkpoint(field: QuadField, token: str) -> Tuple[Place, ...]:
    places = []
    for part in token.strip().split("/"):
        ell, _, root = part.partition(":")
        try:
            ell_value = int(ell)
            root_value = None if root in ("i", "") else int(root)
        except ValueError as exc:
            raise MildpError(f"malformed checkpoint component {part!r}",
                             suggestions=["tokens look like 13:4/211:71/67:i/31:15"]) from exc
        places.append(place_from_root(field, ell_value, root_value))
    return tuple(places)


def _key(places: Sequence[Place]) -> Key:
    return tuple(place.sort_key() for place in places)


def candidate_places(field: QuadField, p: int, ell_bound: int,
                     cl: Optional[ClassGroupData] = None) -> Iterator[PlaceClassification]:
    """Tame unramified places above ell <= ell_bound with N(v) = 1 mod p, classified."""
    cl = cl or build_class_group(field, p)
    for ell in primerange(3, ell_bound + 1):
        if ell == p:
            continue
        for place in split_prime(field, ell):
            if place.kind is PlaceKind.RAMIFIED or (place.q - 1) % p or place == cl.frak_a1:
                continue
            pi = compute_pi(place, cl)
            yield PlaceClassification(place, place.f, pi.l_w1 % p, power_residue(cl.a1, place, p), pi)


@dataclass(frozen=True)
class SearchContext:
    spec: SearchSpec
    cl: ClassGroupData
    classified: Tuple[PlaceClassification, ...]
    pis: Dict[Place, PiData]
    mus: Dict[Place, MuP]


def build_context(spec: SearchSpec) -> SearchContext:
    cl = build_class_group(spec.field, spec.p)
    classified = tuple(sorted(candidate_places(spec.field, spec.p, spec.ell_bound, cl),
                              key=lambda c: c.place.sort_key()))
    pis = {c.place: c.pi for c in classified}
    mus = {c.place: make_mu_p(c.place, spec.p) for c in classified}
    logger.debug(f"[SEARCH] {len(classified)} candidate places below {spec.ell_bound}")
    return SearchContext(spec, cl, classified, pis, mus)


def role_tuples(classified: Sequence[PlaceClassification],
                after: Optional[Sequence[Place]] = None) -> Iterator[Tuple[PlaceClassification, ...]]:
    """
    Role assignments (v0, v1, v2, v3) allowed by the per-place conditions, in
    lexicographic order of their places, strictly after the given tuple.
    """
    ordered = sorted(classified, key=lambda c: c.place.sort_key())
    v0s = [c for c in ordered if c.degree == 1 and not c.a1_trivial and c.class_linking != 0]
    v1s = [c for c in ordered if c.degree == 1 and not c.a1_trivial and c.class_linking == 0]
    v2s = [c for c in ordered if c.degree == 2 and c.a1_trivial]
    v3s = [c for c in ordered if c.degree == 1 and c.class_linking != 0]
    after_key = _key(after) if after else None
    for c0 in v0s:
        for c1 in v1s:
            for c2 in v2s:
                for c3 in v3s:
                    if c3.place == c0.place:
                        continue
                    quadruple = (c0, c1, c2, c3)
                    if after_key is not None and _key([c.place for c in quadruple]) <= after_key:
                        continue
                    yield quadruple


def _shards(items: Sequence, first: Callable) -> List[list]:
    shards: Dict[int, list] = {}
    for item in items:
        shards.setdefault(first(item).ell, []).append(item)
    return [shards[ell] for ell in sorted(shards)]


def _scan_prop34_shard(context: SearchContext, quadruples: List[Tuple[PlaceClassification, ...]]) -> List[SearchHit]:
    spec = context.spec
    p = spec.p
    residue_trivial: Dict[Tuple[Place, Place], bool] = {}

    def trivial(w: PlaceClassification, v: PlaceClassification) -> bool:
        key = (w.place, v.place)
        if key not in residue_trivial:
            residue_trivial[key] = varpi_power_residue(w.pi, v.place, p).is_one()
        return residue_trivial[key]

    hits: List[SearchHit] = []
    for c0, c1, c2, c3 in quadruples:
        if not trivial(c0, c2) or trivial(c1, c2) or trivial(c2, c3):
            continue
        position = (c0.place, c1.place, c2.place, c3.place)
        S = position if spec.require_example_order else tuple(sorted(position, key=Place.sort_key))
        try:
            report = check_prop34(spec.field, p, position, context.cl, context.pis)
            if not report.verdict:
                continue
            certificate = certify_mild(spec.field, p, S, strict=False, cl=context.cl,
                                       mus=context.mus, pis=context.pis)
        except MildpError as exc:
            logger.debug(f"[SEARCH] skipped {checkpoint_token(position)}: {exc.message}")
            continue
        if not certificate.certified:
            logger.debug(f"[SEARCH] {checkpoint_token(position)} meets the four conditions but is not certified")
            continue
        hits.append(SearchHit(S, ROLES, position, certificate, report))
        if spec.max_results is not None and len(hits) >= spec.max_results:
            break
    return hits


def _theorem32_subsets(context: SearchContext, firsts: Sequence[int],
                       after_key: Optional[Key]) -> Iterator[Tuple[PlaceClassification, ...]]:
    """k-subsets whose smallest place is classified[i] for i in firsts, generated lazily."""
    classified = context.classified
    for i in firsts:
        for rest in combinations(classified[i + 1:], context.spec.cardinality - 1):
            subset = (classified[i],) + rest
            if after_key is None or _key([c.place for c in subset]) > after_key:
                yield subset


def _scan_theorem32_shard(context: SearchContext, firsts: Sequence[int],
                          after_key: Optional[Key] = None) -> List[SearchHit]:
    spec = context.spec
    hits: List[SearchHit] = []
    for subset in _theorem32_subsets(context, firsts, after_key):
        S = tuple(c.place for c in subset)
        if all(c.a1_trivial for c in subset):
            continue
        try:
            certificate = certify_mild(spec.field, spec.p, S, strict=False, cl=context.cl,
                                       mus=context.mus, pis=context.pis)
        except MildpError as exc:
            logger.debug(f"[SEARCH] skipped {checkpoint_token(S)}: {exc.message}")
            continue
        if certificate.certified:
            hits.append(SearchHit(S, tuple(str(v) for v in certificate.linking.S), S, certificate))
            if spec.max_results is not None and len(hits) >= spec.max_results:
                break
    return hits


def _work_items(context: SearchContext,
                after: Optional[Tuple[Place, ...]]) -> Tuple[List, Callable[[list], List[SearchHit]]]:
    """Shards keyed by the rational prime under the first place, with a picklable scan for them."""
    spec = context.spec
    if spec.mode is SearchMode.PROP34:
        items = list(role_tuples(context.classified, after))
        return _shards(items, lambda t: t[0].place), partial(_scan_prop34_shard, context)
    after_key = _key(after) if after else None
    if after_key is not None:
        # subsets after the checkpoint start at its first place or later
        start = sum(1 for c in context.classified if c.place.sort_key() < after_key[0])
    else:
        start = 0
    last_first = len(context.classified) - spec.cardinality
    firsts = range(start, last_first + 1)
    return _shards(firsts, lambda i: context.classified[i].place), partial(
        _scan_theorem32_shard, context, after_key=after_key)


def iter_search(spec: SearchSpec, context: Optional[SearchContext] = None) -> Iterator[SearchHit]:
    """Hits in lexicographic order, streamed shard by shard."""
    context = context or build_context(spec)
    after = parse_checkpoint(spec.field, spec.checkpoint) if spec.checkpoint else None
    shards, scan = _work_items(context, after)
    emitted = 0

    if spec.workers == 1:
        results = map(scan, shards)
        executor = None
    else:
        executor = EXECUTORS[spec.executor](max_workers=spec.workers)
        results = executor.map(scan, shards)
    try:
        for shard_hits in results:
            for hit in shard_hits:
                yield hit
                emitted += 1
                if spec.max_results is not None and emitted >= spec.max_results:
                    return
    finally:
        if executor:
            executor.shutdown(wait=True, cancel_futures=True)


def run_search(spec: SearchSpec) -> SearchResult:
    hits = tuple(iter_search(spec))
    truncated = spec.max_results is not None and len(hits) >= spec.max_results
    checkpoint = hits[-1].token if truncated and hits else None
    logger.debug(f"[SEARCH] {len(hits)} hits, checkpoint={checkpoint}")
    return SearchResult(hits, checkpoint)


def find_prop34_quadruples(spec: SearchSpec) -> List[SearchHit]:
    if spec.mode is not SearchMode.PROP34:
        raise MildpError("find_prop34_quadruples needs mode prop34")
    return list(run_search(spec).hits)


def find_theorem32_sets(spec: SearchSpec) -> List[SearchHit]:
    if spec.mode is not SearchMode.THEOREM32:
        raise MildpError("find_theorem32_sets needs mode theorem32")
    return list(run_search(spec).hits)
