import pytest

from src.mildp.arith.classgroup import build_class_group
from src.mildp.arith.quadfield import place_from_root
from src.mildp.core.exceptions import MildpError
from src.mildp.presentation.linking import ONE, build_linking_data
from src.mildp.presentation.mildness import certify_mild, check_prop34, evaluate_ordering
from src.mildp.runtime.search import (
    SearchMode,
    SearchSpec,
    build_context,
    candidate_places,
    checkpoint_token,
    find_prop34_quadruples,
    find_theorem32_sets,
    iter_search,
    parse_checkpoint,
    role_tuples,
    run_search,
)


@pytest.fixture(scope="module")
def context_211(field):
    return build_context(SearchSpec(field, 3, 211))


@pytest.fixture(scope="module")
def classified_211(context_211):
    return context_211.classified


def test_candidate_places_filters(field):
    cl = build_class_group(field, 3)
    found = {str(c.place): c for c in candidate_places(field, 3, 40, cl)}
    assert set(found) == {"5", "7", "11", "13:4", "13:9", "17", "19", "31:15", "31:16", "37"}
    assert found["13:4"].degree == 1
    assert found["13:4"].class_linking == 2
    assert not found["13:4"].a1_trivial
    assert found["5"].degree == 2
    assert not found["5"].a1_trivial
    assert found["7"].a1_trivial


def test_inert_67_is_a_trivial_candidate(field):
    found = {str(c.place): c for c in candidate_places(field, 3, 67)}
    assert found["67"].a1_trivial
    assert found["67"].class_linking == 0


def test_small_bound_gives_an_exhausted_empty_search(field):
    result = run_search(SearchSpec(field, 3, 10))
    assert result.hits == ()
    assert result.checkpoint is None


def test_example_is_a_role_tuple(places, classified_211):
    tuples = [tuple(c.place for c in t) for t in role_tuples(classified_211)]
    assert places in tuples
    keys = [tuple(v.sort_key() for v in t) for t in tuples]
    assert keys == sorted(keys)


def test_role_tuples_resume_without_gaps(places, classified_211):
    full = list(role_tuples(classified_211))
    index = [tuple(c.place for c in t) for t in full].index(places)
    resumed = list(role_tuples(classified_211, after=places))
    assert resumed == full[index + 1:]


def test_checkpoint_tokens(field, places):
    token = checkpoint_token(places)
    assert token == "13:4/211:71/67:i/31:15"
    assert parse_checkpoint(field, token) == places
    with pytest.raises(MildpError):
        parse_checkpoint(field, "13:x/67:i")


@pytest.mark.parametrize("workers", [4, 8])
def test_search_is_independent_of_the_worker_count(field, context_211, workers):
    serial = [h.token for h in iter_search(SearchSpec(field, 3, 211, workers=1), context_211)]
    spec = SearchSpec(field, 3, 211, workers=workers)
    assert [h.token for h in iter_search(spec, context_211)] == serial


def test_process_pool_matches_the_serial_scan(field):
    serial = run_search(SearchSpec(field, 3, 40, mode=SearchMode.THEOREM32))
    pooled = run_search(SearchSpec(field, 3, 40, mode=SearchMode.THEOREM32, workers=2, executor="process"))
    assert [h.token for h in pooled.hits] == [h.token for h in serial.hits]


def test_theorem32_hits_reverify(field):
    spec = SearchSpec(field, 3, 40, mode=SearchMode.THEOREM32, max_results=3)
    hits = find_theorem32_sets(spec)
    assert len(hits) <= 3
    for hit in hits:
        assert hit.certificate.certified
        assert certify_mild(field, 3, hit.S).certified
    keys = [place_sort(field, hit.token) for hit in hits]
    assert keys == sorted(keys)


def place_sort(field, token):
    return tuple(v.sort_key() for v in parse_checkpoint(field, token))


def test_truncated_search_resumes_from_its_checkpoint(field):
    spec = SearchSpec(field, 3, 40, mode=SearchMode.THEOREM32)
    everything = [h.token for h in iter_search(spec)]
    if len(everything) < 2:
        pytest.skip("fewer than two certified sets below the bound")
    first = run_search(SearchSpec(field, 3, 40, mode=SearchMode.THEOREM32, max_results=1))
    assert first.checkpoint == everything[0]
    rest = run_search(SearchSpec(field, 3, 40, mode=SearchMode.THEOREM32, checkpoint=first.checkpoint))
    assert [h.token for h in rest.hits] == everything[1:]


def test_prop34_hits_carry_both_reports(field):
    for hit in find_prop34_quadruples(SearchSpec(field, 3, 100, max_results=2)):
        assert hit.prop34_report.verdict
        assert hit.roles == ("v0", "v1", "v2", "v3")
        assert hit.certificate.certified


def test_four_place_criterion_certifies_when_v2_does_not_link_to_v0(field, context_211):
    counterexample = parse_checkpoint(field, "13:4/211:71/19:i/31:15")
    seen = set()
    for quadruple in role_tuples(context_211.classified):
        S = tuple(c.place for c in quadruple)
        if not check_prop34(field, 3, S, context_211.cl, context_211.pis).verdict:
            continue
        seen.add(S)
        L = build_linking_data(field, 3, S, context_211.cl, mus=context_211.mus, pis=context_211.pis)
        v0, v1, v2, v3 = S
        evaluation = evaluate_ordering((ONE, v1, v2, v3), L)
        if L.l(v2, v0) == 0:
            assert evaluation.direct.passed
        else:
            assert evaluation.conditions.all_hold
            assert not evaluation.conditions.corrections_vanish
    assert counterexample in seen


@pytest.mark.parametrize(
    "kwargs",
    [
        {"ell_bound": 3},
        {"ell_bound": 50, "cardinality": 6},
        {"ell_bound": 50, "mode": SearchMode.THEOREM32, "cardinality": 5},
        {"ell_bound": 50, "workers": 0},
        {"ell_bound": 50, "executor": "fiber"},
    ],
)
def test_search_spec_validation(field, kwargs):
    with pytest.raises(MildpError):
        SearchSpec(field, 3, **kwargs)


def test_mode_specific_helpers(field):
    with pytest.raises(MildpError):
        find_theorem32_sets(SearchSpec(field, 3, 10))
    assert place_from_root(field, 13, 4) in {c.place for c in candidate_places(field, 3, 13)}
