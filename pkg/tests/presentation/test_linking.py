from dataclasses import replace

import pytest

from src.mildp.arith.classgroup import build_class_group, compute_pi
from src.mildp.arith.quadfield import make_field, place_from_root, split_prime
from src.mildp.core.exceptions import (
    InvalidPlaceError,
    MalformedSetError,
    NoSingularPlaceError,
    NormCongruenceError,
    ResidueError,
)
from src.mildp.presentation.linking import (
    ONE,
    LinkingData,
    build_linking_data,
    find_singular,
    l_linking,
    make_mu_p,
    mu_dlog,
    power_residue,
    validate_places,
    z_linking,
    zeta_variants,
)
from src.mildp.presentation.mildness import Verdict, certify_mild


def test_roots_of_unity(places):
    assert [str(make_mu_p(v, 3).zeta) for v in places] == ["3", "196", "29", "25"]


def test_make_mu_p_needs_the_norm_congruence(field):
    with pytest.raises(NormCongruenceError):
        make_mu_p(split_prime(field, 29)[0], 3)


def test_power_residues_of_the_example(field, places, cl):
    v0, v1, v2, v3 = places
    assert str(power_residue(cl.a1, v0, 3)) == "9"
    assert str(power_residue(cl.a1, v1, 3)) == "14"
    assert str(power_residue(cl.a1, v2, 3)) == "1"
    assert str(power_residue(compute_pi(v1, cl).varpi_w, v2, 3)) == "37"
    assert str(power_residue(compute_pi(v2, cl).varpi_w, v3, 3)) == "5"
    # varpi for v0 is not a cube at v2
    assert str(power_residue(compute_pi(v0, cl).varpi_w, v2, 3)) == "37"


def test_associates_have_the_same_residue(field, places, cl):
    for v in places:
        assert power_residue(cl.a1, v, 3) == power_residue(-cl.a1, v, 3)


def test_power_residue_of_a_multiple_of_the_place(field, places):
    with pytest.raises(ResidueError):
        power_residue(field.element(13), places[0], 3)


def test_mu_dlog(places):
    mu = make_mu_p(places[0], 3)
    assert mu_dlog(mu.zeta.one(), mu) == 0
    assert mu_dlog(mu.zeta, mu) == 1
    assert mu_dlog(mu.zeta * mu.zeta, mu) == 2
    with pytest.raises(ResidueError):
        mu_dlog(mu.zeta + mu.zeta, mu)


def test_linking_numbers_of_the_example(field, places, cl):
    v0, v1, v2, v3 = places
    L = build_linking_data(field, 3, places, cl)
    assert L.S == places
    assert L.v0 == v0
    assert [L.z1[v] for v in places] == [2, 2, 0, 1]
    assert [L.lw1[w] for w in places] == [2, 0, 0, 2]
    assert L.l(v1, v2) == 1
    assert L.l(v2, v3) == 1
    assert L.l(v2, v0) == 2
    assert L.h_inv == 1
    assert L.q1_mod == 0
    columns = (ONE, v1, v2, v3)
    assert [[L.l_tilde(w, c) for c in columns] for w in places] == [
        [2, 2, 1, 2],
        [0, 1, 1, 1],
        [0, 1, 0, 0],
        [2, 2, 2, 0],
    ]


def test_residue_records_cover_every_pair(field, places, cl):
    L = build_linking_data(field, 3, places, cl)
    assert len(L.residues) == 4 + 4 * 3
    by_key = {(r.element, r.place): r for r in L.residues}
    assert by_key[("a1", "13:4")].residue == "9"
    assert by_key[("a1", "13:4")].dlog == 2
    assert by_key[("varpi[67]", "31:15")].residue == "5"


def test_first_singular_place_moves_to_the_front(field, places, cl):
    v0, v1, v2, v3 = places
    assert find_singular((v2, v3, v0, v1), cl.a1, 3) == v3
    L = build_linking_data(field, 3, (v2, v0, v1, v3), cl)
    assert L.S == (v0, v2, v1, v3)


def test_linking_is_independent_of_the_chosen_roots_of_unity_up_to_scaling(field, places, cl):
    base = build_linking_data(field, 3, places, cl)
    for mus in zeta_variants(places, 3):
        L = build_linking_data(field, 3, places, cl, mus=mus)
        for v in places:
            # zeta -> zeta^u scales every dlog at v by u^-1
            u_inv = mu_dlog(make_mu_p(v, 3).zeta, mus[v])
            assert L.z1[v] == base.z1[v] * u_inv % 3
            for w in places:
                assert L.l(w, v) == base.l(w, v) * u_inv % 3


def test_zeta_variants_count(places):
    assert len(zeta_variants(places, 3)) == 2 ** 4


def test_no_singular_place(field, cl):
    inert = [split_prime(field, ell)[0] for ell in (7, 19, 37, 67)]
    assert find_singular(inert, cl.a1, 3) is None
    with pytest.raises(NoSingularPlaceError):
        build_linking_data(field, 3, inert, cl)


def test_validate_places(field, places):
    with pytest.raises(MalformedSetError):
        validate_places(field, 3, [])
    with pytest.raises(MalformedSetError):
        validate_places(field, 3, [places[0], places[0]])
    with pytest.raises(MalformedSetError):
        validate_places(field, 3, [place_from_root(field, 3, 1)])
    with pytest.raises(MalformedSetError):
        validate_places(field, 3, [split_prime(field, 23)[0]])
    with pytest.raises(NormCongruenceError):
        validate_places(field, 3, [split_prime(field, 29)[0]])
    with pytest.raises(InvalidPlaceError):
        validate_places(field, 3, [split_prime(field, 2)[0]])
    with pytest.raises(MalformedSetError):
        validate_places(field, 3, [place_from_root(make_field(-1), 7, None)])
    with pytest.raises(MalformedSetError):
        validate_places(field, 3, places, frak_a1=places[1])
    validate_places(field, 3, places)


def test_synthetic_linking_data(places):
    L = LinkingData.synthetic(3, places, {v: 1 for v in places}, {v: 0 for v in places}, {})
    assert L.l(places[0], places[0]) == 0
    assert L.l_tilde(places[1], ONE) == 0
    with pytest.raises(NoSingularPlaceError):
        LinkingData.synthetic(3, places, {v: 0 for v in places}, {v: 0 for v in places}, {})


def test_z_linking_is_the_dlog_of_the_power_residue(places, cl):
    values = []
    for v in places:
        mu = make_mu_p(v, 3)
        z = z_linking(cl.a1, v, mu)
        assert mu.zeta ** z == power_residue(cl.a1, v, 3)
        values.append(z)
    assert values == [2, 2, 0, 1]


def test_l_linking_directly(places, cl):
    v0, v1, v2, v3 = places
    mu = make_mu_p(v2, 3)
    assert l_linking(v1, v2, compute_pi(v1, cl), mu) == 1
    assert l_linking(v0, v2, compute_pi(v0, cl), mu) != 0
    assert l_linking(v2, v2, compute_pi(v2, cl), mu) == 0


def test_conjugate_of_the_a1_prime_may_belong_to_s():
    field = make_field(-87)
    S = [place_from_root(field, 7, 5), place_from_root(field, 5, None),
         place_from_root(field, 13, 2), place_from_root(field, 13, 11)]
    cl = build_class_group(field, 3, S)
    assert cl.frak_a1 == place_from_root(field, 7, 2)
    L = build_linking_data(field, 3, S, cl)
    assert set(L.S) == set(S)
    for w in L.S:
        for v in L.S:
            assert 0 <= L.l(w, v) < 3
    assert certify_mild(field, 3, S, cl=cl, strict=False).verdict in (Verdict.MILD_CERTIFIED, Verdict.NOT_CERTIFIED)


def test_varpi_associates_give_the_same_linking_data(field, places, cl):
    base = build_linking_data(field, 3, places, cl)
    negated = {v: replace(compute_pi(v, cl), varpi_w=-compute_pi(v, cl).varpi_w) for v in places}
    L = build_linking_data(field, 3, places, cl, pis=negated)
    assert L == base
    assert certify_mild(field, 3, places, cl=cl, pis=negated, strict=False).verdict is Verdict.NOT_CERTIFIED
