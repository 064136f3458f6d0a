import random

import pytest

from src.mildp.arith.classgroup import (
    QuadForm,
    build_class_group,
    choose_a1,
    class_dlog,
    compose,
    compute_pi,
    enumerate_class_group,
    form_order,
    ideal_to_form,
    principal_generator,
    reduce_form,
)
from src.mildp.arith.modular import is_squarefree
from src.mildp.arith.quadfield import (
    FractionalIdeal,
    IntegralIdeal,
    make_field,
    place_from_root,
    reduce_mod_place,
    split_prime,
)
from src.mildp.core.exceptions import InvalidFieldError, MalformedSetError, NotPrincipalError, PRankError


def _fields_up_to(bound):
    for d in range(-1, -bound - 1, -1):
        if is_squarefree(d):
            field = make_field(d)
            if abs(field.D) <= bound:
                yield field


def test_class_group_of_minus_23():
    cl = enumerate_class_group(make_field(-23), 3)
    assert [f.as_tuple() for f in cl.forms] == [(1, 1, 6), (2, 1, 3), (2, -1, 3)]
    assert cl.h_K == 3
    assert cl.p_rank == 1
    assert cl.h == 1
    assert cl.p_part == 3


@pytest.mark.parametrize("d,h_K", [(-47, 5), (-1, 1), (-3, 1), (-5, 2), (-21, 4), (-14, 4)])
def test_class_numbers(d, h_K):
    assert enumerate_class_group(make_field(d), 3).h_K == h_K


def test_forms_of_minus_84():
    cl = enumerate_class_group(make_field(-21), 3)
    assert {f.as_tuple() for f in cl.forms} == {(1, 0, 21), (2, 2, 11), (3, 0, 7), (5, 4, 5)}
    assert cl.p_rank == 0
    assert all(form_order(f) <= 2 for f in cl.forms)


def test_composition_examples():
    f = QuadForm(2, 1, 3)
    assert compose(f, f) == QuadForm(2, -1, 3)
    assert f * QuadForm(2, -1, 3) == QuadForm(1, 1, 6)
    assert f ** 3 == QuadForm(1, 1, 6)
    assert f ** -1 == QuadForm(2, -1, 3)
    assert form_order(f) == 3


def test_form_group_axioms_exhaustive():
    for field in _fields_up_to(500):
        forms = enumerate_class_group(field, 3).forms
        identity = QuadForm.principal(field.D)
        members = set(forms)
        assert identity in members
        for f in forms:
            assert f.is_reduced()
            assert f * identity == f
            assert f * f.inverse() == identity
            for g in forms:
                fg = f * g
                assert fg in members
                assert fg == g * f
                for k in forms:
                    assert fg * k == f * (g * k)


def test_class_dlog_outside_the_subgroup():
    cl = enumerate_class_group(make_field(-21), 3)
    base = QuadForm(2, 2, 11)
    assert class_dlog(QuadForm(2, 2, 11), base) == 1
    assert class_dlog(QuadForm(1, 0, 21), base) == 0
    assert class_dlog(QuadForm(3, 0, 7), base) is None
    assert len(cl.forms) == 4


def test_principal_generator_recovers_associates():
    rng = random.Random(20240611)
    radicands = [d for d in range(-1, -200, -1) if is_squarefree(d)]
    for d in rng.sample(radicands, 10):
        field = make_field(d)
        units = set(field.units())
        for _ in range(20):
            x, y = rng.randint(-40, 40), rng.randint(-40, 40)
            if (x, y) == (0, 0):
                continue
            element = field.from_omega(x, y)
            generator = principal_generator(IntegralIdeal.principal(element))
            assert generator / element in units
            assert generator == generator.canonical_associate()


def test_principal_generator_of_fractional_ideal(field):
    ideal = FractionalIdeal(IntegralIdeal.principal(field.element(5, 2)), 9)
    assert principal_generator(ideal) == field.element(5, 2, 9)


def test_principal_generator_rejects_nonprincipal_ideals(field):
    with pytest.raises(NotPrincipalError):
        principal_generator(place_from_root(field, 3, 1).ideal())


def test_build_class_group_chooses_a1(field):
    cl = build_class_group(field, 3)
    assert cl.frak_a1 == place_from_root(field, 3, 1)
    assert cl.frak_a1.describe() == "(3, sqrt(-23) - 1)"
    assert cl.q1 == 3
    assert cl.a1 == field.element(2, 1)
    assert -cl.a1 == field.element(-2, -1)
    assert ideal_to_form(cl.frak_a1.ideal()) == QuadForm(2, 1, 3)


def test_a1_avoids_places_of_s(field):
    excluded = place_from_root(field, 3, 1)
    cl = build_class_group(field, 3, [excluded])
    assert cl.frak_a1 == place_from_root(field, 3, 2)
    assert cl.a1 == field.element(2, -1)


def test_build_class_group_preconditions():
    with pytest.raises(PRankError):
        build_class_group(make_field(-1), 3)
    with pytest.raises(InvalidFieldError):
        build_class_group(make_field(-21), 2)
    with pytest.raises(InvalidFieldError):
        build_class_group(make_field(-23), 9)


def test_p_rank_two_is_rejected_with_a_hint():
    cl = enumerate_class_group(make_field(-3299), 3)
    assert cl.p_rank == 2
    with pytest.raises(PRankError) as excinfo:
        build_class_group(make_field(-3299), 3)
    assert any("V_S" in s for s in excinfo.value.suggestions)


def test_compute_pi_on_the_example(field, places, cl):
    v0, v1, v2, v3 = places
    expected = {
        v0: (2, field.element(5, 2, 9)),
        v1: (0, field.element(2, -3)),
        v2: (0, field.element(67)),
        v3: (2, None),
    }
    for w, (l_w1, varpi) in expected.items():
        pi = compute_pi(w, cl)
        assert pi.l_w1 == l_w1
        if varpi is not None:
            assert pi.varpi_w == varpi
        assert pi.ideal.is_generated_by(pi.varpi_w)


def test_compute_pi_rejects_ramified_and_a1_places(field, cl):
    with pytest.raises(MalformedSetError):
        compute_pi(split_prime(field, 23)[0], cl)
    with pytest.raises(MalformedSetError):
        compute_pi(cl.frak_a1, cl)


def test_reduce_form():
    assert reduce_form(QuadForm(3, 1, 2)) == QuadForm(2, -1, 3)
    assert reduce_form(QuadForm(6, 5, 2)) == QuadForm(2, -1, 3)
    assert reduce_form(QuadForm(2, -2, 3)) == QuadForm(2, 2, 3)
    for f in enumerate_class_group(make_field(-21), 3).forms:
        assert reduce_form(f) == f


def test_choose_a1_directly(field):
    cl = enumerate_class_group(field, 3)
    frak_a1, q1, a1 = choose_a1(field, cl, 3)
    assert frak_a1 == place_from_root(field, 3, 1)
    assert q1 == 3
    assert a1 == field.element(2, 1)


def test_varpi_residue_at_the_conjugate_of_the_a1_prime():
    field = make_field(-87)
    frak_a1 = place_from_root(field, 7, 2)
    conjugate = place_from_root(field, 7, 5)
    others = [place_from_root(field, 5, None), place_from_root(field, 13, 2), place_from_root(field, 13, 11)]
    cl = build_class_group(field, 3, [conjugate] + others)
    assert cl.frak_a1 == frak_a1
    for w in others:
        pi = compute_pi(w, cl)
        assert pi.ideal.is_generated_by(pi.varpi_w)
        assert not pi.residue_at(conjugate).is_zero()
        for v in others:
            if v != w and pi.k == 0:
                assert pi.residue_at(v) == reduce_mod_place(pi.varpi_w, v)
