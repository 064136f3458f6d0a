import json

import pytest

from src.commands.main import run
from src.commands.utils.documents import (
    CertificateDocument,
    ClassGroupDocument,
    LinkingDocument,
    Prop34Document,
    SearchHitDocument,
    recompute,
)
from src.commands.utils.placespec import parse_ordering, parse_place_list, parse_place_spec, resolve_places
from src.mildp.core.exceptions import InvalidPlaceError, OrderingError
from src.mildp.presentation.linking import ONE

EXAMPLE = ["-d", "-23", "-p", "3", "--places", "13:4,211:71,67,31:15"]


def test_certify_example_is_not_certified(capsys):
    assert run(["certify", *EXAMPLE]) == 1
    out = capsys.readouterr().out
    assert "not_certified" in out
    assert "(1, 211:71, 67, 31:15)" in out


def test_certify_needs_four_places(capsys):
    assert run(["certify", "-d", "-23", "-p", "3", "--places", "13:4"]) == 2
    assert "PRECONDITION_ERROR" in capsys.readouterr().err


def test_certify_lenient_reports_the_failed_stage(capsys):
    code = run(["certify", "-d", "-23", "-p", "3", "--places", "13:4,211:71,67", "--lenient"])
    assert code == 1
    assert "odd_cardinality" in capsys.readouterr().out


def test_certify_with_a_bad_place(capsys):
    assert run(["certify", "-d", "-23", "-p", "3", "--places", "13:5,211:71,67,31:15"]) == 2
    assert run(["certify", "-d", "-23", "-p", "3", "--places", "13,211:71,67,31:15"]) == 2


def test_classgroup(capsys):
    assert run(["classgroup", "-d", "-23", "-p", "3"]) == 0
    out = capsys.readouterr().out
    assert "(1,1,6), (2,1,3), (2,-1,3)" in out
    assert "(3, sqrt(-23) - 1)" in out
    assert "2 + sqrt(-23)" in out


@pytest.mark.parametrize("d,p", [("-1", "3"), ("-21", "2"), ("-4", "3"), ("7", "3")])
def test_classgroup_rejections(d, p, capsys):
    assert run(["classgroup", "-d", d, "-p", p]) == 2


def test_linking_prints_residues(capsys):
    assert run(["linking", *EXAMPLE]) == 0
    out = capsys.readouterr().out
    for residue in ("9", "14", "37", "5"):
        assert f"= {residue} " in out


def test_prop34_example_fails_condition_three(capsys):
    args = ["-d", "-23", "-p", "3", "--places", "v2=67,v0=13:4,v3=31:15,v1=211:71"]
    assert run(["prop34", *args]) == 1


def test_version(capsys):
    assert run(["version"]) == 0
    assert "mildp" in capsys.readouterr().out


def test_no_command_prints_help(capsys):
    assert run([]) == 0
    assert "usage" in capsys.readouterr().out


def test_certificate_document_round_trip(capsys):
    assert run(["certify", *EXAMPLE, "--json"]) == 1
    doc = CertificateDocument.model_validate_json(capsys.readouterr().out)
    assert doc.verdict == "not_certified"
    assert doc.failed_stage == "no_passing_ordering"
    assert doc.class_group.a1 == [2, 1, 1]
    assert doc.linking.z == {"13:4": 2, "211:71": 2, "67": 0, "31:15": 1}
    assert doc.reported.matrix_A == [[1, 1, 1, 1], [0, 2, 0, 0], [0, 1, 0, 0], [0, 0, 2, 1]]
    assert doc.reported.det_A == 0
    assert recompute(doc) == doc


def test_replayed_ordering_round_trip(capsys):
    assert run(["certify", *EXAMPLE, "--ordering", "1,211:71,67,31:15", "--json"]) == 1
    doc = CertificateDocument.model_validate_json(capsys.readouterr().out)
    assert doc.orderings_examined == 1
    assert doc.input.ordering == ["1", "211:71", "67", "31:15"]
    assert recompute(doc) == doc


def test_other_documents_round_trip(capsys):
    assert run(["classgroup", "-d", "-23", "-p", "3", "--json"]) == 0
    doc = ClassGroupDocument.model_validate_json(capsys.readouterr().out)
    assert doc.class_group.forms == ["(1,1,6)", "(2,1,3)", "(2,-1,3)"]
    assert recompute(doc) == doc

    assert run(["linking", *EXAMPLE, "--json"]) == 0
    doc = LinkingDocument.model_validate_json(capsys.readouterr().out)
    assert doc.linking.l_tilde == [[2, 2, 1, 2], [0, 1, 1, 1], [0, 1, 0, 0], [2, 2, 2, 0]]
    assert recompute(doc) == doc

    assert run(["prop34", *EXAMPLE, "--json"]) == 1
    doc = Prop34Document.model_validate_json(capsys.readouterr().out)
    assert doc.conditions == [True, True, False, True, True]
    assert recompute(doc) == doc


def test_search_streams_json_lines(capsys):
    code = run(["search", "-d", "-23", "-p", "3", "--bound", "40", "--mode", "theorem32",
                "--max-results", "2", "--json"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    end = json.loads(lines[-1])
    assert end["kind"] == "search_end"
    assert end["hits"] == len(lines) - 1
    for line in lines[:-1]:
        doc = SearchHitDocument.model_validate_json(line)
        assert doc.certificate.verdict == "mild_certified"
        assert recompute(doc) == doc


def test_search_below_the_first_candidates(capsys):
    assert run(["search", "-d", "-23", "-p", "3", "--bound", "10"]) == 0
    assert "search exhausted" in capsys.readouterr().out


def test_place_spec_parsing(field):
    assert parse_place_spec("13:4").root == 4
    assert parse_place_spec("67").root is None
    assert parse_place_spec("67:i").root is None
    assert parse_place_spec("v1=211:71").role == "v1"
    specs = parse_place_list("v2=67,v0=13:4,v3=31:15,v1=211:71")
    assert [s.text for s in specs] == ["v0=13:4", "v1=211:71", "v2=67", "v3=31:15"]
    with pytest.raises(InvalidPlaceError):
        parse_place_list("v0=13:4,211:71")
    with pytest.raises(InvalidPlaceError):
        parse_place_spec("13:x")
    with pytest.raises(InvalidPlaceError):
        parse_place_spec("v7=13:4")


def test_ordering_parsing(field, places):
    S = resolve_places(field, parse_place_list("13:4,211:71,67,31:15"))
    assert S == places
    assert parse_ordering("1,211:71,67:i,31:15", S) == (ONE, places[1], places[2], places[3])
    with pytest.raises(OrderingError):
        parse_ordering("1,29:6", S)


def test_version_verbose_lists_the_stack(capsys):
    assert run(["version", "-v"]) == 0
    out = capsys.readouterr().out
    assert "sympy" in out
    assert "schema" in out
