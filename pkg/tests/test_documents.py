"""JSON document format: parsing, validation, and round trips."""

import json
from fractions import Fraction

import pytest

from liedef.catalog import filiform_algebra, filiform_weights, sl2_algebra
from liedef.documents import (
    AlgebraDocument,
    DocumentError,
    format_rational,
    load_document,
    parse_document,
    validate_closure,
)


def sample_obj():
    return {
        "dim": 3,
        "brackets": [
            {"i": 1, "j": 2, "k": 3, "coeff": "1"},
        ],
        "labels": {"family": "heisenberg"},
    }


def test_parse_and_rebuild():
    doc = parse_document(sample_obj())
    assert doc.dim == 3
    assert doc.brackets == {(1, 2): {3: Fraction(1)}}
    assert doc.labels == {"family": "heisenberg"}
    L = doc.to_algebra()
    assert L.bracket_basis(1, 2) == {3: Fraction(1)}


def test_round_trip_is_byte_identical(tmp_path):
    L = filiform_algebra(8)
    doc = AlgebraDocument.from_algebra(
        L, filiform_weights(8), {"family": "f_n", "size": "8"}
    )
    text = doc.dumps()
    path = tmp_path / "doc.json"
    path.write_text(text)
    again = load_document(str(path))
    assert again.dumps() == text
    assert again.to_algebra().brackets == L.brackets
    assert again.torus.weight_columns(8) == filiform_weights(8)


def test_rational_formatting():
    assert format_rational(Fraction(1)) == "1"
    assert format_rational(Fraction(-5, 3)) == "-5/3"
    obj = sample_obj()
    obj["brackets"][0]["coeff"] = "-5/3"
    doc = parse_document(obj)
    assert doc.brackets[(1, 2)][3] == Fraction(-5, 3)


def test_parse_problems_are_collected():
    obj = {
        "dim": "three",
        "brackets": [
            {"i": 2, "j": 1, "k": 3},
            {"i": 1, "j": 2},
            {"i": 1, "j": 2, "k": 1, "coeff": "x"},
        ],
        "mystery": 1,
    }
    with pytest.raises(DocumentError) as err:
        parse_document(obj)
    text = "\n".join(err.value.problems)
    assert "dim must be a positive integer" in text
    assert "out of range" in text
    assert "needs integer fields" in text
    assert "unknown top-level field: mystery" in text


def test_duplicate_entries_rejected():
    obj = sample_obj()
    obj["brackets"].append({"i": 1, "j": 2, "k": 3, "coeff": "2"})
    with pytest.raises(DocumentError) as err:
        parse_document(obj)
    assert any("duplicate" in p for p in err.value.problems)


def test_torus_validation():
    obj = sample_obj()
    obj["torus"] = {"rank": 2, "weights": [["1", "0"], ["0", "1"], ["1", "1"]]}
    doc = parse_document(obj)
    assert doc.torus.rank == 2
    assert doc.torus.weight_columns(3)[0] == [Fraction(1), Fraction(0), Fraction(1)]
    obj["torus"] = {"rank": 2, "weights": [["1"], ["0", "1"], ["1", "1"]]}
    with pytest.raises(DocumentError) as err:
        parse_document(obj)
    assert any("length 2" in p for p in err.value.problems)
    obj["torus"] = {"rank": 1, "weights": [["1"]]}
    with pytest.raises(DocumentError) as err:
        parse_document(obj)
    assert any("one vector per basis index" in p for p in err.value.problems)


def test_zero_coefficients_dropped():
    obj = sample_obj()
    obj["brackets"].append({"i": 1, "j": 3, "k": 2, "coeff": "0"})
    doc = parse_document(obj)
    assert (1, 3) not in doc.brackets


def test_validate_closure_reports_defects():
    good = AlgebraDocument.from_algebra(sl2_algebra())
    assert validate_closure(good) == []
    bad = AlgebraDocument(
        3,
        {(1, 2): {3: Fraction(1)}, (1, 3): {1: Fraction(1)}},
    )
    problems = validate_closure(bad)
    assert problems and all("defect" in p for p in problems)


def test_load_document_errors(tmp_path):
    missing = tmp_path / "missing.json"
    with pytest.raises(DocumentError):
        load_document(str(missing))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(DocumentError) as err:
        load_document(str(broken))
    assert any("invalid JSON" in p for p in err.value.problems)
    not_obj = tmp_path / "list.json"
    not_obj.write_text(json.dumps([1, 2]))
    with pytest.raises(DocumentError):
        load_document(str(not_obj))
