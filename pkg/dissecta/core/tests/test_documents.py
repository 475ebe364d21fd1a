import os

import pytest

import dissecta
from dissecta.core.documents import (
    ArrangementDocument,
    PosetDocument,
    ProfileDocument,
    SetModelDocument,
    SubsetDocument,
    dump_document,
    parse_document,
    read_document,
)
from dissecta.core.errors import ParseError, TooLargeError

DATA = os.path.join(os.path.dirname(dissecta.__file__), "data")

DOCUMENTS = {
    "sphere.json": ArrangementDocument,
    "plane.json": ArrangementDocument,
    "two_lines.json": ArrangementDocument,
    "two_circles.json": ArrangementDocument,
    "n5.json": PosetDocument,
    "m3.json": PosetDocument,
    "b3.json": PosetDocument,
    "b3_m.json": SubsetDocument,
    "alternating_profile.json": ProfileDocument,
    "segment_setmodel.json": SetModelDocument,
    "two_planes_setmodel.json": SetModelDocument,
}


@pytest.mark.parametrize("name, model", sorted(DOCUMENTS.items()))
def test_data_files_are_canonical(name, model):
    path = os.path.join(DATA, name)
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    assert dump_document(read_document(path, model)) == text


def test_poset_document_builds_poset():
    doc = read_document(os.path.join(DATA, "b3.json"), PosetDocument)
    p = doc.to_poset()
    assert len(p) == 8
    with pytest.raises(TooLargeError):
        doc.to_poset(max_elements=4)


def test_relation_documents():
    doc = parse_document(
        '{"elements": ["a", "b"], "relation": [["a", "b"]]}', PosetDocument
    )
    assert doc.format == "dissecta/1"
    assert doc.to_poset().is_leq("a", "b")


def test_numeric_ids_become_strings():
    doc = parse_document('{"elements": [1, 2], "covers": [[1, 2]]}', PosetDocument)
    assert doc.elements == ["1", "2"]
    assert doc.covers == [("1", "2")]


@pytest.mark.parametrize(
    "text",
    [
        "{not json",
        '{"elements": ["a"]}',
        '{"elements": ["a"], "covers": [], "relation": []}',
        '{"elements": ["a"], "covers": [], "colour": "red"}',
        '{"format": "dissecta/2", "elements": ["a"], "covers": []}',
        '{"elements": ["a"], "covers": [], "attrs": {"a": {"dim": -1}}}',
    ],
)
def test_invalid_documents(text):
    with pytest.raises(ParseError):
        parse_document(text, PosetDocument)


def test_profile_keys_are_dimensions():
    doc = parse_document('{"chamber_chi": {"0": 1, "1": -1}}', ProfileDocument)
    assert doc.chamber_chi == {0: 1, 1: -1}
    assert doc.flat_chi is None


def test_unreadable_file(tmp_path):
    with pytest.raises(ParseError):
        read_document(str(tmp_path / "missing.json"), PosetDocument)
