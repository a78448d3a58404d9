import json
from pathlib import Path

import pytest

from hhcalc.bigraded import TableKind, compute_double_homology
from hhcalc.document import ResultDocument
from hhcalc.generators import gen_cycle, gen_icosahedron
from hhcalc.linalg import FieldSpec
from hhcalc.result_xml import XmlBuilder, from_xml, to_xml, write_xml
from hhcalc.validator import DEFAULT_XSD, load_schema, validate_xml


@pytest.fixture(scope="module")
def square_doc() -> ResultDocument:
    return ResultDocument.from_result(compute_double_homology(gen_cycle(4), FieldSpec.rationals()))


def test_document_fields(square_doc: ResultDocument):
    data = square_doc.to_dict()
    assert list(data) == ["schema_version", "complex", "field", "hochster", "hh", "hh_total_rank"]
    assert data["field"] == "q"
    assert data["complex"]["m"] == 4 and data["complex"]["facet_count"] == 4
    assert data["hh"] == [{"k": 0, "l": 0, "dim": 1}, {"k": -1, "l": 2, "dim": 2}, {"k": -2, "l": 4, "dim": 1}]
    assert data["hh_total_rank"] == 4


def test_json_is_stable_and_reloads(square_doc: ResultDocument):
    text = square_doc.to_json()
    assert text.endswith("}\n")
    again = ResultDocument.from_dict(json.loads(text))
    assert again.to_json() == text
    assert again.table(TableKind.HH).entries == {(0, 0): 1, (-1, 4): 2, (-2, 8): 1}


def test_from_dict_rejects_inconsistent_documents(square_doc: ResultDocument):
    data = square_doc.to_dict()
    with pytest.raises(ValueError):
        ResultDocument.from_dict({**data, "schema_version": 2})
    with pytest.raises(ValueError):
        ResultDocument.from_dict({**data, "hh_total_rank": 5})


def test_timings_are_opt_in():
    result = compute_double_homology(gen_cycle(5), FieldSpec.gf2())
    assert "timings" not in ResultDocument.from_result(result).to_dict()
    timed = ResultDocument.from_result(result, with_timings=True).to_dict()
    assert set(timed["timings"]) == {"homology", "differentials"}


def test_text_table_mentions_the_total(square_doc: ResultDocument):
    text = square_doc.to_text()
    assert "HH total rank: 4" in text
    assert "(-1,4)" in text


def test_xml_reads_back(square_doc: ResultDocument):
    data = to_xml(square_doc)
    assert data.startswith(b"<?xml")
    assert from_xml(data).to_dict() == square_doc.to_dict()


def test_both_writers_validate(square_doc: ResultDocument):
    validate_xml(to_xml(square_doc))
    plain = XmlBuilder(square_doc).to_bytes()
    validate_xml(plain)
    assert from_xml(plain).to_dict() == square_doc.to_dict()


def test_written_file_validates_with_timings(tmp_path: Path):
    result = compute_double_homology(gen_icosahedron(), FieldSpec.gf2())
    doc = ResultDocument.from_result(result, with_timings=True)
    out = write_xml(doc, tmp_path / "out" / "ico.xml")
    validate_xml(out, DEFAULT_XSD)
    back = from_xml(out.read_bytes())
    assert back.hh_total_rank == 24
    assert set(back.timings) == {"homology", "differentials"}


def test_invalid_document_is_rejected(square_doc: ResultDocument):
    data = to_xml(square_doc).replace(square_doc.complex.hash.encode(), b"not-a-hash")
    with pytest.raises(RuntimeError, match="validation failed"):
        validate_xml(data)


def test_schema_errors(tmp_path: Path):
    with pytest.raises(RuntimeError, match="not found"):
        load_schema(tmp_path / "missing.xsd")
    other = tmp_path / "other.xsd"
    other.write_text(
        '<xs:schema xmlns:xs="http://www.w3.org/2001/XMLSchema" targetNamespace="urn:other">'
        '<xs:element name="Thing" type="xs:string"/></xs:schema>',
        encoding="utf-8",
    )
    with pytest.raises(RuntimeError, match="does NOT declare"):
        load_schema(other)
