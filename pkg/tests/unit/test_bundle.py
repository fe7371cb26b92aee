"""
Unit tests for the algebra bundle codec.
"""

import json

import pytest

from lqt_kernel.bundle import (
    BUNDLE_FORMAT,
    bundle_document,
    decode_label,
    dumps,
    encode_label,
    matrix_document,
    read_bundle,
    read_bundle_document,
    tensor_document,
    write_bundle,
)
from lqt_kernel.exactlin import BasisIndex, sdm
from lqt_kernel.exceptions import SchemaError
from lqt_kernel.gradedhopf import DualLabel
from lqt_kernel.quivers import Arrow
from lqt_kernel.schema import parse_instance


def _nonzero(t):
    return {k: v for k, v in t.items() if v}


@pytest.fixture(scope="module")
def one_loop_spec():
    return parse_instance({"group": "trivial", "bimodule": {"ramification": {"0": 1}}, "max_degree": 3, "level": 1})


@pytest.fixture(scope="module")
def one_loop_document(one_loop_lqt, one_loop_spec):
    return json.loads(dumps(bundle_document(one_loop_lqt, one_loop_spec)))


# ═══════════════════════════════════════════════════
# Labels
# ═══════════════════════════════════════════════════


def test_encode_arrow_label():
    assert encode_label(Arrow(0, 1, 2)) == {"arrow": [0, 1, 2]}
    assert encode_label(3) == 3


def test_nested_labels_decode_back():
    label = (DualLabel(Arrow(0, 0, 1)), Arrow(1, 0, 0))
    assert decode_label(encode_label(label)) == label
    assert decode_label(encode_label(DualLabel(4))) == DualLabel(4)
    assert decode_label(encode_label("e")) == "e"


def test_boolean_label_rejected():
    with pytest.raises(SchemaError, match="cannot encode"):
        encode_label(True)


@pytest.mark.parametrize("data", [{"vertex": 1}, {"arrow": [0, 1, 0], "dual": 1}, "loop", 1.5])
def test_malformed_label(data):
    with pytest.raises(SchemaError, match="malformed label"):
        decode_label(data)


# ═══════════════════════════════════════════════════
# Documents
# ═══════════════════════════════════════════════════


def test_document_header(one_loop_document):
    doc = one_loop_document
    assert doc["format"] == BUNDLE_FORMAT
    assert doc["version"] == 1
    assert doc["field"] == "QQ"
    assert doc["max_degree"] == 3
    assert doc["dimensions"]["D"] == [1, 2, 3, 4]
    assert sorted(doc["r"]) == ["0", "1"]
    assert doc["instance"]["max_degree"] == 3


def test_documents_are_deterministic(one_loop_lqt, one_loop_spec):
    assert dumps(bundle_document(one_loop_lqt, one_loop_spec)) == dumps(bundle_document(one_loop_lqt, one_loop_spec))


def test_reload_preserves_constants(one_loop_lqt, one_loop_spec, one_loop_document):
    s, spec = read_bundle_document(one_loop_document)
    assert spec == one_loop_spec
    assert s.r[1] == _nonzero(one_loop_lqt.r[1])
    assert s.r_inverse[1] == _nonzero(one_loop_lqt.r_inverse[1])
    assert s.double.double.dims == one_loop_lqt.double.double.dims
    assert s.double.pairing.table == _nonzero(one_loop_lqt.double.pairing.table)
    assert s.copairings[1].tensor == _nonzero(one_loop_lqt.copairings[1].tensor)
    assert s.double.coalgebra.basis.labels == one_loop_lqt.double.coalgebra.basis.labels
    assert s.variant == "path"
    assert s.ledger["aco_by_unit_variant"] == one_loop_lqt.ledger["aco_by_unit_variant"]


def test_write_and_read_file(tmp_path, z2_loops_lqt):
    path = write_bundle(tmp_path / "nested" / "z2.json", z2_loops_lqt)
    s, spec = read_bundle(path)
    assert spec is None
    assert s.double.double.dims == (4, 24, 108)
    assert s.r[1] == _nonzero(z2_loops_lqt.r[1])


def test_wrong_format(one_loop_document):
    with pytest.raises(SchemaError, match="not an lqt-kernel bundle"):
        read_bundle_document({**one_loop_document, "format": "other"})


def test_wrong_version(one_loop_document):
    with pytest.raises(SchemaError, match="unsupported bundle version"):
        read_bundle_document({**one_loop_document, "version": 99})


def test_r_levels_must_match(one_loop_document):
    broken = {**one_loop_document, "r_inverse": {"0": one_loop_document["r_inverse"]["0"]}}
    with pytest.raises(SchemaError, match="same levels"):
        read_bundle_document(broken)


def test_missing_section(tmp_path, one_loop_document):
    doc = dict(one_loop_document)
    del doc["pairing"]
    path = tmp_path / "partial.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(SchemaError, match="bundle is missing"):
        read_bundle(path)


def test_bundle_must_be_object(tmp_path):
    path = tmp_path / "list.json"
    path.write_text("[]", encoding="utf-8")
    with pytest.raises(SchemaError, match="must be a JSON object"):
        read_bundle(path)


def test_malformed_basis_index(one_loop_document):
    doc = json.loads(json.dumps(one_loop_document))
    doc["algebras"]["H"]["unit"] = [[[0], "1"]]
    with pytest.raises(SchemaError, match="malformed basis index"):
        read_bundle_document(doc)


# ═══════════════════════════════════════════════════
# Matrix and tensor export
# ═══════════════════════════════════════════════════


def test_matrix_document(qq):
    m = sdm({0: {1: qq.convert(3)}}, (2, 2), qq)
    doc = matrix_document(m, qq, row_basis=["x", "y"])
    zero = qq.format(qq.zero)
    assert doc["shape"] == [2, 2]
    assert doc["rows"] == [[zero, qq.format(qq.convert(3))], [zero, zero]]
    assert doc["row_basis"] == ["x", "y"]
    assert "col_basis" not in doc


def test_tensor_document_drops_zeros(one_loop_lqt, qq):
    d = one_loop_lqt.double
    e = BasisIndex(0, 0)
    terms = tensor_document({(e, e): qq.one, (e, BasisIndex(1, 0)): qq.zero}, [d.coalgebra, d.algebra])
    assert len(terms) == 1
    (h_part, a_part, scalar) = terms[0]
    assert h_part[0] == [0, 0]
    assert a_part[0] == [0, 0]
    assert scalar == qq.format(qq.one)
