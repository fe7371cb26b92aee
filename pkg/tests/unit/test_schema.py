"""
Unit tests for instance and module-certificate validation.
"""

from pathlib import Path

import pytest

from lqt_kernel.exceptions import InputError, SchemaError
from lqt_kernel.schema import (
    BimoduleSpec,
    FieldSpec,
    GroupSpec,
    ModuleSpec,
    load_instance_file,
    load_module_files,
    parse_instance,
    parse_modules,
    read_json,
)

INSTANCES = Path(__file__).resolve().parents[2] / "instances"


# ═══════════════════════════════════════════════════
# Field and group shorthands
# ═══════════════════════════════════════════════════


@pytest.mark.parametrize(
    "value, characteristic, name",
    [("QQ", 0, "QQ"), (0, 0, "QQ"), ("GF(5)", 5, "GF(5)"), (7, 7, "GF(7)")],
)
def test_field_shorthand(value, characteristic, name):
    spec = FieldSpec.model_validate(value)
    assert spec.characteristic == characteristic
    assert spec.name == name
    assert spec.build().characteristic == characteristic


def test_field_characteristic_two_rejected():
    with pytest.raises(SchemaError, match="instance: field"):
        parse_instance({"field": "GF(2)"})


def test_field_non_prime_rejected():
    with pytest.raises(SchemaError, match="field"):
        parse_instance({"field": 9})


@pytest.mark.parametrize(
    "value, kind, n",
    [("Z2", "cyclic", 2), ("S3", "symmetric", 3), ("cyclic:4", "cyclic", 4), ("V4", "klein", None)],
)
def test_group_shorthand(value, kind, n):
    spec = GroupSpec.model_validate(value)
    assert spec.type == kind
    assert spec.n == n


def test_group_table_shorthand():
    spec = GroupSpec.model_validate([[0, 1], [1, 0]])
    assert spec.type == "table"
    assert spec.config() == {"type": "table", "table": [[0, 1], [1, 0]], "name": "G"}


def test_group_cyclic_needs_order():
    with pytest.raises(SchemaError, match="needs 'n'"):
        parse_instance({"group": {"type": "cyclic"}})


def test_group_table_needs_table():
    with pytest.raises(SchemaError, match="needs a 'table'"):
        parse_instance({"group": {"type": "table"}})


# ═══════════════════════════════════════════════════
# Bimodules and modules
# ═══════════════════════════════════════════════════


def test_character_table_keys():
    spec = BimoduleSpec(ramification={1: 1}, characters={"1:0": [1, -1]})
    assert spec.character_table() == {(1, 0): [1, -1]}


def test_character_key_format():
    with pytest.raises(SchemaError, match="rep:index"):
        parse_instance({"bimodule": {"characters": {"one": [1]}}})


def test_table_bimodule_needs_entries():
    with pytest.raises(SchemaError, match="needs 'left' and 'right'"):
        parse_instance({"bimodule": {"type": "table"}})


def test_ramification_keys_from_json_text():
    spec = parse_instance({"group": "Z2", "bimodule": {"ramification": {"1": 2}}})
    assert spec.bimodule.ramification == {1: 2}


def test_module_class_shorthand():
    spec = ModuleSpec.model_validate("class:1")
    assert spec.type == "class"
    assert spec.representative == 1


def test_module_class_needs_representative():
    with pytest.raises(SchemaError, match="needs 'representative'"):
        parse_modules(["class"])


def test_module_yd_needs_grading_and_action():
    with pytest.raises(SchemaError, match="needs 'grading' and 'action'"):
        parse_modules({"type": "yd", "grading": [0]})


def test_module_matrices_lengths():
    with pytest.raises(SchemaError, match="differ in length"):
        parse_modules({"type": "matrices", "basis": ["x", "y"], "cycle_bounds": [0]})


def test_parse_modules_accepts_wrapped_lists():
    wrapped = parse_modules({"modules": ["trivial", "conjugation"]})
    assert [m.type for m in wrapped] == ["trivial", "conjugation"]
    assert [m.type for m in parse_modules("trivial")] == ["trivial"]


# ═══════════════════════════════════════════════════
# Instances
# ═══════════════════════════════════════════════════


def test_instance_defaults():
    spec = parse_instance({})
    assert spec.max_degree == 2
    assert spec.level == 0
    assert spec.variant == "path"
    assert spec.r_unit_variant == "unit"
    assert spec.group.type == "trivial"


def test_instance_unit_variant_alias():
    assert parse_instance({"r-unit-variant": "single"}).r_unit_variant == "single"


def test_instance_rejects_unknown_keys():
    with pytest.raises(SchemaError, match="Extra inputs"):
        parse_instance({"max_degre": 3})


def test_instance_level_above_truncation():
    with pytest.raises(SchemaError, match="level 3 exceeds max_degree 2"):
        parse_instance({"max_degree": 2, "level": 3})


def test_instance_negative_truncation():
    with pytest.raises(SchemaError, match="max_degree"):
        parse_instance({"max_degree": -1})


def test_instance_unknown_variant():
    with pytest.raises(SchemaError, match="variant"):
        parse_instance({"variant": "loop"})


def test_z2_loops_needs_odd_characteristic():
    with pytest.raises(SchemaError, match="char k != 2"):
        parse_instance({"bimodule": {"type": "z2-loops"}, "field": {"characteristic": 2}})


def test_with_overrides_ignores_none():
    spec = parse_instance({"group": "S3", "bimodule": {"ramification": {"1": 1}}, "max_degree": 1})
    updated = spec.with_overrides(max_degree=3, level=None, field="GF(5)")
    assert updated.max_degree == 3
    assert updated.level == 0
    assert updated.field.characteristic == 5
    assert updated.group == spec.group
    assert updated.bimodule == spec.bimodule


def test_with_overrides_revalidates():
    spec = parse_instance({"max_degree": 1})
    with pytest.raises(SchemaError, match="exceeds max_degree"):
        spec.with_overrides(level=2)


# ═══════════════════════════════════════════════════
# Files
# ═══════════════════════════════════════════════════


def test_read_json_missing_file(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        read_json(tmp_path / "absent.json")


def test_read_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "max_degree": ,\n}\n', encoding="utf-8")
    with pytest.raises(SchemaError, match="line 2, column"):
        read_json(path)


def test_load_instance_file_names_source(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"level": -1}', encoding="utf-8")
    with pytest.raises(SchemaError) as info:
        load_instance_file(path)
    assert str(path) in str(info.value)
    assert "level" in str(info.value)


def test_load_module_files_concatenates(tmp_path):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    first.write_text('["trivial"]', encoding="utf-8")
    second.write_text('{"modules": ["class:1", "conjugation"]}', encoding="utf-8")
    specs = load_module_files([first, second])
    assert [s.type for s in specs] == ["trivial", "class", "conjugation"]


@pytest.mark.parametrize("path", sorted(INSTANCES.glob("*.json")), ids=lambda p: p.stem)
def test_shipped_instances_validate(path):
    spec = load_instance_file(path)
    assert spec.level <= spec.max_degree


def test_shipped_module_certificates_validate():
    specs = load_module_files(sorted((INSTANCES / "modules").glob("*.json")))
    assert [s.type for s in specs] == ["yd", "class"]
    assert specs[0].action[5] == [[-1]]
