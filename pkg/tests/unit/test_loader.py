"""
Unit tests for the instance loader and its registry.
"""

import logging

import pytest

from lqt_kernel import loader
from lqt_kernel.braidmod import check_module
from lqt_kernel.exceptions import BimoduleAxiomError, InputError
from lqt_kernel.loader import (
    instance_bimodule,
    instance_group,
    instance_lqt,
    instance_modules,
    load_instance,
    register_instance,
)
from lqt_kernel.quivers import Arrow, cyclic_group, trivial_group
from lqt_kernel.schema import parse_instance, parse_modules


@pytest.fixture
def clean_registry():
    saved = {kind: dict(table) for kind, table in loader._REGISTRY.items()}
    yield loader._REGISTRY
    for kind, table in saved.items():
        loader._REGISTRY[kind].clear()
        loader._REGISTRY[kind].update(table)


def _swap_entries(side):
    """Translation of the two arrows of the Z2 swap quiver by both group elements."""
    arrows = [[0, 1, 0], [1, 0, 0]]
    entries = []
    for element in (0, 1):
        for k, arrow in enumerate(arrows):
            image = arrow if element == 0 else arrows[1 - k]
            entries.append({"element": element, "arrow": arrow, "image": [[1, image]]})
    return {side: entries}


# ═══════════════════════════════════════════════════
# Factory
# ═══════════════════════════════════════════════════


def test_load_builtin_group():
    group = load_instance("group", {"type": "cyclic", "n": 4})
    assert group.order == 4


def test_load_table_group():
    group = load_instance("group", {"type": "table", "table": [[0, 1], [1, 0]], "name": "C2"})
    assert group.name == "C2"
    assert group.order == 2


def test_load_missing_type():
    with pytest.raises(InputError, match="Config must include 'type' key specifying the group type"):
        load_instance("group", {})


def test_load_unknown_type():
    with pytest.raises(InputError, match="Unknown module type: 'spin'. Available: "):
        load_instance("module", {"type": "spin"})


def test_load_unknown_kind():
    with pytest.raises(InputError, match="Unknown kind"):
        load_instance("algebra", {"type": "trivial"})


def test_loader_errors_are_value_errors():
    with pytest.raises(ValueError):
        load_instance("group", {"type": "nope"})


# ═══════════════════════════════════════════════════
# Registry
# ═══════════════════════════════════════════════════


def test_register_custom_group(clean_registry):
    @register_instance("group", "z5")
    def z5(**_):
        return cyclic_group(5)

    assert load_instance("group", {"type": "z5"}).order == 5
    with pytest.raises(InputError, match="z5"):
        load_instance("group", {"type": "z6"})


def test_registry_shadows_builtins(clean_registry):
    register_instance("group", "trivial")(lambda **_: cyclic_group(3))
    assert load_instance("group", {"type": "trivial"}).order == 3


def test_register_overwrite_warns(clean_registry, caplog):
    register_instance("group", "twice")(lambda **_: trivial_group())
    with caplog.at_level(logging.WARNING, logger="lqt_kernel.loader"):
        register_instance("group", "twice")(lambda **_: cyclic_group(2))
    assert "Overwriting registered group builder 'twice'" in caplog.text


def test_register_unknown_kind():
    with pytest.raises(ValueError, match="Unknown kind"):
        register_instance("quiver", "x")


# ═══════════════════════════════════════════════════
# Instance specs
# ═══════════════════════════════════════════════════


def test_z2_loops_instance_forces_group():
    spec = parse_instance({"bimodule": {"type": "z2-loops"}})
    assert instance_group(spec).order == 2
    m = instance_bimodule(spec)
    assert len(m.labels) == 6


def test_permutation_instance():
    spec = parse_instance({"group": "S3", "bimodule": {"ramification": {"1": 1}}, "max_degree": 1})
    m = instance_bimodule(spec)
    assert len(m.labels) == 18
    assert m.name == "kQ1(S3)"


def test_table_instance():
    bimodule = {"type": "table", "ramification": {"1": 1}, "name": "swap"}
    bimodule.update(_swap_entries("left"))
    bimodule.update(_swap_entries("right"))
    m = instance_bimodule(parse_instance({"group": "Z2", "bimodule": bimodule}))
    assert m.name == "swap"
    assert set(m.labels) == {Arrow(0, 1, 0), Arrow(1, 0, 0)}


def test_table_instance_missing_entries_fail_axioms():
    bimodule = {"type": "table", "ramification": {"1": 1}}
    bimodule.update(_swap_entries("left"))
    bimodule["right"] = [{"element": 0, "arrow": [0, 1, 0], "image": [[1, [0, 1, 0]]]}]
    with pytest.raises(BimoduleAxiomError):
        instance_bimodule(parse_instance({"group": "Z2", "bimodule": bimodule}))


def test_table_instance_unknown_arrow():
    bimodule = {"type": "table", "ramification": {"1": 1}}
    bimodule["left"] = [{"element": 0, "arrow": [0, 0, 0], "image": []}]
    bimodule["right"] = []
    with pytest.raises(InputError, match="is not an arrow of the quiver"):
        instance_bimodule(parse_instance({"group": "Z2", "bimodule": bimodule}))


def test_instance_lqt_ledger():
    spec = parse_instance({"bimodule": {"type": "z2-loops"}, "max_degree": 1, "level": 0})
    s = instance_lqt(spec)
    assert s.ledger["field"] == "QQ"
    assert s.ledger["group"] == "Z2"
    assert s.double.double.dims == (4, 24)


# ═══════════════════════════════════════════════════
# Module certificates
# ═══════════════════════════════════════════════════


def test_builtin_modules(s3_double, s3):
    specs = parse_modules(["trivial", "conjugation", "class:1"])
    modules = instance_modules(specs, s3_double.double, s3)
    assert [m.name for m in modules] == ["trivial", "conj(S3)", "class(S3,1)"]


def test_matrix_certificate(one_loop_lqt):
    specs = parse_modules(
        {"type": "matrices", "name": "k", "basis": ["x"], "cycle_bounds": [0], "cap": 0,
         "matrices": [{"d": [0, 0], "rows": [[1]]}]}
    )
    (m,) = instance_modules(specs, one_loop_lqt.double, trivial_group())
    assert m.name == "k"
    report = check_module(m, one_loop_lqt.double)
    assert report.check("unit").passed
    assert report.check("relations").passed


def test_matrix_certificate_outside_double(one_loop_lqt):
    specs = parse_modules(
        {"type": "matrices", "basis": ["x"], "cycle_bounds": [0], "matrices": [{"d": [0, 5], "rows": [[1]]}]}
    )
    with pytest.raises(InputError, match="is not a basis element of D"):
        instance_modules(specs, one_loop_lqt.double, trivial_group())


def test_matrix_certificate_shape(one_loop_lqt):
    specs = parse_modules(
        {"type": "matrices", "basis": ["x"], "cycle_bounds": [0], "matrices": [{"d": [0, 0], "rows": [[1, 0]]}]}
    )
    with pytest.raises(InputError, match="must be 1x1"):
        instance_modules(specs, one_loop_lqt.double, trivial_group())


def test_yd_certificate_sign_module(s3_double, s3):
    specs = parse_modules(
        {"type": "yd", "name": "sign@e", "grading": [0],
         "action": {"0": [[1]], "1": [[-1]], "2": [[-1]], "3": [[1]], "4": [[1]], "5": [[-1]]}}
    )
    (m,) = instance_modules(specs, s3_double.double, s3)
    assert m.name == "sign@e"
    assert m.degree0_only
    assert check_module(m, s3_double.double).passed
