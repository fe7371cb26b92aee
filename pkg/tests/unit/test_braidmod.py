"""
Unit tests for module certificates, braidings, tensor modules, hexagons and coactions.
"""

import pytest

from lqt_kernel.braidmod import (
    FiniteCycleModule,
    braiding_matrix,
    braiding_stability,
    check_braid_relation,
    check_module,
    class_module,
    conjugation_module,
    d0_module_from_yd,
    extend_by_zero,
    hexagon_check,
    tensor_module,
    trivial_module,
    yd_structure,
)
from lqt_kernel.exactlin import BasisIndex, identity, sdm
from lqt_kernel.exceptions import BudgetError, InputError
from lqt_kernel.quivers import cyclic_group, symmetric_group, trivial_group


@pytest.fixture(scope="module")
def s3_conj(s3_double):
    return conjugation_module(s3_double.double, symmetric_group(3))


@pytest.fixture(scope="module")
def s3_transpositions(s3_double):
    return class_module(s3_double.double, symmetric_group(3), 1)


# ═══════════════════════════════════════════════════
# Certificates
# ═══════════════════════════════════════════════════


def test_certificate_bound_count(qq):
    with pytest.raises(InputError, match="2 cycle bounds for dimension 1"):
        FiniteCycleModule("m", qq, ("x",), {}, (0, 0))


def test_certificate_negative_bound(qq):
    with pytest.raises(InputError, match="non-negative"):
        FiniteCycleModule("m", qq, ("x",), {}, (-1,))


def test_certificate_matrix_shape(qq):
    wrong = sdm({}, (2, 2), qq)
    with pytest.raises(InputError, match="has shape"):
        FiniteCycleModule("m", qq, ("x",), {BasisIndex(0, 0): wrong}, (0,))


def test_act_skips_vectors_above_their_bound(qq):
    m = FiniteCycleModule("m", qq, ("x",), {}, (0,), cap=0)
    assert m.act(BasisIndex(2, 0), {0: qq.one}) == {}


def test_act_refuses_unsupported_degree(qq):
    m = FiniteCycleModule("m", qq, ("x",), {}, (1,), cap=0)
    with pytest.raises(BudgetError, match="no action matrices above degree 0"):
        m.act(BasisIndex(1, 0), {0: qq.one})


def test_trivial_module_checks(one_loop_lqt):
    m = trivial_module(one_loop_lqt.double)
    report = check_module(m, one_loop_lqt.double)
    assert report.passed, report.summary()
    assert report.names() == ["unit", "relations", "vanishing", "grading"]
    assert m.cap == 3


def test_conjugation_module_checks(s3_double, s3_conj):
    report = check_module(s3_conj, s3_double.double)
    assert report.passed, report.summary()
    assert report.ledger["scope"] == "degree-0 subalgebra only"
    assert s3_conj.name == "conj(S3)"
    assert s3_conj.dimension == 6


def test_class_module_members(s3_transpositions):
    assert s3_transpositions.dimension == 3
    assert s3_transpositions.name == "class(S3,1)"
    assert s3_transpositions.notes["grading"] == [1, 2, 5]


def test_class_module_unknown_element(s3_double):
    with pytest.raises(InputError, match="not an element"):
        class_module(s3_double.double, symmetric_group(3), 9)


# ═══════════════════════════════════════════════════
# Yetter-Drinfeld data validation
# ═══════════════════════════════════════════════════


def test_yd_missing_action(z2_double):
    with pytest.raises(InputError, match="no action matrix for group element 1"):
        d0_module_from_yd(z2_double.double, cyclic_group(2), [0], {0: [[1]]})


def test_yd_identity_must_act_trivially(z2_double):
    with pytest.raises(InputError, match="identity does not act"):
        d0_module_from_yd(z2_double.double, cyclic_group(2), [0], {0: [[2]], 1: [[1]]})


def test_yd_not_a_representation(z2_double):
    with pytest.raises(InputError, match="not a representation"):
        d0_module_from_yd(z2_double.double, cyclic_group(2), [0], {0: [[1]], 1: [[2]]})


def test_yd_grading_violation(s3_double):
    s3 = symmetric_group(3)
    trivial_action = {g: [[1 if r == c else 0 for c in range(6)] for r in range(6)] for g in s3.elements}
    with pytest.raises(InputError, match="outside degree"):
        d0_module_from_yd(s3_double.double, s3, list(s3.elements), trivial_action)


def test_yd_grading_value_out_of_range(z2_double):
    with pytest.raises(InputError, match="not an element of Z2"):
        d0_module_from_yd(z2_double.double, cyclic_group(2), [3], {0: [[1]], 1: [[1]]})


# ═══════════════════════════════════════════════════
# Extension by zero
# ═══════════════════════════════════════════════════


def test_extend_by_zero_breaks_relations(z2_swap_lqt, qq):
    d = z2_swap_lqt.double
    sign = d0_module_from_yd(d, cyclic_group(2), [0], {0: [[1]], 1: [[-1]]}, name="sign")
    assert check_module(sign, d).passed
    extended = extend_by_zero(sign, d)
    assert extended.name == "sign+0"
    assert not extended.degree0_only
    report = check_module(extended, d)
    relations = report.check("relations")
    assert relations.status == "fail"
    assert relations.witnesses
    assert report.check("vanishing").passed


# ═══════════════════════════════════════════════════
# Braidings
# ═══════════════════════════════════════════════════


def test_trivial_braiding_is_identity(one_loop_lqt):
    m = trivial_module(one_loop_lqt.double)
    op = braiding_matrix(one_loop_lqt, m, m)
    field = m.field
    assert op.level == 1
    assert op.matrix.shape == (1, 1)
    assert op.matrix[0][0] == field.one


def test_trivial_braiding_needs_level_one(z2_double):
    m = trivial_module(z2_double.double)
    with pytest.raises(BudgetError, match="needs R_1"):
        braiding_matrix(z2_double, m, m)


def test_z2_conjugation_braiding_is_flip(z2_double):
    m = conjugation_module(z2_double.double, cyclic_group(2))
    op = braiding_matrix(z2_double, m, m)
    flip = {y * 2 + x: {x * 2 + y: m.field.one} for x in range(2) for y in range(2)}
    assert dict(op.matrix) == flip
    assert op.level == 0


def test_s3_conjugation_braiding(s3_double, s3_conj):
    s3 = symmetric_group(3)
    op = braiding_matrix(s3_double, s3_conj, s3_conj)
    expected = {
        h * 6 + s3.conjugate(h, g): {g * 6 + h: s3_conj.field.one} for g in s3.elements for h in s3.elements
    }
    assert dict(op.matrix) == expected
    assert op.inverse.matmul(op.matrix) == identity(36, s3_conj.field)


def test_s3_braid_relation(s3_double, s3_conj, s3_transpositions):
    c_uv = braiding_matrix(s3_double, s3_transpositions, s3_conj)
    c_uw = braiding_matrix(s3_double, s3_transpositions, s3_transpositions)
    c_vw = braiding_matrix(s3_double, s3_conj, s3_transpositions)
    assert check_braid_relation(c_uv, c_uw, c_vw).passed


def test_braid_relation_shape_mismatch(s3_double, s3_conj, s3_transpositions):
    c_uv = braiding_matrix(s3_double, s3_transpositions, s3_conj)
    with pytest.raises(InputError, match="do not share modules"):
        check_braid_relation(c_uv, c_uv, c_uv)


def test_braiding_stability_across_levels(one_loop_lqt):
    d = one_loop_lqt.double
    m = d0_module_from_yd(d, trivial_group(), [0], {0: [[1]]}, name="k0")
    report = braiding_stability(one_loop_lqt, m, m)
    check = report.check("level-stability")
    assert check.status == "pass"
    assert check.attempted == 1


def test_braiding_stability_without_higher_levels(one_loop_lqt):
    m = trivial_module(one_loop_lqt.double)
    assert braiding_stability(one_loop_lqt, m, m).check("level-stability").status == "skipped"


# ═══════════════════════════════════════════════════
# Tensor modules and hexagons
# ═══════════════════════════════════════════════════


def test_tensor_of_trivial_modules(one_loop_lqt):
    d = one_loop_lqt.double
    m = trivial_module(d)
    t = tensor_module(m, m, d)
    assert t.name == "trivial⊗trivial"
    assert t.cycle_bounds == (0,)
    assert t.notes["assigned_bounds"] == [0]
    assert check_module(t, d).passed


def test_tensor_of_degree0_modules(s3_double, s3_conj, s3_transpositions):
    t = tensor_module(s3_transpositions, s3_conj, s3_double.double)
    assert t.degree0_only
    assert t.dimension == 18
    assert check_module(t, s3_double.double).passed


def test_hexagons_on_s3(s3_double, s3_conj, s3_transpositions):
    report = hexagon_check(s3_double, s3_transpositions, s3_conj, s3_transpositions)
    assert report.check("hexagon-left").status == "pass"
    assert report.check("hexagon-right").status == "pass"


def test_naturality_of_inclusion(s3_double, s3_conj, s3_transpositions):
    members = [1, 2, 5]
    inclusion = [[1 if members[c] == r else 0 for c in range(3)] for r in range(6)]
    eye = [[1 if r == c else 0 for c in range(6)] for r in range(6)]
    report = hexagon_check(
        s3_double,
        s3_transpositions,
        s3_conj,
        s3_transpositions,
        naturality=(s3_conj, s3_conj, inclusion, eye),
    )
    assert report.check("naturality").status == "pass"


def test_naturality_detects_non_equivariant_map(s3_double, s3_conj, s3_transpositions):
    shift = [[1 if r == (c + 1) % 3 else 0 for c in range(3)] for r in range(3)]
    eye = [[1 if r == c else 0 for c in range(6)] for r in range(6)]
    report = hexagon_check(
        s3_double,
        s3_transpositions,
        s3_conj,
        s3_transpositions,
        naturality=(s3_transpositions, s3_conj, shift, eye),
    )
    assert report.check("naturality").status == "fail"


# ═══════════════════════════════════════════════════
# Coactions
# ═══════════════════════════════════════════════════


def test_trivial_coaction(one_loop_lqt):
    yd = yd_structure(one_loop_lqt, trivial_module(one_loop_lqt.double))
    D = one_loop_lqt.double.double
    assert yd.levels == (0,)
    assert yd.coaction[0] == {(index, 0): c for index, c in D.unit.items()}
    assert yd.report.passed
    assert yd.report.ledger["yd_convention"] == "left-left"
    assert yd.report.check("level-stability").status == "pass"


def test_conjugation_coaction_laws(s3_double, s3_conj):
    yd = yd_structure(s3_double, s3_conj)
    assert yd.report.check("coaction-counit").status == "pass"
    assert yd.report.check("coaction-coassociativity").status == "pass"
    assert yd.report.check("level-stability").status == "skipped"
    assert yd.report.ledger["yd_convention"] in ("left-left", "mismatch")
