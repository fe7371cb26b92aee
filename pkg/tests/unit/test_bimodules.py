"""
Unit tests for Hopf bimodule assembly, verification and duality.
"""

from dataclasses import replace

import pytest

from lqt_kernel.bimodules import (
    arrow_comodule,
    arrow_module,
    assemble_hopf_bimodule,
    dualize_bimodule,
    permutation_actions,
    permutation_bimodule,
    require_verified,
    sign_character,
    verify_bimodule,
    z2_loops_bimodule,
)
from lqt_kernel.exactlin import Field
from lqt_kernel.exceptions import BimoduleAxiomError, CharacteristicError, InputError
from lqt_kernel.gradedhopf import DualLabel
from lqt_kernel.quivers import Arrow, Ramification, build_hopf_quiver, cyclic_group, symmetric_group


@pytest.fixture(scope="module")
def swap_quiver():
    group = cyclic_group(2)
    return build_hopf_quiver(group, Ramification(group, {1: 1}))


# ═══════════════════════════════════════════════════
# Arrow structures
# ═══════════════════════════════════════════════════


def test_arrow_comodule_reads_endpoints(swap_quiver, qq):
    comodule = arrow_comodule(swap_quiver, qq)
    a = Arrow(0, 1, 0)
    assert comodule.left_coaction[a] == {(1, a): qq.one}
    assert comodule.right_coaction[a] == {(a, 0): qq.one}


def test_arrow_module_uses_projections(swap_quiver, qq):
    module = arrow_module(swap_quiver, qq)
    star = DualLabel(Arrow(0, 1, 0))
    assert module.left_action[(DualLabel(1), star)] == {star: qq.one}
    assert module.right_action[(star, DualLabel(0))] == {star: qq.one}


def test_sign_character_on_z2(qq):
    assert sign_character(cyclic_group(2), qq) == (qq.one, -qq.one)


def test_sign_character_on_s3(qq):
    sign = sign_character(symmetric_group(3), qq)
    assert sorted(qq.format(v) for v in sign) == ["-1/1"] * 3 + ["1/1"] * 3


def test_no_sign_character_on_z3(qq):
    with pytest.raises(InputError, match="no sign character"):
        sign_character(cyclic_group(3), qq)


# ═══════════════════════════════════════════════════
# Assembly and verification
# ═══════════════════════════════════════════════════


def test_z2_loops_is_verified(z2_loops):
    assert z2_loops.verified
    assert z2_loops.dim == 3
    assert z2_loops.ledger["characters"]["0:2"] == ["1/1", "-1/1"]


def test_z2_loops_report_passes(z2_loops):
    report = verify_bimodule(z2_loops)
    assert report.passed
    assert len(report.checks) == 10


def test_z2_loops_over_gf3():
    m = z2_loops_bimodule(Field.prime(3))
    assert m.ledger["characters"]["0:2"] == [1, 2]


def test_permutation_action_translates_arrows(swap_quiver, qq):
    left, right = permutation_actions(swap_quiver, qq)
    assert left[(1, Arrow(0, 1, 0))] == {Arrow(1, 0, 0): qq.one}
    assert right[(Arrow(1, 0, 0), 1)] == {Arrow(0, 1, 0): qq.one}


def test_unknown_character_key(swap_quiver, qq):
    with pytest.raises(InputError, match="no arrows of class"):
        permutation_actions(swap_quiver, qq, {(0, 0): [1, 1]})


def test_character_wrong_length(swap_quiver, qq):
    with pytest.raises(InputError, match="needs 2 values"):
        permutation_actions(swap_quiver, qq, {(1, 0): [1]})


def test_non_multiplicative_character_rejected(swap_quiver, qq):
    with pytest.raises(BimoduleAxiomError, match="right-module fails"):
        permutation_bimodule(swap_quiver, qq, {(1, 0): [1, 2]})


def test_broken_left_action_rejected(swap_quiver, qq):
    left, right = permutation_actions(swap_quiver, qq)
    left[(1, Arrow(0, 1, 0))] = {Arrow(0, 1, 0): qq.one}
    with pytest.raises(BimoduleAxiomError) as info:
        assemble_hopf_bimodule(swap_quiver, left, right, qq, name="broken")
    assert info.value.check is not None
    assert info.value.check.witnesses


def test_require_verified_rechecks(z2_loops):
    from dataclasses import replace

    unflagged = replace(z2_loops, verified=False)
    assert require_verified(unflagged).verified


def test_characteristic_guard():
    fake = Field(2, Field.rationals().domain)
    with pytest.raises(CharacteristicError):
        z2_loops_bimodule(fake)


# ═══════════════════════════════════════════════════
# Duality
# ═══════════════════════════════════════════════════


def test_dual_bimodule_passes(z2_loops):
    dual = dualize_bimodule(z2_loops)
    assert dual.name == "z2-loops*"
    assert all(isinstance(x, DualLabel) for x in dual.labels)
    assert dual.verified
    assert verify_bimodule(dual).passed


def test_dual_rejects_corrupted_transpose(z2_loops):
    x = z2_loops.labels[0]
    coaction = {k: dict(v) for k, v in z2_loops.left_coaction.items()}
    coaction[x] = {key: 2 * c for key, c in coaction[x].items()}
    broken = replace(z2_loops, left_coaction=coaction, verified=True)
    with pytest.raises(BimoduleAxiomError, match="z2-loops\\*"):
        dualize_bimodule(broken)


def test_double_dual_restores_tables(z2_loops):
    back = dualize_bimodule(dualize_bimodule(z2_loops))
    assert back.name == "z2-loops"
    assert back.labels == z2_loops.labels
    assert back.left_action == z2_loops.left_action
    assert back.right_action == z2_loops.right_action
    assert back.left_coaction == z2_loops.left_coaction
    assert back.right_coaction == z2_loops.right_coaction


def test_swap_dual_passes(swap_quiver, qq):
    m = permutation_bimodule(swap_quiver, qq)
    assert verify_bimodule(dualize_bimodule(m)).passed
