"""
Unit tests for skew pairings, copairings, the double cross product and R_n.
"""

from dataclasses import replace

import pytest

from lqt_kernel import lqt
from lqt_kernel.exactlin import BasisIndex, Field, invert_matrix
from lqt_kernel.exceptions import BudgetError, InputError, VerificationError
from lqt_kernel.lqt import (
    ACO_CHECKS,
    TRUNCATED_COMPARISON,
    build_lqt,
    build_r,
    canonical_copairing,
    copairing_increment,
    double_cross_product,
    group_double,
    lqt_from_bimodule,
    path_double,
    quiver_lqt,
    quiver_skew_pairing,
    qybe_defect,
    verify_copairing,
    verify_double,
    verify_lqt,
    verify_skew_pairing,
)

HARD_LQT_CHECKS = ("CP1", "CP2", "CP3", "CP4", "dual-basis-A", "dual-basis-H", "LQT4'")


# ═══════════════════════════════════════════════════
# Dimensions
# ═══════════════════════════════════════════════════


def test_one_loop_double_dimensions(one_loop_lqt):
    assert one_loop_lqt.double.double.dims == (1, 2, 3, 4)
    assert sum(one_loop_lqt.double.double.dims) == 10
    assert one_loop_lqt.level == 1
    assert one_loop_lqt.truncation == 3


def test_z2_loops_double_dimensions(z2_loops_lqt):
    dims = z2_loops_lqt.double.double.dims
    assert dims == (4, 24, 108)
    assert sum(dims) == 136


def test_group_double_dimension(s3_double):
    assert s3_double.double.double.dims == (36,)


# ═══════════════════════════════════════════════════
# Skew pairing and copairing
# ═══════════════════════════════════════════════════


def test_skew_pairing_axioms(z2_loops_lqt):
    report = verify_skew_pairing(z2_loops_lqt.double.pairing)
    assert report.passed, report.summary()
    assert report.names() == ["SP1", "SP2", "SP3", "SP4", "tau-inverse-convolution"]


def test_quiver_skew_pairing_is_reproducible(one_loop_lqt):
    d = one_loop_lqt.double
    tau = quiver_skew_pairing(d.algebra, d.coalgebra)
    assert dict(tau.table) == dict(d.pairing.table)
    assert dict(tau.inverse) == dict(d.pairing.inverse)


def test_path_copairing_is_sum_of_dual_pairs(one_loop_lqt):
    p = one_loop_lqt.copairings[1]
    field = one_loop_lqt.double.double.field
    assert len(p.terms()) == 2
    assert all(c == field.one for _, _, c in p.terms())
    assert all(h.degree == a.degree for h, a, _ in p.terms())


def test_copairing_reuses_gram_inverses(one_loop_lqt, monkeypatch):
    tau = replace(one_loop_lqt.double.pairing)
    calls = []

    def counting(*args):
        calls.append(args[1])
        return invert_matrix(*args)

    monkeypatch.setattr(lqt, "invert_matrix", counting)
    first = canonical_copairing(tau, 1)
    assert canonical_copairing(tau, 1).tensor == first.tensor
    copairing_increment(tau, 1)
    assert len(calls) == 3
    assert first.tensor == one_loop_lqt.copairings[1].tensor


def test_copairing_checks(z2_loops_lqt):
    report = verify_copairing(z2_loops_lqt.copairings[1])
    assert report.passed, report.summary()


def test_copairing_budget(one_loop_lqt):
    with pytest.raises(BudgetError, match="need N >= 4"):
        verify_copairing(canonical_copairing(one_loop_lqt.double.pairing, 2))


def test_copairing_level_beyond_truncation(one_loop_lqt):
    with pytest.raises(BudgetError) as info:
        canonical_copairing(one_loop_lqt.double.pairing, 4)
    assert info.value.required == 4


def test_copairing_increment_is_homogeneous(z2_loops_lqt):
    w = copairing_increment(z2_loops_lqt.double.pairing, 1)
    assert w
    assert all(h.degree == 2 and a.degree == 2 for h, a in w)


# ═══════════════════════════════════════════════════
# Double cross product
# ═══════════════════════════════════════════════════


def test_double_cross_product_rebuilds(one_loop_lqt):
    d = one_loop_lqt.double
    rebuilt = double_cross_product(d.algebra, d.coalgebra, d.pairing)
    assert rebuilt.double.dims == d.double.dims
    assert len(rebuilt.index) == sum(d.double.dims)


def test_double_cross_product_needs_invertible_antipodes(one_loop_lqt):
    d = one_loop_lqt.double
    with pytest.raises(InputError, match="invertible antipode"):
        double_cross_product(replace(d.algebra, antipode_inverse=None), d.coalgebra, d.pairing)


def test_double_passes_hopf_axioms(one_loop_lqt):
    report = verify_double(one_loop_lqt.double)
    assert report.passed, report.summary()
    for name in ("product-formula", "weight-grading", "embedding-A", "embedding-H", "antipode-left"):
        assert report.check(name).attempted > 0


def test_double_unit_and_embeddings(z2_loops_lqt):
    d = z2_loops_lqt.double
    D = d.double
    assert D.unit == d.embed(d.algebra.unit, d.coalgebra.unit)
    x = BasisIndex(1, 0)
    assert D.mul(d.from_h({x: D.field.one}), D.one()) == d.from_h({x: D.field.one})


def test_cross_relation_preserves_weight(z2_loops_lqt):
    d = z2_loops_lqt.double
    h = BasisIndex(1, 0)
    b = BasisIndex(1, 3)
    for (a2, h2) in d.cross(h, b):
        assert a2.degree - h2.degree == b.degree - h.degree


# ═══════════════════════════════════════════════════
# R-matrices and verification
# ═══════════════════════════════════════════════════


def test_r_has_units_on_outer_slots(z2_loops_lqt):
    d = z2_loops_lqt.double
    for (x, y) in z2_loops_lqt.r_at(1):
        assert d.split(x)[0].degree == 0
        assert d.split(y)[1].degree == 0


def test_r_at_missing_level(z2_loops_lqt):
    with pytest.raises(BudgetError, match="R_2 is not available"):
        z2_loops_lqt.r_at(2)


@pytest.mark.parametrize("n", [0, 1])
def test_one_loop_lqt_passes(one_loop_lqt, n):
    report = verify_lqt(one_loop_lqt, n)
    for name in HARD_LQT_CHECKS + ("level-coherence",):
        assert report.check(name).passed, report.summary()
    assert report.check("ACO").status == "pass"
    assert report.ledger["unit_variant"] == "unit"


def test_one_loop_arbitration_ledger(one_loop_lqt):
    assert one_loop_lqt.ledger["aco_by_unit_variant"] == {"unit": "pass", "single": "pass"}
    assert one_loop_lqt.ledger["variant"] == "path"


@pytest.mark.parametrize("fixture", ["z2_loops_lqt", "z2_loops_semipath"])
@pytest.mark.parametrize("n", [0, 1])
def test_z2_loops_passes_every_check(fixture, n, request):
    s = request.getfixturevalue(fixture)
    report = verify_lqt(s, n)
    assert report.passed, report.summary()
    for name in HARD_LQT_CHECKS + ACO_CHECKS:
        assert report.check(name).status == "pass", name
    assert report.ledger["aco_truncation"] == TRUNCATED_COMPARISON


@pytest.mark.parametrize("fixture", ["z2_loops_lqt", "z2_loops_semipath"])
def test_z2_loops_arbitration_ledger(fixture, request):
    s = request.getfixturevalue(fixture)
    assert s.unit_variant == "unit"
    assert s.ledger["aco_by_unit_variant"]["unit"] == "pass"
    assert set(s.ledger["aco_by_unit_variant"]) == {"unit", "single"}
    assert s.ledger["aco_truncation"] == TRUNCATED_COMPARISON


def test_z2_swap_aco_in_truncation(z2_swap_lqt):
    report = verify_lqt(z2_swap_lqt, 0)
    for name in ACO_CHECKS:
        assert report.check(name).status == "pass", name


def test_aco_checks_are_named_in_report(z2_loops_lqt):
    checks = {c.name: c for c in verify_lqt(z2_loops_lqt, 1).checks}
    for name in ACO_CHECKS:
        assert checks[name].note == "compared in degrees <= n"


def test_requested_unit_variant_must_pass(s3):
    with pytest.raises(VerificationError, match="level 0") as info:
        group_double(s3, Field.rationals(), unit_variant="single")
    assert info.value.check.name in ACO_CHECKS + ("R-inverse",)


def test_verify_lqt_budget(z2_loops_lqt):
    with pytest.raises(BudgetError, match="needs N >= 4"):
        verify_lqt(z2_loops_lqt, 2)


def test_level_coherence_skipped_at_top(one_loop):
    s = path_double(one_loop, max_degree=2, level=1, verify=False)
    report = verify_lqt(s, 1)
    assert report.check("LQT4'").status == "pass"
    top = path_double(one_loop, max_degree=0, level=0, verify=False)
    assert verify_lqt(top, 0).check("level-coherence").status == "skipped"


@pytest.mark.parametrize("fixture", ["s3_double", "z3_double", "z2_double"])
def test_group_double_is_quasitriangular(fixture, request):
    s = request.getfixturevalue(fixture)
    report = verify_lqt(s, 0)
    assert report.passed, report.summary()
    defect, lowest = qybe_defect(s, 0)
    assert defect == {}
    assert lowest is None


def test_qybe_defect_vanishes_on_commutative_double(one_loop_lqt):
    # one loop over the trivial group: D is commutative
    defect, lowest = qybe_defect(one_loop_lqt, 1)
    assert defect == {}
    assert lowest is None


def test_qybe_budget(z2_loops_lqt):
    with pytest.raises(BudgetError, match="needs N >= 3"):
        qybe_defect(z2_loops_lqt, 1)


# ═══════════════════════════════════════════════════
# Unit variants and builders
# ═══════════════════════════════════════════════════


def test_single_variant_equals_unit_on_trivial_group(one_loop_lqt):
    single = build_lqt(one_loop_lqt.double, 1, "single", "path", strict=False)
    assert single.r == one_loop_lqt.r


def test_single_variant_differs_over_z2(z2_loops_lqt):
    single = build_lqt(z2_loops_lqt.double, 1, "single", "path", strict=False)
    assert single.r[1] != z2_loops_lqt.r[1]


def test_unknown_unit_variant(z2_loops_lqt):
    with pytest.raises(InputError, match="Unknown unit variant"):
        build_r(z2_loops_lqt.double, z2_loops_lqt.copairings[0], "double")


def test_unknown_variant(one_loop):
    with pytest.raises(InputError, match="Unknown variant"):
        quiver_lqt(one_loop, 1, 0, variant="loop")


def test_level_above_max_degree(one_loop):
    with pytest.raises(BudgetError, match="needs max degree"):
        lqt_from_bimodule(one_loop.base, one_loop, 1, 2)
