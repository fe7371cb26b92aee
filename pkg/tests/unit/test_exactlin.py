"""
Unit tests for exact scalars, sparse vectors and the linear solver.
"""

from fractions import Fraction

import pytest

from lqt_kernel.exactlin import (
    BasisIndex,
    Field,
    IndexSpace,
    SparseTensor,
    SparseVector,
    add_scaled,
    first_difference,
    identity,
    invert_matrix,
    kron,
    matrices_equal,
    nullspace_basis,
    sdm,
    solve_linear,
    tensor,
)
from lqt_kernel.exceptions import (
    CharacteristicError,
    InfeasibleSystemError,
    InputError,
    SpaceMismatchError,
)

SPACE = IndexSpace("V", (1, 2))
OTHER = IndexSpace("W", (1, 2))


# ═══════════════════════════════════════════════════
# Ground fields
# ═══════════════════════════════════════════════════


def test_rationals_name():
    assert Field.rationals().name == "QQ"
    assert Field.rationals().characteristic == 0


def test_prime_field_name():
    assert Field.prime(7).name == "GF(7)"


def test_characteristic_two_rejected():
    with pytest.raises(CharacteristicError, match="characteristic 2"):
        Field.prime(2)


def test_non_prime_rejected():
    with pytest.raises(CharacteristicError, match="not a prime"):
        Field.prime(9)


@pytest.mark.parametrize(
    "text,expected",
    [(None, 0), ("QQ", 0), ("rational", 0), (0, 0), ("GF(5)", 5), ("prime:7", 7), ("3", 3), (11, 11)],
)
def test_parse_field(text, expected):
    assert Field.parse(text).characteristic == expected


def test_parse_field_garbage():
    with pytest.raises(InputError, match="Unrecognised field"):
        Field.parse("reals")


def test_convert_fraction_string():
    qq = Field.rationals()
    assert qq.format(qq.convert("3/6")) == "1/2"
    assert qq.format(qq.convert(Fraction(-2, 4))) == "-1/2"


def test_convert_modular():
    gf5 = Field.prime(5)
    assert gf5.format(gf5.convert(7)) == 2
    assert gf5.format(gf5.convert("1/2")) == 3


def test_convert_zero_denominator_mod_p():
    with pytest.raises(InputError, match="Denominator"):
        Field.prime(5).convert("1/5")


def test_convert_rejects_bool():
    with pytest.raises(InputError):
        Field.rationals().convert(True)


# ═══════════════════════════════════════════════════
# Sparse vectors and tensors
# ═══════════════════════════════════════════════════


def test_sparse_vector_prunes_zeros():
    qq = Field.rationals()
    v = SparseVector(SPACE, {(0, 0): qq.zero, (1, 1): qq.one})
    assert list(v.entries) == [BasisIndex(1, 1)]
    assert v[BasisIndex(0, 0)] == 0


def test_sparse_vector_bad_index():
    with pytest.raises(SpaceMismatchError, match="not valid"):
        SparseVector(SPACE, {(2, 0): 1})


def test_add_scaled_cancels():
    qq = Field.rationals()
    v = SparseVector(SPACE, {(1, 0): qq.one})
    w = SparseVector(SPACE, {(1, 0): qq.convert(2)})
    assert add_scaled(v, w, qq.convert("-1/2")).is_zero()


def test_add_scaled_space_mismatch():
    qq = Field.rationals()
    v = SparseVector(SPACE, {(1, 0): qq.one})
    w = SparseVector(OTHER, {(1, 0): qq.one})
    with pytest.raises(SpaceMismatchError):
        add_scaled(v, w, qq.one)


def test_tensor_concatenates_factors():
    qq = Field.rationals()
    v = SparseVector(SPACE, {(0, 0): qq.convert(2), (1, 1): qq.one})
    w = SparseVector(OTHER, {(1, 0): qq.convert(3)})
    t = tensor(v, w)
    assert t.arity == 2
    assert t.entries[(BasisIndex(0, 0), BasisIndex(1, 0))] == qq.convert(6)
    assert tensor(t, w).arity == 3


def test_tensor_arity_limit():
    with pytest.raises(InputError, match="arity"):
        SparseTensor((SPACE,) * 5, {})


# ═══════════════════════════════════════════════════
# Solving
# ═══════════════════════════════════════════════════


def test_solve_linear_unique():
    qq = Field.rationals()
    rows = [
        (SparseVector(SPACE, {(1, 0): qq.one, (1, 1): qq.one}), 3),
        (SparseVector(SPACE, {(1, 0): qq.one, (1, 1): -qq.one}), 1),
    ]
    x = solve_linear(rows, qq)
    assert x[BasisIndex(1, 0)] == qq.convert(2)
    assert x[BasisIndex(1, 1)] == qq.one


def test_solve_linear_free_variables_zero():
    qq = Field.rationals()
    rows = [(SparseVector(SPACE, {(1, 0): qq.one, (1, 1): qq.one}), 4)]
    x = solve_linear(rows, qq)
    assert x[BasisIndex(1, 0)] == qq.convert(4)
    assert x[BasisIndex(1, 1)] == 0


def test_solve_linear_infeasible():
    qq = Field.rationals()
    row = SparseVector(SPACE, {(0, 0): qq.one})
    with pytest.raises(InfeasibleSystemError):
        solve_linear([(row, 1), (row, 2)], qq)


def test_solve_linear_needs_rows():
    with pytest.raises(InputError):
        solve_linear([], Field.rationals())


def test_solve_linear_over_gf5():
    gf5 = Field.prime(5)
    rows = [(SparseVector(SPACE, {(0, 0): gf5.convert(2)}), 1)]
    assert gf5.format(solve_linear(rows, gf5)[BasisIndex(0, 0)]) == 3


def test_nullspace_basis():
    qq = Field.rationals()
    basis = nullspace_basis([{0: qq.one, 1: qq.one}], 3, qq)
    assert len(basis) == 2
    for vector in basis:
        assert vector.get(0, 0) + vector.get(1, 0) == 0


# ═══════════════════════════════════════════════════
# Matrices
# ═══════════════════════════════════════════════════


def test_invert_matrix():
    qq = Field.rationals()
    inverse = invert_matrix({0: {0: qq.one, 1: qq.one}, 1: {1: qq.one}}, 2, qq)
    assert inverse == {0: {0: qq.one, 1: -qq.one}, 1: {1: qq.one}}


def test_invert_singular():
    qq = Field.rationals()
    with pytest.raises(InfeasibleSystemError, match="singular"):
        invert_matrix({0: {0: qq.one, 1: qq.one}, 1: {0: qq.one, 1: qq.one}}, 2, qq)


def test_kron_with_identity():
    qq = Field.rationals()
    a = sdm({0: {1: qq.one}, 1: {0: qq.one}}, (2, 2), qq)
    product = kron(a, identity(2, qq))
    assert product.shape == (4, 4)
    assert product[0][2] == qq.one
    assert product[3][1] == qq.one


def test_first_difference():
    qq = Field.rationals()
    a = identity(2, qq)
    b = sdm({0: {0: qq.one}}, (2, 2), qq)
    assert not matrices_equal(a, b)
    assert first_difference(a, b) == (1, 1)
    assert first_difference(a, identity(2, qq)) is None
