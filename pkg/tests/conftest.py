"""Shared fixtures for lqt-kernel tests.

Built instances are module- or session-scoped: constructing a double and its
R-matrices is the expensive step, and every test treats them as read-only.
"""

import pytest

from lqt_kernel import (
    Field,
    Ramification,
    build_hopf_quiver,
    cyclic_group,
    group_double,
    path_double,
    permutation_bimodule,
    semipath_double,
    symmetric_group,
    trivial_group,
    z2_loops_bimodule,
)


def one_loop_bimodule(field):
    """A single loop at the only vertex of the trivial group."""
    group = trivial_group()
    quiver = build_hopf_quiver(group, Ramification(group, {0: 1}))
    return permutation_bimodule(quiver, field, name="one-loop")


def z2_swap_bimodule(field):
    """Z2 with one arrow e -> g and one arrow g -> e (r = 1 on the class of g)."""
    group = cyclic_group(2)
    quiver = build_hopf_quiver(group, Ramification(group, {1: 1}))
    return permutation_bimodule(quiver, field, name="z2-swap")


@pytest.fixture(scope="session")
def qq():
    return Field.rationals()


@pytest.fixture(scope="session")
def gf5():
    return Field.prime(5)


@pytest.fixture(scope="session")
def s3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def z2_loops(qq):
    return z2_loops_bimodule(qq)


@pytest.fixture(scope="session")
def one_loop(qq):
    return one_loop_bimodule(qq)


@pytest.fixture(scope="session")
def z2_swap(qq):
    return z2_swap_bimodule(qq)


@pytest.fixture(scope="session")
def one_loop_lqt(one_loop):
    """Path double of the one-loop quiver at N = 3 with R_0..R_1."""
    return path_double(one_loop, max_degree=3, level=1)


@pytest.fixture(scope="session")
def z2_loops_lqt(z2_loops):
    """Path double of the loops-over-Z2 bimodule at N = 2 with R_0, R_1."""
    return path_double(z2_loops, max_degree=2, level=1)


@pytest.fixture(scope="session")
def z2_loops_semipath(z2_loops):
    return semipath_double(z2_loops, max_degree=2, level=1)


@pytest.fixture(scope="session")
def z2_swap_lqt(z2_swap):
    """Path double of the Z2 swap quiver at N = 2 with R_0, built without the axiom sweep."""
    return path_double(z2_swap, max_degree=2, level=0, verify=False)


@pytest.fixture(scope="session")
def s3_double():
    return group_double(symmetric_group(3), Field.rationals())


@pytest.fixture(scope="session")
def z3_double():
    return group_double(cyclic_group(3), Field.rationals())


@pytest.fixture(scope="session")
def z2_double():
    return group_double(cyclic_group(2), Field.rationals())
