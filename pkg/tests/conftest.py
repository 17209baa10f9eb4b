import numpy as np
import pytest

from stablecat.algebra import mk_cyclic_group_algebra, mk_local_sq_zero, mk_trunc_poly


@pytest.fixture(scope="session")
def sq():
    return mk_local_sq_zero(2, 2)


@pytest.fixture(scope="session")
def trunc3():
    return mk_trunc_poly(3, 2)


@pytest.fixture(scope="session")
def z4():
    return mk_cyclic_group_algebra(4, 2)


@pytest.fixture(scope="session")
def z2():
    return mk_cyclic_group_algebra(2, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
