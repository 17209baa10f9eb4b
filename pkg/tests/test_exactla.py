import itertools

import numpy as np
import pytest

from stablecat import exactla
from stablecat.errors import DimensionError
from stablecat.exactla import (
    FieldMatrix,
    PrimeField,
    column_space,
    hstack,
    in_column_space,
    intersection_dim,
    inverse,
    kernel_basis,
    kernel_with_free,
    kron,
    rank,
    rref,
    solve,
    vstack,
)
from stablecat import _rref_py


def brute_rank(a: np.ndarray, p: int) -> int:
    """log_p of the number of distinct images A v, v over all of F_p^n."""
    rows, cols = a.shape
    images = {tuple(a @ np.array(v) % p) for v in itertools.product(range(p), repeat=cols)}
    r = 0
    while p**r < len(images):
        r += 1
    return r


def test_rref_small_example():
    r, piv = rref(FieldMatrix(5, [[1, 2], [2, 4]]))
    assert r.tolist() == [[1, 2], [0, 0]]
    assert piv == [0]


def test_solve_scalar():
    x = solve(FieldMatrix(5, [[2]]), FieldMatrix(5, [[1]]))
    assert x.tolist() == [[3]]


def test_solve_inconsistent_returns_none():
    assert solve(FieldMatrix(2, [[1, 1], [1, 1]]), FieldMatrix(2, [[0], [1]])) is None


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        PrimeField(6)


def test_shape_mismatch_rejected():
    with pytest.raises(DimensionError):
        FieldMatrix(2, [[1, 0]]) @ FieldMatrix(2, [[1, 0]])


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rank_against_brute_force(p):
    rng = np.random.default_rng(p)
    for _ in range(25):
        r, c = rng.integers(1, 5, size=2)
        a = rng.integers(0, p, size=(r, c))
        assert rank(FieldMatrix(p, a)) == brute_rank(a, p)


@pytest.mark.parametrize("p", [2, 7, 101])
def test_kernel_is_kernel_and_full(p):
    rng = np.random.default_rng(p + 1)
    for _ in range(20):
        r, c = rng.integers(1, 7, size=2)
        m = FieldMatrix(p, rng.integers(0, p, size=(r, c)))
        k = kernel_basis(m)
        assert (m @ k).is_zero() if k.cols else True
        assert k.cols == c - rank(m)
        assert rank(k) == k.cols


def test_kernel_with_free_coordinates():
    m = FieldMatrix(3, [[1, 1, 0, 2], [0, 0, 1, 1]])
    k, free = kernel_with_free(m)
    assert free == [1, 3]
    assert k.sub(free, range(k.cols)).tolist() == [[1, 0], [0, 1]]


def test_inverse_roundtrip():
    m = FieldMatrix(7, [[2, 1], [5, 3]])
    inv = inverse(m)
    assert (m @ inv).tolist() == [[1, 0], [0, 1]]
    assert inverse(FieldMatrix(7, [[1, 2], [2, 4]])) is None


def test_kron_and_stacks():
    a = FieldMatrix(2, [[1, 1], [0, 1]])
    b = FieldMatrix(2, [[0, 1]])
    assert kron(a, b).tolist() == [[0, 1, 0, 1], [0, 0, 0, 1]]
    assert hstack(2, [a, a]).shape == (2, 4)
    assert vstack(2, [a, b]).shape == (3, 2)
    assert hstack(2, [], rows=3).shape == (3, 0)


def test_column_space_and_intersection():
    u = FieldMatrix(2, [[1, 0], [0, 1], [0, 0]])
    w = FieldMatrix(2, [[1], [1], [0]])
    assert column_space(u).cols == 2
    assert in_column_space(u, w)
    assert intersection_dim(u, FieldMatrix(2, [[0], [0], [1]])) == 0
    assert intersection_dim(u, w) == 1


def test_large_prime_no_overflow():
    p = 2**31 - 1
    a = FieldMatrix(p, [[p - 1, p - 2], [p - 3, p - 1]])
    inv = inverse(a)
    assert (a @ inv).tolist() == [[1, 0], [0, 1]]


@pytest.mark.skipif(exactla.BACKEND != "cython", reason="compiled kernel not built")
@pytest.mark.parametrize("p", [2, 3, 101])
def test_backends_agree(p):
    from stablecat import _rref

    rng = np.random.default_rng(p)
    for _ in range(30):
        r, c = rng.integers(1, 12, size=2)
        a = rng.integers(0, p, size=(r, c)).astype(np.int64)
        x, y = a.copy(), a.copy()
        assert list(_rref.rref_inplace(x, p)) == list(_rref_py.rref_inplace(y, p))
        assert np.array_equal(x, y)
