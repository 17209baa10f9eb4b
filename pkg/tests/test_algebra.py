import itertools

import numpy as np
import pytest

from stablecat.algebra import (
    ground_field,
    is_quasi_frobenius,
    is_sq_zero_two,
    mk_cyclic_group_algebra,
    mk_local_sq_zero,
    mk_trunc_poly,
    parse_ring,
)

RINGS = [
    ("local_sq_zero(2,2)", 3, [2]),
    ("local_sq_zero(3,5)", 4, [3]),
    ("trunc_poly(3,2)", 3, [2, 1]),
    ("cyclic_group(4,2)", 4, [3, 2, 1]),
    ("cyclic_group(3,3)", 3, [2, 1]),
]


@pytest.mark.parametrize("spec,dim,rad", RINGS)
def test_dimensions_and_radical_filtration(spec, dim, rad):
    a = parse_ring(spec)
    assert a.dim == dim
    assert a.radical_power_dims() == rad


@pytest.mark.parametrize("spec", [r[0] for r in RINGS])
def test_associative_with_unit(spec):
    a = parse_ring(spec)
    eye = np.eye(a.dim, dtype=np.int64)
    for i, j, k in itertools.product(range(a.dim), repeat=3):
        assert np.array_equal(a.mul(a.mul(eye[i], eye[j]), eye[k]), a.mul(eye[i], a.mul(eye[j], eye[k])))
    for i in range(a.dim):
        assert np.array_equal(a.mul(a.unit, eye[i]), eye[i])
        assert np.array_equal(a.mul(eye[i], a.unit), eye[i])


def test_group_algebra_multiplication():
    a = mk_cyclic_group_algebra(4, 2)
    s = a.basis_vector(1)
    s3 = a.mul(s, a.mul(s, s))
    assert np.array_equal(a.mul(s3, s), a.unit)


def test_sq_zero_products_vanish():
    a = mk_local_sq_zero(2, 3)
    for u, v in itertools.product(a.radical_elements, repeat=2):
        assert not a.mul(u, v).any()


def test_quasi_frobenius_classes():
    assert is_quasi_frobenius(mk_cyclic_group_algebra(2, 2))
    assert is_quasi_frobenius(mk_cyclic_group_algebra(4, 2))
    assert is_quasi_frobenius(mk_trunc_poly(3, 2))
    assert not is_quasi_frobenius(mk_local_sq_zero(2, 2))
    assert is_quasi_frobenius(mk_local_sq_zero(1, 2))


def test_sq_zero_two_detector():
    assert is_sq_zero_two(mk_local_sq_zero(2, 5))
    assert not is_sq_zero_two(mk_local_sq_zero(3, 2))


def test_parse_ring_whitespace_and_cache():
    assert parse_ring(" local_sq_zero( 2 , 2 ) ") is mk_local_sq_zero(2, 2)


@pytest.mark.parametrize("bad", ["sq_zero(2,2)", "cyclic_group(6,2)", "trunc_poly(1,2)", "local_sq_zero(2,4)", "local_sq_zero(0,2)"])
def test_parse_ring_rejects(bad):
    with pytest.raises(ValueError):
        parse_ring(bad)


def test_ground_field():
    f = ground_field(3)
    assert f.dim == 1 and f.generators == ()
