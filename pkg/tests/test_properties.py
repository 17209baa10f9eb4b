import numpy as np
from hypothesis import given, settings, strategies as st

from stablecat.algebra import mk_cyclic_group_algebra, mk_local_sq_zero, mk_trunc_poly
from stablecat.catalog import random_complex, random_module, random_morphism
from stablecat.complexes import hom_complex, homology_dim, homology_table, pad, shift, sphere
from stablecat.exactla import FieldMatrix, kernel_basis, rank, rref
from stablecat.modrep import RIGHT, cokernel, dual, hom_basis, image, kernel, tensor_over_R

RINGS = [mk_local_sq_zero(2, 2), mk_trunc_poly(3, 2), mk_cyclic_group_algebra(4, 2), mk_local_sq_zero(2, 3)]
PROP = settings(max_examples=40, deadline=None)

primes = st.sampled_from([2, 3, 5, 7])
seeds = st.integers(0, 2**32 - 1)
rings = st.sampled_from(RINGS)


@st.composite
def matrices(draw):
    p = draw(primes)
    r = draw(st.integers(1, 6))
    c = draw(st.integers(1, 6))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return FieldMatrix(p, rows)


@PROP
@given(matrices())
def test_rref_idempotent_and_rank(m):
    r, piv = rref(m)
    r2, piv2 = rref(r)
    assert r2 == r and piv2 == piv
    assert rank(m) == rank(m.T) == len(piv)
    assert kernel_basis(m).cols + rank(m) == m.cols


@PROP
@given(rings, seeds)
def test_dual_involutive(a, seed):
    m = random_module(a, np.random.default_rng(seed), 4)
    dd = dual(dual(m))
    assert dd.side == m.side and all(x == y for x, y in zip(dd.action, m.action))


@PROP
@given(rings, seeds)
def test_hom_duality(a, seed):
    rng = np.random.default_rng(seed)
    m, n = random_module(a, rng, 3), random_module(a, rng, 3)
    assert hom_basis(m, n).dim == hom_basis(dual(n), dual(m)).dim


@PROP
@given(rings, seeds)
def test_tensor_hom_duality(a, seed):
    rng = np.random.default_rng(seed)
    m = random_module(a, rng, 3, RIGHT)
    n = random_module(a, rng, 3)
    assert tensor_over_R(m, n).dim == hom_basis(n, dual(m)).dim


@PROP
@given(rings, seeds)
def test_rank_nullity_for_module_maps(a, seed):
    rng = np.random.default_rng(seed)
    m, n = random_module(a, rng, 4), random_module(a, rng, 4)
    f = random_morphism(m, n, rng)
    k, im, c = kernel(f)[0], image(f)[0], cokernel(f)[0]
    assert k.dim + im.dim == m.dim and im.dim + c.dim == n.dim
    for mod in (k, im, c):
        mod.verify()


@PROP
@given(rings, seeds)
def test_euler_characteristic(a, seed):
    x = pad(random_complex(a, np.random.default_rng(seed), 0, 3), 1)
    chi_c = sum((-1) ** n * x.term(n).dim for n in range(x.lo, x.hi + 1))
    chi_h = sum((-1) ** n * h for n, h in homology_table(x).items())
    assert chi_c == chi_h


@PROP
@given(rings, seeds, st.integers(-3, 3))
def test_shift_moves_homology(a, seed, s):
    x = random_complex(a, np.random.default_rng(seed), 0, 4)
    y = shift(x, s)
    assert {n + s: h for n, h in homology_table(x).items()} == homology_table(y)


@PROP
@given(rings, seeds)
def test_hom_of_spheres(a, seed):
    rng = np.random.default_rng(seed)
    m, n = random_module(a, rng, 3), random_module(a, rng, 3)
    h = hom_complex(sphere(0, m), sphere(0, n))
    assert homology_dim(h, 0) == hom_basis(m, n).dim
