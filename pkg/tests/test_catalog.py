import itertools

import numpy as np
import pytest

from stablecat.catalog import enumerate_modules, random_complex, random_free_complex, random_module
from stablecat.complexes import is_interior_exact
from stablecat.modrep import RIGHT, is_projective


def _gl(d):
    out = []
    for entries in itertools.product(range(2), repeat=d * d):
        g = np.array(entries, dtype=np.int64).reshape(d, d)
        if round(np.linalg.det(g)) % 2:
            out.append(g)
    return out


def _inv2(g):
    d = len(g)
    for entries in itertools.product(range(2), repeat=d * d):
        h = np.array(entries, dtype=np.int64).reshape(d, d)
        if np.array_equal(g @ h % 2, np.eye(d, dtype=np.int64)):
            return h
    raise AssertionError


def orbit_count_sq_zero(d):
    """GL_d(F_2)-orbits of pairs (X, Y) with all pairwise products zero."""
    mats = [np.array(e, dtype=np.int64).reshape(d, d) for e in itertools.product(range(2), repeat=d * d)]
    nil = [m for m in mats if not (m @ m % 2).any()]
    pairs = [(x, y) for x in nil for y in nil if not (x @ y % 2).any() and not (y @ x % 2).any()]
    group = [(g, _inv2(g)) for g in _gl(d)]
    seen, orbits = set(), 0
    for x, y in pairs:
        key = (x.tobytes(), y.tobytes())
        if key in seen:
            continue
        orbits += 1
        for g, gi in group:
            seen.add(((g @ x @ gi % 2).tobytes(), (g @ y @ gi % 2).tobytes()))
    return orbits


def partitions_bounded(n, k):
    """Partitions of n with parts at most k."""
    if n == 0:
        return 1
    return sum(partitions_bounded(n - p, p) for p in range(1, min(n, k) + 1))


def _count_by_dim(mods):
    out = {}
    for m in mods:
        out[m.dim] = out.get(m.dim, 0) + 1
    return out


@pytest.mark.parametrize("d", [1, 2, 3])
def test_sq_zero_catalog_matches_orbit_count(sq, d):
    assert _count_by_dim(enumerate_modules(sq, d))[d] == orbit_count_sq_zero(d)


def test_sq_zero_catalog_dim4(sq):
    assert _count_by_dim(enumerate_modules(sq, 4)) == {1: 1, 2: 4, 3: 6, 4: 16}


def test_uniserial_catalogs_are_partitions(trunc3, z4, z2):
    # modules over k[x]/(x^e) are sums of Jordan blocks of size <= e
    for a, e in ((trunc3, 3), (z4, 4), (z2, 2)):
        counts = _count_by_dim(enumerate_modules(a, 4))
        assert counts == {d: partitions_bounded(d, e) for d in range(1, 5)}


def test_right_catalog(sq):
    mods = enumerate_modules(sq, 2, RIGHT)
    assert all(m.side == RIGHT for m in mods) and len(mods) == 5


def test_random_module_dimensions(sq, rng):
    for _ in range(30):
        m = random_module(sq, rng, 4)
        m.verify()
        assert 1 <= m.dim <= 4


def test_random_complexes_verify(sq, rng):
    for _ in range(10):
        x = random_complex(sq, rng, 0, 3)
        x.verify()
        f = random_free_complex(sq, rng, 0, 3)
        f.verify()
        assert all(is_projective(f.term(n)) for n in range(4))
