import json

import numpy as np
import pytest

from stablecat.complexes import (
    ChainMap,
    WindowedComplex,
    block_tags,
    chain_map_space,
    chain_maps_mod_homotopy,
    complex_from_json,
    complex_to_json,
    covering_subcomplex,
    direct_sum_complex,
    disk,
    exact_covering_subcomplex,
    extension_class_dim,
    extension_from_chain_map,
    filtration_by_small,
    first_nonexact,
    hom_complex,
    hom_homology_dim,
    homology_at,
    homology_dim,
    homology_table,
    homotopy_class_dim,
    is_degreewise_split_extension,
    is_interior_exact,
    is_split_extension,
    load_complex,
    nonsplit_extension_dim,
    null_homotopic,
    pad,
    shift,
    sphere,
    support_closure,
    tensor_complex,
    tensor_functor,
    verify_witness,
)
from stablecat.errors import DimensionError, InvariantError, PreconditionError
from stablecat.exactla import FieldMatrix
from stablecat.homalg import ext, projective_resolution
from stablecat.modrep import RIGHT, free, injective_module, regular, trivial


def resolution_complex(m, length):
    """P_length -> ... -> P_0 on the window [-1, length + 1], tagged by free copies."""
    res = projective_resolution(m, length)
    a = m.algebra
    terms = {n: free(a, 0) for n in range(-1, length + 2)}
    terms.update({n: t for n, t in enumerate(res.terms)})
    diffs = {n: res.maps[n - 1] for n in range(1, length + 1)}
    return WindowedComplex(-1, length + 1, terms, diffs)


def test_sphere_and_disk(sq):
    k = trivial(sq)
    assert homology_table(sphere(0, k)) == {0: 1}
    assert is_interior_exact(disk(1, regular(sq)))


def test_bad_differential_rejected(sq):
    r = regular(sq)
    eye = FieldMatrix.identity(2, 3)
    with pytest.raises(InvariantError):
        WindowedComplex(0, 2, [r, r, r], {1: eye, 2: eye})


def test_empty_window_rejected(sq):
    with pytest.raises(DimensionError):
        WindowedComplex(2, 1, {}, {})


def test_boundary_degrees_not_interior(sq):
    with pytest.raises(DimensionError):
        homology_dim(sphere(0, trivial(sq)), 1)


def test_homology_module(sq):
    dim, h = homology_at(sphere(0, regular(sq)), 0)
    assert dim == 3 and h.dim == 3


def test_hom_into_sphere_computes_ext(sq):
    """Hom(P, S^0 N) has H_{-n} = Ext^n(M, N); ext() uses a different route."""
    k, j = trivial(sq), injective_module(sq)
    p = resolution_complex(k, 4)
    for n_mod, expect_fn in ((k, ext), (regular(sq), ext), (j, ext)):
        h = hom_complex(p, sphere(0, n_mod, window=(0, 0)))
        for n in range(0, 4):
            assert homology_dim(h, -n) == expect_fn(k, n_mod, n)


def test_shift_sign_and_window(sq):
    d = disk(1, regular(sq))
    s = shift(d, 1)
    assert (s.lo, s.hi) == (d.lo + 1, d.hi + 1)
    assert s.d(2) == -d.d(1)


def test_witness_verifies(sq):
    x = sphere(0, direct_sum_complex([sphere(0, trivial(sq))]).term(0))
    n, vec = first_nonexact(x)
    assert n == 0 and verify_witness(x, n, vec)
    assert not verify_witness(x, n, np.zeros_like(vec))


def test_identity_of_disk_null_homotopic(sq):
    d = disk(1, regular(sq))
    ident = ChainMap(d, d, {0: FieldMatrix.identity(2, 3), 1: FieldMatrix.identity(2, 3)})
    ident.verify()
    assert null_homotopic(ident)
    assert chain_maps_mod_homotopy(d, d)[0] == 0


def test_sphere_maps_mod_homotopy(sq):
    k = trivial(sq)
    x = sphere(0, k)
    dim, reps = chain_maps_mod_homotopy(x, x)
    assert dim == 1 and len(reps) == 1 and not null_homotopic(reps[0])


def test_extension_of_zero_map_splits(sq):
    x = sphere(0, trivial(sq))
    w = sphere(1, trivial(sq))
    zero = ChainMap(x, w, {})
    e = extension_from_chain_map(zero)
    assert is_degreewise_split_extension(e)
    assert is_split_extension(e)


def test_split_iff_null_homotopic(sq):
    k, r = trivial(sq), regular(sq)
    x = disk(1, r, window=(-1, 2))
    w = shift(sphere(0, k, window=(-1, 2)), 1)
    for f in chain_map_space(x, w):
        assert is_split_extension(extension_from_chain_map(f)) == null_homotopic(f)


@pytest.mark.parametrize("n", [-1, 0, 1])
def test_three_paths_on_spheres(sq, n):
    k = trivial(sq)
    x = sphere(0, k, window=(-1, 1))
    # Hom(S^0 k, S^m k) is k in degree m
    for m in (-1, 0, 1):
        y = sphere(m, k, window=(m - 1, m + 1))
        expect = 1 if m == n else 0
        assert hom_homology_dim(x, y, n) == homotopy_class_dim(x, y, n) == extension_class_dim(x, y, n) == expect


def test_three_paths_on_resolution(sq):
    """Chain maps from a resolution of k into a shifted S^0 k realize Ext classes."""
    k = trivial(sq)
    p = resolution_complex(k, 3)
    y = sphere(0, k, window=(0, 0))
    for n in (-1, -2):
        want = ext(k, k, -n)
        assert hom_homology_dim(p, y, n) == want
        assert homotopy_class_dim(p, y, n) == want
        assert extension_class_dim(p, y, n) == want


def test_tensor_complex_exact_on_disk(sq):
    j = injective_module(sq, RIGHT)
    assert is_interior_exact(tensor_complex(j, disk(1, free(sq, 2))))


def test_tensor_requires_right_module(sq):
    with pytest.raises(PreconditionError):
        tensor_complex(injective_module(sq), disk(1, regular(sq)))


def test_json_roundtrip(sq, tmp_path):
    d = disk(1, regular(sq))
    d = WindowedComplex(d.lo, d.hi, {n: d.term(n) for n in range(d.lo, d.hi + 1)},
                        {n: d.d(n) for n in range(d.lo + 1, d.hi + 1)},
                        {n: block_tags(d.term(n), 3, "R") for n in range(d.lo, d.hi + 1)})
    path = tmp_path / "d.json"
    path.write_text(json.dumps(complex_to_json(d)))
    back = load_complex(path)
    assert back.dims() == d.dims() and back.tags == d.tags
    assert all(back.d(n) == d.d(n) for n in range(d.lo + 1, d.hi + 1))


def test_json_builtin_terms(sq):
    data = {"ring": "local_sq_zero(2,2)", "lo": 0, "hi": 2, "terms": {"0": "0", "1": "R", "2": "builtin:R"},
            "diffs": {"2": np.eye(3, dtype=int).tolist()}}
    x = complex_from_json(data)
    assert x.dims() == {0: 0, 1: 3, 2: 3}


def _tagged_disks(sq, copies):
    parts = []
    for i in range(copies):
        d = disk(1, regular(sq), window=(-1, 2))
        tags = {n: block_tags(d.term(n), 3, "R") for n in range(-1, 3)}
        parts.append(WindowedComplex(-1, 2, {n: d.term(n) for n in range(-1, 3)}, {1: d.d(1)}, tags))
    return direct_sum_complex(parts)


def test_support_closure_and_cover(sq):
    x = _tagged_disks(sq, 2)
    sub = covering_subcomplex(x, {1: [0]})
    assert sub.tag_counts() == {-1: 0, 0: 1, 1: 1, 2: 0}
    assert support_closure(x, {n: set() for n in range(-1, 3)}) == {n: set() for n in range(-1, 3)}


def test_exact_covering_grows(sq):
    x = _tagged_disks(sq, 2)
    sub = exact_covering_subcomplex(x, {0: [1]})
    assert is_interior_exact(sub.complex)
    assert sub.tag_counts()[1] >= 1


def test_filtration_of_disks(sq):
    x = _tagged_disks(sq, 2)
    j = injective_module(sq, RIGHT)
    f = filtration_by_small(x, j)
    check = f.verify(tensor_functor(j))
    assert len(f.layers) == 2
    assert all(check["layers_exact"]) and all(check["quotients_exact"])
    assert check["ranks_reconcile"] and check["nested"]


def test_filtration_rejects_inexact(sq):
    x = pad(_tagged_disks(sq, 1), 1)
    bad = WindowedComplex(x.lo, x.hi, {n: x.term(n) for n in range(x.lo, x.hi + 1)}, {}, x.tags)
    with pytest.raises(PreconditionError):
        filtration_by_small(bad, injective_module(sq, RIGHT))


def test_hom_homology_far_from_window(sq):
    # the Hom window is [-3, -3]; degree 0 needs padding on the upper side
    k = trivial(sq)
    x = sphere(3, k, window=(3, 3))
    y = sphere(0, k, window=(0, 0))
    assert hom_homology_dim(x, y, 0) == 0
    assert hom_homology_dim(x, y, -3) == 1
    assert hom_homology_dim(x, y, 3) == 0
