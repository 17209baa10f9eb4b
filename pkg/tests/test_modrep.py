import json

import numpy as np
import pytest

from stablecat.errors import InvariantError
from stablecat.exactla import FieldMatrix, rank
from stablecat.modrep import (
    LEFT,
    RIGHT,
    Module,
    Morphism,
    builtin,
    cokernel,
    direct_sum,
    dual,
    free,
    hom_basis,
    image,
    injective_hull,
    injective_module,
    is_flat,
    is_injective,
    is_isomorphic,
    is_projective,
    kernel,
    load_module,
    module_from_json,
    module_to_json,
    projective_cover,
    radical_module,
    regular,
    socle,
    tensor_over_R,
    top,
    trivial,
)

ALPHA, BETA, GAMMA = 0, 1, 2


def test_J_basis_convention(sq):
    j = injective_module(sq)
    x, y = j.action
    assert j.dim == 3
    assert x.col(BETA).tolist() == [0, 0, 1] and not x.col(ALPHA).any()
    assert y.col(ALPHA).tolist() == [0, 0, 1] and not y.col(BETA).any()


def test_J_structure(sq):
    j = injective_module(sq)
    assert socle(j).dim == 1
    assert top(j).dim == 2
    assert is_injective(j) and not is_projective(j)


def test_injective_hull_of_R(sq):
    r = regular(sq)
    e, mono = injective_hull(r)
    assert e.dim == 6
    assert is_isomorphic(e, direct_sum([injective_module(sq)] * 2)[0])
    assert mono.rank() == 3
    c, _ = cokernel(mono)
    assert c.dim == 3
    # k ⊕ k ⊕ k: the radical acts by zero
    assert all(a.is_zero() for a in c.radical_action)


def test_hull_image_of_one(sq):
    """1 maps to a socle-complementary vector with components (beta, alpha)."""
    _, mono = injective_hull(regular(sq))
    v = mono.matrix.col(0)
    assert v[BETA] == 1 and v[3 + ALPHA] == 1


def test_projective_cover_of_k(sq):
    p, epi = projective_cover(trivial(sq))
    assert p.dim == 3 and epi.rank() == 1
    assert kernel(epi)[0].dim == 2


def test_regular_not_injective_over_sq_zero(sq):
    assert not is_injective(regular(sq))
    assert is_flat(regular(sq))


def test_qf_projective_equals_injective(z4):
    r = regular(z4)
    assert is_injective(r) and is_projective(r)


def test_module_invariant_rejected(sq):
    # x and y acting by the same nonzero nilpotent of square zero is fine,
    # but x acting invertibly violates the relation x^2 = 0
    with pytest.raises(InvariantError):
        Module(sq, LEFT, 1, [[[1]], [[0]]])


def test_morphism_linearity_rejected(sq):
    k = trivial(sq)
    r = regular(sq)
    with pytest.raises(InvariantError):
        Morphism(k, r, FieldMatrix(2, [[1], [0], [0]]))


def test_hom_dimensions(sq):
    k, r, j = trivial(sq), regular(sq), injective_module(sq)
    assert hom_basis(r, k).dim == 1
    assert hom_basis(k, r).dim == 2
    assert hom_basis(k, j).dim == 1
    assert hom_basis(j, j).dim == 3
    assert hom_basis(r, j).dim == 3


def test_hom_basis_coords_roundtrip(sq):
    hb = hom_basis(regular(sq), injective_module(sq))
    coeffs = np.array([1, 0, 1])
    assert np.array_equal(hb.coords(hb.combine(coeffs)) % 2, coeffs)


def test_kernel_image_cokernel_dimensions(sq, rng):
    r2 = free(sq, 2)
    j = injective_module(sq)
    hb = hom_basis(r2, j)
    for _ in range(10):
        f = Morphism(r2, j, hb.combine(rng.integers(0, 2, size=hb.dim)))
        assert kernel(f)[0].dim + image(f)[0].dim == r2.dim
        assert cokernel(f)[0].dim + image(f)[0].dim == j.dim


def test_dual_involutive(sq):
    j = injective_module(sq)
    dd = dual(dual(j))
    assert dd.side == LEFT
    assert all(np.array_equal(a.array, b.array) for a, b in zip(dd.action, j.action))


def test_tensor_with_regular_is_identity(sq):
    j = injective_module(sq)
    assert tensor_over_R(regular(sq, RIGHT), j).dim == j.dim
    assert tensor_over_R(trivial(sq, RIGHT), j).dim == top(j).dim


def test_builtin_names(sq):
    assert builtin(sq, "R^2").dim == 6
    assert builtin(sq, "J^3").dim == 9
    assert builtin(sq, "m").dim == 2
    assert radical_module(sq).dim == 2
    with pytest.raises(ValueError):
        builtin(sq, "k^2")
    with pytest.raises(ValueError):
        builtin(sq, "Q")


def test_isomorphism_distinguishes(sq):
    k = trivial(sq)
    kk = direct_sum([k, k])[0]
    assert is_isomorphic(kk, radical_module(sq))
    assert not is_isomorphic(regular(sq), injective_module(sq))


def test_json_roundtrip(sq, tmp_path):
    j = injective_module(sq)
    path = tmp_path / "j.json"
    path.write_text(json.dumps(module_to_json(j)))
    back = load_module(path)
    assert back.dim == 3 and is_isomorphic(back, j)


def test_json_rejects_bad_action(sq):
    data = module_to_json(trivial(sq))
    data["action"]["x"] = [[1]]
    with pytest.raises(InvariantError):
        module_from_json(data)
