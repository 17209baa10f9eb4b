import numpy as np
import pytest

from stablecat.complexes import homology_table, is_interior_exact, tensor_complex
from stablecat.counterexamples import (
    ALPHA,
    BETA,
    CLI_NAMES,
    KINDS,
    X,
    CounterexampleSpec,
    build,
    by_name,
    hom_J_report,
    named_vector,
)
from stablecat.errors import DimensionError, PreconditionError
from stablecat.modrep import RIGHT, injective_module, is_injective, is_projective


@pytest.mark.parametrize("kind", KINDS)
def test_build_verifies(kind):
    x = build(CounterexampleSpec(kind))
    x.verify()
    test = is_injective if kind.startswith("inj") else is_projective
    assert all(test(x.term(n)) for n in range(x.lo, x.hi + 1))


@pytest.mark.parametrize("kind,ranks", [("inj_X", [16, 8, 4, 2, 1]), ("inj_Y", [1, 2, 4, 8, 16]),
                                        ("proj_X", [1, 2, 4, 8, 16]), ("proj_Y", [16, 8, 4, 2, 1])])
def test_ranks(kind, ranks):
    s = CounterexampleSpec(kind)
    assert [s.rank(n) for n in range(5)] == ranks
    assert [len(build(s).tags[n]) for n in range(5)] == ranks


def test_homology_of_inexact_ones():
    # each interior degree has one class per copy of the target: the socle
    # of every J copy is hit twice, or one generator per R copy is free
    assert homology_table(build(CounterexampleSpec("inj_Y"))) == {1: 3, 2: 6, 3: 12}
    assert not is_interior_exact(build(CounterexampleSpec("proj_Y")))
    assert is_interior_exact(build(CounterexampleSpec("inj_X")))
    assert is_interior_exact(build(CounterexampleSpec("proj_X")))


def test_hom_J_reports():
    y = hom_J_report(CounterexampleSpec("inj_Y"))
    x = hom_J_report(CounterexampleSpec("inj_X"))
    assert y["interior_exact"] and not x["interior_exact"]
    assert "differentials" in y


def test_hom_J_needs_injective():
    with pytest.raises(PreconditionError):
        hom_J_report(CounterexampleSpec("proj_X"))


def test_J_tensor_projective():
    a = build(CounterexampleSpec("proj_X")).algebra
    j = injective_module(a, RIGHT)
    assert not is_interior_exact(tensor_complex(j, build(CounterexampleSpec("proj_X"))))
    assert is_interior_exact(tensor_complex(j, build(CounterexampleSpec("proj_Y"))))


def test_by_name_and_validation():
    assert by_name("inj-exact-not-total").kind == "inj_X"
    assert set(CLI_NAMES.values()) == set(KINDS)
    with pytest.raises(DimensionError):
        CounterexampleSpec("inj_Z")
    with pytest.raises(DimensionError):
        CounterexampleSpec("inj_X", depth=2)


def test_named_vector():
    v = named_vector(6, {(1, ALPHA): 1, (2, BETA): -1}, 3)
    assert v.tolist() == [1, 0, 0, 0, 2, 0]
    assert named_vector(3, {(1, X): 1}, 2).tolist() == [0, 1, 0]


@pytest.mark.parametrize("p", [3, 5])
def test_other_primes_same_homology(p):
    assert homology_table(build(CounterexampleSpec("inj_Y", p=p))) == {1: 3, 2: 6, 3: 12}
