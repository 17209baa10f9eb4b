"""Module catalogs up to isomorphism and random modules, maps and complexes.

Over a local algebra every radical element acts nilpotently, so each module
has a basis in which ``rho(g) - eps(g) I`` is strictly lower triangular for
every generator ``g`` (``eps`` the augmentation).  Enumerating those
matrices and keeping one module per isomorphism class gives an exhaustive
catalog for small dimensions.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .algebra import Algebra
from .complexes import WindowedComplex, block_tags
from .errors import InvariantError
from .exactla import FieldMatrix, hstack, rank
from .modrep import (
    LEFT,
    RIGHT,
    Module,
    Morphism,
    cokernel,
    dual,
    free,
    generated_submodule,
    hom_basis,
    is_isomorphic,
    quotient,
    trivial,
)


def _invariants(m: Module) -> tuple:
    """Isomorphism invariants: ranks of radical powers and of each radical element."""
    ranks = tuple(rank(a) for a in m.radical_action)
    powers = []
    cur = [FieldMatrix.identity(m.field, m.dim)]
    for _ in range(m.dim + 1):
        cur = [a @ c for a in m.radical_action for c in cur]
        r = rank(hstack(m.field, cur, rows=m.dim)) if cur and m.dim else 0
        powers.append(r)
        if r == 0:
            break
    return (m.dim, ranks, tuple(powers))


def _lower_triangular(p: int, d: int) -> np.ndarray:
    """All strictly lower triangular d x d matrices over F_p, shape (p^k, d, d)."""
    rows, cols = np.tril_indices(d, -1)
    k = len(rows)
    out = np.zeros((p**k, d, d), dtype=np.int64)
    if k == 0:
        return out
    digits = np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64)
    out[:, rows, cols] = digits
    return out


@lru_cache(maxsize=None)
def enumerate_modules(a: Algebra, max_dim: int, side: str = LEFT, min_dim: int = 1) -> tuple:
    """One module per isomorphism class, for every dimension in ``[min_dim, max_dim]``."""
    out = []
    eps = a.generator_augmentations
    ngen = len(a.generators)
    for d in range(min_dim, max_dim + 1):
        tri = _lower_triangular(a.p, d)
        eye = np.eye(d, dtype=np.int64)
        buckets: dict = {}
        for choice in itertools.product(range(len(tri)), repeat=ngen):
            mats = [FieldMatrix(a.field, (eps[g] * eye + tri[c]) % a.p) for g, c in enumerate(choice)]
            try:
                m = Module(a, side, d, mats)
            except InvariantError:
                continue
            key = _invariants(m)
            reps = buckets.setdefault(key, [])
            if not any(is_isomorphic(m, r) for r in reps):
                reps.append(m)
        for key in sorted(buckets, key=repr):
            out.extend(buckets[key])
    return tuple(out)


# -- random generators -------------------------------------------------------


def random_vector(rng: np.random.Generator, p: int, n: int) -> np.ndarray:
    return rng.integers(0, p, size=n, dtype=np.int64)


def random_morphism(m: Module, n: Module, rng: np.random.Generator) -> Morphism:
    hb = hom_basis(m, n)
    coeffs = random_vector(rng, m.p, hb.dim)
    return Morphism(m, n, hb.combine(coeffs), check=False)


def random_module(a: Algebra, rng: np.random.Generator, max_dim: int, side: str = LEFT, min_dim: int = 1) -> Module:
    """A random quotient of a small free module, or its dual, with dimension in range."""
    if max_dim < min_dim:
        raise ValueError("max_dim < min_dim")
    for _ in range(200):
        t = int(rng.integers(1, max(2, max_dim // a.dim + 2)))
        flip = bool(rng.integers(0, 2))
        f = free(a, t, side if not flip else (RIGHT if side == LEFT else LEFT))
        k = int(rng.integers(0, 3))
        vecs = FieldMatrix(a.field, rng.integers(0, a.p, size=(f.dim, k)), shape=(f.dim, k))
        sub, inc = generated_submodule(f, vecs)
        q, _ = quotient(f, inc.matrix)
        if flip:
            q = dual(q)
        if min_dim <= q.dim <= max_dim:
            return q
    # semisimple module of the smallest allowed dimension
    k = trivial(a, side)
    acts = [FieldMatrix(a.field, np.kron(np.eye(min_dim, dtype=np.int64), g.array)) for g in k.action]
    return Module(a, side, min_dim, acts)


def random_differentials(terms: dict, lo: int, hi: int, rng: np.random.Generator) -> dict:
    """Differentials with d_{n} d_{n+1} = 0, each a random map out of coker d_{n+1}."""
    diffs = {}
    prev = None  # d_{n+1} as a Morphism
    for n in range(hi, lo, -1):
        src, tgt = terms[n], terms[n - 1]
        if prev is None:
            d = random_morphism(src, tgt, rng)
        else:
            c, proj = cokernel(prev)
            g = random_morphism(c, tgt, rng)
            d = Morphism(src, tgt, g.matrix @ proj.matrix, check=False)
        diffs[n] = d.matrix
        prev = d
    return diffs


def random_complex(a: Algebra, rng: np.random.Generator, lo: int, hi: int, max_dim: int = 3, side: str = LEFT) -> WindowedComplex:
    terms = {n: random_module(a, rng, max_dim, side, min_dim=0 if rng.random() < 0.15 else 1) for n in range(lo, hi + 1)}
    return WindowedComplex(lo, hi, terms, random_differentials(terms, lo, hi, rng), name="random")


def random_free_complex(a: Algebra, rng: np.random.Generator, lo: int, hi: int, max_rank: int = 3, side: str = LEFT) -> WindowedComplex:
    """Random complex of free modules, tagged by free copies."""
    terms = {n: free(a, int(rng.integers(0, max_rank + 1)), side) for n in range(lo, hi + 1)}
    tags = {n: block_tags(terms[n], a.dim, "R") for n in terms}
    return WindowedComplex(lo, hi, terms, random_differentials(terms, lo, hi, rng), tags, name="random-free")


__all__ = [
    "enumerate_modules",
    "random_morphism",
    "random_module",
    "random_complex",
    "random_free_complex",
    "random_differentials",
]
