"""Modules and morphisms over a local algebra.

A module stores one action matrix per algebra generator; matrices act on
column vectors.  For a left module the generator ``g`` acts by ``v -> g.v``,
for a right module by ``v -> v.g``.  Actions of the full algebra basis are
derived from the generator actions and cached.

Over the catalog algebras (finite-dimensional, local) the homological
notions collapse: absolutely clean = injective, level = flat = projective =
free.  Functions below are named for what they compute.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .algebra import Algebra, ground_field, parse_ring
from .errors import DimensionError, InvariantError
from .exactla import (
    FieldMatrix,
    block_diag,
    column_space,
    hstack,
    kernel_basis,
    kernel_with_free,
    kron,
    rank,
    rref,
    solve,
    vstack,
)

LEFT = "left"
RIGHT = "right"


def _flip(side: str) -> str:
    return RIGHT if side == LEFT else LEFT


class Module:
    """Finite-dimensional left or right module over ``algebra``."""

    def __init__(self, algebra: Algebra, side: str, dim: int, action, name: str | None = None, check: bool = True):
        if side not in (LEFT, RIGHT):
            raise InvariantError(f"side must be 'left' or 'right', got {side!r}")
        self.algebra = algebra
        self.side = side
        self.dim = int(dim)
        if isinstance(action, dict):
            missing = set(algebra.generator_labels) - set(action)
            extra = set(action) - set(algebra.generator_labels)
            if missing or extra:
                raise InvariantError(f"action labels {sorted(action)} do not match generators {algebra.generator_labels}")
            action = [action[lbl] for lbl in algebra.generator_labels]
        mats = []
        for a in action:
            m = a if isinstance(a, FieldMatrix) else FieldMatrix(algebra.field, a, shape=(self.dim, self.dim))
            if m.shape != (self.dim, self.dim):
                raise InvariantError(f"action matrix has shape {m.shape}, expected {(self.dim, self.dim)}")
            mats.append(m)
        if len(mats) != len(algebra.generators):
            raise InvariantError(f"expected {len(algebra.generators)} action matrices, got {len(mats)}")
        self.action = tuple(mats)
        self.name = name
        if check:
            self.verify()

    @property
    def field(self):
        return self.algebra.field

    @property
    def p(self) -> int:
        return self.algebra.p

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<{self.side} module{label} dim {self.dim} over {self.algebra.name}>"

    @cached_property
    def _key(self):
        return (self.algebra, self.side, self.dim, self.action)

    def __eq__(self, other):
        return isinstance(other, Module) and (self is other or self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    # -- derived actions --------------------------------------------------

    @cached_property
    def basis_action(self) -> tuple:
        """Action matrix of every algebra basis element."""
        a = self.algebra
        n = self.dim
        words, coeffs = a.word_expansion
        word_mats = []
        for w in words:
            m = np.eye(n, dtype=np.int64)
            for gi in w:
                g = self.action[gi].array
                m = (m @ g) % self.p if self.side == LEFT else (g @ m) % self.p
            word_mats.append(m)
        word_mats = np.array(word_mats).reshape(len(words), n, n)
        out = []
        for i in range(a.dim):
            c = coeffs.array[:, i]
            out.append(FieldMatrix._wrap(a.field, np.tensordot(c, word_mats, axes=(0, 0)) % self.p))
        return tuple(out)

    def act(self, element) -> FieldMatrix:
        """Action matrix of an algebra element given as a coordinate vector."""
        element = np.asarray(element, dtype=np.int64)
        stack = np.array([m.array for m in self.basis_action]).reshape(self.algebra.dim, self.dim, self.dim)
        return FieldMatrix._wrap(self.field, np.tensordot(element, stack, axes=(0, 0)) % self.p)

    @cached_property
    def radical_action(self) -> tuple:
        return tuple(self.act(r) for r in self.algebra.radical_elements)

    def verify(self):
        """Check the generator actions define a module structure."""
        a = self.algebra
        p, n = self.p, self.dim
        acts = self.basis_action
        for gi, g in enumerate(a.generators):
            if acts[g] != self.action[gi]:
                raise InvariantError(f"action of {a.labels[g]} is inconsistent with the algebra relations")
        if acts[a.unit_index] != FieldMatrix.identity(self.field, n):
            raise InvariantError("unit does not act as the identity")
        if n == 0:
            return
        stack = np.array([m.array for m in acts]).reshape(a.dim, n, n)
        expected = np.tensordot(a.constants, stack, axes=(2, 0)) % p  # [i, j] -> rho(e_i e_j)
        for i in range(a.dim):
            for j in range(a.dim):
                prod = (stack[i] @ stack[j]) % p if self.side == LEFT else (stack[j] @ stack[i]) % p
                if not np.array_equal(prod, expected[i, j]):
                    raise InvariantError(
                        f"{self.side} module relation fails for ({a.labels[i]}, {a.labels[j]})"
                    )


class Morphism:
    """Module map ``source -> target`` given by a ``target.dim x source.dim`` matrix."""

    def __init__(self, source: Module, target: Module, matrix, check: bool = True):
        if source.algebra != target.algebra or source.side != target.side:
            raise DimensionError("morphism between modules over different algebras or sides")
        m = matrix if isinstance(matrix, FieldMatrix) else FieldMatrix(source.field, matrix, shape=(target.dim, source.dim))
        if m.shape != (target.dim, source.dim):
            raise DimensionError(f"morphism matrix has shape {m.shape}, expected {(target.dim, source.dim)}")
        self.source = source
        self.target = target
        self.matrix = m
        if check:
            for a, b in zip(source.action, target.action):
                if m @ a != b @ m:
                    raise InvariantError("matrix does not intertwine the module actions")

    def __repr__(self):
        return f"Morphism({self.source!r} -> {self.target!r})"

    def __eq__(self, other):
        return (
            isinstance(other, Morphism)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition: ``(g @ f)(v) = g(f(v))``."""
        if other.target != self.source:
            raise DimensionError("cannot compose: target/source mismatch")
        return Morphism(other.source, self.target, self.matrix @ other.matrix, check=False)

    def __add__(self, other):
        return Morphism(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other):
        return Morphism(self.source, self.target, self.matrix - other.matrix, check=False)

    def __neg__(self):
        return Morphism(self.source, self.target, -self.matrix, check=False)

    def __rmul__(self, scalar):
        return Morphism(self.source, self.target, int(scalar) * self.matrix, check=False)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def rank(self) -> int:
        return rank(self.matrix)

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.rank() == self.source.dim


def identity(m: Module) -> Morphism:
    return Morphism(m, m, FieldMatrix.identity(m.field, m.dim), check=False)


def zero_morphism(m: Module, n: Module) -> Morphism:
    return Morphism(m, n, FieldMatrix.zeros(m.field, n.dim, m.dim), check=False)


def _check_pair(m: Module, n: Module):
    if m.algebra != n.algebra:
        raise DimensionError(f"modules over different algebras: {m.algebra.name} vs {n.algebra.name}")
    if m.side != n.side:
        raise DimensionError(f"modules on different sides: {m.side} vs {n.side}")


# -- Hom ------------------------------------------------------------------


@dataclass(frozen=True)
class HomBasis:
    """Basis of Hom(M, N) as flattened (row-major) matrices.

    ``vectors`` has one column per basis morphism.  ``free`` lists the entry
    positions that serve as coordinates: for any homomorphism ``F``,
    ``coords(F) = vec(F)[free]``.
    """

    source: Module
    target: Module
    vectors: FieldMatrix
    free: tuple

    @property
    def dim(self) -> int:
        return self.vectors.cols

    def matrix(self, j: int) -> FieldMatrix:
        return FieldMatrix._wrap(
            self.source.field, self.vectors.array[:, j].reshape(self.target.dim, self.source.dim).copy()
        )

    def combine(self, coeffs) -> FieldMatrix:
        c = np.asarray(coeffs, dtype=np.int64).reshape(-1)
        v = (self.vectors.array @ c) % self.source.p if self.dim else np.zeros(self.vectors.rows, dtype=np.int64)
        return FieldMatrix._wrap(self.source.field, v.reshape(self.target.dim, self.source.dim))

    def coords(self, f) -> np.ndarray:
        """Coordinates of a homomorphism (matrix or Morphism) in this basis."""
        arr = f.matrix.array if isinstance(f, Morphism) else f.array
        return arr.reshape(-1)[list(self.free)].copy()

    def coords_matrix(self, mats) -> FieldMatrix:
        """Coordinates of several homomorphisms, one column each."""
        cols = [self.coords(m) for m in mats]
        if not cols:
            return FieldMatrix.zeros(self.source.field, self.dim, 0)
        return FieldMatrix._wrap(self.source.field, np.array(cols, dtype=np.int64).T.reshape(self.dim, len(cols)))


@lru_cache(maxsize=8192)
def hom_basis(m: Module, n: Module) -> HomBasis:
    """Basis of the F_p-space Hom_A(m, n) via the intertwining linear system."""
    _check_pair(m, n)
    size = m.dim * n.dim
    blocks = []
    eye_m = FieldMatrix.identity(m.field, m.dim)
    eye_n = FieldMatrix.identity(m.field, n.dim)
    for a, b in zip(m.action, n.action):
        # vec(F a) - vec(b F) with row-major vec(F), F of shape (n.dim, m.dim)
        blocks.append(kron(eye_n, a.T) - kron(b, eye_m))
    if blocks and size:
        vectors, free = kernel_with_free(vstack(m.field, blocks, cols=size))
    else:
        vectors, free = FieldMatrix.identity(m.field, size), list(range(size))
    return HomBasis(m, n, vectors, tuple(free))


def hom_space(m: Module, n: Module) -> list:
    """Basis of Hom(m, n) as a list of morphisms."""
    hb = hom_basis(m, n)
    return [Morphism(m, n, hb.matrix(j), check=False) for j in range(hb.dim)]


# -- sub and quotient modules -------------------------------------------


def _induced_action(m: Module, basis: FieldMatrix) -> list:
    mats = []
    for a in m.action:
        x = solve(basis, a @ basis)
        if x is None:
            raise InvariantError("subspace is not closed under the module action")
        mats.append(x)
    return mats


def submodule(m: Module, vectors: FieldMatrix, name: str | None = None):
    """Submodule spanned by the columns of ``vectors`` (must be invariant).

    The basis is echelonised, so equal subspaces give equal modules.
    Returns ``(S, inclusion)``.
    """
    basis = column_space(vectors) if vectors.cols else FieldMatrix.zeros(m.field, m.dim, 0)
    s = Module(m.algebra, m.side, basis.cols, _induced_action(m, basis), name=name, check=False)
    return s, Morphism(s, m, basis, check=False)


def _quotient_data(field, n: int, vectors: FieldMatrix):
    """Projection and lift for F_p^n / span(vectors), using non-pivot coordinates."""
    if vectors.cols == 0:
        eye = FieldMatrix.identity(field, n)
        return eye, eye
    r, pivots = rref(vectors.T)
    r = r.array[: len(pivots)]
    piv = set(pivots)
    q = [j for j in range(n) if j not in piv]
    proj = np.zeros((len(q), n), dtype=np.int64)
    for t, j in enumerate(q):
        proj[t, j] = 1
    for i, c in enumerate(pivots):
        proj[:, c] = (-r[i, q]) % field.p
    lift = np.zeros((n, len(q)), dtype=np.int64)
    for t, j in enumerate(q):
        lift[j, t] = 1
    return FieldMatrix._wrap(field, proj), FieldMatrix._wrap(field, lift)


def quotient(m: Module, vectors: FieldMatrix, name: str | None = None):
    """Quotient of ``m`` by the invariant subspace spanned by ``vectors``.

    Returns ``(Q, projection)``.
    """
    proj, lift = _quotient_data(m.field, m.dim, vectors)
    mats = [proj @ a @ lift for a in m.action]
    q = Module(m.algebra, m.side, proj.rows, mats, name=name, check=False)
    return q, Morphism(m, q, proj, check=False)


def kernel(f: Morphism):
    """``(ker f, inclusion)``."""
    return submodule(f.source, kernel_basis(f.matrix))


def image(f: Morphism):
    """``(im f, inclusion into f.target)``."""
    return submodule(f.target, f.matrix)


def cokernel(f: Morphism):
    """``(coker f, projection from f.target)``."""
    return quotient(f.target, f.matrix)


def generated_submodule(m: Module, vectors: FieldMatrix):
    """Smallest submodule containing the given vectors."""
    span = column_space(vectors) if vectors.cols else vectors
    while True:
        grown = hstack(m.field, [span] + [a @ span for a in m.action], rows=m.dim)
        new = column_space(grown) if grown.cols else grown
        if new.cols == span.cols:
            return submodule(m, span)
        span = new


def direct_sum(modules, name: str | None = None):
    """``(M_1 + ... + M_k, inclusions, projections)``."""
    modules = list(modules)
    if not modules:
        raise ValueError("direct_sum needs at least one summand")
    first = modules[0]
    for other in modules[1:]:
        _check_pair(first, other)
    mats = [block_diag(first.field, [mod.action[g] for mod in modules]) for g in range(len(first.action))]
    total = sum(mod.dim for mod in modules)
    s = Module(first.algebra, first.side, total, mats, name=name, check=False)
    incs, projs = [], []
    offset = 0
    for mod in modules:
        inc = np.zeros((total, mod.dim), dtype=np.int64)
        inc[offset : offset + mod.dim, :] = np.eye(mod.dim, dtype=np.int64)
        incs.append(Morphism(mod, s, FieldMatrix._wrap(first.field, inc), check=False))
        projs.append(Morphism(s, mod, FieldMatrix._wrap(first.field, inc.T.copy()), check=False))
        offset += mod.dim
    return s, incs, projs


# -- duality ------------------------------------------------------------


def dual(m: Module) -> Module:
    """k-linear dual: side flips, action matrices transpose."""
    name = f"{m.name}*" if m.name else None
    return Module(m.algebra, _flip(m.side), m.dim, [a.T for a in m.action], name=name, check=False)


def dual_morphism(f: Morphism) -> Morphism:
    return Morphism(dual(f.target), dual(f.source), f.matrix.T, check=False)


# -- builtin modules ----------------------------------------------------


@lru_cache(maxsize=None)
def regular(a: Algebra, side: str = LEFT) -> Module:
    """The algebra as a module over itself (basis = algebra basis)."""
    mats = a.left_regular if side == LEFT else a.right_regular
    return Module(a, side, a.dim, [mats[g] for g in a.generators], name="R")


@lru_cache(maxsize=None)
def free(a: Algebra, rank_: int, side: str = LEFT) -> Module:
    """R^rank; copy ``i`` occupies coordinates ``i*dim .. (i+1)*dim - 1``."""
    if rank_ == 0:
        return Module(a, side, 0, [FieldMatrix.zeros(a.field, 0, 0)] * len(a.generators), name="0", check=False)
    r = regular(a, side)
    s, _, _ = direct_sum([r] * rank_, name=f"R^{rank_}" if rank_ > 1 else "R")
    return s


@lru_cache(maxsize=None)
def trivial(a: Algebra, side: str = LEFT) -> Module:
    """The simple module k = A/rad A."""
    mats = [[[eps]] for eps in a.generator_augmentations]
    return Module(a, side, 1, mats, name="k")


@lru_cache(maxsize=None)
def injective_module(a: Algebra, side: str = LEFT) -> Module:
    """The indecomposable injective J: the dual of the regular module.

    The dual basis is reversed so the socle comes last; over
    k[x,y]/(x,y)^2 this gives the basis (alpha, beta, gamma) with
    x.beta = y.alpha = gamma.
    """
    d = dual(regular(a, _flip(side)))
    perm = FieldMatrix._wrap(a.field, np.eye(a.dim, dtype=np.int64)[::-1].copy())
    return Module(a, side, a.dim, [perm @ m @ perm for m in d.action], name="J")


@lru_cache(maxsize=None)
def cofree(a: Algebra, rank_: int, side: str = LEFT) -> Module:
    """J^rank."""
    if rank_ == 0:
        return free(a, 0, side)
    s, _, _ = direct_sum([injective_module(a, side)] * rank_, name=f"J^{rank_}" if rank_ > 1 else "J")
    return s


@lru_cache(maxsize=None)
def radical_module(a: Algebra, side: str = LEFT) -> Module:
    """The radical m of A as a submodule of the regular module."""
    s, _ = submodule(regular(a, side), a.radical_basis, name="m")
    return s


def zero_module(a: Algebra, side: str = LEFT) -> Module:
    return free(a, 0, side)


BUILTIN_NAMES = ("k", "R", "J", "m")


def builtin(a: Algebra, name: str, side: str = LEFT) -> Module:
    """Builtin modules by name: ``k``, ``R``, ``J``, ``m``, optionally ``R^n`` / ``J^n``."""
    base, _, power = name.partition("^")
    n = int(power) if power else 1
    if base == "R":
        return free(a, n, side)
    if base == "J":
        return cofree(a, n, side)
    if power:
        raise ValueError(f"only R^n and J^n take a power, got {name!r}")
    if base == "k":
        return trivial(a, side)
    if base == "m":
        return radical_module(a, side)
    raise ValueError(f"unknown builtin module {name!r}; expected one of {BUILTIN_NAMES}")


def vector_space(p: int, dim: int) -> Module:
    """F_p^dim as a module over the ground field."""
    return Module(ground_field(p), LEFT, dim, [], check=False)


# -- structure ----------------------------------------------------------


def radical_submodule(m: Module) -> Module:
    return radical_submodule_with_inclusion(m)[0]


def radical_submodule_with_inclusion(m: Module):
    if not m.radical_action or m.dim == 0:
        return submodule(m, FieldMatrix.zeros(m.field, m.dim, 0))
    return submodule(m, hstack(m.field, m.radical_action, rows=m.dim))


def socle_with_inclusion(m: Module):
    if not m.radical_action or m.dim == 0:
        return submodule(m, FieldMatrix.identity(m.field, m.dim))
    return submodule(m, kernel_basis(vstack(m.field, m.radical_action, cols=m.dim)))


def socle(m: Module) -> Module:
    return socle_with_inclusion(m)[0]


def top_with_projection(m: Module):
    _, inc = radical_submodule_with_inclusion(m)
    return quotient(m, inc.matrix)


def top(m: Module) -> Module:
    return top_with_projection(m)[0]


def free_map(n: Module, images) -> Morphism:
    """The map R^t -> n sending the i-th free generator to ``images[i]``."""
    a = n.algebra
    images = [np.asarray(v, dtype=np.int64).reshape(-1) for v in images]
    src = free(a, len(images), n.side)
    cols = []
    for v in images:
        vcol = FieldMatrix._wrap(n.field, v.reshape(-1, 1).copy())
        for j in range(a.dim):
            cols.append(n.basis_action[j] @ vcol)
    mat = hstack(n.field, cols, rows=n.dim)
    return Morphism(src, n, mat, check=False)


def projective_cover(m: Module):
    """Minimal epimorphism ``R^t -> m`` with t = dim top(m).

    Generators are lifted along the canonical quotient basis of top(m).
    """
    _, rad_inc = radical_submodule_with_inclusion(m)
    _, lift = _quotient_data(m.field, m.dim, rad_inc.matrix)
    epi = free_map(m, [lift.array[:, j] for j in range(lift.cols)])
    if epi.rank() != m.dim:  # pragma: no cover - Nakayama
        raise InvariantError("projective cover is not surjective")
    p = epi.source
    ker = kernel_basis(epi.matrix)
    if ker.cols:
        _, prad = radical_submodule_with_inclusion(p)
        if rank(hstack(m.field, [prad.matrix, ker])) != rank(prad.matrix):  # pragma: no cover
            raise InvariantError("projective cover is not minimal")
    return p, epi


def injective_hull(m: Module):
    """Minimal monomorphism ``m -> J^s`` with s = dim socle(m).

    Obtained by dualising the projective cover of the dual module; the hull
    is returned in the basis of :func:`injective_module`.
    """
    p, epi = projective_cover(dual(m))
    mono0 = dual_morphism(epi)  # m -> dual(R^s)
    a = m.algebra
    s = p.dim // a.dim if a.dim else 0
    rev = np.eye(a.dim, dtype=np.int64)[::-1]
    perm = FieldMatrix._wrap(a.field, np.kron(np.eye(s, dtype=np.int64), rev))
    e = cofree(a, s, m.side)
    mono = Morphism(m, e, perm @ mono0.matrix)
    if m.dim:
        _, soc_inc = socle_with_inclusion(e)
        im = mono.matrix
        if rank(hstack(m.field, [im, soc_inc.matrix])) != rank(im):  # pragma: no cover
            raise InvariantError("injective hull image is not essential")
    return e, mono


def is_projective(m: Module) -> bool:
    return projective_cover(m)[0].dim == m.dim


def is_injective(m: Module) -> bool:
    return is_projective(dual(m))


def is_flat(m: Module) -> bool:
    """Flat = projective for finite-dimensional modules over a finite-dimensional algebra."""
    return is_projective(m)


def is_isomorphic(m: Module, n: Module, limit: int = 1 << 18) -> bool:
    """Decide m ≅ n by searching Hom(m, n) for an invertible element.

    Exhaustive over F_p-combinations of a Hom basis, so only meant for small
    modules (``p**dim Hom <= limit``); raises ``ValueError`` beyond that.
    """
    _check_pair(m, n)
    if m.dim != n.dim:
        return False
    if m == n or m.dim == 0:
        return True
    if m.radical_action and any(rank(a) != rank(b) for a, b in zip(m.radical_action, n.radical_action)):
        return False
    hb = hom_basis(m, n)
    h = hb.dim
    if h == 0:
        return False
    p = m.p
    if p**h > limit:
        raise ValueError(f"isomorphism search space p^{h} too large")
    basis = hb.vectors.array.T.reshape(h, n.dim, m.dim)
    d = m.dim
    for start in range(0, p**h, 4096):
        idx = np.arange(start, min(p**h, start + 4096))
        digits = (idx[:, None] // (p ** np.arange(h))[None, :]) % p
        mats = np.tensordot(digits, basis, axes=(1, 0)) % p
        if d <= 6 and math.factorial(d) * (p - 1) ** d < 2**52:
            dets = np.rint(np.linalg.det(mats.astype(float))).astype(np.int64) % p
            if dets.any():
                return True
        else:
            for mat in mats:
                if rank(FieldMatrix._wrap(m.field, mat)) == d:
                    return True
    return False


# -- tensor products ----------------------------------------------------


@dataclass(frozen=True)
class TensorProduct:
    """M ⊗_A N as a vector space, with projection from and lift to M ⊗_k N."""

    left: Module
    right: Module
    projection: FieldMatrix
    lift: FieldMatrix

    @property
    def dim(self) -> int:
        return self.projection.rows


@lru_cache(maxsize=4096)
def tensor_over_R(m: Module, n: Module) -> TensorProduct:
    """Tensor product of a right module ``m`` with a left module ``n``."""
    if m.algebra != n.algebra:
        raise DimensionError("tensor product over different algebras")
    if m.side != RIGHT or n.side != LEFT:
        raise DimensionError("tensor_over_R needs a right module on the left and a left module on the right")
    size = m.dim * n.dim
    eye_m = FieldMatrix.identity(m.field, m.dim)
    eye_n = FieldMatrix.identity(m.field, n.dim)
    rels = [kron(a, eye_n) - kron(eye_m, b) for a, b in zip(m.action, n.action)]
    rel = hstack(m.field, rels, rows=size) if rels and size else FieldMatrix.zeros(m.field, size, 0)
    proj, lift = _quotient_data(m.field, size, rel)
    return TensorProduct(m, n, proj, lift)


def tensor_morphisms(f: Morphism | None, g: Morphism | None, m: Module | None = None, n: Module | None = None) -> FieldMatrix:
    """Matrix of f ⊗ g between tensor products; ``None`` means an identity on ``m`` / ``n``."""
    src_m = f.source if f is not None else m
    tgt_m = f.target if f is not None else m
    src_n = g.source if g is not None else n
    tgt_n = g.target if g is not None else n
    fm = f.matrix if f is not None else FieldMatrix.identity(m.field, m.dim)
    gm = g.matrix if g is not None else FieldMatrix.identity(n.field, n.dim)
    src = tensor_over_R(src_m, src_n)
    tgt = tensor_over_R(tgt_m, tgt_n)
    return tgt.projection @ kron(fm, gm) @ src.lift


# -- files ---------------------------------------------------------------


def module_to_json(m: Module) -> dict:
    return {
        "ring": m.algebra.name,
        "side": m.side,
        "dim": m.dim,
        "action": {lbl: a.tolist() for lbl, a in zip(m.algebra.generator_labels, m.action)},
    }


def module_from_json(data: dict) -> Module:
    """Load a module from its JSON form, re-verifying every invariant."""
    try:
        a = parse_ring(data["ring"])
        side = data["side"]
        dim = int(data["dim"])
        action = data["action"]
    except (KeyError, TypeError) as exc:
        raise InvariantError(f"malformed module file: {exc}") from exc
    if not isinstance(action, dict):
        raise InvariantError("'action' must map generator labels to matrices")
    mats = {}
    for lbl, mat in action.items():
        arr = np.asarray(mat, dtype=np.int64) if dim else np.zeros((0, 0), dtype=np.int64)
        if arr.shape != (dim, dim):
            raise InvariantError(f"action of {lbl} has shape {arr.shape}, expected {(dim, dim)}")
        mats[lbl] = FieldMatrix(a.field, arr)
    return Module(a, side, dim, mats)


def load_module(path) -> Module:
    with open(path) as fh:
        return module_from_json(json.load(fh))
