"""Finite-dimensional local algebras over F_p given by structure constants.

Catalog:

* ``local_sq_zero(n, p)``  -- F_p[x_1..x_n] / (x_1..x_n)^2
* ``cyclic_group(m, p)``   -- F_p[Z/m] with m a power of p
* ``trunc_poly(e, p)``     -- F_p[x] / (x^e)

All of them are local, so projective modules are free and the only simple
module is the trivial one.
"""

from __future__ import annotations

import re
from functools import cached_property, lru_cache

import numpy as np

from .errors import InvariantError
from .exactla import FieldMatrix, PrimeField, hstack, rank, solve


class Algebra:
    """Associative unital F_p-algebra with basis ``e_0 .. e_{dim-1}``.

    ``constants[i, j, k]`` is the coefficient of ``e_k`` in ``e_i e_j``.
    ``generators`` are basis indices generating the algebra; modules store one
    action matrix per generator.  ``radical_basis`` has one column per basis
    vector of the Jacobson radical.  Every invariant is checked here.
    """

    def __init__(
        self,
        p,
        labels,
        constants,
        unit_index,
        generators,
        radical_basis,
        commutative,
        name,
    ):
        self.field = p if isinstance(p, PrimeField) else PrimeField(p)
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        c = np.asarray(constants, dtype=np.int64) % self.field.p
        if c.shape != (self.dim,) * 3:
            raise InvariantError(f"structure constants must have shape {(self.dim,) * 3}")
        c.setflags(write=False)
        self.constants = c
        self.unit_index = int(unit_index)
        self.generators = tuple(int(g) for g in generators)
        self.radical_basis = (
            radical_basis
            if isinstance(radical_basis, FieldMatrix)
            else FieldMatrix(self.field, radical_basis, shape=(self.dim, -1) if self.dim else None)
        )
        self.commutative = bool(commutative)
        self.name = name
        self._verify()

    # -- identity ---------------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    @cached_property
    def _key(self):
        return (self.p, self.labels, self.constants.tobytes(), self.generators, self.unit_index)

    def __eq__(self, other):
        return isinstance(other, Algebra) and (self is other or self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Algebra({self.name})"

    @property
    def generator_labels(self) -> tuple:
        return tuple(self.labels[g] for g in self.generators)

    # -- arithmetic -------------------------------------------------------

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def mul(self, u, v) -> np.ndarray:
        """Product of two elements given as coordinate vectors."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        out = np.zeros(self.dim, dtype=np.int64)
        p = self.p
        for i in np.flatnonzero(u):
            for j in np.flatnonzero(v):
                out = (out + (int(u[i]) * int(v[j]) % p) * self.constants[i, j]) % p
        return out

    @cached_property
    def left_regular(self) -> tuple:
        """Matrices of left multiplication by each basis element."""
        return tuple(FieldMatrix(self.field, self.constants[i].T) for i in range(self.dim))

    @cached_property
    def right_regular(self) -> tuple:
        """Matrices of right multiplication by each basis element."""
        return tuple(FieldMatrix(self.field, self.constants[:, i, :].T) for i in range(self.dim))

    @cached_property
    def unit(self) -> np.ndarray:
        return self.basis_vector(self.unit_index)

    @cached_property
    def word_expansion(self):
        """Express every basis element as a combination of generator words.

        Returns ``(words, coeffs)`` where ``words`` is a list of tuples of
        generator positions and ``coeffs[i]`` gives ``e_i`` as a combination
        of the corresponding word products.  Used to derive full-basis
        actions of a module from its generator actions.
        """
        words = [()]
        vecs = [self.unit]
        frontier = [((), self.unit)]
        span = np.array([self.unit])
        while frontier:
            nxt = []
            for w, v in frontier:
                for gi, g in enumerate(self.generators):
                    u = self.mul(v, self.basis_vector(g))
                    cand = np.vstack([span, u])
                    if rank(FieldMatrix(self.field, cand)) > span.shape[0]:
                        span = cand
                        words.append(w + (gi,))
                        vecs.append(u)
                        nxt.append((w + (gi,), u))
            frontier = nxt
        if len(words) != self.dim:
            raise InvariantError(f"{self.name}: generators span only {len(words)} of {self.dim} dimensions")
        w_mat = FieldMatrix(self.field, np.array(vecs).T)
        coeffs = solve(w_mat, FieldMatrix.identity(self.field, self.dim))
        return words, coeffs

    def augmentation(self, v) -> int:
        """Scalar part of ``v`` modulo the radical (the algebra is local)."""
        m = hstack(self.field, [FieldMatrix.column(self.field, self.unit), self.radical_basis], rows=self.dim)
        x = solve(m, FieldMatrix.column(self.field, v))
        return x[0, 0]

    @cached_property
    def generator_augmentations(self) -> tuple:
        return tuple(self.augmentation(self.basis_vector(g)) for g in self.generators)

    # -- verification -----------------------------------------------------

    def _verify(self):
        p, d, c = self.p, self.dim, self.constants
        if d == 0:
            raise InvariantError("algebra must be nonzero")
        if not 0 <= self.unit_index < d:
            raise InvariantError("unit index out of range")
        eye = np.eye(d, dtype=np.int64)
        if not (np.array_equal(c[self.unit_index], eye) and np.array_equal(c[:, self.unit_index, :], eye)):
            raise InvariantError(f"{self.name}: e_{self.unit_index} is not a two-sided unit")
        # Associativity: left multiplication is a homomorphism of algebras.
        left = [r.array for r in self.left_regular]
        for i in range(d):
            for j in range(d):
                lhs = (left[i] @ left[j]) % p
                rhs = np.tensordot(c[i, j], np.array(left), axes=(0, 0)) % p
                if not np.array_equal(lhs, rhs):
                    raise InvariantError(f"{self.name}: associativity fails at ({self.labels[i]}, {self.labels[j]})")
        self._verify_radical()
        self.word_expansion  # noqa: B018 - raises if generators do not generate

    def _verify_radical(self):
        rad = self.radical_basis
        if rad.rows != self.dim:
            raise InvariantError("radical basis has the wrong number of rows")
        r = rank(rad)
        if r != rad.cols:
            raise InvariantError("radical basis columns are dependent")
        if self.dim - r != 1:
            raise InvariantError(f"{self.name}: only local algebras are supported (dim A/rad = {self.dim - r})")
        if rank(hstack(self.field, [rad, FieldMatrix.column(self.field, self.unit)])) != r + 1:
            raise InvariantError("the unit lies in the radical")
        for mats in (self.left_regular, self.right_regular):
            for m in mats:
                if r and rank(hstack(self.field, [rad, m @ rad])) != r:
                    raise InvariantError(f"{self.name}: radical is not a two-sided ideal")
        # Nilpotency: rad^k shrinks to zero within dim steps.
        power = rad
        for _ in range(self.dim + 1):
            if power.cols == 0 or rank(power) == 0:
                return
            prods = [
                FieldMatrix.column(self.field, self.mul(rad.col(a), power.col(b)))
                for a in range(rad.cols)
                for b in range(power.cols)
            ]
            power = hstack(self.field, prods, rows=self.dim)
        raise InvariantError(f"{self.name}: radical is not nilpotent")

    @cached_property
    def radical_elements(self) -> list:
        return [self.radical_basis.col(j).copy() for j in range(self.radical_basis.cols)]

    def radical_power_dims(self) -> list:
        """Dimensions of rad^1, rad^2, ... down to 0."""
        dims = []
        power = self.radical_basis
        while power.cols and rank(power):
            dims.append(rank(power))
            prods = [
                FieldMatrix.column(self.field, self.mul(a, power.col(b)))
                for a in self.radical_elements
                for b in range(power.cols)
            ]
            power = hstack(self.field, prods, rows=self.dim)
        return dims


# -- catalog ----------------------------------------------------------------


def _sq_zero_labels(n: int) -> list:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i}" for i in range(1, n + 1)]


@lru_cache(maxsize=None)
def mk_local_sq_zero(n: int, p: int) -> Algebra:
    """F_p[x_1..x_n] modulo the square of the maximal ideal."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"local_sq_zero needs n >= 1, got {n!r}")
    d = n + 1
    c = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        c[0, i, i] = c[i, 0, i] = 1
    rad = np.zeros((d, n), dtype=np.int64)
    for i in range(n):
        rad[i + 1, i] = 1
    return Algebra(
        p,
        ["1"] + _sq_zero_labels(n),
        c,
        0,
        range(1, d),
        FieldMatrix(p, rad),
        True,
        f"local_sq_zero({n},{p})",
    )


@lru_cache(maxsize=None)
def mk_cyclic_group_algebra(m: int, p: int) -> Algebra:
    """Group algebra F_p[Z/m] for m a power of p; basis 1, s, s^2, ..."""
    PrimeField(p)
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"group order must be positive, got {m!r}")
    q = m
    while q % p == 0:
        q //= p
    if q != 1:
        raise ValueError(f"cyclic_group({m},{p}): order must be a power of {p} so the algebra is local")
    c = np.zeros((m, m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            c[i, j, (i + j) % m] = 1
    rad = np.zeros((m, m - 1), dtype=np.int64)
    for i in range(1, m):
        rad[i, i - 1] = 1
        rad[0, i - 1] = p - 1
    labels = ["1"] + ["s" if i == 1 else f"s^{i}" for i in range(1, m)]
    return Algebra(p, labels, c, 0, [1] if m > 1 else [], FieldMatrix(p, rad, shape=(m, m - 1)), True, f"cyclic_group({m},{p})")


@lru_cache(maxsize=None)
def mk_trunc_poly(e: int, p: int) -> Algebra:
    """F_p[x]/(x^e); basis 1, x, ..., x^{e-1}."""
    if not isinstance(e, int) or e < 2:
        raise ValueError(f"trunc_poly needs e >= 2, got {e!r}")
    c = np.zeros((e, e, e), dtype=np.int64)
    for i in range(e):
        for j in range(e - i):
            c[i, j, i + j] = 1
    rad = np.zeros((e, e - 1), dtype=np.int64)
    for i in range(1, e):
        rad[i, i - 1] = 1
    labels = ["1", "x"] + [f"x^{i}" for i in range(2, e)]
    return Algebra(p, labels, c, 0, [1], FieldMatrix(p, rad), True, f"trunc_poly({e},{p})")


@lru_cache(maxsize=None)
def ground_field(p: int) -> Algebra:
    """F_p as a one-dimensional algebra; modules over it are vector spaces."""
    return Algebra(p, ["1"], np.ones((1, 1, 1), dtype=np.int64), 0, [], FieldMatrix.zeros(p, 1, 0), True, f"F_{p}")


_RING_RE = re.compile(r"^(local_sq_zero|cyclic_group|trunc_poly)\((\d+),(\d+)\)$")
_CONSTRUCTORS = {
    "local_sq_zero": mk_local_sq_zero,
    "cyclic_group": mk_cyclic_group_algebra,
    "trunc_poly": mk_trunc_poly,
}


def parse_ring(spec: str) -> Algebra:
    """Parse ``local_sq_zero(n,p)``, ``cyclic_group(m,p)`` or ``trunc_poly(e,p)``.

    Whitespace is ignored; names are case-sensitive.
    """
    compact = re.sub(r"\s+", "", spec)
    m = _RING_RE.match(compact)
    if not m:
        raise ValueError(f"unrecognised ring spec {spec!r}")
    return _CONSTRUCTORS[m.group(1)](int(m.group(2)), int(m.group(3)))


def is_quasi_frobenius(a: Algebra) -> bool:
    """True iff the regular module is injective (projectives = injectives)."""
    from .modrep import is_injective, regular

    return is_injective(regular(a))


def is_sq_zero_two(a: Algebra) -> bool:
    """Whether ``a`` is k[x,y]/(x,y)^2, the ring the two explicit counterexample families live over."""
    return a.name.startswith("local_sq_zero(2,")

