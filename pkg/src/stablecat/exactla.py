"""Exact dense linear algebra over prime fields.

Every matrix in stablecat is a :class:`FieldMatrix`: an immutable int64 array
with entries reduced modulo a prime ``p``.  Row reduction is the hot kernel;
it runs in the compiled ``_rref`` extension when that is importable and in a
numpy fallback otherwise (set ``STABLECAT_PURE=1`` to force the fallback).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionError

if os.environ.get("STABLECAT_PURE"):
    from ._rref_py import rref_inplace as _rref_inplace

    BACKEND = "python"
else:
    try:
        from ._rref import rref_inplace as _rref_inplace

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        from ._rref_py import rref_inplace as _rref_inplace

        BACKEND = "python"

_MAX_P = 2**31 - 1
_I64_LIMIT = 2**63 - 1


@lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p, 2 <= p <= 2^31 - 1."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not 2 <= self.p <= _MAX_P:
            raise ValueError(f"field modulus must be a prime in [2, 2^31-1], got {self.p!r}")
        if not _is_prime(int(self.p)):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "p", int(self.p))

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def __repr__(self):
        return f"F_{self.p}"


def _as_field(field) -> PrimeField:
    return field if isinstance(field, PrimeField) else PrimeField(field)


class FieldMatrix:
    """Immutable dense matrix over F_p.

    Entries live in a read-only int64 array of shape ``(rows, cols)``.
    Construction copies and reduces; internal code uses :meth:`_wrap` to skip
    both when it already holds a reduced private array.
    """

    __slots__ = ("field", "_a", "_hash")

    def __init__(self, field, data, shape=None):
        self.field = _as_field(field)
        a = np.array(data, dtype=object if _needs_object(data) else np.int64)
        if shape is not None:
            a = a.reshape(shape)
        if a.ndim != 2:
            if a.size == 0 and shape is None:
                a = a.reshape(0, 0)
            else:
                raise DimensionError(f"matrix data must be 2-dimensional, got shape {a.shape}")
        a = np.asarray(a % self.field.p, dtype=np.int64)
        a = np.ascontiguousarray(a)
        a.setflags(write=False)
        self._a = a
        self._hash = None

    @classmethod
    def _wrap(cls, field: PrimeField, arr: np.ndarray) -> "FieldMatrix":
        m = cls.__new__(cls)
        m.field = field
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        m._a = arr
        m._hash = None
        return m

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "FieldMatrix":
        return cls._wrap(_as_field(field), np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field, n: int) -> "FieldMatrix":
        return cls._wrap(_as_field(field), np.eye(n, dtype=np.int64))

    @classmethod
    def column(cls, field, values) -> "FieldMatrix":
        values = list(values)
        return cls(field, values, shape=(len(values), 1))

    # -- accessors ---------------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    @property
    def entries(self) -> tuple:
        """Row-major entries."""
        return tuple(int(x) for x in self._a.ravel())

    @property
    def T(self) -> "FieldMatrix":
        return FieldMatrix._wrap(self.field, self._a.T.copy())

    def tolist(self) -> list:
        return self._a.tolist()

    def __getitem__(self, key):
        out = self._a[key]
        if np.ndim(out) == 0:
            return int(out)
        if np.ndim(out) != 2:
            raise IndexError("use sub() for row/column extraction")
        return FieldMatrix._wrap(self.field, out.copy())

    def sub(self, rows, cols) -> "FieldMatrix":
        """Submatrix on the given row and column index lists."""
        rows = list(rows)
        cols = list(cols)
        return FieldMatrix._wrap(self.field, self._a[np.ix_(rows, cols)].reshape(len(rows), len(cols)).copy())

    def col(self, j: int) -> np.ndarray:
        return self._a[:, j]

    def is_zero(self) -> bool:
        return not self._a.any()

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "FieldMatrix"):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        if other.field != self.field:
            raise DimensionError(f"field mismatch: {self.field} vs {other.field}")
        return True

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} + {other.shape}")
        return FieldMatrix._wrap(self.field, (self._a + other._a) % self.p)

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} - {other.shape}")
        return FieldMatrix._wrap(self.field, (self._a - other._a) % self.p)

    def __neg__(self):
        return FieldMatrix._wrap(self.field, (-self._a) % self.p)

    def __rmul__(self, scalar):
        if not isinstance(scalar, (int, np.integer)):
            return NotImplemented
        s = int(scalar) % self.p
        return FieldMatrix._wrap(self.field, (self._a * s) % self.p)

    __mul__ = __rmul__

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        return FieldMatrix._wrap(self.field, _matmul(self._a, other._a, self.p))

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and np.array_equal(self._a, other._a)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.shape, self._a.tobytes()))
        return self._hash

    def __repr__(self):
        return f"FieldMatrix({self.field}, {self.tolist()})"


def _needs_object(data) -> bool:
    # Python ints beyond int64 must be reduced before the int64 cast.
    try:
        arr = np.asarray(data)
    except (OverflowError, ValueError):
        return True
    return arr.dtype == object


def _matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    inner = a.shape[1]
    if inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    bound = (p - 1) ** 2
    chunk = max(1, _I64_LIMIT // max(bound, 1))
    if inner <= chunk:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    step = max(1, chunk - 1)
    for s in range(0, inner, step):
        out = (out + (a[:, s : s + step] @ b[s : s + step, :]) % p) % p
    return out


# -- stacking helpers -----------------------------------------------------


def hstack(field, mats, rows: int | None = None) -> FieldMatrix:
    field = _as_field(field)
    mats = list(mats)
    if not mats:
        return FieldMatrix.zeros(field, rows or 0, 0)
    return FieldMatrix._wrap(field, np.hstack([m.array for m in mats]))


def vstack(field, mats, cols: int | None = None) -> FieldMatrix:
    field = _as_field(field)
    mats = list(mats)
    if not mats:
        return FieldMatrix.zeros(field, 0, cols or 0)
    return FieldMatrix._wrap(field, np.vstack([m.array for m in mats]))


def block_diag(field, mats) -> FieldMatrix:
    field = _as_field(field)
    mats = list(mats)
    r = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    out = np.zeros((r, c), dtype=np.int64)
    i = j = 0
    for m in mats:
        out[i : i + m.rows, j : j + m.cols] = m.array
        i += m.rows
        j += m.cols
    return FieldMatrix._wrap(field, out)


# -- core operations ------------------------------------------------------


def _rref_array(a: np.ndarray, p: int):
    work = np.array(a, dtype=np.int64, order="C", copy=True)
    if work.size == 0:
        return work, []
    pivots = _rref_inplace(work, p)
    return work, list(pivots)


def rref(m: FieldMatrix):
    """Reduced row-echelon form and pivot columns.

    Pivots are chosen as the first nonzero entry scanning down each column;
    the reduced form is unique, so both backends agree bit for bit.
    """
    work, pivots = _rref_array(m.array, m.p)
    return FieldMatrix._wrap(m.field, work), pivots


def rank(m: FieldMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref_array(m.array, m.p)[1])


def _kernel_from_rref(r: np.ndarray, pivots, cols: int, p: int):
    piv_set = set(pivots)
    free = [j for j in range(cols) if j not in piv_set]
    k = np.zeros((cols, len(free)), dtype=np.int64)
    for t, j in enumerate(free):
        k[j, t] = 1
        for i, c in enumerate(pivots):
            if r[i, j]:
                k[c, t] = (-r[i, j]) % p
    return k, free


def kernel_basis(m: FieldMatrix) -> FieldMatrix:
    """Columns spanning ``{v : m v = 0}``, one per non-pivot column of rref(m)."""
    r, pivots = _rref_array(m.array, m.p)
    k, _ = _kernel_from_rref(r, pivots, m.cols, m.p)
    return FieldMatrix._wrap(m.field, k)


def kernel_with_free(m: FieldMatrix):
    """Kernel basis plus its free coordinates.

    The basis vector for free column ``j`` has a 1 at ``j`` and 0 at every
    other free column, so the coordinates of any kernel vector ``v`` are just
    ``v[free]``.
    """
    r, pivots = _rref_array(m.array, m.p)
    k, free = _kernel_from_rref(r, pivots, m.cols, m.p)
    return FieldMatrix._wrap(m.field, k), free


def solve(m: FieldMatrix, b: FieldMatrix) -> FieldMatrix | None:
    """A solution ``x`` of ``m x = b``, or ``None`` if some column of ``b`` is unreachable.

    Free variables are set to zero, so the answer is deterministic.
    """
    if m.field != b.field:
        raise DimensionError(f"field mismatch: {m.field} vs {b.field}")
    if m.rows != b.rows:
        raise DimensionError(f"solve: {m.shape} against right-hand side {b.shape}")
    n = m.cols
    if m.rows == 0:
        return FieldMatrix.zeros(m.field, n, b.cols)
    aug = np.hstack([m.array, b.array])
    r, pivots = _rref_array(aug, m.p)
    if pivots and pivots[-1] >= n:
        return None
    x = np.zeros((n, b.cols), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = r[i, n:]
    return FieldMatrix._wrap(m.field, x)


def kron(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    if a.field != b.field:
        raise DimensionError(f"field mismatch: {a.field} vs {b.field}")
    p = a.p
    if (p - 1) ** 2 <= _I64_LIMIT:
        out = np.kron(a.array, b.array) % p
    else:  # pragma: no cover - only for p close to 2^31 on exotic builds
        out = np.kron(a.array.astype(object), b.array.astype(object)) % p
    return FieldMatrix._wrap(a.field, np.asarray(out, dtype=np.int64))


def inverse(m: FieldMatrix) -> FieldMatrix | None:
    if m.rows != m.cols:
        raise DimensionError("inverse of a non-square matrix")
    return solve(m, FieldMatrix.identity(m.field, m.rows)) if rank(m) == m.rows else None


def row_space_basis(m: FieldMatrix) -> FieldMatrix:
    """Nonzero rows of rref(m): the canonical basis of the row space."""
    r, pivots = _rref_array(m.array, m.p)
    return FieldMatrix._wrap(m.field, r[: len(pivots)].copy())


def column_space(m: FieldMatrix) -> FieldMatrix:
    """Canonical (echelonised) basis of the column space, as columns."""
    return row_space_basis(m.T).T


def in_column_space(m: FieldMatrix, v: FieldMatrix) -> bool:
    return solve(m, v) is not None


def intersection_dim(u: FieldMatrix, w: FieldMatrix) -> int:
    """dim(span u  ∩  span w) for column-spanning matrices."""
    both = hstack(u.field, [u, w], rows=u.rows)
    return rank(u) + rank(w) - rank(both)
