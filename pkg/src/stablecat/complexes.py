"""Windowed chain complexes, Hom and tensor complexes, homotopies,
degreewise split extensions, and tag-based covering algorithms.

A ``WindowedComplex`` stores terms ``X_n`` for ``lo <= n <= hi`` and
differentials ``d_n : X_n -> X_{n-1}`` for ``lo < n <= hi``.  Exactness is
only ever asserted at interior degrees ``lo < n < hi``.  Chain maps,
homotopies and extensions treat the window as a bounded complex that is
zero outside it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import Algebra, ground_field, parse_ring
from .errors import DimensionError, InconsistencyError, InvariantError, PreconditionError
from .exactla import (
    FieldMatrix,
    block_diag,
    column_space,
    hstack,
    in_column_space,
    kernel_basis,
    kron,
    rank,
    rref,
    solve,
    vstack,
)
from .modrep import (
    LEFT,
    RIGHT,
    Module,
    Morphism,
    builtin,
    hom_basis,
    is_projective,
    module_from_json,
    module_to_json,
    quotient,
    submodule,
    tensor_morphisms,
    tensor_over_R,
    vector_space,
)


def _zero(algebra: Algebra, side: str) -> Module:
    return Module(algebra, side, 0, [FieldMatrix.zeros(algebra.field, 0, 0)] * len(algebra.generators), check=False)


def _normalize_tags(tags, lo, hi):
    if tags is None:
        return None
    out = {}
    for n in range(lo, hi + 1):
        raw = tags.get(n, tags.get(str(n), ())) if isinstance(tags, dict) else ()
        out[n] = tuple((str(lbl), tuple(int(c) for c in coords)) for lbl, coords in raw)
    return out


class WindowedComplex:
    """Chain complex of modules over one algebra and side, on a finite window."""

    def __init__(self, lo: int, hi: int, terms, diffs=None, tags=None, name: str | None = None, check: bool = True):
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise DimensionError(f"empty window [{lo}, {hi}]")
        if not isinstance(terms, dict):
            terms = {lo + i: t for i, t in enumerate(terms)}
        if set(terms) != set(range(lo, hi + 1)):
            raise DimensionError(f"terms must cover degrees {lo}..{hi}, got {sorted(terms)}")
        first = terms[lo]
        for n, t in terms.items():
            if t.algebra != first.algebra or t.side != first.side:
                raise InvariantError(f"term in degree {n} lives over a different algebra or side")
        self.lo, self.hi = lo, hi
        self.algebra: Algebra = first.algebra
        self.side: str = first.side
        self.name = name
        self._terms = dict(terms)
        diffs = dict(diffs or {})
        stray = [n for n in diffs if not lo < int(n) <= hi]
        if stray:
            raise DimensionError(f"differentials outside the window: {stray}")
        self._diffs = {}
        fld = self.algebra.field
        for n in range(lo + 1, hi + 1):
            src, tgt = terms[n], terms[n - 1]
            d = diffs.get(n)
            if d is None:
                mat = FieldMatrix.zeros(fld, tgt.dim, src.dim)
            elif isinstance(d, Morphism):
                if d.source != src or d.target != tgt:
                    raise InvariantError(f"differential d_{n} has the wrong source or target")
                mat = d.matrix
            elif isinstance(d, FieldMatrix):
                mat = d
            else:
                mat = FieldMatrix(fld, d, shape=(tgt.dim, src.dim))
            if mat.shape != (tgt.dim, src.dim):
                raise DimensionError(f"d_{n} has shape {mat.shape}, expected {(tgt.dim, src.dim)}")
            self._diffs[n] = mat
        self.tags = _normalize_tags(tags, lo, hi)
        if check:
            self.verify()

    # -- access ---------------------------------------------------------

    @property
    def field(self):
        return self.algebra.field

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def window(self) -> tuple:
        return (self.lo, self.hi)

    @property
    def interior(self) -> range:
        return range(self.lo + 1, self.hi)

    def term(self, n: int) -> Module:
        if self.lo <= n <= self.hi:
            return self._terms[n]
        return _zero(self.algebra, self.side)

    def d(self, n: int) -> FieldMatrix:
        """Matrix of ``d_n : X_n -> X_{n-1}``; zero outside the window."""
        if self.lo < n <= self.hi:
            return self._diffs[n]
        return FieldMatrix.zeros(self.field, self.term(n - 1).dim, self.term(n).dim)

    def diff(self, n: int) -> Morphism:
        return Morphism(self.term(n), self.term(n - 1), self.d(n), check=False)

    def dims(self) -> dict:
        return {n: self._terms[n].dim for n in range(self.lo, self.hi + 1)}

    def tag_counts(self) -> dict:
        if self.tags is None:
            return {}
        return {n: len(self.tags[n]) for n in range(self.lo, self.hi + 1)}

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"WindowedComplex{label}[{self.lo},{self.hi}] dims={list(self.dims().values())}"

    def __eq__(self, other):
        if not isinstance(other, WindowedComplex):
            return NotImplemented
        return (
            self.window == other.window
            and all(self._terms[n] == other._terms[n] for n in self._terms)
            and all(self._diffs[n] == other._diffs[n] for n in self._diffs)
        )

    __hash__ = None

    # -- invariants -----------------------------------------------------

    def verify(self):
        for n in range(self.lo + 1, self.hi + 1):
            d = self._diffs[n]
            for a_src, a_tgt in zip(self._terms[n].action, self._terms[n - 1].action):
                if a_tgt @ d != d @ a_src:
                    raise InvariantError(f"d_{n} is not a module homomorphism")
            if n > self.lo + 1 and not (self._diffs[n - 1] @ d).is_zero():
                raise InvariantError(f"d_{n - 1} d_{n} != 0")
        if self.tags is not None:
            for n, tags in self.tags.items():
                _check_tags(self._terms[n], tags, n)
        return True


def _check_tags(m: Module, tags, n: int):
    seen = sorted(c for _, coords in tags for c in coords)
    if seen != list(range(m.dim)):
        raise InvariantError(f"tags in degree {n} do not partition the coordinates")
    for label, coords in tags:
        rest = [c for c in range(m.dim) if c not in set(coords)]
        for a in m.action:
            if rest and coords and np.any(a.array[np.ix_(rest, list(coords))]):
                raise InvariantError(f"tag {label!r} in degree {n} is not a submodule")


def block_tags(m: Module, block: int, prefix: str = "e") -> tuple:
    """Tags for consecutive coordinate blocks of size ``block`` (one per free copy)."""
    if block <= 0 or m.dim % block:
        raise DimensionError(f"dimension {m.dim} is not a multiple of {block}")
    return tuple((f"{prefix}{i + 1}", tuple(range(i * block, (i + 1) * block))) for i in range(m.dim // block))


# -- homology -----------------------------------------------------------


def _require_interior(x: WindowedComplex, n: int):
    if not x.lo < n < x.hi:
        raise DimensionError(f"degree {n} is not interior to the window [{x.lo}, {x.hi}]")


def cycles(x: WindowedComplex, n: int) -> FieldMatrix:
    return kernel_basis(x.d(n))


def boundaries(x: WindowedComplex, n: int) -> FieldMatrix:
    return x.d(n + 1)


def homology_dim(x: WindowedComplex, n: int) -> int:
    """dim Z_n - dim B_n at an interior degree."""
    _require_interior(x, n)
    return cycles(x, n).cols - rank(x.d(n + 1))


def homology_at(x: WindowedComplex, n: int):
    """``(dim H_n, H_n as a module)`` at an interior degree."""
    _require_interior(x, n)
    z = cycles(x, n)
    zmod, inc = submodule(x.term(n), z)
    b = x.d(n + 1)
    if b.cols:
        coords = solve(inc.matrix, b)
        if coords is None:
            raise InconsistencyError(f"boundaries in degree {n} are not cycles")
    else:
        coords = FieldMatrix.zeros(x.field, zmod.dim, 0)
    h, _ = quotient(zmod, coords)
    return h.dim, h


def homology_witness(x: WindowedComplex, n: int):
    """A cycle that is not a boundary at interior degree ``n``, or ``None``.

    Scans the rows of the reduced echelon form of the cycle basis and
    returns the first one outside the boundaries.
    """
    _require_interior(x, n)
    z = cycles(x, n)
    if z.cols == 0:
        return None
    r, piv = rref(z.T)
    b = x.d(n + 1)
    for i in range(len(piv)):
        v = FieldMatrix._wrap(x.field, r.array[i].reshape(-1, 1).copy())
        if b.cols == 0 or not in_column_space(b, v):
            return r.array[i].copy()
    return None


def verify_witness(x: WindowedComplex, n: int, vec) -> bool:
    """True when ``vec`` is a cycle at interior degree ``n`` and not a boundary."""
    if not x.lo < n < x.hi:
        return False
    v = FieldMatrix(x.field, np.asarray(vec, dtype=np.int64).reshape(-1, 1), shape=(x.term(n).dim, 1))
    if v.is_zero() or not (x.d(n) @ v).is_zero():
        return False
    b = x.d(n + 1)
    return b.cols == 0 or not in_column_space(b, v)


def first_nonexact(x: WindowedComplex):
    """``(n, witness)`` at the lowest interior degree with homology, else ``None``."""
    for n in x.interior:
        if homology_dim(x, n):
            return n, homology_witness(x, n)
    return None


def is_interior_exact(x: WindowedComplex) -> bool:
    return all(homology_dim(x, n) == 0 for n in x.interior)


def homology_table(x: WindowedComplex) -> dict:
    return {n: homology_dim(x, n) for n in x.interior}


# -- constructors -------------------------------------------------------


def sphere(n: int, m: Module, window: tuple | None = None) -> WindowedComplex:
    """S^n(M): ``M`` in degree ``n``, zero elsewhere.  Default window [n-1, n+1]."""
    lo, hi = window if window is not None else (n - 1, n + 1)
    if not lo <= n <= hi:
        raise DimensionError(f"degree {n} outside window [{lo}, {hi}]")
    zero = _zero(m.algebra, m.side)
    return WindowedComplex(lo, hi, {k: (m if k == n else zero) for k in range(lo, hi + 1)}, name=f"S^{n}")


def disk(n: int, m: Module, window: tuple | None = None) -> WindowedComplex:
    """D^n(M): ``M`` in degrees ``n`` and ``n-1`` joined by the identity.

    Default window [n-2, n+1], so both copies sit at interior degrees.
    """
    lo, hi = window if window is not None else (n - 2, n + 1)
    if not lo <= n - 1 < n <= hi:
        raise DimensionError(f"degrees {n - 1}, {n} outside window [{lo}, {hi}]")
    zero = _zero(m.algebra, m.side)
    terms = {k: (m if k in (n - 1, n) else zero) for k in range(lo, hi + 1)}
    return WindowedComplex(lo, hi, terms, {n: FieldMatrix.identity(m.field, m.dim)}, name=f"D^{n}")


def pad(x: WindowedComplex, below: int = 1, above: int | None = None) -> WindowedComplex:
    """Widen the window with zero terms."""
    above = below if above is None else above
    lo, hi = x.lo - below, x.hi + above
    terms = {n: x.term(n) for n in range(lo, hi + 1)}
    diffs = {n: x.d(n) for n in range(x.lo + 1, x.hi + 1)}
    tags = None
    if x.tags is not None:
        tags = {n: x.tags.get(n, ()) for n in range(lo, hi + 1)}
    return WindowedComplex(lo, hi, terms, diffs, tags, name=x.name, check=False)


def shift(x: WindowedComplex, s: int = 1) -> WindowedComplex:
    """Sigma^s X: ``(Sigma^s X)_n = X_{n-s}`` with differentials scaled by (-1)^s."""
    sign = -1 if s % 2 else 1
    terms = {n + s: x.term(n) for n in range(x.lo, x.hi + 1)}
    diffs = {n + s: (x.d(n) if sign == 1 else -x.d(n)) for n in range(x.lo + 1, x.hi + 1)}
    tags = None if x.tags is None else {n + s: t for n, t in x.tags.items()}
    return WindowedComplex(x.lo + s, x.hi + s, terms, diffs, tags, name=x.name, check=False)


def direct_sum_complex(parts, name: str | None = None) -> WindowedComplex:
    """Degreewise direct sum on the union of the windows; tags are concatenated."""
    parts = list(parts)
    if not parts:
        raise DimensionError("direct sum of no complexes")
    a, side = parts[0].algebra, parts[0].side
    lo, hi = min(x.lo for x in parts), max(x.hi for x in parts)
    terms, diffs, tags = {}, {}, {}
    with_tags = all(x.tags is not None for x in parts)
    for n in range(lo, hi + 1):
        mods = [x.term(n) for x in parts]
        dim = sum(m.dim for m in mods)
        acts = [block_diag(a.field, [m.action[g] for m in mods]) for g in range(len(a.generators))]
        terms[n] = Module(a, side, dim, acts, check=False)
        if with_tags:
            off, tn = 0, []
            for i, x in enumerate(parts):
                for lbl, coords in (x.tags.get(n, ()) if x.lo <= n <= x.hi else ()):
                    tn.append((f"{lbl}.{i + 1}" if len(parts) > 1 else lbl, tuple(c + off for c in coords)))
                off += x.term(n).dim
            tags[n] = tn
    for n in range(lo + 1, hi + 1):
        diffs[n] = block_diag(a.field, [x.d(n) for x in parts])
    return WindowedComplex(lo, hi, terms, diffs, tags if with_tags else None, name=name)


# -- Hom and tensor complexes -------------------------------------------


@dataclass(frozen=True)
class HomBlock:
    k: int
    basis: object
    offset: int


def hom_complex(x: WindowedComplex, y: WindowedComplex) -> WindowedComplex:
    """Hom(X, Y) as a complex of F_p-vector spaces.

    Degree ``n`` is the sum over ``k`` of Hom(X_k, Y_{k+n}) and
    ``(delta_n f)_k = d_{k+n} f_k - (-1)^n f_{k-1} d_k``.  The window is
    ``[Y.lo - X.hi, Y.hi - X.lo]``.  The result carries ``blocks``: for each
    degree, the summands with their Hom bases and coordinate offsets.
    """
    if x.algebra != y.algebra or x.side != y.side:
        raise PreconditionError("Hom complex needs complexes over the same algebra and side")
    lo, hi = y.lo - x.hi, y.hi - x.lo
    blocks = {}
    for n in range(lo, hi + 1):
        off, row = 0, []
        for k in range(x.lo, x.hi + 1):
            if y.lo <= k + n <= y.hi:
                hb = hom_basis(x.term(k), y.term(k + n))
                row.append(HomBlock(k, hb, off))
                off += hb.dim
        blocks[n] = (row, off)
    p = x.p
    diffs = {}
    for n in range(lo + 1, hi + 1):
        src_blocks, src_dim = blocks[n]
        tgt_blocks, tgt_dim = blocks[n - 1]
        tgt_by_k = {b.k: b for b in tgt_blocks}
        mat = np.zeros((tgt_dim, src_dim), dtype=np.int64)
        sign = -1 if n % 2 == 0 else 1  # -(-1)^n
        for blk in src_blocks:
            k, hb = blk.k, blk.basis
            if hb.dim == 0:
                continue
            fs = [hb.matrix(j) for j in range(hb.dim)]
            cols = slice(blk.offset, blk.offset + hb.dim)
            t = tgt_by_k.get(k)
            if t is not None and t.basis.dim:
                dy = y.d(k + n)
                mat[t.offset : t.offset + t.basis.dim, cols] += t.basis.coords_matrix([dy @ f for f in fs]).array
            t = tgt_by_k.get(k + 1)
            if t is not None and t.basis.dim:
                dx = x.d(k + 1)
                part = t.basis.coords_matrix([f @ dx for f in fs]).array
                mat[t.offset : t.offset + t.basis.dim, cols] += sign * part
        diffs[n] = FieldMatrix(p, mat % p)
    terms = {n: vector_space(p, blocks[n][1]) for n in range(lo, hi + 1)}
    out = WindowedComplex(lo, hi, terms, diffs, name="Hom", check=False)
    out.blocks = {n: blocks[n][0] for n in blocks}
    return out


def hom_vector_to_maps(h: WindowedComplex, n: int, vec) -> dict:
    """Split a coordinate vector of Hom(X,Y)_n into its components ``{k: f_k}``."""
    vec = np.asarray(vec, dtype=np.int64).reshape(-1)
    return {b.k: b.basis.combine(vec[b.offset : b.offset + b.basis.dim]) for b in h.blocks[n]}


def tensor_complex(a: Module, c: WindowedComplex) -> WindowedComplex:
    """A ⊗_R C for a right module ``a`` and a complex ``c`` of left modules."""
    if a.side != RIGHT or c.side != LEFT:
        raise PreconditionError("tensor_complex needs a right module and a complex of left modules")
    if a.algebra != c.algebra:
        raise PreconditionError("tensor_complex needs a module and complex over the same algebra")
    terms = {n: vector_space(c.p, tensor_over_R(a, c.term(n)).dim) for n in range(c.lo, c.hi + 1)}
    diffs = {n: tensor_morphisms(None, c.diff(n), m=a) for n in range(c.lo + 1, c.hi + 1)}
    return WindowedComplex(c.lo, c.hi, terms, diffs, name=f"A⊗{c.name or 'C'}", check=False)


def tensor_functor(a: Module) -> Callable:
    return lambda c: tensor_complex(a, c)


def identity_functor(c: WindowedComplex) -> WindowedComplex:
    return c


# -- chain maps and homotopies ------------------------------------------


@dataclass
class ChainMap:
    """Components ``f_k : X_k -> Y_k`` for the degrees where both are nonzero."""

    source: WindowedComplex
    target: WindowedComplex
    components: dict

    def component(self, k: int) -> FieldMatrix:
        if k in self.components:
            return self.components[k]
        return FieldMatrix.zeros(self.source.field, self.target.term(k).dim, self.source.term(k).dim)

    def degrees(self) -> range:
        return range(min(self.source.lo, self.target.lo), max(self.source.hi, self.target.hi) + 2)

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.components.values())

    def verify(self):
        x, y = self.source, self.target
        for k, f in self.components.items():
            for a, b in zip(x.term(k).action, y.term(k).action):
                if b @ f != f @ a:
                    raise InvariantError(f"component {k} is not a module map")
        for k in self.degrees():
            if y.d(k) @ self.component(k) != self.component(k - 1) @ x.d(k):
                raise InvariantError(f"chain map does not commute at degree {k}")
        return True


def _linearity(m: Module, n: Module) -> FieldMatrix:
    """Constraints on row-major vec(F), F : m -> n, saying F is a module map."""
    size = m.dim * n.dim
    if not size or not m.action:
        return FieldMatrix.zeros(m.field, 0, size)
    eye_m = FieldMatrix.identity(m.field, m.dim)
    eye_n = FieldMatrix.identity(m.field, n.dim)
    return vstack(m.field, [kron(b, eye_m) - kron(eye_n, a.T) for a, b in zip(m.action, n.action)], cols=size)


class _Layout:
    """Unknown layout for a family of maps ``F_k : S_k -> T_k`` (row-major entries)."""

    def __init__(self, pairs: dict):
        self.pairs = pairs
        self.offsets = {}
        off = 0
        for k in sorted(pairs):
            s, t = pairs[k]
            self.offsets[k] = off
            off += s.dim * t.dim
        self.size = off

    def block(self, k):
        s, t = self.pairs[k]
        o = self.offsets[k]
        return slice(o, o + s.dim * t.dim)

    def unpack(self, vec, p) -> dict:
        vec = np.asarray(vec, dtype=np.int64).reshape(-1)
        out = {}
        for k, (s, t) in self.pairs.items():
            out[k] = FieldMatrix(p, vec[self.block(k)].reshape(t.dim, s.dim), shape=(t.dim, s.dim))
        return out

    def pack(self, comps: dict, p) -> np.ndarray:
        vec = np.zeros(self.size, dtype=np.int64)
        for k in self.pairs:
            if k in comps:
                vec[self.block(k)] = comps[k].array.reshape(-1)
        return vec % p

    def linearity_rows(self, p) -> np.ndarray:
        rows = []
        for k, (s, t) in self.pairs.items():
            lin = _linearity(s, t).array
            if lin.shape[0]:
                r = np.zeros((lin.shape[0], self.size), dtype=np.int64)
                r[:, self.block(k)] = lin
                rows.append(r)
        return np.vstack(rows) if rows else np.zeros((0, self.size), dtype=np.int64)


def _left_mult(a: FieldMatrix, cols: int) -> np.ndarray:
    """vec(a F) as a matrix acting on row-major vec(F), F having ``cols`` columns."""
    return np.kron(a.array, np.eye(cols, dtype=np.int64))


def _right_mult(b: FieldMatrix, rows: int) -> np.ndarray:
    """vec(F b) as a matrix acting on row-major vec(F), F having ``rows`` rows."""
    return np.kron(np.eye(rows, dtype=np.int64), b.array.T)


def _map_layout(x: WindowedComplex, y: WindowedComplex, step: int) -> _Layout:
    """Layout of maps X_k -> Y_{k+step} for every k where both terms are nonzero."""
    pairs = {}
    for k in range(x.lo, x.hi + 1):
        if y.lo <= k + step <= y.hi and x.term(k).dim and y.term(k + step).dim:
            pairs[k] = (x.term(k), y.term(k + step))
    return _Layout(pairs)


def _commuting_rows(x: WindowedComplex, y: WindowedComplex, lay: _Layout) -> np.ndarray:
    """Rows of d^Y_k F_k - F_{k-1} d^X_k = 0 for all k."""
    rows = []
    for k in range(min(x.lo, y.lo), max(x.hi, y.hi) + 2):
        xs, yt = x.term(k), y.term(k - 1)
        n_eq = yt.dim * xs.dim
        if not n_eq:
            continue
        r = np.zeros((n_eq, lay.size), dtype=np.int64)
        if k in lay.pairs:
            r[:, lay.block(k)] += _left_mult(y.d(k), xs.dim)
        if k - 1 in lay.pairs:
            r[:, lay.block(k - 1)] -= _right_mult(x.d(k), yt.dim)
        rows.append(r)
    return np.vstack(rows) if rows else np.zeros((0, lay.size), dtype=np.int64)


def _chain_map_basis(x, y):
    lay = _map_layout(x, y, 0)
    p = x.p
    system = np.vstack([lay.linearity_rows(p), _commuting_rows(x, y, lay)]) % p
    basis = kernel_basis(FieldMatrix(p, system, shape=(system.shape[0], lay.size)))
    return lay, basis


def chain_map_space(x: WindowedComplex, y: WindowedComplex) -> list:
    """Basis of the chain maps X -> Y (bounded complexes, zero outside windows)."""
    if x.algebra != y.algebra or x.side != y.side:
        raise PreconditionError("chain maps need complexes over the same algebra and side")
    lay, basis = _chain_map_basis(x, y)
    return [ChainMap(x, y, lay.unpack(basis.array[:, j], x.p)) for j in range(basis.cols)]


def _homotopy_image(x, y, lay_f: _Layout) -> np.ndarray:
    """Matrix sending a module-linear homotopy s to ds + sd, in chain-map entries."""
    p = x.p
    lay_s = _map_layout(x, y, 1)
    lin = lay_s.linearity_rows(p) % p
    s_basis = kernel_basis(FieldMatrix(p, lin, shape=(lin.shape[0], lay_s.size)))
    h = np.zeros((lay_f.size, lay_s.size), dtype=np.int64)
    for k, (xs, yt) in lay_f.pairs.items():
        blk = lay_f.block(k)
        if k in lay_s.pairs:  # d^Y_{k+1} s_k
            h[blk, lay_s.block(k)] += _left_mult(y.d(k + 1), xs.dim)
        if k - 1 in lay_s.pairs:  # s_{k-1} d^X_k
            h[blk, lay_s.block(k - 1)] += _right_mult(x.d(k), yt.dim)
    return h % p, lay_s, s_basis


def null_homotopic(f: ChainMap) -> bool:
    """Whether ``f = d s + s d`` for some module-linear homotopy ``s``."""
    x, y, p = f.source, f.target, f.source.p
    lay_f = _map_layout(x, y, 0)
    lay_s = _map_layout(x, y, 1)
    lin = lay_s.linearity_rows(p)
    h, _, _ = _homotopy_image(x, y, lay_f)
    target = lay_f.pack(f.components, p)
    # f components living where a term is zero must vanish
    for k, comp in f.components.items():
        if k not in lay_f.pairs and not comp.is_zero():
            return False
    a = np.vstack([lin, h]) % p
    b = np.concatenate([np.zeros(lin.shape[0], dtype=np.int64), target])
    sol = solve(FieldMatrix(p, a, shape=a.shape), FieldMatrix(p, b.reshape(-1, 1), shape=(len(b), 1)))
    return sol is not None


def chain_maps_mod_homotopy(x: WindowedComplex, y: WindowedComplex):
    """``(dim, representatives)`` of chain maps X -> Y modulo null-homotopic ones."""
    lay, basis = _chain_map_basis(x, y)
    p = x.p
    h, _, s_basis = _homotopy_image(x, y, lay)
    null = FieldMatrix(p, h, shape=h.shape) @ s_basis
    null_rank = rank(null) if null.cols else 0
    reps, span = [], null
    for j in range(basis.cols):
        col = basis.sub(range(basis.rows), [j])
        trial = hstack(p, [span, col], rows=lay.size)
        if rank(trial) > (rank(span) if span.cols else 0):
            reps.append(ChainMap(x, y, lay.unpack(basis.array[:, j], p)))
            span = trial
    dim = (rank(hstack(p, [null, basis], rows=lay.size)) if basis.cols + null.cols else 0) - null_rank
    if dim != len(reps):
        raise InconsistencyError("homotopy class count disagrees with representatives")
    return dim, reps


# -- degreewise split extensions ----------------------------------------


@dataclass
class Extension:
    """Degreewise split short exact sequence ``Z -> E -> X`` with ``E_k = Z_k ⊕ X_k``."""

    total: WindowedComplex
    sub: WindowedComplex
    quotient: WindowedComplex


def extension_from_chain_map(f: ChainMap) -> Extension:
    """The extension of ``X`` by ``Z = Sigma^{-1} W`` classified by ``f : X -> W``.

    ``d_E = [[d_Z, f], [0, d_X]]`` on ``E_k = Z_k ⊕ X_k``.
    """
    try:
        f.verify()
    except InvariantError as exc:
        raise InvariantError(f"not a chain map: {exc}") from exc
    x, w = f.source, f.target
    z = shift(w, -1)
    a, side, fld = x.algebra, x.side, x.field
    lo, hi = min(z.lo, x.lo), max(z.hi, x.hi)
    terms, diffs = {}, {}
    for k in range(lo, hi + 1):
        zk, xk = z.term(k), x.term(k)
        acts = [block_diag(fld, [zk.action[g], xk.action[g]]) for g in range(len(a.generators))]
        terms[k] = Module(a, side, zk.dim + xk.dim, acts, check=False)
    for k in range(lo + 1, hi + 1):
        top = hstack(fld, [z.d(k), f.component(k)], rows=z.term(k - 1).dim)
        bottom = hstack(fld, [FieldMatrix.zeros(fld, x.term(k - 1).dim, z.term(k).dim), x.d(k)], rows=x.term(k - 1).dim)
        diffs[k] = vstack(fld, [top, bottom], cols=terms[k].dim)
    e = WindowedComplex(lo, hi, terms, diffs, name="E")
    return Extension(e, z, x)


def _blocks(ext: Extension, k: int):
    """Split d_E at degree k into (d_Z, tau, lower-left, d_X)."""
    e, z, x = ext.total, ext.sub, ext.quotient
    d = e.d(k).array
    zr, zc = z.term(k - 1).dim, z.term(k).dim
    return d[:zr, :zc], d[:zr, zc:], d[zr:, :zc], d[zr:, zc:]


def is_degreewise_split_extension(ext: Extension) -> bool:
    """Check ``E_k = Z_k ⊕ X_k`` as modules, with Z a subcomplex and X the quotient."""
    e, z, x = ext.total, ext.sub, ext.quotient
    if not (e.lo <= min(z.lo, x.lo) and e.hi >= max(z.hi, x.hi)):
        return False
    for k in range(e.lo, e.hi + 1):
        zk, xk, ek = z.term(k), x.term(k), e.term(k)
        if ek.dim != zk.dim + xk.dim:
            return False
        for g in range(len(e.algebra.generators)):
            expect = block_diag(e.field, [zk.action[g], xk.action[g]])
            if ek.action[g] != expect:
                return False
    for k in range(e.lo + 1, e.hi + 1):
        dz, _, low, dx = _blocks(ext, k)
        if np.any(low) or not np.array_equal(dz, z.d(k).array) or not np.array_equal(dx, x.d(k).array):
            return False
    return True


def _section_system(ext: Extension):
    """Linear system for sigma_k : X_k -> Z_k with d_Z sigma_k + tau_k = sigma_{k-1} d_X."""
    e, z, x = ext.total, ext.sub, ext.quotient
    p = e.p
    lay = _map_layout(x, z, 0)
    lin = lay.linearity_rows(p)
    rows, rhs = [lin], [np.zeros(lin.shape[0], dtype=np.int64)]
    for k in range(e.lo, e.hi + 1):
        xs, zt = x.term(k), z.term(k - 1)
        n_eq = xs.dim * zt.dim
        if not n_eq:
            continue
        r = np.zeros((n_eq, lay.size), dtype=np.int64)
        if k in lay.pairs:
            r[:, lay.block(k)] += _left_mult(z.d(k), xs.dim)
        if k - 1 in lay.pairs:
            r[:, lay.block(k - 1)] -= _right_mult(x.d(k), zt.dim)
        tau = _blocks(ext, k)[1] if e.lo < k <= e.hi else np.zeros((zt.dim, xs.dim), dtype=np.int64)
        rows.append(r)
        rhs.append(-tau.reshape(-1))
    return lay, np.vstack(rows) % p, np.concatenate(rhs) % p


def is_split_extension(ext: Extension) -> bool:
    """Whether ``E -> X`` has a section that is a chain map."""
    if not is_degreewise_split_extension(ext):
        raise InvariantError("not a degreewise split extension")
    _, a, b = _section_system(ext)
    p = ext.total.p
    return solve(FieldMatrix(p, a, shape=a.shape), FieldMatrix(p, b.reshape(-1, 1), shape=(len(b), 1))) is not None


def nonsplit_extension_dim(x: WindowedComplex, w: WindowedComplex) -> int:
    """Dimension of the degreewise split extensions of X by Sigma^{-1} W modulo split ones.

    Builds the extension ``E_f`` of every basis chain map ``f : X -> W``
    and solves jointly for coefficients ``c`` and a section ``sigma`` of the
    extension classified by ``sum c_i f_i``.
    """
    maps = chain_map_space(x, w)
    r = len(maps)
    if r == 0:
        return 0
    exts = [extension_from_chain_map(f) for f in maps]
    p = x.p
    systems = [_section_system(ext) for ext in exts]
    lay, a0, _ = systems[0]
    # all extensions share the section unknowns; only the tau blocks differ.
    # Solve a0 sigma + sum_i c_i tau_i = 0, where each system's rhs is -tau_i.
    taus = (-np.stack([s[2] for s in systems], axis=1)) % p
    joint = np.hstack([a0, taus]) % p
    sol = kernel_basis(FieldMatrix(p, joint, shape=joint.shape))
    split_rank = rank(sol.sub(range(lay.size, lay.size + r), range(sol.cols))) if sol.cols else 0
    return r - split_rank


def hom_homology_dim(x: WindowedComplex, y: WindowedComplex, n: int) -> int:
    """dim H_n Hom(X, Y), padding both windows so that ``n`` is interior."""
    # padding both by b widens the Hom window [y.lo - x.hi, y.hi - x.lo] by 2b each side
    lo, hi = y.lo - x.hi, y.hi - x.lo
    b = max(1, lo - n + 1, n - hi + 1)
    return homology_dim(hom_complex(pad(x, b), pad(y, b)), n)


def homotopy_class_dim(x: WindowedComplex, y: WindowedComplex, n: int) -> int:
    """dim of chain maps X -> Sigma^{-n} Y modulo homotopy."""
    return chain_maps_mod_homotopy(x, shift(y, -n))[0]


def extension_class_dim(x: WindowedComplex, y: WindowedComplex, n: int) -> int:
    """dim of non-split degreewise split extensions of X by Sigma^{-n-1} Y."""
    return nonsplit_extension_dim(x, shift(shift(y, -n - 1), 1))


# -- tag-selected subcomplexes ------------------------------------------


def _selection(x: WindowedComplex, seed) -> dict:
    if x.tags is None:
        raise InvariantError("complex carries no summand tags")
    sel = {n: set() for n in range(x.lo, x.hi + 1)}
    for n, items in (seed or {}).items():
        n = int(n)
        if not x.lo <= n <= x.hi:
            raise DimensionError(f"seed degree {n} outside window")
        labels = {lbl: i for i, (lbl, _) in enumerate(x.tags[n])}
        for it in items:
            i = labels[it] if isinstance(it, str) else int(it)
            if not 0 <= i < len(x.tags[n]):
                raise DimensionError(f"no tag {it!r} in degree {n}")
            sel[n].add(i)
    return sel


def _coords(x: WindowedComplex, n: int, idxs) -> list:
    return sorted(c for i in idxs for c in x.tags[n][i][1])


def support_closure(x: WindowedComplex, sel: dict) -> dict:
    """Smallest tag selection containing ``sel`` and closed under the differential."""
    out = {n: set(v) for n, v in sel.items()}
    owner = {n: {c: i for i, (_, cs) in enumerate(x.tags[n]) for c in cs} for n in range(x.lo, x.hi + 1)}
    for n in range(x.hi, x.lo, -1):
        cols = _coords(x, n, out[n])
        if not cols:
            continue
        hit = np.nonzero(np.any(x.d(n).array[:, cols], axis=1))[0]
        out[n - 1].update(owner[n - 1][int(r)] for r in hit)
    return out


def restrict(x: WindowedComplex, sel: dict, name: str | None = None) -> WindowedComplex:
    """The tag-selected subcomplex (or, for a complementary selection, the quotient)."""
    terms, diffs, tags = {}, {}, {}
    coords = {n: _coords(x, n, sel.get(n, ())) for n in range(x.lo, x.hi + 1)}
    for n in range(x.lo, x.hi + 1):
        m, cs = x.term(n), coords[n]
        acts = [FieldMatrix(x.field, a.array[np.ix_(cs, cs)], shape=(len(cs), len(cs))) for a in m.action]
        terms[n] = Module(x.algebra, x.side, len(cs), acts, check=False)
        pos = {c: j for j, c in enumerate(cs)}
        tags[n] = [(x.tags[n][i][0], tuple(pos[c] for c in x.tags[n][i][1])) for i in sorted(sel.get(n, ()))]
    for n in range(x.lo + 1, x.hi + 1):
        d = x.d(n).array
        diffs[n] = FieldMatrix(x.field, d[np.ix_(coords[n - 1], coords[n])], shape=(len(coords[n - 1]), len(coords[n])))
    return WindowedComplex(x.lo, x.hi, terms, diffs, tags, name=name, check=False)


def is_subcomplex_selection(x: WindowedComplex, sel: dict) -> bool:
    return support_closure(x, sel) == {n: set(v) for n, v in sel.items()}


@dataclass
class Subcomplex:
    """A tag-selected subcomplex of ``parent``."""

    parent: WindowedComplex
    selection: dict
    complex: WindowedComplex = field(init=False)

    def __post_init__(self):
        self.selection = {n: frozenset(self.selection.get(n, ())) for n in range(self.parent.lo, self.parent.hi + 1)}
        self.complex = restrict(self.parent, self.selection)

    def inclusion(self, n: int) -> FieldMatrix:
        cs = _coords(self.parent, n, self.selection[n])
        m = np.zeros((self.parent.term(n).dim, len(cs)), dtype=np.int64)
        for j, c in enumerate(cs):
            m[c, j] = 1
        return FieldMatrix(self.parent.p, m, shape=m.shape)

    def tag_counts(self) -> dict:
        return {n: len(v) for n, v in self.selection.items()}

    def labels(self) -> dict:
        return {n: [self.parent.tags[n][i][0] for i in sorted(v)] for n, v in self.selection.items()}

    def quotient(self) -> WindowedComplex:
        comp = {n: set(range(len(self.parent.tags[n]))) - v for n, v in self.selection.items()}
        return restrict(self.parent, comp)


def covering_subcomplex(x: WindowedComplex, seed) -> Subcomplex:
    """Smallest tag-selected subcomplex containing the seed."""
    sel = _selection(x, seed)
    if not any(sel.values()):
        raise PreconditionError("seed is empty in every degree")
    return Subcomplex(x, support_closure(x, sel))


def _complement(x: WindowedComplex, sel: dict) -> dict:
    return {n: set(range(len(x.tags[n]))) - set(sel[n]) for n in range(x.lo, x.hi + 1)}


def _first_defect(x: WindowedComplex, sel: dict, functor: Callable, with_quotient: bool):
    """Lowest failing degree as ``(degree to grow, measure)``, or ``None``.

    ``measure(selection)`` returns the homology dimension that must drop.
    A failure of the subcomplex at ``n`` is repaired in degree ``n+1``;
    a failure of the quotient at ``n`` is repaired in degree ``n``.
    """
    fx = functor(restrict(x, sel))
    for n in fx.interior:
        if homology_dim(fx, n):
            return n + 1, lambda s, n=n: homology_dim(functor(restrict(x, s)), n)
    if with_quotient:
        fq = functor(restrict(x, _complement(x, sel)))
        for n in fq.interior:
            if homology_dim(fq, n):
                return n, lambda s, n=n: homology_dim(functor(restrict(x, _complement(x, s))), n)
    return None


def exact_covering_subcomplex(
    x: WindowedComplex, seed, functor: Callable = identity_functor, pure_bottom: bool = False
) -> Subcomplex:
    """Tag-selected subcomplex containing the seed whose image under ``functor``
    is interior-exact.

    Alternates differential closure with a repair step: at the lowest failing
    degree ``n``, tags in degree ``n+1`` are tried in index order and the first
    one that lowers dim H_n is kept; if none does, the first missing tag is added.
    With ``pure_bottom`` the quotient ``X/S`` must be interior-exact too, which
    at the bottom of the window is not implied by exactness of ``S`` and ``X``.
    """
    if not is_interior_exact(functor(x)):
        raise PreconditionError("complex is not interior-exact")
    sel = _selection(x, seed)
    if not any(sel.values()):
        raise PreconditionError("seed is empty in every degree")
    sel = support_closure(x, sel)
    while True:
        defect = _first_defect(x, sel, functor, pure_bottom)
        if defect is None:
            return Subcomplex(x, sel)
        deg, measure = defect
        h = measure(sel)
        missing = [i for i in range(len(x.tags[deg])) if i not in sel[deg]] if x.lo <= deg <= x.hi else []
        if not missing:
            raise InconsistencyError(f"cannot repair homology by growing degree {deg}")
        chosen = None
        for i in missing:
            trial = {n: set(v) for n, v in sel.items()}
            trial[deg].add(i)
            trial = support_closure(x, trial)
            if measure(trial) < h:
                chosen = trial
                break
        if chosen is None:
            chosen = {n: set(v) for n, v in sel.items()}
            chosen[deg].add(missing[0])
            chosen = support_closure(x, chosen)
        sel = chosen


@dataclass
class Filtration:
    """Nested tag-selected subcomplexes ``Q_0 ⊆ Q_1 ⊆ ... = P``."""

    parent: WindowedComplex
    layers: list

    def quotients(self) -> list:
        """``Q_0, Q_1/Q_0, Q_2/Q_1, ...`` as complexes."""
        out, prev = [], {n: frozenset() for n in range(self.parent.lo, self.parent.hi + 1)}
        for layer in self.layers:
            diff = {n: layer.selection[n] - prev[n] for n in prev}
            out.append(restrict(self.parent, diff))
            prev = layer.selection
        return out

    def rank_table(self) -> list:
        return [q.tag_counts() for q in self.quotients()]

    def verify(self, functor: Callable) -> dict:
        """Recompute exactness of every layer and every successive quotient."""
        layers_ok = [is_interior_exact(functor(layer.complex)) for layer in self.layers]
        quotients_ok = [is_interior_exact(functor(q)) for q in self.quotients()]
        totals = {n: 0 for n in range(self.parent.lo, self.parent.hi + 1)}
        for row in self.rank_table():
            for n, c in row.items():
                totals[n] += c
        ranks_ok = totals == self.parent.tag_counts()
        nested = all(
            a.selection[n] <= b.selection[n] for a, b in zip(self.layers, self.layers[1:]) for n in a.selection
        )
        return {"layers_exact": layers_ok, "quotients_exact": quotients_ok, "ranks_reconcile": ranks_ok, "nested": nested}


def filtration_by_small(p_cx: WindowedComplex, a: Module) -> Filtration:
    """Filter a tagged complex of free modules by subcomplexes that stay exact under ``a ⊗ -``.

    Each step seeds the first remaining tag in the highest degree that still
    has one, and grows it inside the current quotient to an ``a ⊗``-exact
    piece (leaving an ``a ⊗``-exact quotient), which is then added to the
    previous layer.
    """
    if p_cx.tags is None:
        raise InvariantError("complex carries no summand tags")
    for n in range(p_cx.lo, p_cx.hi + 1):
        if not is_projective(p_cx.term(n)):
            raise PreconditionError(f"term in degree {n} is not projective")
    functor = tensor_functor(a)
    if not is_interior_exact(functor(p_cx)):
        raise PreconditionError("A ⊗ P is not interior-exact")
    taken = {n: set() for n in range(p_cx.lo, p_cx.hi + 1)}
    layers = []
    total = sum(len(t) for t in p_cx.tags.values())
    while sum(len(v) for v in taken.values()) < total:
        remaining = {n: sorted(set(range(len(p_cx.tags[n]))) - taken[n]) for n in taken}
        rest = restrict(p_cx, remaining)
        top = max(n for n, v in remaining.items() if v)
        piece = exact_covering_subcomplex(rest, {top: [0]}, functor, pure_bottom=True)
        for n, idxs in piece.selection.items():
            taken[n].update(remaining[n][i] for i in idxs)
        layers.append(Subcomplex(p_cx, taken))
    return Filtration(p_cx, layers)


# -- files ----------------------------------------------------------------


def complex_to_json(x: WindowedComplex) -> dict:
    out = {
        "ring": x.algebra.name,
        "side": x.side,
        "lo": x.lo,
        "hi": x.hi,
        "terms": {str(n): module_to_json(x.term(n)) for n in range(x.lo, x.hi + 1)},
        "diffs": {str(n): x.d(n).tolist() for n in range(x.lo + 1, x.hi + 1)},
    }
    if x.tags is not None:
        out["tags"] = {str(n): [[lbl, list(cs)] for lbl, cs in x.tags[n]] for n in range(x.lo, x.hi + 1)}
    return out


def complex_from_json(data: dict) -> WindowedComplex:
    """Load and verify a complex.  Terms may be inline modules or builtin names."""
    try:
        a = parse_ring(data["ring"])
        side = data.get("side", LEFT)
        lo, hi = int(data["lo"]), int(data["hi"])
        raw_terms = data["terms"]
        raw_diffs = data.get("diffs", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise InvariantError(f"malformed complex file: {exc}") from exc
    terms = {}
    for n in range(lo, hi + 1):
        t = raw_terms.get(str(n), raw_terms.get(n))
        if t is None:
            raise InvariantError(f"missing term in degree {n}")
        if isinstance(t, str):
            name = t.split(":", 1)[1] if t.startswith("builtin:") else t
            terms[n] = _zero(a, side) if name == "0" else builtin(a, name, side)
        else:
            terms[n] = module_from_json(t)
    diffs = {}
    for key, mat in raw_diffs.items():
        n = int(key)
        shape = (terms[n - 1].dim, terms[n].dim) if lo < n <= hi else None
        if shape is None:
            raise DimensionError(f"differential d_{n} outside the window")
        arr = np.asarray(mat, dtype=np.int64).reshape(shape) if shape[0] * shape[1] else np.zeros(shape, dtype=np.int64)
        diffs[n] = FieldMatrix(a.field, arr, shape=shape)
    tags = data.get("tags")
    if tags is not None:
        tags = {int(n): [(lbl, cs) for lbl, cs in v] for n, v in tags.items()}
    return WindowedComplex(lo, hi, terms, diffs, tags, name=data.get("name"))


def load_complex(path) -> WindowedComplex:
    with open(path) as fh:
        return complex_from_json(json.load(fh))


__all__ = [
    "WindowedComplex",
    "ChainMap",
    "Extension",
    "Subcomplex",
    "Filtration",
    "sphere",
    "disk",
    "pad",
    "shift",
    "direct_sum_complex",
    "block_tags",
    "homology_at",
    "homology_dim",
    "homology_witness",
    "verify_witness",
    "first_nonexact",
    "is_interior_exact",
    "homology_table",
    "hom_complex",
    "hom_vector_to_maps",
    "tensor_complex",
    "tensor_functor",
    "identity_functor",
    "chain_map_space",
    "null_homotopic",
    "chain_maps_mod_homotopy",
    "extension_from_chain_map",
    "is_degreewise_split_extension",
    "is_split_extension",
    "nonsplit_extension_dim",
    "hom_homology_dim",
    "homotopy_class_dim",
    "extension_class_dim",
    "covering_subcomplex",
    "exact_covering_subcomplex",
    "filtration_by_small",
    "support_closure",
    "restrict",
    "complex_to_json",
    "complex_from_json",
    "load_complex",
]
