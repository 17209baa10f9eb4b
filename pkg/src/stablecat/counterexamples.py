"""Four explicit complexes over k[x,y]/(x,y)^2 separating exactness from
total acyclicity.

Terms are sums of copies of R (basis 1, x, y) or J (basis α, β, γ, with
x·β = γ and y·α = γ).  Copy ``i`` (counted from 1) occupies coordinates
``3(i-1) .. 3(i-1)+2``.  The window is ``[0, depth]`` and ranks grow
geometrically so that every interior degree matches the unbounded complex.

=======  ============================================  =====================
kind     differential on copy i                        rank in degree n
=======  ============================================  =====================
inj_X    α_i -> γ_{2i-1}, β_i -> γ_{2i}                base * 2^(depth-n)
inj_Y    α_{2i-1} -> γ_i, β_{2i} -> γ_i                base * 2^n
proj_X   1_{2i-1} -> x_i, 1_{2i} -> y_i                base * 2^n
proj_Y   1_i -> x_{2i} + y_{2i-1}                      base * 2^(depth-n)
=======  ============================================  =====================
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import mk_local_sq_zero
from .complexes import WindowedComplex, hom_complex, homology_table, is_interior_exact, sphere
from .errors import DimensionError, PreconditionError
from .exactla import FieldMatrix
from .modrep import LEFT, cofree, free, injective_module

KINDS = ("inj_X", "inj_Y", "proj_X", "proj_Y")

CLI_NAMES = {
    "inj-exact-not-total": "inj_X",
    "inj-acyclic-not-exact": "inj_Y",
    "proj-exact-not-firm": "proj_X",
    "proj-firm-not-exact": "proj_Y",
}

ALPHA, BETA, GAMMA = 0, 1, 2
ONE, X, Y = 0, 1, 2


@dataclass(frozen=True)
class CounterexampleSpec:
    kind: str
    p: int = 2
    depth: int = 4
    base: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DimensionError(f"unknown counterexample kind {self.kind!r}; expected one of {KINDS}")
        if self.depth < 3:
            raise DimensionError("depth must be at least 3")
        if self.base < 1:
            raise DimensionError("base must be at least 1")

    @property
    def injective(self) -> bool:
        return self.kind.startswith("inj")

    def rank(self, n: int) -> int:
        if self.kind in ("inj_X", "proj_Y"):
            return self.base * 2 ** (self.depth - n)
        return self.base * 2**n


def _c(i: int, slot: int) -> int:
    """Coordinate of basis element ``slot`` in copy ``i`` (1-indexed)."""
    return 3 * (i - 1) + slot


def _differential(kind: str, src_rank: int, tgt_rank: int) -> np.ndarray:
    d = np.zeros((3 * tgt_rank, 3 * src_rank), dtype=np.int64)
    if kind == "inj_X":
        for i in range(1, src_rank + 1):
            d[_c(2 * i - 1, GAMMA), _c(i, ALPHA)] = 1
            d[_c(2 * i, GAMMA), _c(i, BETA)] = 1
    elif kind == "inj_Y":
        for i in range(1, tgt_rank + 1):
            d[_c(i, GAMMA), _c(2 * i - 1, ALPHA)] = 1
            d[_c(i, GAMMA), _c(2 * i, BETA)] = 1
    elif kind == "proj_X":
        for i in range(1, tgt_rank + 1):
            d[_c(i, X), _c(2 * i - 1, ONE)] = 1
            d[_c(i, Y), _c(2 * i, ONE)] = 1
    else:
        for i in range(1, src_rank + 1):
            d[_c(2 * i, X), _c(i, ONE)] = 1
            d[_c(2 * i - 1, Y), _c(i, ONE)] = 1
    return d


def build(spec: CounterexampleSpec) -> WindowedComplex:
    """The windowed complex for ``spec``, tagged by individual R or J copies."""
    a = mk_local_sq_zero(2, spec.p)
    letter = "J" if spec.injective else "R"
    make = cofree if spec.injective else free
    terms, diffs, tags = {}, {}, {}
    for n in range(spec.depth + 1):
        r = spec.rank(n)
        terms[n] = make(a, r, LEFT)
        tags[n] = [(f"{letter}{i}", (_c(i, 0), _c(i, 1), _c(i, 2))) for i in range(1, r + 1)]
    for n in range(1, spec.depth + 1):
        diffs[n] = FieldMatrix(spec.p, _differential(spec.kind, spec.rank(n), spec.rank(n - 1)))
    return WindowedComplex(0, spec.depth, terms, diffs, tags, name=spec.kind)


def by_name(name: str, p: int = 2, depth: int = 4, base: int = 1) -> CounterexampleSpec:
    """Spec from a CLI name such as ``inj-exact-not-total`` or a kind such as ``inj_X``."""
    kind = CLI_NAMES.get(name, name)
    return CounterexampleSpec(kind, p, depth, base)


def hom_J_report(spec: CounterexampleSpec) -> dict:
    """Hom(J, X) for an injective counterexample: dimensions, homology, matrices."""
    if not spec.injective:
        raise PreconditionError("hom_J_report needs an injective counterexample")
    x = build(spec)
    j = injective_module(mk_local_sq_zero(2, spec.p))
    h = hom_complex(sphere(0, j, window=(0, 0)), x)
    out = {
        "window": [h.lo, h.hi],
        "dims": {str(n): d for n, d in h.dims().items()},
        "homology": {str(n): d for n, d in homology_table(h).items()},
        "interior_exact": is_interior_exact(h),
    }
    if spec.kind == "inj_Y":
        out["differentials"] = {str(n): h.d(n).tolist() for n in range(h.lo + 1, h.hi + 1)}
    out["complex"] = h
    return out


def named_vector(dim: int, entries: dict, p: int) -> np.ndarray:
    """Coordinate vector with ``{(copy, slot): coeff}`` entries."""
    v = np.zeros(dim, dtype=np.int64)
    for (i, slot), c in entries.items():
        v[_c(i, slot)] = c % p
    return v


__all__ = ["CounterexampleSpec", "KINDS", "CLI_NAMES", "build", "by_name", "hom_J_report", "named_vector"]
