"""Minimal resolutions, syzygies, Ext and Tor.

Resolutions are always minimal, so over a local algebra the number of free
generators in degree ``n`` of the resolution of ``M`` equals
``dim Ext^n(M, k)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvariantError, PreconditionError
from .exactla import FieldMatrix, hstack, kernel_basis, rank
from .modrep import (
    LEFT,
    RIGHT,
    Module,
    Morphism,
    cokernel,
    dual,
    hom_basis,
    injective_hull,
    kernel,
    projective_cover,
    tensor_morphisms,
    tensor_over_R,
    top,
    trivial,
)
from .algebra import mk_local_sq_zero


@dataclass
class Resolution:
    """A projective resolution ``P_n -> ... -> P_0 -> M`` or an injective
    coresolution ``M -> E^0 -> ... -> E^n``.

    ``maps[i]`` is ``P_{i+1} -> P_i`` (projective) or ``E^i -> E^{i+1}``
    (injective).  ``augmentation`` is ``P_0 -> M`` or ``M -> E^0``.
    """

    base: Module
    direction: str
    terms: list
    maps: list
    augmentation: Morphism
    minimal: bool = True
    syzygies: list = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def ranks(self) -> list:
        """Number of indecomposable summands of each term."""
        d = self.base.algebra.dim
        return [t.dim // d for t in self.terms]

    def verify(self):
        """Check composites vanish, exactness at every joint, and minimality."""
        p = self.base.field
        if self.direction == "projective":
            chain = [self.augmentation] + list(self.maps)  # P_0 -> M, P_1 -> P_0, ...
            if rank(self.augmentation.matrix) != self.base.dim:
                raise InvariantError("augmentation is not surjective")
            for lower, upper in zip(chain, chain[1:]):
                if not (lower.matrix @ upper.matrix).is_zero():
                    raise InvariantError("consecutive maps do not compose to zero")
                ker = kernel_basis(lower.matrix)
                if rank(upper.matrix) != ker.cols:
                    raise InvariantError("resolution is not exact")
            if self.minimal:
                for f in chain:
                    ker = kernel_basis(f.matrix)
                    rad = hstack(p, f.source.radical_action, rows=f.source.dim) if f.source.dim else ker
                    if ker.cols and rank(hstack(p, [rad, ker])) != rank(rad):
                        raise InvariantError("resolution is not minimal")
        else:
            chain = [self.augmentation] + list(self.maps)  # M -> E^0, E^0 -> E^1, ...
            if rank(self.augmentation.matrix) != self.base.dim:
                raise InvariantError("coaugmentation is not injective")
            for lower, upper in zip(chain, chain[1:]):
                if not (upper.matrix @ lower.matrix).is_zero():
                    raise InvariantError("consecutive maps do not compose to zero")
                if rank(lower.matrix) != kernel_basis(upper.matrix).cols:
                    raise InvariantError("coresolution is not exact")
        return True


def projective_resolution(m: Module, length: int) -> Resolution:
    """Minimal projective resolution through ``P_length``."""
    if length < 0:
        raise PreconditionError("resolution length must be >= 0")
    terms, maps, syz = [], [], [m]
    p0, aug = projective_cover(m)
    terms.append(p0)
    prev = aug
    for _ in range(length):
        k, inc = kernel(prev)
        syz.append(k)
        p, epi = projective_cover(k)
        d = Morphism(p, prev.source, inc.matrix @ epi.matrix, check=False)
        terms.append(p)
        maps.append(d)
        prev = d
    return Resolution(m, "projective", terms, maps, aug, True, syz)


def injective_resolution(m: Module, length: int) -> Resolution:
    """Minimal injective coresolution through ``E^length``."""
    if length < 0:
        raise PreconditionError("resolution length must be >= 0")
    terms, maps, cosyz = [], [], [m]
    e0, mono = injective_hull(m)
    terms.append(e0)
    prev = mono
    for _ in range(length):
        c, proj = cokernel(prev)
        cosyz.append(c)
        e, inc = injective_hull(c)
        d = Morphism(prev.target, e, inc.matrix @ proj.matrix, check=False)
        terms.append(e)
        maps.append(d)
        prev = d
    return Resolution(m, "injective", terms, maps, mono, True, cosyz)


def syzygy(m: Module, i: int) -> Module:
    """Omega^i m: the i-th syzygy in a minimal projective resolution."""
    if i < 0:
        raise PreconditionError("syzygy index must be >= 0")
    cur = m
    for _ in range(i):
        _, epi = projective_cover(cur)
        cur, _ = kernel(epi)
    return cur


def cosyzygy(m: Module, i: int) -> Module:
    """Omega^{-i} m: the i-th cokernel in a minimal injective coresolution."""
    if i < 0:
        raise PreconditionError("cosyzygy index must be >= 0")
    cur = m
    for _ in range(i):
        _, mono = injective_hull(cur)
        cur, _ = cokernel(mono)
    return cur


def omega(m: Module, n: int) -> Module:
    """Omega^n for any integer n (negative n means cosyzygies)."""
    return syzygy(m, n) if n >= 0 else cosyzygy(m, -n)


def generator_count(m: Module) -> int:
    """mu(m): minimal number of generators, dim top(m) over a local algebra."""
    return top(m).dim


def _precompose_matrix(d: Morphism, n: Module) -> FieldMatrix:
    """Matrix of Hom(d.target, n) -> Hom(d.source, n), f -> f o d, in Hom bases."""
    src = hom_basis(d.target, n)
    tgt = hom_basis(d.source, n)
    mats = [src.matrix(j) @ d.matrix for j in range(src.dim)]
    return tgt.coords_matrix(mats) if mats else FieldMatrix.zeros(n.field, tgt.dim, 0)


def ext(m: Module, n: Module, degree: int) -> int:
    """dim Ext^degree(m, n), from Hom(P_*, n) for a minimal resolution of m."""
    if degree < 0:
        raise PreconditionError("Ext degree must be >= 0")
    if m.algebra != n.algebra or m.side != n.side:
        raise PreconditionError("Ext needs modules over the same algebra and side")
    if degree == 0:
        return hom_basis(m, n).dim
    res = projective_resolution(m, degree + 1)
    d_in = _precompose_matrix(res.maps[degree - 1], n)  # Hom(P_{n-1}) -> Hom(P_n)
    d_out = _precompose_matrix(res.maps[degree], n)  # Hom(P_n) -> Hom(P_{n+1})
    cocycles = hom_basis(res.terms[degree], n).dim - rank(d_out)
    return cocycles - rank(d_in)


def tor(m: Module, n: Module, degree: int, resolve: str = "left") -> int:
    """dim Tor_degree(m, n) for a right module ``m`` and left module ``n``.

    ``resolve="left"`` resolves ``m``; ``resolve="right"`` resolves ``n``.
    Both must agree (balance of Tor).
    """
    if degree < 0:
        raise PreconditionError("Tor degree must be >= 0")
    if m.side != RIGHT or n.side != LEFT:
        raise PreconditionError("tor(M, N) needs M right and N left")
    res = projective_resolution(m if resolve == "left" else n, degree + 1)

    def tensored(f):
        if resolve == "left":
            return tensor_morphisms(f, None, n=n)
        return tensor_morphisms(None, f, m=m)

    def term_dim(t):
        return tensor_over_R(t, n).dim if resolve == "left" else tensor_over_R(m, t).dim

    size = term_dim(res.terms[degree])
    r_out = rank(tensored(res.maps[degree - 1])) if degree > 0 else 0
    r_in = rank(tensored(res.maps[degree]))
    return size - r_out - r_in


@dataclass(frozen=True)
class GrowthRow:
    n: int
    mu1: int
    mu2: int


def fp_growth_probe(p: int, n_range) -> list:
    """Generator counts of the first two syzygies of k over k[x_1..x_n]/(x)^2.

    Each syzygy is a direct sum of copies of k scaled up by n (the kernel of
    R^a -> k^a is m^a = k^{na}), so the counts are n and n^2.
    """
    rows = []
    for n in n_range:
        if n < 1:
            raise PreconditionError("probe needs n >= 1")
        a = mk_local_sq_zero(n, p)
        k = trivial(a)
        o1 = syzygy(k, 1)
        o2 = syzygy(o1, 1)
        rows.append(GrowthRow(n, generator_count(o1), generator_count(o2)))
    return rows


def tor_via_dual_ext(m: Module, n: Module, degree: int) -> int:
    """dim Tor_degree(m, n) computed as dim Ext^degree(n, dual m)."""
    return ext(n, dual(m), degree)


def resolution_to_arrays(res: Resolution) -> dict:
    """JSON-friendly view of a resolution."""
    return {
        "direction": res.direction,
        "term_dims": [t.dim for t in res.terms],
        "generator_counts": res.ranks(),
        "maps": [f.matrix.tolist() for f in res.maps],
    }


__all__ = [
    "Resolution",
    "projective_resolution",
    "injective_resolution",
    "syzygy",
    "cosyzygy",
    "omega",
    "generator_count",
    "ext",
    "tor",
    "fp_growth_probe",
    "GrowthRow",
    "resolution_to_arrays",
    "tor_via_dual_ext",
]
