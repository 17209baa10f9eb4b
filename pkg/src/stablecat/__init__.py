"""Exact homological algebra over small local algebras in characteristic p.

Modules over finite-dimensional local algebras, minimal resolutions, Ext and
Tor, windowed chain complexes, acyclicity classifiers, stable Hom and Tate
cohomology, all computed exactly over F_p.
"""

from .exactla import BACKEND, FieldMatrix, PrimeField
from .algebra import Algebra, mk_cyclic_group_algebra, mk_local_sq_zero, mk_trunc_poly, parse_ring
from .errors import DimensionError, InconsistencyError, InvariantError, PreconditionError, StablecatError
from .modrep import (
    LEFT,
    RIGHT,
    Module,
    Morphism,
    dual,
    hom_space,
    injective_hull,
    injective_module,
    is_flat,
    is_injective,
    is_projective,
    projective_cover,
    regular,
    tensor_over_R,
    trivial,
)
from .homalg import cosyzygy, ext, fp_growth_probe, injective_resolution, projective_resolution, syzygy, tor
from .complexes import (
    WindowedComplex,
    disk,
    filtration_by_small,
    hom_complex,
    homology_at,
    shift,
    sphere,
    tensor_complex,
)
from .stable import (
    classify_inj_complex,
    classify_proj_complex,
    duality_pair_check,
    is_gorenstein_ac_injective,
    is_gorenstein_ac_projective,
    stable_hom_inj,
    stable_hom_proj,
    tate_cohomology,
)
from .counterexamples import CounterexampleSpec, build

__version__ = "0.1.0"
