"""Computational homological algebra over finite-dimensional algebras.

Modules and complexes over prime fields with their resolutions and zig-zag
filtrations, plus cotorsion-pair checks on finite universes. Constructions
emit certificates that an independent checker re-verifies.
"""
from .algebra import Algebra, load_algebra
from .certificates import (
    complex_filtration_certificate,
    module_filtration_certificate,
    pure_closure_certificate,
    staircase_certificate,
    subresolution_certificate,
)
from .checker import check_certificate
from .classes import ClassSpec, Fn, Pn, class_member, dw, ex, exact_class, intersection, listed, perp
from .complex_zigzag import (
    StaircaseSchedule,
    degree_resolutions,
    dw_filtration,
    ex_filtration,
    remark_no_noetherian_check,
    small_subcomplex_extension,
    staircase_subcomplex,
)
from .complexes import (
    ChainComplex,
    ChainMap,
    card,
    chain_hom_space,
    disk,
    disk_cover,
    ext1_ch,
    is_exact,
    nullhomotopy,
    quotient_complex,
    sphere,
    subcomplex,
)
from .homological import ext, ext1, extension_from_cocycle, flat_dim, is_flat, tensor, tor, tor1
from .kernels import BACKEND
from .library import bundled_algebra, named_module, named_modules
from .model import (
    LiftingProblem,
    Universe,
    approx_search,
    check_compatibility,
    check_cotorsion_pair,
    check_thick,
    factor_map,
    left_perp,
    lift,
    right_perp,
)
from .modules import Module, ModuleMap, ShortExactSequence, hom_space
from .projectives import IndexedProjective, decompose_projective, free_cover, is_projective
from .resolution import DecomposedResolution, proj_dim, projective_resolution
from .zigzag import (
    flat_zigzag_subresolution,
    module_filtration,
    pure_closure,
    zigzag_subresolution,
)

__version__ = "0.1.0"
