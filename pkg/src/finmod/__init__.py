"""Exact computations with finite modules over finite rings.

Subinjectivity and subprojectivity domains, injective hulls, catalogs of
small modules, and ring-level properties such as QF and (Q).
"""

__version__ = "0.1.0"

from .catalog import Catalog, build_catalog, cache_load, cache_store, load_or_build, short_exact_sequences
from .domains import (
    DomainSet,
    Verdict,
    classify_at_scale,
    domain_at_scale,
    is_subinjective,
    is_subprojective,
    middle_class_report,
    sier_verdict,
    sper_verdict,
)
from .envelopes import (
    HullResult,
    character_dual,
    injective_cogenerator,
    injective_hull,
    is_image_of_injective,
    is_injective,
    is_projective,
)
from .errors import (
    BoundExceeded,
    FinmodError,
    InapplicableSuite,
    InternalInconsistency,
    IoFailure,
    MalformedSpec,
    NotASubmodule,
    RingMismatch,
    UnknownSelector,
    VersionMismatch,
)
from .homs import HomSet, ModuleHom, hom_set
from .module import FiniteModule, Submodule, direct_sum, free_module, regular_module, zero_module
from .ring import FiniteRing, builtin_ring, dump_ring, factor_ring, load_ring, matrix_ring, opposite_ring
from .ringprops import (
    RingProfile,
    is_chain_ring,
    is_dual_kasch,
    is_kasch,
    is_qf,
    is_right_hereditary,
    is_v_ring,
    ring_profile,
    satisfies_q,
)
from .structure import (
    are_isomorphic,
    composition_length,
    is_essential,
    jacobson_radical,
    quotient,
    simple_modules,
    structural_invariants,
    submodules,
)
