"""Ring-level predicates: QF, Kasch, dual Kasch, (Q), V-ring, hereditary and friends."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import zmod
from .catalog import Catalog
from .envelopes import injective_hull, is_image_of_injective, is_injective, is_projective
from .errors import InternalInconsistency
from .homs import hom_set
from .module import FiniteModule, Submodule, regular_module
from .ring import FiniteRing
from .structure import composition_length, jacobson_rows, right_ideals, simple_modules

__all__ = [
    "is_qf",
    "is_kasch",
    "is_dual_kasch",
    "satisfies_q",
    "is_v_ring",
    "is_right_hereditary",
    "is_semisimple_ring",
    "is_local",
    "is_chain_ring",
    "RingProfile",
    "ring_profile",
    "hull_of_ring_is_projective",
]


def is_qf(ring: FiniteRing) -> bool:
    """Finite rings are artinian, so QF reduces to self-injectivity of R_R."""
    return is_injective(regular_module(ring))


def is_kasch(ring: FiniteRing) -> bool:
    """Every simple right module maps nonzero (hence injectively) into R_R."""
    R = regular_module(ring)
    return all(hom_set(S, R).log_size > 0 for S in simple_modules(ring))


def is_dual_kasch(ring: FiniteRing) -> bool:
    """Every simple right module is an epimorphic image of an injective module."""
    return all(is_image_of_injective(S) for S in simple_modules(ring))


def satisfies_q(ring: FiniteRing, cat: Catalog, *, cross_check: bool = True) -> bool:
    """Trace test on every catalog module.

    The direct computation is compared against :func:`is_qf`; a mismatch is
    an implementation bug and raises InternalInconsistency.
    """
    if cat.ring.digest != ring.digest:
        raise ValueError("catalog built over a different ring")
    val = all(is_image_of_injective(M) for _, M in cat)
    if cross_check and val != is_qf(ring):
        raise InternalInconsistency(f"{ring.name}: trace test says {val}, self-injectivity says {not val}")
    return val


def is_v_ring(ring: FiniteRing) -> bool:
    """Every simple module is injective."""
    return all(is_injective(S) for S in simple_modules(ring))


def is_right_hereditary(ring: FiniteRing) -> bool:
    """Every right ideal is projective."""
    R = regular_module(ring)
    return all(is_projective(Submodule(R, I, check=False).module()) for I in right_ideals(ring))


def is_semisimple_ring(ring: FiniteRing) -> bool:
    return not jacobson_rows(ring).any()


def is_local(ring: FiniteRing) -> bool:
    """R/J(R) is simple as a right module, i.e. a division ring."""
    R = regular_module(ring)
    top = FiniteModule(R.ambient, R.V, jacobson_rows(ring), check=False, canonical=True)
    return composition_length(top) == 1


def is_chain_ring(ring: FiniteRing) -> bool:
    """The right ideals form a chain under inclusion."""
    m = ring.m
    ideals = sorted(right_ideals(ring), key=lambda w: zmod.log_span_size(w, m))
    return all(zmod.span_contains(b, a, m) for a, b in zip(ideals, ideals[1:]))


FLAG_ORDER = (
    "is_qf",
    "is_kasch",
    "is_dual_kasch",
    "satisfies_q",
    "is_v_ring",
    "is_right_hereditary",
    "is_semisimple",
    "is_local",
    "is_chain",
)


@dataclass
class RingProfile:
    ring: str
    size: int
    flags: dict[str, bool]
    provenance: dict[str, str] = field(default_factory=dict)

    def implications_hold(self) -> bool:
        f = self.flags
        ok = (not f["is_qf"] or f["satisfies_q"]) and (not f["satisfies_q"] or f["is_dual_kasch"])
        return ok and (not f["is_v_ring"] or f["satisfies_q"])

    def to_dict(self) -> dict:
        return {
            "ring": self.ring,
            "size": self.size,
            "flags": {k: self.flags[k] for k in FLAG_ORDER},
            "provenance": {k: self.provenance[k] for k in FLAG_ORDER},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def ring_profile(ring: FiniteRing, cat: Catalog) -> RingProfile:
    """All ring flags; only (Q) depends on the catalog bound."""
    exact = "exact"
    flags = {
        "is_qf": is_qf(ring),
        "is_kasch": is_kasch(ring),
        "is_dual_kasch": is_dual_kasch(ring),
        "satisfies_q": satisfies_q(ring, cat),
        "is_v_ring": is_v_ring(ring),
        "is_right_hereditary": is_right_hereditary(ring),
        "is_semisimple": is_semisimple_ring(ring),
        "is_local": is_local(ring),
        "is_chain": is_chain_ring(ring),
    }
    prov = {k: exact for k in flags}
    prov["satisfies_q"] = f"at-scale({cat.max_size})"
    prof = RingProfile(ring.name, ring.m ** ring.rank, flags, prov)
    if not prof.implications_hold():
        raise InternalInconsistency(f"{ring.name}: ring flag implications violated: {flags}")
    return prof


def hull_of_ring_is_projective(ring: FiniteRing) -> bool:
    """Whether E(R_R) is projective."""
    return is_projective(injective_hull(regular_module(ring)).hull)
