"""Injectivity, projectivity, character duals and injective hulls."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import zmod
from .errors import BoundExceeded
from .homs import HomSet, ModuleHom, hom_set, identity
from .module import Ambient, FiniteModule, Submodule, direct_sum, free_module, regular_module
from .ring import FiniteRing, opposite_ring
from .structure import _socle_rows, jacobson_rows, right_ideals

__all__ = [
    "is_injective",
    "is_projective",
    "injective_cogenerator",
    "character_dual",
    "HullResult",
    "injective_hull",
    "is_image_of_injective",
    "injective_trace",
    "free_cover",
    "post_compose_span",
    "pre_compose_span",
    "HULL_SIZE_BOUND",
]

HULL_SIZE_BOUND = 1 << 24


def post_compose_span(H: HomSet, g: ModuleHom) -> np.ndarray:
    """Howell basis, in Hom(H.source, g.target) coordinates, of {g o f : f in H} plus zeros."""
    G = hom_set(H.source, g.target)
    rows = [g.compose(f).vector for f in H.basis]
    return zmod.howell(np.vstack([G.zeros] + [r[None, :] for r in rows]), G.source.m, G.zeros.shape[1])


def pre_compose_span(H: HomSet, f: ModuleHom) -> np.ndarray:
    """Howell basis of {h o f : h in H} plus zeros, in Hom(f.source, H.target) coordinates."""
    G = hom_set(f.source, H.target)
    rows = [h.compose(f).vector for h in H.basis]
    return zmod.howell(np.vstack([G.zeros] + [r[None, :] for r in rows]), G.source.m, G.zeros.shape[1])


def _span_log(G: HomSet, span: np.ndarray) -> int:
    return zmod.log_span_size(span, G.source.m) - zmod.log_span_size(G.zeros, G.source.m)


def is_injective(M: FiniteModule) -> bool:
    """Baer's test: every map from a right ideal I to M extends to R.

    Restriction Hom(R, M) -> Hom(I, M) has image M / ann_M(I), so the test
    compares that size with |Hom(I, M)| for every right ideal.
    """
    flag = M._cache.get("injective")
    if flag is None:
        flag = True
        R = regular_module(M.ring)
        lm = zmod.log_span_size(M.U, M.m)
        for I in right_ideals(M.ring):
            ann = zmod.log_span_size(_socle_rows(M.ambient, M.V, M.U, I, M.m), M.m) - lm
            hi = hom_set(Submodule(R, I, check=False).module(), M).log_size
            if hi != M.log_size - ann:
                flag = False
                break
        M._cache["injective"] = flag
    return flag


def free_cover(M: FiniteModule) -> tuple[FiniteModule, ModuleHom]:
    """R^s -> M sending the i-th basis vector to the i-th stored generator."""
    F = free_module(M.ring, M.ngens)
    return F, ModuleHom(F, M, M.gens)


def is_projective(M: FiniteModule) -> bool:
    """True iff the free cover R^s -> M has a section."""
    flag = M._cache.get("projective")
    if flag is None:
        if M.is_zero():
            flag = True
        else:
            F, pi = free_cover(M)
            span = post_compose_span(hom_set(M, F), pi)
            flag = zmod.span_contains(span, identity(M).vector, M.m)
        M._cache["projective"] = flag
    return flag


def character_dual(M: FiniteModule) -> FiniteModule:
    """Hom_Z(M, Z/m) as a right module over the opposite ring.

    Characters of V/U are vectors w with U w = 0 modulo those with V w = 0,
    and ``(w * r)(x) = w(x r)``.
    """
    op = opposite_ring(M.ring)
    action = np.transpose(M.ambient.action, (0, 2, 1))
    amb = Ambient(op, action)
    label = f"{M.label}*" if M.label else ""
    return FiniteModule(amb, M.ann_U, M.ann_V, label=label, check=False)


def injective_cogenerator(ring: FiniteRing) -> FiniteModule:
    """The character module of the left regular module, with (f r)(x) = f(r x)."""
    E = ring._cache.get("cogenerator")
    if E is None:
        d = ring.rank
        action = np.transpose(ring.left_mats, (0, 2, 1))
        amb = Ambient(ring, action)
        E = FiniteModule(amb, np.eye(d, dtype=np.int64), np.zeros((0, d), dtype=np.int64), label="E0", check=False)
        ring._cache["cogenerator"] = E
    return E


def _cogenerator_power(ring: FiniteRing, t: int) -> FiniteModule:
    cache = ring._cache.setdefault("cogenerator_powers", {})
    P = cache.get(t)
    if P is None:
        E = injective_cogenerator(ring)
        P = direct_sum(*([E] * t)) if t else FiniteModule(E.ambient, E.V, E.V, check=False)
        P.label = f"E0^{t}"
        cache[t] = P
    return P


def _separating_embedding(M: FiniteModule) -> ModuleHom:
    """An injective hom M -> E0^t built from a few maps M -> E0."""
    E = injective_cogenerator(M.ring)
    chosen = []
    ker = M.whole()
    for f in hom_set(M, E).basis:
        if ker.is_zero():
            break
        k2 = ker & f.kernel()
        if k2.log_size < ker.log_size:
            chosen.append(f)
            ker = k2
    if not ker.is_zero():
        raise AssertionError("character module failed to separate points")
    P = _cogenerator_power(M.ring, len(chosen))
    if not chosen:
        return ModuleHom(M, P, np.zeros((M.ngens, P.dim), dtype=np.int64))
    images = np.hstack([f.images for f in chosen])
    return ModuleHom(M, P, images)


@dataclass
class HullResult:
    hull: FiniteModule
    embedding: ModuleHom
    seed: int


def injective_hull(M: FiniteModule, seed: int = 0, *, bound: int | None = None) -> HullResult:
    """An injective hull of M.

    M is embedded in a power P of the cogenerator, a complement C of the
    image (maximal with C meeting the image trivially) is grown one cyclic
    submodule at a time, and P/C is returned. ``seed`` only permutes the
    order in which candidate elements are tried.
    """
    if seed == 0:
        hit = M._cache.get("hull")
        if hit is not None:
            return hit
    if M.is_zero() or is_injective(M):
        res = HullResult(M, identity(M), seed)
        if seed == 0:
            M._cache["hull"] = res
        return res
    iota = _separating_embedding(M)
    P = iota.target
    limit = HULL_SIZE_BOUND if bound is None else bound
    if P.size > limit:
        raise BoundExceeded(f"cogenerator power of size {P.size} exceeds {limit}")
    m, n, amb = M.m, P.dim, P.ambient
    img = iota.image().W
    limg = zmod.log_span_size(img, m)
    jrows = jacobson_rows(M.ring)
    rng = np.random.default_rng(seed)
    C = np.zeros((0, n), dtype=np.int64)
    while True:
        # candidates: the socle of P/C, outside C + image
        soc = _socle_rows(amb, P.V, C, jrows, m)
        cands = zmod.enumerate_quotient(soc, C, m)
        cands = cands[np.any(zmod.reduce_rows(cands, zmod.howell(np.vstack([C, img]), m, n), m) != 0, axis=1)]
        if seed:
            cands = cands[rng.permutation(len(cands))]
        grown = False
        for x in cands:
            C2 = zmod.howell(np.vstack([C, x[None, :], amb.orbit_rows(x)]), m, n)
            lc2 = zmod.log_span_size(C2, m)
            both = zmod.howell(np.vstack([C2, img]), m, n)
            if zmod.log_span_size(both, m) == lc2 + limg:
                C = C2
                grown = True
                break
        if not grown:
            break
    H = FiniteModule(amb, P.V, C, label=f"E({M.label})" if M.label else "", check=False)
    emb = ModuleHom(M, H, iota.images)
    res = HullResult(H, emb, seed)
    if seed == 0:
        M._cache["hull"] = res
    return res


def injective_trace(M: FiniteModule) -> Submodule:
    """Sum of the images of all maps E0 -> M."""
    E = injective_cogenerator(M.ring)
    rows = [f.matrix() for f in hom_set(E, M).basis]
    return Submodule(M, np.vstack([M.U] + rows), check=False)


def is_image_of_injective(M: FiniteModule) -> bool:
    """True iff M is an epimorphic image of some injective module."""
    return injective_trace(M).log_size == M.log_size
