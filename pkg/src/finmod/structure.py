"""Submodule lattices, radicals, socles, simple modules and isomorphism tests."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from . import zmod
from .errors import BoundExceeded, NotASubmodule
from .module import FiniteModule, Submodule, check_same_ring, regular_module
from .ring import FiniteRing

__all__ = [
    "LATTICE_SIZE_BOUND",
    "LATTICE_COUNT_BOUND",
    "submodules",
    "maximal_submodules",
    "jacobson_rows",
    "jacobson_radical",
    "right_ideals",
    "simple_modules",
    "socle",
    "radical",
    "quotient",
    "is_essential",
    "composition_length",
    "top_multiplicities",
    "min_generators",
    "StructuralInvariants",
    "structural_invariants",
    "invariant_key",
    "are_isomorphic",
]

# modules larger than this are not lattice-enumerated
LATTICE_SIZE_BOUND = 4096
LATTICE_COUNT_BOUND = 100_000


# -- lattices ----------------------------------------------------------------

def _socle_rows(amb, V: np.ndarray, U: np.ndarray, jrows: np.ndarray, m: int) -> np.ndarray:
    """Howell form of {x in V : x * J <= U}, computed without building a module."""
    if V.shape[0] == 0:
        return V
    if jrows.shape[0] == 0:
        return V
    ann_u = zmod.annihilator(U, m)
    if ann_u.shape[0] == 0:
        return V
    mats = np.tensordot(jrows, amb.action, axes=1) % m
    cols = np.hstack([(V @ mat @ ann_u.T) % m for mat in mats])
    ker = zmod.kernel(cols, m)
    rows = (ker @ V) % m if ker.size else np.zeros((0, V.shape[1]), dtype=np.int64)
    return zmod.howell(np.vstack([U, rows]), m, V.shape[1])


def _lattice_rows(M: FiniteModule, jrows: np.ndarray | None, bound: int | None) -> list[np.ndarray]:
    """Howell forms W with U <= W <= V for every submodule, by breadth-first covers.

    From each W we add xR for x in the socle of V/W; every submodule is
    reached because each nonzero W'/W has a simple submodule. ``jrows=None``
    means the radical is not known yet, so every element of V/W is tried.
    """
    m, n, amb = M.m, M.dim, M.ambient
    limit = LATTICE_SIZE_BOUND if bound is None else bound
    if M.size > limit:
        raise BoundExceeded(f"module of size {M.size} exceeds lattice bound {limit}")
    start = M.U
    seen = {start.tobytes() + bytes([start.shape[0]]): start}
    frontier = [start]
    while frontier:
        nxt = []
        for W in frontier:
            if zmod.log_span_size(W, m) == zmod.log_span_size(M.V, m):
                continue
            top = M.V if jrows is None else _socle_rows(amb, M.V, W, jrows, m)
            cands = zmod.enumerate_quotient(top, W, m)
            for x in cands:
                if not x.any():
                    continue
                S = zmod.howell(np.vstack([W, x[None, :], amb.orbit_rows(x)]), m, n)
                key = S.tobytes() + bytes([S.shape[0]])
                if key not in seen:
                    seen[key] = S
                    nxt.append(S)
                    if len(seen) > LATTICE_COUNT_BOUND:
                        raise BoundExceeded(f"more than {LATTICE_COUNT_BOUND} submodules")
        frontier = nxt
    out = list(seen.values())
    out.sort(key=lambda w: (zmod.log_span_size(w, m), w.shape[0], w.tobytes()))
    return out


def submodules(M: FiniteModule, bound: int | None = None) -> list[Submodule]:
    """Every submodule of ``M``, sorted by size and then canonical basis.

    Raises BoundExceeded when ``|M|`` exceeds ``bound``
    (default :data:`LATTICE_SIZE_BOUND`).
    """
    subs = M._cache.get("lattice")
    if subs is None:
        jrows = jacobson_rows(M.ring)
        subs = [Submodule(M, w, check=False) for w in _lattice_rows(M, jrows, bound)]
        M._cache["lattice"] = subs
    elif bound is not None and M.size > bound:
        raise BoundExceeded(f"module of size {M.size} exceeds lattice bound {bound}")
    return list(subs)


def maximal_submodules(M: FiniteModule) -> list[Submodule]:
    subs = submodules(M)
    proper = [s for s in subs if s.log_size < M.log_size]
    return [s for s in proper if not any(s.log_size < t.log_size and s.le(t) for t in proper)]


def _ring_lattice_rows(ring: FiniteRing) -> list[np.ndarray]:
    rows = ring._cache.get("right_ideal_rows")
    if rows is None:
        rows = _lattice_rows(regular_module(ring), None, None)
        ring._cache["right_ideal_rows"] = rows
    return rows


def right_ideals(ring: FiniteRing) -> list[np.ndarray]:
    """Howell bases (in ring coordinates) of all right ideals."""
    return list(_ring_lattice_rows(ring))


def jacobson_rows(ring: FiniteRing) -> np.ndarray:
    """Howell basis of J(R): the intersection of the maximal right ideals."""
    j = ring._cache.get("jacobson_rows")
    if j is None:
        m, d = ring.m, ring.rank
        lat = _ring_lattice_rows(ring)
        full = zmod.log_span_size(np.eye(d, dtype=np.int64), m)
        proper = [w for w in lat if zmod.log_span_size(w, m) < full]
        maximal = [w for w in proper if not any(
            zmod.log_span_size(w, m) < zmod.log_span_size(t, m) and zmod.span_contains(t, w, m) for t in proper)]
        j = np.eye(d, dtype=np.int64)
        for w in maximal:
            j = zmod.intersect(j, w, m)
        j = zmod.howell(j, m, d)
        j.setflags(write=False)
        ring._cache["jacobson_rows"] = j
    return j


def jacobson_radical(ring: FiniteRing) -> Submodule:
    """J(R) as a submodule of the regular module."""
    R = regular_module(ring)
    return Submodule(R, jacobson_rows(ring), check=False)


def socle(M: FiniteModule) -> Submodule:
    """The largest semisimple submodule, {x : x J(R) = 0}."""
    s = M._cache.get("socle")
    if s is None:
        w = _socle_rows(M.ambient, M.V, M.U, jacobson_rows(M.ring), M.m)
        s = Submodule(M, w, check=False)
        M._cache["socle"] = s
    return s


def radical(M: FiniteModule) -> Submodule:
    """M J(R), the intersection of the maximal submodules."""
    r = M._cache.get("radical")
    if r is None:
        r = M.submodule_of_ring_ideal(jacobson_rows(M.ring))
        M._cache["radical"] = r
    return r


def quotient(M: FiniteModule, S: Submodule):
    """``(M/S, projection)``."""
    from .homs import projection

    return projection(M, S)


def is_essential(S: Submodule, M: FiniteModule) -> bool:
    """Every nonzero submodule of M meets S; for finite modules, soc(M) <= S."""
    if not (zmod.span_contains(M.V, S.W, M.m) and zmod.span_contains(S.W, M.U, M.m)):
        raise NotASubmodule("not a submodule of M")
    return socle(M).le(Submodule(M, S.W, check=False))


# -- simples and multiplicities ---------------------------------------------

def simple_modules(ring: FiniteRing) -> list[FiniteModule]:
    """One module R/m per isomorphism class of simple right modules."""
    sims = ring._cache.get("simples")
    if sims is None:
        R = regular_module(ring)
        cands = [FiniteModule(R.ambient, R.V, w.W, check=False, canonical=True) for w in maximal_submodules(R)]
        cands.sort(key=lambda S: (S.log_size, S.key))
        sims = []
        for S in cands:
            if not any(_simple_iso(S, T) for T in sims):
                sims.append(S)
        sims.sort(key=lambda S: hashlib.sha256(repr(_simple_key(S)).encode() + S.key).hexdigest())
        for i, S in enumerate(sims):
            S.label = f"S{i}"
        ring._cache["simples"] = sims
    return list(sims)


def _simple_iso(S: FiniteModule, T: FiniteModule) -> bool:
    # Schur: two simples are isomorphic iff some hom between them is nonzero
    from .homs import hom_set

    return S.log_size == T.log_size and hom_set(S, T).log_size > 0


def _simple_key(S: FiniteModule):
    from .homs import hom_set

    return (S.log_size, hom_set(S, S).log_size)


def _end_log(S: FiniteModule) -> int:
    from .homs import hom_set

    return hom_set(S, S).log_size


def top_multiplicities(M: FiniteModule) -> tuple[int, ...]:
    """Multiplicity of each simple (in :func:`simple_modules` order) in M/rad(M)."""
    from .homs import hom_set

    return tuple(hom_set(M, S).log_size // _end_log(S) for S in simple_modules(M.ring))


def socle_multiplicities(M: FiniteModule) -> tuple[int, ...]:
    from .homs import hom_set

    return tuple(hom_set(S, M).log_size // _end_log(S) for S in simple_modules(M.ring))


def composition_length(M: FiniteModule) -> int:
    """Sum of the socle-layer multiplicities (Jordan-Holder length)."""
    n = M._cache.get("length")
    if n is None:
        n = 0
        cur = M
        while not cur.is_zero():
            s = socle(cur)
            n += sum(socle_multiplicities(cur))
            cur = FiniteModule(M.ambient, M.V, s.W, check=False, canonical=True)
        M._cache["length"] = n
    return n


def min_generators(M: FiniteModule) -> int:
    """Least number of generators: max over simples of ceil(top mult / mult in R/J)."""
    if M.is_zero():
        return 0
    top = top_multiplicities(M)
    reg = top_multiplicities(regular_module(M.ring))
    return max(math.ceil(t / r) for t, r in zip(top, reg))


@dataclass(frozen=True)
class StructuralInvariants:
    size: int
    length: int
    socle: Submodule
    radical: Submodule
    min_generators: int
    is_cyclic: bool
    is_simple: bool
    is_semisimple: bool

    def summary(self) -> dict:
        return {
            "size": self.size,
            "length": self.length,
            "socle_size": self.socle.size,
            "radical_size": self.radical.size,
            "min_generators": self.min_generators,
            "is_cyclic": self.is_cyclic,
            "is_simple": self.is_simple,
            "is_semisimple": self.is_semisimple,
        }


def structural_invariants(M: FiniteModule) -> StructuralInvariants:
    n = composition_length(M)
    g = min_generators(M)
    rad = radical(M)
    return StructuralInvariants(
        size=M.size,
        length=n,
        socle=socle(M),
        radical=rad,
        min_generators=g,
        is_cyclic=g <= 1,
        is_simple=n == 1,
        is_semisimple=rad.is_zero(),
    )


# -- isomorphism -------------------------------------------------------------

def _group_type(M: FiniteModule) -> tuple[int, ...]:
    """log_p |p^a M| for a = 0..k; determines the abelian group type."""
    m = M.m
    p, k = zmod.prime_power(m)
    lu = zmod.log_span_size(M.U, m)
    return tuple(
        zmod.log_span_size(zmod.howell(np.vstack([(M.V * p**a) % m, M.U]), m, M.dim), m) - lu
        for a in range(k + 1)
    )


def _ann_log(M: FiniteModule, ideal: np.ndarray) -> int:
    """log |{x in M : x I = 0}|."""
    w = _socle_rows(M.ambient, M.V, M.U, ideal, M.m)
    return zmod.log_span_size(w, M.m) - zmod.log_span_size(M.U, M.m)


def invariant_key(M: FiniteModule) -> tuple:
    """Isomorphism invariants used to prune iso tests and to order catalogs."""
    k = M._cache.get("inv_key")
    if k is None:
        from .homs import hom_set

        ideals = right_ideals(M.ring)
        anns = tuple(_ann_log(M, I) for I in ideals)
        prods = tuple(M.submodule_of_ring_ideal(I).log_size for I in ideals)
        soc_series = []
        cur = M
        while not cur.is_zero():
            s = socle(cur)
            soc_series.append(s.log_size)
            cur = FiniteModule(M.ambient, M.V, s.W, check=False, canonical=True)
        k = (
            M.log_size,
            _group_type(M),
            anns,
            prods,
            tuple(soc_series),
            top_multiplicities(M),
            socle_multiplicities(M),
            hom_set(M, M).log_size,
        )
        M._cache["inv_key"] = k
    return k


def invariant_hash(M: FiniteModule) -> str:
    return hashlib.sha256(repr(invariant_key(M)).encode()).hexdigest()


ISO_RANDOM_TRIES = 96
ISO_EXHAUSTIVE_CAP = 1 << 16


def are_isomorphic(A: FiniteModule, B: FiniteModule, *, seed: int = 0) -> bool:
    """True iff some R-linear bijection A -> B exists.

    After the invariant prefilter, random homs are tried (a random
    endomorphism of a finite module is an automorphism with probability
    bounded away from zero), then every hom is checked exhaustively.
    Raises BoundExceeded if the exhaustive step would exceed
    :data:`ISO_EXHAUSTIVE_CAP` homs.
    """
    check_same_ring(A, B)
    if A.log_size != B.log_size:
        return False
    if A.key == B.key or A.is_zero():
        return True
    if invariant_key(A) != invariant_key(B):
        return False
    from .homs import hom_set

    H = hom_set(A, B)
    rng = np.random.default_rng(seed)
    for _ in range(ISO_RANDOM_TRIES):
        if H.random(rng).is_injective():
            return True
    if H.size > ISO_EXHAUSTIVE_CAP:
        raise BoundExceeded(f"isomorphism search over {H.size} homs")
    return any(f.is_injective() for f in H.elements())
