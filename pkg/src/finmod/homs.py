"""R-linear maps between finite modules and the groups Hom_R(A, B).

A hom A -> B is stored by the images of A's generators. The group of all
of them is the solution space of one linear system over Z/m: the images
must lie in V_B and every relation among A's generators must land in U_B.
"""

from __future__ import annotations

import numpy as np

from . import zmod
from .errors import NotASubmodule
from .module import FiniteModule, Submodule, check_same_ring

__all__ = ["ModuleHom", "HomSet", "hom_set", "identity", "inclusion", "projection", "clear_hom_cache"]

_HOM_CACHE: dict[tuple[bytes, bytes, bytes], "HomSet"] = {}
_HOM_CACHE_LIMIT = 20000


def clear_hom_cache() -> None:
    _HOM_CACHE.clear()


class ModuleHom:
    """An R-linear map ``source -> target`` given by generator images."""

    __slots__ = ("source", "target", "images", "_matrix")

    def __init__(self, source: FiniteModule, target: FiniteModule, images, *, check: bool = False):
        self.source = source
        self.target = target
        imgs = np.asarray(images, dtype=np.int64).reshape(source.ngens, target.dim)
        self.images = target.reduce(imgs) if imgs.shape[0] else imgs
        self._matrix = None
        if check and not hom_set(source, target).contains(self):
            raise ValueError("images do not define an R-linear map")

    @property
    def vector(self) -> np.ndarray:
        return self.images.reshape(-1)

    def matrix(self) -> np.ndarray:
        """Images of the Howell rows of the source's V (before reduction mod U_B)."""
        if self._matrix is None:
            tgt = self.target
            q = np.einsum("in,jnk->ijk", self.images, tgt.ambient.action).reshape(-1, tgt.dim) % tgt.m
            self._matrix = (self.source.v_coords @ q) % tgt.m
        return self._matrix

    def __call__(self, x) -> np.ndarray:
        src = self.source
        x = np.asarray(x, dtype=np.int64).reshape(-1, src.dim)
        c, res = zmod.reduce_with_coords(x, src.V, src.m)
        if res.any():
            raise NotASubmodule("argument is not an element of the source")
        return self.target.reduce((c @ self.matrix()) % src.m)

    def image(self) -> Submodule:
        tgt = self.target
        return Submodule(tgt, np.vstack([tgt.U, self.matrix()]), check=False)

    def kernel(self) -> Submodule:
        src, tgt = self.source, self.target
        mat = self.matrix()
        if tgt.ann_U.shape[0] == 0 or src.V.shape[0] == 0:
            return src.whole()
        ker = zmod.kernel((mat @ tgt.ann_U.T) % src.m, src.m)
        rows = (ker @ src.V) % src.m if ker.size else np.zeros((0, src.dim), dtype=np.int64)
        return Submodule(src, np.vstack([src.U, rows]), check=False)

    def is_injective(self) -> bool:
        return self.image().log_size == self.source.log_size

    def is_surjective(self) -> bool:
        return self.image().log_size == self.target.log_size

    def is_iso(self) -> bool:
        return self.source.log_size == self.target.log_size and self.is_injective()

    def is_zero(self) -> bool:
        return not self.images.any()

    def compose(self, first: "ModuleHom") -> "ModuleHom":
        """``self o first``."""
        return ModuleHom(first.source, self.target, self(first.images) if first.images.shape[0] else first.images.reshape(0, self.target.dim))

    def __add__(self, other: "ModuleHom") -> "ModuleHom":
        return ModuleHom(self.source, self.target, (self.images + other.images) % self.target.m)

    def __neg__(self) -> "ModuleHom":
        return ModuleHom(self.source, self.target, (-self.images) % self.target.m)

    def __sub__(self, other: "ModuleHom") -> "ModuleHom":
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, ModuleHom)
            and self.source == other.source
            and self.target == other.target
            and np.array_equal(self.images, other.images)
        )

    def __repr__(self):
        return f"<ModuleHom {self.source!r} -> {self.target!r}>"


class HomSet:
    """Hom_R(source, target) as a finite abelian group.

    ``solutions`` is a Howell basis (in (Z/m)^(s*N_B)) of all generator-image
    tuples that define homs; ``zeros`` is the subgroup U_B^s of tuples that
    define the zero map. The group is their quotient.
    """

    def __init__(self, source: FiniteModule, target: FiniteModule, solutions: np.ndarray, zeros: np.ndarray):
        self.source = source
        self.target = target
        self.solutions = solutions
        self.zeros = zeros
        self.log_size = zmod.log_span_size(solutions, source.m) - zmod.log_span_size(zeros, source.m)

    @property
    def size(self) -> int:
        return zmod.prime_power(self.source.m)[0] ** self.log_size

    def __len__(self) -> int:
        return self.size

    @property
    def basis(self) -> list[ModuleHom]:
        """Generators of the group (zero maps dropped)."""
        red = zmod.reduce_rows(self.solutions, self.zeros, self.source.m) if self.solutions.shape[0] else self.solutions
        return [self._hom(v) for v in red if v.any()]

    def orders(self) -> list[int]:
        """Invariant factors of the group, largest first."""
        m = self.source.m
        p, k = zmod.prime_power(m)
        # |p^a H| for a = 0..k determines the elementary divisors
        sizes = []
        for a in range(k + 1):
            sub = zmod.howell(np.vstack([(self.solutions * p**a) % m, self.zeros]), m, self.solutions.shape[1])
            sizes.append(zmod.log_span_size(sub, m) - zmod.log_span_size(self.zeros, m))
        counts = [sizes[a] - sizes[a + 1] for a in range(k)]  # number of factors of order >= p^(a+1)
        out = []
        for a in range(k, 0, -1):
            n_exact = counts[a - 1] - (counts[a] if a < k else 0)
            out += [p**a] * n_exact
        return out

    def _hom(self, vec) -> ModuleHom:
        return ModuleHom(self.source, self.target, np.asarray(vec).reshape(self.source.ngens, self.target.dim))

    def contains(self, f: ModuleHom) -> bool:
        if f.images.shape != (self.source.ngens, self.target.dim):
            return False
        return zmod.span_contains(self.solutions, f.vector, self.source.m)

    def zero(self) -> ModuleHom:
        return ModuleHom(self.source, self.target, np.zeros((self.source.ngens, self.target.dim), dtype=np.int64))

    def random(self, rng: np.random.Generator) -> ModuleHom:
        """A uniformly random element."""
        m = self.source.m
        if self.solutions.shape[0] == 0:
            return self.zero()
        piv = [int(row[np.flatnonzero(row)[0]]) for row in self.solutions]
        coeffs = np.array([rng.integers(0, m // q) for q in piv], dtype=np.int64)
        return self._hom((coeffs @ self.solutions) % m)

    def elements(self, limit: int | None = None):
        """Every hom, in a deterministic order."""
        if limit is not None and self.size > limit:
            raise OverflowError(f"Hom set of size {self.size} exceeds {limit}")
        vecs = zmod.enumerate_quotient(self.solutions, self.zeros, self.source.m)
        return [self._hom(v) for v in vecs]

    def __iter__(self):
        return iter(self.elements())

    def __repr__(self):
        return f"<HomSet {self.source!r} -> {self.target!r}, size {self.size}>"


def _block_rows(rows: np.ndarray, s: int) -> np.ndarray:
    """``rows`` placed in each of ``s`` consecutive column blocks."""
    k, n = rows.shape
    out = np.zeros((s * k, s * n), dtype=np.int64)
    for i in range(s):
        out[i * k : (i + 1) * k, i * n : (i + 1) * n] = rows
    return out


def _compute_hom_set(A: FiniteModule, B: FiniteModule) -> HomSet:
    m = A.m
    s, d, N = A.ngens, A.ring.rank, B.dim
    zeros = zmod.howell(_block_rows(B.U, s), m, s * N) if s else np.zeros((0, 0), dtype=np.int64)
    if s == 0:
        return HomSet(A, B, np.zeros((0, 0), dtype=np.int64), zeros)
    blocks = []
    # every image lies in V_B
    if B.ann_V.shape[0]:
        blocks.append(_block_rows(B.ann_V, s).T)
    # every relation sum_i g_i r_i in U_B maps into U_B
    rel = A.relations
    if rel.shape[0] and B.ann_U.shape[0]:
        r3 = rel.reshape(-1, s, d)  # relation, generator, basis element
        act = np.einsum("qij,jnk->qink", r3, B.ambient.action) % m  # P_{r,i}
        cols = np.einsum("qink,tk->inqt", act, B.ann_U) % m
        blocks.append(cols.reshape(s * N, -1))
    if not blocks:
        sol = np.eye(s * N, dtype=np.int64)
    else:
        sol = zmod.kernel(np.hstack(blocks) % m, m)
    sol = zmod.howell(np.vstack([sol, zeros]), m, s * N)
    return HomSet(A, B, sol, zeros)


def hom_set(A: FiniteModule, B: FiniteModule) -> HomSet:
    """Hom_R(A, B), computed by solving the relation system over Z/m."""
    check_same_ring(A, B)
    # generators are part of the key: equal modules may store different ones
    key = (A.key, A.gens.tobytes(), B.key)
    hs = _HOM_CACHE.get(key)
    if hs is None:
        hs = _compute_hom_set(A, B)
        if len(_HOM_CACHE) > _HOM_CACHE_LIMIT:
            _HOM_CACHE.clear()
        _HOM_CACHE[key] = hs
    elif hs.source is not A or hs.target is not B:
        hs = HomSet(A, B, hs.solutions, hs.zeros)
    return hs


def identity(M: FiniteModule) -> ModuleHom:
    return ModuleHom(M, M, M.gens)


def inclusion(S: Submodule) -> ModuleHom:
    sub = S.module()
    return ModuleHom(sub, S.parent, sub.gens)


def projection(M: FiniteModule, S: Submodule) -> tuple[FiniteModule, ModuleHom]:
    """``M / S`` and the canonical epimorphism."""
    if S.parent.ambient != M.ambient or not np.array_equal(S.parent.V, M.V):
        if not (zmod.span_contains(M.V, S.W, M.m) and zmod.span_contains(S.W, M.U, M.m)):
            raise NotASubmodule("not a submodule of M")
    Q = FiniteModule(M.ambient, M.V, S.W, check=False, canonical=True)
    return Q, ModuleHom(M, Q, M.gens)
