"""Finite right modules as subquotients V/U of an ambient (Z/m)^N.

An :class:`Ambient` is (Z/m)^N together with matrices giving the right
action of each ring basis element. The free module R^n is the usual case;
character modules and their powers use other actions. A
:class:`FiniteModule` is a pair of invariant submodules ``U <= V`` of an
ambient, both stored in Howell form, so two representations over the same
ambient are equal exactly when their arrays are.
"""

from __future__ import annotations

import hashlib
from functools import cached_property

import numpy as np

from . import zmod
from .errors import NotASubmodule, RingMismatch
from .ring import FiniteRing

__all__ = [
    "Ambient",
    "FiniteModule",
    "Submodule",
    "free_module",
    "regular_module",
    "zero_module",
    "module_from_action",
    "direct_sum",
    "check_same_ring",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


class Ambient:
    """(Z/m)^N with a right R-action, ``x * e_j == x @ action[j]``."""

    def __init__(self, ring: FiniteRing, action, free_rank: int | None = None):
        self.ring = ring
        action = np.asarray(action, dtype=np.int64) % ring.m
        d = ring.rank
        if action.ndim != 3 or action.shape[0] != d or action.shape[1] != action.shape[2]:
            raise ValueError(f"action must have shape ({d}, N, N)")
        self.action = _freeze(action)
        self.dim = int(action.shape[1])
        self.free_rank = free_rank

    @cached_property
    def digest(self) -> bytes:
        h = hashlib.sha256(self.ring.digest.encode())
        h.update(np.int64(self.dim).tobytes())
        h.update(self.action.tobytes())
        return h.digest()

    def act(self, x, r) -> np.ndarray:
        """Rows of ``x`` times the ring element ``r``."""
        mat = np.tensordot(np.asarray(r, dtype=np.int64), self.action, axes=1)
        return (np.asarray(x, dtype=np.int64) @ mat) % self.ring.m

    def orbit_rows(self, x) -> np.ndarray:
        """``x * e_j`` for every row of ``x`` and every basis element ``e_j``."""
        x = np.asarray(x, dtype=np.int64).reshape(-1, self.dim)
        out = np.einsum("an,jnk->ajk", x, self.action) % self.ring.m
        return out.reshape(-1, self.dim)

    def is_invariant(self, h: np.ndarray) -> bool:
        if h.shape[0] == 0:
            return True
        return zmod.span_contains(h, self.orbit_rows(h), self.ring.m)

    def closure(self, rows) -> np.ndarray:
        """Howell form of the smallest invariant submodule containing ``rows``."""
        m = self.ring.m
        h = zmod.howell(np.asarray(rows, dtype=np.int64).reshape(-1, self.dim), m, self.dim)
        while True:
            nxt = self.orbit_rows(h)
            if zmod.span_contains(h, nxt, m):
                return h
            h = zmod.howell(np.vstack([h, nxt]), m, self.dim)

    def __eq__(self, other):
        return isinstance(other, Ambient) and (self is other or self.digest == other.digest)

    def __hash__(self):
        return hash(self.digest)


class FiniteModule:
    """The module V/U inside an ambient.

    ``V`` and ``U`` are Howell forms of invariant submodules with ``U <= V``.
    Derived data (generators, annihilators, ...) is computed on demand and
    kept on the instance; the public fields are never mutated.
    """

    def __init__(self, ambient: Ambient, V, U, *, label: str = "", check: bool = True, canonical: bool = False):
        m = ambient.ring.m
        n = ambient.dim
        self.ambient = ambient
        # canonical=True promises V and U are already Howell forms
        self.V = _freeze(V if canonical else zmod.howell(V, m, n))
        self.U = _freeze(U if canonical else zmod.howell(U, m, n))
        self.label = label
        self._cache: dict = {}
        if check:
            if not zmod.span_contains(self.V, self.U, m):
                raise NotASubmodule("U is not contained in V")
            if not (ambient.is_invariant(self.V) and ambient.is_invariant(self.U)):
                raise NotASubmodule("V and U must be closed under the ring action")

    # -- basic data -------------------------------------------------------
    @property
    def ring(self) -> FiniteRing:
        return self.ambient.ring

    @property
    def m(self) -> int:
        return self.ambient.ring.m

    @property
    def dim(self) -> int:
        return self.ambient.dim

    @cached_property
    def log_size(self) -> int:
        return zmod.log_span_size(self.V, self.m) - zmod.log_span_size(self.U, self.m)

    @cached_property
    def size(self) -> int:
        return zmod.prime_power(self.m)[0] ** self.log_size

    def is_zero(self) -> bool:
        return self.log_size == 0

    @cached_property
    def key(self) -> bytes:
        """Bit-exact identity of this representation (not of the iso class)."""
        h = hashlib.sha256(self.ambient.digest)
        for a in (self.V, self.U):
            h.update(np.int64(a.shape[0]).tobytes())
            h.update(a.tobytes())
        return h.digest()

    def __eq__(self, other):
        return isinstance(other, FiniteModule) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        lab = f" {self.label!r}" if self.label else ""
        return f"<FiniteModule{lab} over {self.ring.name}, size {self.size}>"

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_cache"] = {}
        return state

    # -- elements ---------------------------------------------------------
    def reduce(self, x) -> np.ndarray:
        """Canonical representatives of the cosets ``x + U``."""
        return zmod.reduce_rows(x, self.U, self.m)

    def contains(self, x) -> bool:
        """True if every row of ``x`` lies in V."""
        return zmod.span_contains(self.V, x, self.m)

    def elements(self) -> np.ndarray:
        """Canonical representatives of all elements, lexicographically sorted."""
        e = self._cache.get("elements")
        if e is None:
            e = _freeze(zmod.enumerate_quotient(self.V, self.U, self.m))
            self._cache["elements"] = e
        return e

    def act(self, x, r) -> np.ndarray:
        return self.reduce(self.ambient.act(x, r))

    # -- submodules -------------------------------------------------------
    def span(self, rows) -> "Submodule":
        """Submodule generated by the given elements."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.dim)
        if rows.shape[0] and not self.contains(rows):
            raise NotASubmodule("generators are not elements of the module")
        w = self.ambient.closure(np.vstack([self.U, rows]))
        return Submodule(self, w, check=False)

    def whole(self) -> "Submodule":
        return Submodule(self, self.V, check=False)

    def zero(self) -> "Submodule":
        return Submodule(self, self.U, check=False)

    def submodule_of_ring_ideal(self, ideal_rows) -> "Submodule":
        """M * I for a right ideal I given by Z/m-spanning ring elements."""
        ideal_rows = np.asarray(ideal_rows, dtype=np.int64).reshape(-1, self.ring.rank)
        if ideal_rows.shape[0] == 0 or self.V.shape[0] == 0:
            return self.zero()
        mats = np.tensordot(ideal_rows, self.ambient.action, axes=1) % self.m
        rows = np.concatenate([(self.V @ mat) % self.m for mat in mats], axis=0)
        return Submodule(self, zmod.howell(np.vstack([self.U, rows]), self.m, self.dim), check=False)

    # -- generators -------------------------------------------------------
    @property
    def gens(self) -> np.ndarray:
        """R-generators, lifted greedily from M / rad(M) (Nakayama)."""
        g = self._cache.get("gens")
        if g is None:
            g = _freeze(self._choose_gens())
            self._cache["gens"] = g
        return g

    def _choose_gens(self) -> np.ndarray:
        m = self.m
        from .structure import jacobson_rows

        rad = self.submodule_of_ring_ideal(jacobson_rows(self.ring)).W
        chosen: list[np.ndarray] = []
        cur = rad
        for row in self.V:
            if zmod.span_contains(cur, row, m):
                continue
            chosen.append(self.reduce(row)[0])
            cur = self.ambient.closure(np.vstack([cur, row[None, :]]))
            if zmod.log_span_size(cur, m) == zmod.log_span_size(self.V, m):
                break
        return np.array(chosen, dtype=np.int64).reshape(-1, self.dim)

    @property
    def ngens(self) -> int:
        return int(self.gens.shape[0])

    @property
    def gen_rows(self) -> np.ndarray:
        """``g_i * e_j`` stacked in (i, j) order: the image of R^s -> M."""
        g = self._cache.get("gen_rows")
        if g is None:
            g = _freeze(self.ambient.orbit_rows(self.gens))
            self._cache["gen_rows"] = g
        return g

    @property
    def ann_U(self) -> np.ndarray:
        a = self._cache.get("ann_U")
        if a is None:
            a = _freeze(zmod.annihilator(self.U, self.m))
            self._cache["ann_U"] = a
        return a

    @property
    def ann_V(self) -> np.ndarray:
        a = self._cache.get("ann_V")
        if a is None:
            a = _freeze(zmod.annihilator(self.V, self.m))
            self._cache["ann_V"] = a
        return a

    @property
    def relations(self) -> np.ndarray:
        """Howell basis of ``{r in R^s : sum_i g_i r_i in U}`` in (Z/m)^(s*d)."""
        r = self._cache.get("relations")
        if r is None:
            sd = self.gen_rows.shape[0]
            if sd == 0:
                r = np.zeros((0, 0), dtype=np.int64)
            elif self.ann_U.shape[0] == 0:
                r = np.eye(sd, dtype=np.int64)
            else:
                r = zmod.kernel((self.gen_rows @ self.ann_U.T) % self.m, self.m)
            r = _freeze(r)
            self._cache["relations"] = r
        return r

    @property
    def v_coords(self) -> np.ndarray:
        """For each Howell row of V, coefficients r with ``r @ gen_rows == row`` mod U."""
        c = self._cache.get("v_coords")
        if c is None:
            c = _freeze(self._solve_coords(self.V))
            self._cache["v_coords"] = c
        return c

    def _solve_coords(self, rows) -> np.ndarray:
        m = self.m
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.dim)
        sd = self.gen_rows.shape[0]
        out = np.zeros((rows.shape[0], sd), dtype=np.int64)
        if rows.shape[0] == 0 or sd == 0:
            return out
        stacked = np.vstack([self.gen_rows, self.U])
        r = stacked.shape[0]
        aug = np.hstack([stacked % m, np.eye(r, dtype=np.int64)])
        h = zmod.howell(aug, m)
        x = np.hstack([rows % m, np.zeros((rows.shape[0], r), dtype=np.int64)])
        red = zmod.reduce_rows(x, h, m)
        if red[:, : self.dim].any():
            raise NotASubmodule("element outside the module")
        return (-red[:, self.dim : self.dim + sd]) % m

    def coords(self, x) -> np.ndarray:
        """Coefficients in (Z/m)^(s*d) expressing elements via the generators."""
        x = np.asarray(x, dtype=np.int64).reshape(-1, self.dim)
        c, res = zmod.reduce_with_coords(x, self.V, self.m)
        if res.any():
            raise NotASubmodule("element outside the module")
        return (c @ self.v_coords) % self.m

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        amb = self.ambient
        if amb.free_rank is not None:
            ambient = {"free_rank": amb.free_rank}
        else:
            ambient = {"action": amb.action.tolist()}
        return {
            "ring": self.ring.name,
            "ring_digest": self.ring.digest,
            "ambient_rank": amb.free_rank,
            "ambient": ambient,
            "V": self.V.tolist(),
            "U": self.U.tolist(),
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, ring: FiniteRing, data: dict) -> "FiniteModule":
        amb = data["ambient"]
        if "free_rank" in amb:
            ambient = free_ambient(ring, int(amb["free_rank"]))
        else:
            ambient = Ambient(ring, amb["action"])
        n = ambient.dim
        V = np.asarray(data["V"], dtype=np.int64).reshape(-1, n)
        U = np.asarray(data["U"], dtype=np.int64).reshape(-1, n)
        return cls(ambient, V, U, label=data.get("label", ""), check=False)


class Submodule:
    """A submodule ``W/U`` of ``parent = V/U``, stored as the Howell form of W."""

    def __init__(self, parent: FiniteModule, W, *, check: bool = True):
        self.parent = parent
        self.W = _freeze(zmod.howell(W, parent.m, parent.dim))
        if check:
            m = parent.m
            if not (zmod.span_contains(self.W, parent.U, m) and zmod.span_contains(parent.V, self.W, m)):
                raise NotASubmodule("W must satisfy U <= W <= V")
            if not parent.ambient.is_invariant(self.W):
                raise NotASubmodule("not closed under the ring action")

    @cached_property
    def log_size(self) -> int:
        m = self.parent.m
        return zmod.log_span_size(self.W, m) - zmod.log_span_size(self.parent.U, m)

    @property
    def size(self) -> int:
        return zmod.prime_power(self.parent.m)[0] ** self.log_size

    @cached_property
    def key(self) -> bytes:
        return hashlib.sha256(self.parent.ambient.digest + self.W.tobytes() + bytes([self.W.shape[0] % 256])).digest()

    def module(self) -> FiniteModule:
        mod = self.__dict__.get("_module")
        if mod is None:
            mod = FiniteModule(self.parent.ambient, self.W, self.parent.U, check=False, canonical=True)
            self.__dict__["_module"] = mod
        return mod

    def contains(self, x) -> bool:
        return zmod.span_contains(self.W, x, self.parent.m)

    def le(self, other: "Submodule") -> bool:
        return zmod.span_contains(other.W, self.W, self.parent.m)

    def __add__(self, other: "Submodule") -> "Submodule":
        return Submodule(self.parent, np.vstack([self.W, other.W]), check=False)

    def __and__(self, other: "Submodule") -> "Submodule":
        return Submodule(self.parent, zmod.intersect(self.W, other.W, self.parent.m), check=False)

    def is_zero(self) -> bool:
        return self.log_size == 0

    def __eq__(self, other):
        return isinstance(other, Submodule) and self.parent.ambient == other.parent.ambient and np.array_equal(self.W, other.W)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<Submodule of size {self.size} in {self.parent!r}>"


def check_same_ring(*mods: FiniteModule) -> None:
    first = mods[0].ring
    for mod in mods[1:]:
        if not first.same_structure(mod.ring):
            raise RingMismatch(f"{first.name} vs {mod.ring.name}")


def _block_diag(mats) -> np.ndarray:
    n = sum(a.shape[0] for a in mats)
    out = np.zeros((n, n), dtype=np.int64)
    o = 0
    for a in mats:
        k = a.shape[0]
        out[o : o + k, o : o + k] = a
        o += k
    return out


def free_ambient(ring: FiniteRing, n: int) -> Ambient:
    cache = ring._cache.setdefault("free_ambients", {})
    amb = cache.get(n)
    if amb is None:
        action = np.array([_block_diag([ring.right_mats[j]] * n) for j in range(ring.rank)], dtype=np.int64)
        if n == 0:
            action = np.zeros((ring.rank, 0, 0), dtype=np.int64)
        amb = Ambient(ring, action, free_rank=n)
        cache[n] = amb
    return amb


def free_module(ring: FiniteRing, n: int) -> FiniteModule:
    amb = free_ambient(ring, n)
    N = amb.dim
    out = FiniteModule(amb, np.eye(N, dtype=np.int64), np.zeros((0, N), dtype=np.int64), label=f"R^{n}", check=False)
    # the standard basis, so a hom out of R^n is a tuple of arbitrary images
    d = ring.rank
    gens = np.zeros((n, N), dtype=np.int64)
    for i in range(n):
        gens[i, i * d : (i + 1) * d] = ring.unit
    out._cache["gens"] = _freeze(gens)
    return out


def regular_module(ring: FiniteRing) -> FiniteModule:
    """R as a right module over itself; its submodules are the right ideals."""
    mod = free_module(ring, 1)
    mod.label = "R"
    return mod


def zero_module(ring: FiniteRing) -> FiniteModule:
    amb = free_ambient(ring, 1)
    I = np.eye(amb.dim, dtype=np.int64)
    return FiniteModule(amb, I, I, label="0", check=False)


def module_from_action(ring: FiniteRing, action, label: str = "") -> FiniteModule:
    """The whole ambient (Z/m)^N with the given action, as a module."""
    amb = Ambient(ring, action)
    N = amb.dim
    for a in range(ring.rank):
        for b in range(ring.rank):
            ab = ring.mul(np.eye(ring.rank, dtype=np.int64)[a], np.eye(ring.rank, dtype=np.int64)[b])
            lhs = (amb.action[a] @ amb.action[b]) % ring.m
            rhs = np.tensordot(ab, amb.action, axes=1) % ring.m
            if not np.array_equal(lhs, rhs):
                raise ValueError("matrices do not define a right module action")
    if not np.array_equal(np.tensordot(np.array(ring.unit), amb.action, axes=1) % ring.m, np.eye(N, dtype=np.int64)):
        raise ValueError("unit does not act as the identity")
    return FiniteModule(amb, np.eye(N, dtype=np.int64), np.zeros((0, N), dtype=np.int64), label=label, check=False)


def _pad(rows: np.ndarray, left: int, right: int) -> np.ndarray:
    return np.hstack([
        np.zeros((rows.shape[0], left), dtype=np.int64),
        rows,
        np.zeros((rows.shape[0], right), dtype=np.int64),
    ])


def direct_sum(*mods: FiniteModule) -> FiniteModule:
    """External direct sum; see :func:`sum_injection` / :func:`sum_projection`."""
    check_same_ring(*mods)
    ring = mods[0].ring
    dims = [mod.dim for mod in mods]
    N = sum(dims)
    action = np.array([_block_diag([mod.ambient.action[j] for mod in mods]) for j in range(ring.rank)], dtype=np.int64)
    if N == 0:
        action = np.zeros((ring.rank, 0, 0), dtype=np.int64)
    frees = [mod.ambient.free_rank for mod in mods]
    free_rank = sum(frees) if all(f is not None for f in frees) else None
    amb = free_ambient(ring, free_rank) if free_rank is not None else Ambient(ring, action)
    V, U = [], []
    off = 0
    for mod, dm in zip(mods, dims):
        V.append(_pad(mod.V, off, N - off - dm))
        U.append(_pad(mod.U, off, N - off - dm))
        off += dm
    label = " + ".join(mod.label or "?" for mod in mods)
    out = FiniteModule(amb, np.vstack(V), np.vstack(U), label=label, check=False)
    gens, off = [], 0
    for mod, dm in zip(mods, dims):
        gens.append(_pad(mod.gens, off, N - off - dm))
        off += dm
    out._cache["gens"] = _freeze(out.reduce(np.vstack(gens)) if gens else np.zeros((0, N), dtype=np.int64))
    out._cache["summands"] = (tuple(mods), tuple(dims))
    return out
