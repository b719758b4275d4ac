"""Isomorphism-class catalogs of small modules, short exact sequences, and a disk cache."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .envelopes import is_injective, is_projective
from .errors import BoundExceeded, IoFailure, VersionMismatch
from .homs import ModuleHom, projection
from .module import FiniteModule, Submodule, free_module, zero_module
from .ring import FiniteRing
from .structure import are_isomorphic, invariant_hash, invariant_key, structural_invariants, submodules

__all__ = [
    "Catalog",
    "ClassFlags",
    "build_catalog",
    "short_exact_sequences",
    "cache_store",
    "cache_load",
    "CACHE_FORMAT_VERSION",
]

CACHE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class ClassFlags:
    injective: bool
    projective: bool
    simple: bool
    cyclic: bool
    semisimple: bool
    length: int
    min_generators: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _flags(M: FiniteModule) -> ClassFlags:
    inv = structural_invariants(M)
    return ClassFlags(
        injective=is_injective(M),
        projective=is_projective(M),
        simple=inv.is_simple,
        cyclic=inv.is_cyclic,
        semisimple=inv.is_semisimple,
        length=inv.length,
        min_generators=inv.min_generators,
    )


def _serial(M: FiniteModule) -> str:
    return json.dumps({"V": M.V.tolist(), "U": M.U.tolist(), "dim": M.dim}, separators=(",", ":"))


class Catalog:
    """Representatives of the isomorphism classes of R^g/K, g <= max_gens, |R^g/K| <= max_size.

    Besides the catalog classes, the registry also hands out ids to other
    modules met during sweeps (submodules needing more generators, say), so
    memo tables can be keyed by class id throughout.
    """

    def __init__(self, ring: FiniteRing, max_size: int, max_gens: int):
        self.ring = ring
        self.max_size = max_size
        self.max_gens = max_gens
        self.classes: list[FiniteModule] = []
        self.ids: list[str] = []
        self.flags: dict[str, ClassFlags] = {}
        self.extras: dict[str, FiniteModule] = {}
        self.memo: dict[tuple[str, str, str], bool] = {}
        self._by_id: dict[str, FiniteModule] = {}
        self._buckets: dict[str, list[str]] = {}
        self._seen: dict[bytes, str] = {}
        self._ses: dict[str, list] = {}

    # -- registry ---------------------------------------------------------
    def _register(self, M: FiniteModule, prefix: str) -> str:
        h = invariant_hash(M)
        bucket = self._buckets.setdefault(h, [])
        cid = f"{prefix}{M.size}-{h[:10]}" + (f".{len(bucket)}" if bucket else "")
        bucket.append(cid)
        self._by_id[cid] = M
        self._seen[M.key] = cid
        return cid

    def identify(self, M: FiniteModule, *, register: bool = True) -> str | None:
        """Id of the class of ``M``; unseen classes get an extra id when ``register``."""
        cid = self._seen.get(M.key)
        if cid is not None:
            return cid
        h = invariant_hash(M)
        for cand in self._buckets.get(h, []):
            if are_isomorphic(self._by_id[cand], M):
                self._seen[M.key] = cand
                return cand
        if not register:
            return None
        cid = self._register(M, "x")
        self.extras[cid] = M
        return cid

    def sequences(self, cid: str) -> list[tuple[Submodule, FiniteModule, str, str]]:
        """``(A, B/A, id(A), id(B/A))`` for every submodule A of the class ``cid``, cached."""
        seqs = self._ses.get(cid)
        if seqs is None:
            seqs = []
            for A, C, _pi in short_exact_sequences(self.module(cid)):
                seqs.append((A, C, self.identify(A.module()), self.identify(C)))
            self._ses[cid] = seqs
        return seqs

    def module(self, cid: str) -> FiniteModule:
        return self._by_id[cid]

    def index(self, cid: str) -> int:
        return self.ids.index(cid)

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(zip(self.ids, self.classes))

    # -- class subsets ----------------------------------------------------
    def select(self, pred) -> list[str]:
        return [cid for cid in self.ids if pred(self.flags[cid])]

    @property
    def injective_ids(self) -> list[str]:
        return self.select(lambda f: f.injective)

    @property
    def projective_ids(self) -> list[str]:
        return self.select(lambda f: f.projective)

    @property
    def simple_ids(self) -> list[str]:
        return self.select(lambda f: f.simple)

    @property
    def cyclic_ids(self) -> list[str]:
        return self.select(lambda f: f.cyclic)

    def summary(self) -> list[dict]:
        return [
            {"id": cid, "size": M.size, "label": M.label, **self.flags[cid].to_dict()}
            for cid, M in zip(self.ids, self.classes)
        ]

    def __repr__(self):
        return f"<Catalog {self.ring.name}: {len(self)} classes, max_size={self.max_size}, max_gens={self.max_gens}>"


def build_catalog(ring: FiniteRing, max_size: int = 64, max_gens: int = 2) -> Catalog:
    """Enumerate quotients of R^g (g <= max_gens) up to size ``max_size``, one per iso class."""
    if max_size < 1 or max_gens < 1:
        raise ValueError("bounds must be positive")
    cat = Catalog(ring, max_size, max_gens)
    found: list[FiniteModule] = [zero_module(ring)]
    keys = {invariant_hash(found[0]): [found[0]]}
    for g in range(1, max_gens + 1):
        F = free_module(ring, g)
        for K in submodules(F):
            if F.size // K.size > max_size:
                continue
            Q = FiniteModule(F.ambient, F.V, K.W, check=False, canonical=True)
            h = invariant_hash(Q)
            bucket = keys.setdefault(h, [])
            if any(are_isomorphic(P, Q) for P in bucket):
                continue
            bucket.append(Q)
            found.append(Q)
    found.sort(key=lambda M: (M.size, invariant_hash(M), _serial(M)))
    for M in found:
        cid = cat._register(M, "c")
        if not M.label:
            M.label = cid
        cat.classes.append(M)
        cat.ids.append(cid)
        cat.flags[cid] = _flags(M)
    return cat


def short_exact_sequences(B: FiniteModule, bound: int | None = None):
    """Yield ``(A, C, pi)`` for every submodule A of B, with C = B/A and pi the projection."""
    for A in submodules(B, bound):
        C, pi = projection(B, A)
        yield A, C, pi


# -- disk cache ---------------------------------------------------------------

def _cache_path(cache_dir, ring: FiniteRing, max_size: int, max_gens: int) -> Path:
    return Path(cache_dir) / f"{ring.digest[:16]}-s{max_size}-g{max_gens}.json"


def cache_store(cache_dir, cat: Catalog) -> Path:
    """Write the catalog and its memo table as one JSON manifest."""
    path = _cache_path(cache_dir, cat.ring, cat.max_size, cat.max_gens)
    doc = {
        "format": CACHE_FORMAT_VERSION,
        "ring_digest": cat.ring.digest,
        "ring": cat.ring.to_dict(),
        "max_size": cat.max_size,
        "max_gens": cat.max_gens,
        "classes": [
            {"id": cid, "module": M.to_dict(), "flags": cat.flags[cid].to_dict()}
            for cid, M in zip(cat.ids, cat.classes)
        ],
        "extras": [{"id": cid, "module": M.to_dict()} for cid, M in cat.extras.items()],
        "memo": sorted([list(k) + [v] for k, v in cat.memo.items()]),
    }
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(doc, separators=(",", ":"), sort_keys=True))
        os.replace(tmp, path)
    except OSError as exc:
        raise IoFailure(str(exc)) from None
    return path


def cache_load(cache_dir, ring: FiniteRing, max_size: int = 64, max_gens: int = 2) -> Catalog:
    """Reload a stored catalog; raises VersionMismatch if the file is stale."""
    path = _cache_path(cache_dir, ring, max_size, max_gens)
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError:
        raise
    except (OSError, json.JSONDecodeError) as exc:
        raise IoFailure(str(exc)) from None
    if doc.get("format") != CACHE_FORMAT_VERSION or doc.get("ring_digest") != ring.digest:
        raise VersionMismatch(f"cache at {path} does not match ring {ring.name}")
    cat = Catalog(ring, doc["max_size"], doc["max_gens"])
    for entry in doc["classes"]:
        M = FiniteModule.from_dict(ring, entry["module"])
        cid = entry["id"]
        cat.classes.append(M)
        cat.ids.append(cid)
        cat.flags[cid] = ClassFlags(**entry["flags"])
        _attach(cat, cid, M)
    for entry in doc["extras"]:
        M = FiniteModule.from_dict(ring, entry["module"])
        cat.extras[entry["id"]] = M
        _attach(cat, entry["id"], M)
    for op, a, b, v in doc["memo"]:
        cat.memo[(op, a, b)] = bool(v)
    return cat


def _attach(cat: Catalog, cid: str, M: FiniteModule) -> None:
    h = invariant_hash(M)
    cat._buckets.setdefault(h, []).append(cid)
    cat._by_id[cid] = M
    cat._seen[M.key] = cid


def load_or_build(ring: FiniteRing, max_size: int = 64, max_gens: int = 2, cache_dir=None) -> Catalog:
    """Catalog from ``cache_dir`` when a valid one exists, else a fresh build."""
    if cache_dir is not None:
        try:
            return cache_load(cache_dir, ring, max_size, max_gens)
        except (FileNotFoundError, VersionMismatch, IoFailure):
            pass
    cat = build_catalog(ring, max_size, max_gens)
    if cache_dir is not None:
        cache_store(cache_dir, cat)
    return cat
