"""Finite unital rings given by structure constants over Z/mZ."""

from __future__ import annotations

import hashlib
import itertools
import json
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .errors import BadUnit, CharNotPrimePower, MalformedSpec, NonAssociative
from .zmod import prime_power

__all__ = [
    "FiniteRing",
    "load_ring",
    "dump_ring",
    "opposite_ring",
    "matrix_ring",
    "factor_ring",
    "builtin_ring",
    "BUILTIN_RINGS",
]


class FiniteRing:
    """A ring whose additive group is free of rank ``rank`` over Z/m.

    ``mult[i, j]`` is the coordinate vector of ``e_i * e_j``. Instances are
    treated as immutable; derived data (radical, simple modules, ...) is
    memoised in ``_cache``.
    """

    def __init__(self, name: str, m: int, unit: Sequence[int], mult, *, validate: bool = True):
        self.name = str(name)
        self.m = int(m)
        mult = np.asarray(mult, dtype=np.int64)
        if mult.ndim != 3 or mult.shape[0] != mult.shape[1] or mult.shape[1] != mult.shape[2]:
            raise MalformedSpec(f"mult must have shape (d, d, d), got {mult.shape}")
        self.rank = int(mult.shape[0])
        self.mult = mult % self.m
        self.mult.setflags(write=False)
        self.unit = tuple(int(x) % self.m for x in unit)
        if len(self.unit) != self.rank:
            raise MalformedSpec("unit has wrong length")
        # right_mats[j]: x -> x * e_j ; left_mats[j]: x -> e_j * x (row-vector convention)
        self.right_mats = np.ascontiguousarray(np.transpose(self.mult, (1, 0, 2)))
        self.left_mats = np.ascontiguousarray(self.mult.copy())
        self.right_mats.setflags(write=False)
        self.left_mats.setflags(write=False)
        self._cache: dict = {}
        if validate:
            self._validate()

    # -- validation -------------------------------------------------------
    def _validate(self) -> None:
        try:
            prime_power(self.m)
        except ValueError as exc:
            raise CharNotPrimePower(str(exc)) from None
        c, m = self.mult, self.m
        # (e_i e_j) e_l  versus  e_i (e_j e_l)
        lhs = np.einsum("ijs,slt->ijlt", c, c) % m
        rhs = np.einsum("jls,ist->ijlt", c, c) % m
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(np.any(lhs != rhs, axis=3))[0]
            raise NonAssociative(f"{self.name}: associativity fails on basis triple {tuple(int(b) for b in bad)}")
        u = np.array(self.unit, dtype=np.int64)
        eye = np.eye(self.rank, dtype=np.int64)
        if not np.array_equal(np.einsum("i,ijt->jt", u, c) % m, eye):
            raise BadUnit(f"{self.name}: unit fails on the left")
        if not np.array_equal(np.einsum("j,ijt->it", u, c) % m, eye):
            raise BadUnit(f"{self.name}: unit fails on the right")

    # -- arithmetic -------------------------------------------------------
    @property
    def size(self) -> int:
        return self.m**self.rank

    def mul(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return np.einsum("i,j,ijt->t", x, y, self.mult) % self.m

    def right_action(self, r) -> np.ndarray:
        """Matrix of ``x -> x * r`` on row vectors."""
        return np.tensordot(np.asarray(r, dtype=np.int64), self.right_mats, axes=1) % self.m

    def elements(self) -> np.ndarray:
        """All elements, lexicographic in coordinates."""
        return np.array(list(itertools.product(range(self.m), repeat=self.rank)), dtype=np.int64)

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mult, np.transpose(self.mult, (1, 0, 2))))

    # -- identity ---------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "m": self.m,
            "rank": self.rank,
            "unit": list(self.unit),
            "mult": self.mult.tolist(),
        }

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @property
    def digest(self) -> str:
        d = self._cache.get("digest")
        if d is None:
            # the name is a label, not structure
            body = {k: v for k, v in self.to_dict().items() if k != "name"}
            d = hashlib.sha256(json.dumps(body, separators=(",", ":")).encode()).hexdigest()
            self._cache["digest"] = d
        return d

    def same_structure(self, other: "FiniteRing") -> bool:
        return self is other or self.digest == other.digest

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteRing) and self.same_structure(other)

    def __hash__(self) -> int:
        return hash(self.digest)

    def __repr__(self) -> str:
        return f"FiniteRing({self.name!r}, m={self.m}, rank={self.rank}, size={self.size})"

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_cache"] = {}
        return state


def load_ring(source) -> FiniteRing:
    """Build a ring from a ring-definition document.

    ``source`` may be a dict, a JSON string, or a path to a JSON file.
    """
    if isinstance(source, (str, Path)) and not str(source).lstrip().startswith("{"):
        try:
            source = Path(source).read_text()
        except OSError as exc:
            raise MalformedSpec(f"cannot read ring file: {exc}") from None
    if isinstance(source, str):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as exc:
            raise MalformedSpec(f"invalid JSON: {exc}") from None
    if not isinstance(source, dict):
        raise MalformedSpec("ring definition must be a JSON object")
    missing = {"name", "m", "rank", "unit", "mult"} - source.keys()
    if missing:
        raise MalformedSpec(f"missing fields: {sorted(missing)}")
    try:
        m, d = int(source["m"]), int(source["rank"])
        mult = np.asarray(source["mult"], dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedSpec(str(exc)) from None
    if d < 1 or mult.shape != (d, d, d):
        raise MalformedSpec(f"mult must be a {d}x{d} array of length-{d} coordinate vectors")
    if len(source["unit"]) != d:
        raise MalformedSpec("unit must have rank entries")
    if m < 2:
        raise CharNotPrimePower(f"m={m}")
    return FiniteRing(source["name"], m, source["unit"], mult)


def dump_ring(ring: FiniteRing) -> str:
    """Canonical serialization: fixed key order, decimal integers, no spaces."""
    return ring.canonical_json()


def opposite_ring(ring: FiniteRing) -> FiniteRing:
    name = ring.name[:-3] if ring.name.endswith("^op") else ring.name + "^op"
    return FiniteRing(name, ring.m, ring.unit, np.transpose(ring.mult, (1, 0, 2)))


def matrix_ring(ring: FiniteRing, n: int) -> FiniteRing:
    """M_n(R), with basis E_ab * e_i ordered by (a, b, i)."""
    d = ring.rank
    c = np.zeros((n, n, d, n, n, d, n, n, d), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            for e in range(n):
                # (E_ab x)(E_be y) = E_ae (x y)
                c[a, b, :, b, e, :, a, e, :] = ring.mult
    N = n * n * d
    unit = np.zeros((n, n, d), dtype=np.int64)
    for a in range(n):
        unit[a, a] = ring.unit
    return FiniteRing(f"M{n}({ring.name})", ring.m, unit.reshape(N), c.reshape(N, N, N))


def factor_ring(ring: FiniteRing, ideal_rows, name: str | None = None) -> FiniteRing:
    """R/I for a two-sided ideal I that is a direct summand of the additive group.

    Coordinates of R/I are the non-pivot coordinates of the Howell basis of I,
    so every pivot must be a unit; other ideals raise MalformedSpec.
    """
    from . import zmod

    m, d = ring.m, ring.rank
    h = zmod.howell(ideal_rows, m, d)
    pivots = zmod._pivots(h)
    if any(v != 1 for _, v in pivots):
        raise MalformedSpec("R/I is not free over Z/m; only summand ideals are supported")
    for j in range(d):
        if not (zmod.span_contains(h, (h @ ring.right_mats[j]) % m, m)
                and zmod.span_contains(h, (h @ ring.left_mats[j]) % m, m)):
            raise MalformedSpec("ideal is not two-sided")
    keep = [c for c in range(d) if c not in {c for c, _ in pivots}]
    e = len(keep)
    c = np.zeros((e, e, e), dtype=np.int64)
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            prod = zmod.reduce_rows(ring.mult[i, j][None, :], h, m)[0]
            c[a, b] = prod[keep]
    unit = zmod.reduce_rows(np.array(ring.unit)[None, :], h, m)[0][keep]
    return FiniteRing(name or f"{ring.name}/I", m, unit, c)


# -- fixtures ---------------------------------------------------------------

def _from_basis(name: str, m: int, labels: Sequence[str], unit: Sequence[int],
                prod: Callable[[int, int], dict]) -> FiniteRing:
    """Structure constants from a rule ``prod(i, j) -> {k: coeff}``."""
    d = len(labels)
    c = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            for k, v in prod(i, j).items():
                c[i, j, k] = v % m
    return FiniteRing(name, m, unit, c)


def _monomial_algebra(name: str, monomials: Sequence[tuple[int, int]]) -> FiniteRing:
    """Commutative F2 algebra spanned by the given monomials x^a y^b; others vanish."""
    index = {mono: i for i, mono in enumerate(monomials)}

    def prod(i, j):
        a = (monomials[i][0] + monomials[j][0], monomials[i][1] + monomials[j][1])
        return {index[a]: 1} if a in index else {}

    unit = [1 if mono == (0, 0) else 0 for mono in monomials]
    return _from_basis(name, 2, [str(x) for x in monomials], unit, prod)


def _matrix_units(name: str, n: int, keep) -> FiniteRing:
    pairs = [(i, j) for i in range(n) for j in range(n) if keep(i, j)]
    index = {p: k for k, p in enumerate(pairs)}

    def prod(a, b):
        (i, j), (k, l) = pairs[a], pairs[b]
        return {index[(i, l)]: 1} if j == k else {}

    unit = [1 if i == j else 0 for i, j in pairs]
    return _from_basis(name, 2, [f"e{i}{j}" for i, j in pairs], unit, prod)


def _cyclic(name: str, m: int) -> FiniteRing:
    return FiniteRing(name, m, [1], [[[1]]])


BUILTIN_RINGS: dict[str, Callable[[], FiniteRing]] = {
    "F2": lambda: _cyclic("F2", 2),
    "Z4": lambda: _cyclic("Z4", 4),
    "Z8": lambda: _cyclic("Z8", 8),
    "E2": lambda: _monomial_algebra("E2", [(0, 0), (1, 0)]),
    # basis 1, u, v with J^2 = 0; the 8-element local ring with two-dimensional socle
    "R8": lambda: _monomial_algebra("R8", [(0, 0), (1, 0), (0, 1)]),
    "T2": lambda: _matrix_units("T2", 2, lambda i, j: i <= j),
    "K4": lambda: _monomial_algebra("K4", [(0, 0), (1, 0), (0, 1), (1, 1)]),
    "Q8bar": lambda: _monomial_algebra("Q8bar", [(0, 0), (1, 0), (0, 1)]),
    "M2F2": lambda: _matrix_units("M2F2", 2, lambda i, j: True),
}

_ALIASES = {"M2(F2)": "M2F2", "Q8": "Q8bar"}


def builtin_ring(name: str) -> FiniteRing:
    key = _ALIASES.get(name, name)
    if key not in BUILTIN_RINGS:
        raise KeyError(f"unknown built-in ring {name!r}; known: {sorted(BUILTIN_RINGS)}")
    return BUILTIN_RINGS[key]()
