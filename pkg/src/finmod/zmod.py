"""Exact linear algebra over Z/mZ for prime powers m = p**k.

Row spaces are kept in Howell normal form, which is unique for a given
submodule of (Z/mZ)^n. That uniqueness is what every other layer of the
package leans on: equality of submodules is equality of arrays, membership
is reduction to zero, and reduced vectors are canonical coset
representatives.

All arrays are ``int64`` with entries in ``[0, m)``.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = [
    "prime_power",
    "howell",
    "reduce_rows",
    "reduce_with_coords",
    "span_size",
    "log_span_size",
    "kernel",
    "solve",
    "annihilator",
    "intersect",
    "span_contains",
    "enumerate_quotient",
    "enumerate_span",
]


@lru_cache(maxsize=None)
def prime_power(m: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``m == p**k``; raise ValueError otherwise."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    p = next(q for q in range(2, m + 1) if m % q == 0)
    k, r = 0, m
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{m} is not a prime power")
    return p, k


@lru_cache(maxsize=None)
def _tables(m: int):
    """Valuation and unit-part inverse lookup tables for Z/m."""
    p, k = prime_power(m)
    val = np.full(m, k, dtype=np.int64)
    inv_unit = np.zeros(m, dtype=np.int64)
    for x in range(1, m):
        v, u = 0, x
        while u % p == 0:
            u //= p
            v += 1
        val[x] = v
        inv_unit[x] = pow(u, -1, m)
    return val, inv_unit


def _as2d(a, n: int | None = None) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size or n is None else a.reshape(0, n)
    if a.size == 0 and n is not None:
        return np.zeros((0, n), dtype=np.int64)
    return a


def howell(a, m: int, ncols: int | None = None) -> np.ndarray:
    """Howell normal form of the row span of ``a`` over Z/m.

    Rows are in echelon order; each pivot is a power of p; entries above a
    pivot are reduced modulo it; zero rows are dropped. The annihilator of
    every pivot row is pushed back into the pool, which gives the Howell
    property (the rows with i leading zeros span every vector of the module
    with i leading zeros).
    """
    a = _as2d(a, ncols) % m
    nrows, n = a.shape
    if ncols is not None and n != ncols:
        raise ValueError(f"expected {ncols} columns, got {n}")
    p, k = prime_power(m)
    val, inv_unit = _tables(m)
    pool = a[np.any(a != 0, axis=1)]
    out_rows: list[np.ndarray] = []
    out_piv: list[tuple[int, int]] = []
    for c in range(n):
        if pool.shape[0] == 0:
            break
        col = pool[:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        vals = val[col[nz]]
        i = int(nz[np.argmin(vals)])
        v = int(val[col[i]])
        row = (pool[i] * inv_unit[col[i]]) % m
        piv = p**v
        q = col // piv
        q[i] = 0
        rest = pool
        if q.any():
            rest = (pool - q[:, None] * row[None, :]) % m
        keep = np.any(rest != 0, axis=1)
        keep[i] = False
        rest = rest[keep]
        if v:
            # p^(k-v) * row has a zero in column c and must stay in the pool
            rest = np.vstack([rest, ((row * (m // piv)) % m)[None, :]])
        pool = rest
        out_rows.append(row)
        out_piv.append((c, piv))
    if not out_rows:
        return np.zeros((0, n), dtype=np.int64)
    h = np.array(out_rows, dtype=np.int64)
    for j, (c, piv) in enumerate(out_piv):
        if j == 0:
            continue
        q = h[:j, c] // piv
        if q.any():
            h[:j] = (h[:j] - q[:, None] * h[j][None, :]) % m
    return h


def _pivots(h: np.ndarray) -> list[tuple[int, int]]:
    out = []
    for row in h:
        c = int(np.flatnonzero(row)[0])
        out.append((c, int(row[c])))
    return out


def reduce_rows(x, h: np.ndarray, m: int) -> np.ndarray:
    """Reduce each row of ``x`` modulo the span of Howell form ``h``.

    The result is the canonical coset representative; it is zero exactly
    when the row lies in the span.
    """
    x = _as2d(x, h.shape[1]).copy() % m
    for row, (c, piv) in zip(h, _pivots(h)):
        q = x[:, c] // piv
        if q.any():
            x = (x - q[:, None] * row[None, :]) % m
    return x


def reduce_with_coords(x, h: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Like :func:`reduce_rows` but also return the quotients used.

    ``x == coords @ h + residue (mod m)`` row by row.
    """
    x = _as2d(x, h.shape[1]).copy() % m
    coords = np.zeros((x.shape[0], h.shape[0]), dtype=np.int64)
    for j, (row, (c, piv)) in enumerate(zip(h, _pivots(h))):
        q = x[:, c] // piv
        if q.any():
            coords[:, j] = q
            x = (x - q[:, None] * row[None, :]) % m
    return coords % m, x


def log_span_size(h: np.ndarray, m: int) -> int:
    """log_p of the number of elements in the span of Howell form ``h``."""
    p, k = prime_power(m)
    val, _ = _tables(m)
    return int(sum(k - int(val[piv]) for _, piv in _pivots(h)))


def span_size(h: np.ndarray, m: int) -> int:
    p, _ = prime_power(m)
    return p ** log_span_size(h, m)


def kernel(a, m: int, nrows: int | None = None) -> np.ndarray:
    """Howell basis of the left kernel ``{y : y @ a == 0 (mod m)}``."""
    a = np.asarray(a, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    r = a.shape[0] if nrows is None else nrows
    n = a.shape[1]
    if r == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if n == 0:
        return np.eye(r, dtype=np.int64)
    aug = np.hstack([a % m, np.eye(r, dtype=np.int64)])
    h = howell(aug, m)
    tail = h[~np.any(h[:, :n] != 0, axis=1)]
    return np.ascontiguousarray(tail[:, n:])


def solve(a, b, m: int):
    """Return one ``y`` with ``y @ a == b (mod m)``, or None."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    r, n = a.shape
    if r == 0:
        return np.zeros(0, dtype=np.int64) if not (b % m).any() else None
    aug = np.hstack([a % m, np.eye(r, dtype=np.int64)])
    h = howell(aug, m)
    x = np.concatenate([b % m, np.zeros(r, dtype=np.int64)])
    red = reduce_rows(x, h, m)[0]
    if red[:n].any():
        return None
    return (-red[n:]) % m


def annihilator(h: np.ndarray, m: int) -> np.ndarray:
    """Howell basis of ``{y : h @ y == 0}``; the dual submodule.

    Over Z/p^k a submodule equals the annihilator of its annihilator, so
    ``x in span(h)`` iff ``annihilator(h) @ x == 0``.
    """
    n = h.shape[1]
    if h.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    return kernel(h.T, m)


def intersect(h1: np.ndarray, h2: np.ndarray, m: int) -> np.ndarray:
    n = h1.shape[1]
    both = np.vstack([annihilator(h1, m), annihilator(h2, m)])
    if both.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    return annihilator(howell(both, m, n), m)


def span_contains(h: np.ndarray, x, m: int) -> bool:
    x = _as2d(x, h.shape[1])
    if x.shape[0] == 0:
        return True
    return not reduce_rows(x, h, m).any()


def enumerate_quotient(gens, u: np.ndarray, m: int) -> np.ndarray:
    """All canonical representatives of ``(span(gens) + span(u)) / span(u)``.

    Rows are returned sorted lexicographically. The enumeration walks the
    group generated by ``gens`` modulo ``u`` one generator at a time, so the
    work is proportional to the quotient size, not to ``|span(gens)|``.
    """
    n = u.shape[1]
    gens = reduce_rows(_as2d(gens, n), u, m)
    elems = np.zeros((1, n), dtype=np.int64)
    for g in gens:
        if not g.any():
            continue
        layers = [elems]
        cur = elems
        for _ in range(1, m):
            cur = reduce_rows(cur + g[None, :], u, m)
            layers.append(cur)
        elems = np.unique(np.vstack(layers), axis=0)
    return elems


def enumerate_span(h: np.ndarray, m: int) -> np.ndarray:
    """All elements of the span of Howell form ``h`` (lexicographic order)."""
    n = h.shape[1]
    p, _ = prime_power(m)
    elems = np.zeros((1, n), dtype=np.int64)
    for row, (_, piv) in zip(h, _pivots(h)):
        order = m // piv
        coeffs = np.arange(order, dtype=np.int64)
        elems = (elems[:, None, :] + coeffs[None, :, None] * row[None, None, :]) % m
        elems = elems.reshape(-1, n)
    return np.unique(elems, axis=0)
