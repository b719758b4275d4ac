"""Subinjectivity and subprojectivity: pairwise predicates and catalog sweeps.

Conventions, for modules X and Y:

* ``is_subinjective(X, Y)`` holds when Y is X-subinjective, i.e. X lies in
  the subinjectivity domain of Y: every map X -> Y extends along every
  extension of X. It suffices to test the injective hull of X.
* ``is_subprojective(X, Y)`` holds when Y is X-subprojective in the dual
  sense, i.e. X lies in the subprojectivity domain of Y: every map Y -> X
  lifts through every epimorphism onto X. It suffices to test a free cover
  of X.

So ``InInv(M) = {A : is_subinjective(A, M)}`` and
``In(M) = {N : is_subinjective(M, N)}``; the Pr versions are analogous.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import zmod
from .catalog import Catalog
from .envelopes import (
    free_cover,
    injective_hull,
    is_injective,
    is_projective,
    post_compose_span,
    pre_compose_span,
)
from .homs import ModuleHom, hom_set
from .module import FiniteModule, Submodule, check_same_ring

__all__ = [
    "is_subinjective",
    "is_subprojective",
    "subinjectivity_witness",
    "subprojectivity_witness",
    "Verdict",
    "Witness",
    "DomainSet",
    "sier_verdict",
    "sper_verdict",
    "domain_at_scale",
    "classify_at_scale",
    "middle_class_report",
    "pair_table",
]

CERTIFIED = "CertifiedUpToBound"
COUNTEREXAMPLE = "Counterexample"


# -- pairwise predicates -----------------------------------------------------

def _missing(G, span) -> ModuleHom | None:
    """A generator of the hom group G that is not in ``span``, or None."""
    for f in G.basis:
        if not zmod.span_contains(span, f.vector, G.source.m):
            return f
    return None


def subinjectivity_witness(X: FiniteModule, Y: FiniteModule) -> ModuleHom | None:
    """A map X -> Y that does not extend to the injective hull of X, or None."""
    check_same_ring(X, Y)
    if X.is_zero() or Y.is_zero() or is_injective(X) or is_injective(Y):
        return None
    G = hom_set(X, Y)
    if G.log_size == 0:
        return None
    h = injective_hull(X)
    span = pre_compose_span(hom_set(h.hull, Y), h.embedding)
    return _missing(G, span)


def is_subinjective(X: FiniteModule, Y: FiniteModule) -> bool:
    """True iff every map X -> Y extends to every module containing X."""
    return subinjectivity_witness(X, Y) is None


def subprojectivity_witness(X: FiniteModule, Y: FiniteModule) -> ModuleHom | None:
    """A map Y -> X that does not lift through the free cover of X, or None."""
    check_same_ring(X, Y)
    if X.is_zero() or Y.is_zero() or is_projective(X) or is_projective(Y):
        return None
    G = hom_set(Y, X)
    if G.log_size == 0:
        return None
    F, pi = free_cover(X)
    span = post_compose_span(hom_set(Y, F), pi)
    return _missing(G, span)


def is_subprojective(X: FiniteModule, Y: FiniteModule) -> bool:
    """True iff every map Y -> X lifts through every epimorphism onto X."""
    return subprojectivity_witness(X, Y) is None


_PREDICATES = {"si": is_subinjective, "sp": is_subprojective}


def _memo_pred(cat: Catalog, op: str, a: str, b: str) -> bool:
    key = (op, a, b)
    v = cat.memo.get(key)
    if v is None:
        v = _PREDICATES[op](cat.module(a), cat.module(b))
        cat.memo[key] = v
    return v


def pair_table(cat: Catalog, op: str, rows=None, cols=None, jobs: int = 1) -> np.ndarray:
    """Boolean matrix ``op(row class, column class)`` over catalog ids (memoised)."""
    rows = list(cat.ids if rows is None else rows)
    cols = list(cat.ids if cols is None else cols)
    if jobs > 1:
        _fill_parallel(cat, op, rows, cols, jobs)
    return np.array([[_memo_pred(cat, op, a, b) for b in cols] for a in rows], dtype=bool)


def _pair_worker(args):
    op, a_mod, b_mods = args
    return [_PREDICATES[op](a_mod, b) for b in b_mods]


def _fill_parallel(cat: Catalog, op: str, rows, cols, jobs: int) -> None:
    from concurrent.futures import ProcessPoolExecutor

    todo = [a for a in rows if any((op, a, b) not in cat.memo for b in cols)]
    if not todo:
        return
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        tasks = [(op, cat.module(a), [cat.module(b) for b in cols]) for a in todo]
        for a, vals in zip(todo, ex.map(_pair_worker, tasks)):
            for b, v in zip(cols, vals):
                cat.memo.setdefault((op, a, b), v)


# -- verdicts ------------------------------------------------------------------

@dataclass
class Witness:
    """A short exact sequence 0 -> A -> B -> C -> 0 and the failing map."""

    A: Submodule
    B: FiniteModule
    C: FiniteModule
    hom: ModuleHom
    ids: tuple[str, str, str]

    def to_dict(self) -> dict:
        return {
            "A_id": self.ids[0],
            "B_id": self.ids[1],
            "C_id": self.ids[2],
            "sizes": [self.A.size, self.B.size, self.C.size],
            "A_basis": self.A.W.tolist(),
            "hom_images": self.hom.images.tolist(),
        }


@dataclass
class Verdict:
    kind: str
    bound: int
    subject: str
    op: str
    witness: Witness | None = None
    checked: int = 0

    @property
    def certified(self) -> bool:
        return self.kind == CERTIFIED

    def verify(self) -> bool:
        """Recheck a counterexample from scratch; certified verdicts return True."""
        if self.witness is None:
            return self.certified
        w = self.witness
        M = self.hom.source if self.op == "si" else self.hom.target
        pred = _PREDICATES[self.op]
        A = w.A.module()
        return pred(M, A) and pred(M, w.C) and not pred(M, w.B)

    @property
    def hom(self) -> ModuleHom:
        return self.witness.hom

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "bound": self.bound, "subject": self.subject, "op": self.op, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


def _extension_verdict(M: FiniteModule, cat: Catalog, op: str) -> Verdict:
    check_same_ring(M, cat.classes[0])
    mid = cat.identify(M)
    Mrep = cat.module(mid)
    # the subject's own class goes first: M in In^{-1}(M) fails exactly when M is not injective
    order = ([mid] if mid in cat.ids else []) + [c for c in cat.ids if c != mid]
    checked = 0
    for bid in order:
        B = cat.module(bid)
        checked += 1
        if _memo_pred(cat, op, mid, bid):
            continue
        for A, C, aid, cid in cat.sequences(bid):
            if _memo_pred(cat, op, mid, aid) and _memo_pred(cat, op, mid, cid):
                wit = subinjectivity_witness(Mrep, B) if op == "si" else subprojectivity_witness(Mrep, B)
                if wit is None:
                    raise AssertionError("memo table disagrees with direct computation")
                return Verdict(COUNTEREXAMPLE, cat.max_size, mid, op, Witness(A, B, C, wit, (aid, bid, cid)), checked)
    return Verdict(CERTIFIED, cat.max_size, mid, op, None, checked)


def sier_verdict(M: FiniteModule, cat: Catalog) -> Verdict:
    """Search the catalog for 0 -> A -> B -> C -> 0 with M in InInv(A), InInv(C) but not InInv(B)."""
    return _extension_verdict(M, cat, "si")


def sper_verdict(M: FiniteModule, cat: Catalog) -> Verdict:
    """The subprojective analogue of :func:`sier_verdict`."""
    return _extension_verdict(M, cat, "sp")


# -- domains -------------------------------------------------------------------

KINDS = ("InInv", "PrInv", "In", "Pr")


@dataclass
class DomainSet:
    subject: str
    kind: str
    members: frozenset
    bound: int

    def __contains__(self, cid) -> bool:
        return cid in self.members

    def to_dict(self) -> dict:
        return {"subject": self.subject, "kind": self.kind, "members": sorted(self.members), "bound": self.bound}


def domain_at_scale(M: FiniteModule, kind: str, cat: Catalog) -> DomainSet:
    """The catalog slice of InInv(M), PrInv(M), In(M) or Pr(M)."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    mid = cat.identify(M)
    op = "si" if kind in ("InInv", "In") else "sp"
    if kind in ("InInv", "PrInv"):
        members = [c for c in cat.ids if _memo_pred(cat, op, c, mid)]
    else:
        members = [c for c in cat.ids if _memo_pred(cat, op, mid, c)]
    return DomainSet(mid, kind, frozenset(members), cat.max_size)


def classify_at_scale(M: FiniteModule, cat: Catalog) -> dict:
    """Indigence, t.i.b.s. and FG/C-injectivity flags of M against the catalog."""
    mid = cat.identify(M)
    inj, proj = set(cat.injective_ids), set(cat.projective_ids)
    cyc = set(cat.cyclic_ids)
    in_inv = domain_at_scale(M, "InInv", cat).members
    pr_inv = domain_at_scale(M, "PrInv", cat).members
    in_m = domain_at_scale(M, "In", cat).members
    pr_m = domain_at_scale(M, "Pr", cat).members
    allc = set(cat.ids)
    return {
        "subject": mid,
        "bound": cat.max_size,
        "max_gens": cat.max_gens,
        "indigent": set(in_inv) == inj,
        "p_indigent": set(pr_inv) == proj,
        "tibs": set(in_m) <= inj,
        "fg_injective": set(in_m) == allc,
        "c_injective": cyc <= set(in_m),
        "fg_projective": set(pr_m) == allc,
        "c_projective": cyc <= set(pr_m),
    }


def middle_class_report(ring, cat: Catalog) -> dict:
    """Per-class injective/indigent/projective/p-indigent flags and the summary booleans."""
    inj, proj = set(cat.injective_ids), set(cat.projective_ids)
    si = pair_table(cat, "si")
    sp = pair_table(cat, "sp")
    rows = []
    for j, cid in enumerate(cat.ids):
        in_inv = {cat.ids[i] for i in range(len(cat.ids)) if si[i, j]}
        pr_inv = {cat.ids[i] for i in range(len(cat.ids)) if sp[i, j]}
        rows.append({
            "id": cid,
            "injective": cat.flags[cid].injective,
            "indigent": in_inv == inj,
            "projective": cat.flags[cid].projective,
            "p_indigent": pr_inv == proj,
        })
    return {
        "ring": ring.name,
        "bound": cat.max_size,
        "max_gens": cat.max_gens,
        "classes": rows,
        "no_subinjective_middle_class": all(r["injective"] or r["indigent"] for r in rows),
        "no_subprojective_middle_class": all(r["projective"] or r["p_indigent"] for r in rows),
    }
