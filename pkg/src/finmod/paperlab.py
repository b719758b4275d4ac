"""Named, re-runnable verification suites.

Each suite binds one claim about subinjectivity/subprojectivity domains or
about property (Q) to a computation over a catalog and records every
individual comparison as a :class:`Check`. Suites are plain data
(:class:`Suite`), so ``SUITES`` doubles as a machine-readable coverage map.

All quantifiers run over the catalog slice, so a passing suite certifies the
claim up to the catalog bound only.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import zmod
from .catalog import Catalog, build_catalog, load_or_build
from .domains import _memo_pred, pair_table, sier_verdict, sper_verdict
from .envelopes import is_injective
from .errors import InapplicableSuite
from .homs import hom_set
from .module import FiniteModule, direct_sum, regular_module
from .ring import BUILTIN_RINGS, FiniteRing, builtin_ring, factor_ring, matrix_ring, opposite_ring
from .ringprops import (
    hull_of_ring_is_projective,
    is_chain_ring,
    is_dual_kasch,
    is_qf,
    is_right_hereditary,
    is_semisimple_ring,
    is_v_ring,
    satisfies_q,
)
from .structure import jacobson_radical, min_generators, quotient, simple_modules, socle

__all__ = [
    "Check",
    "SuiteReport",
    "Suite",
    "SUITES",
    "CORPUS",
    "Lab",
    "run_suite",
    "run_all",
    "render_table",
]

CORPUS = ("F2", "Z4", "Z8", "E2", "R8", "T2", "K4", "Q8bar", "M2F2")

PASS, FAIL, SKIP = "pass", "fail", "skipped"
OUT_OF_SCOPE = "OUT_OF_SCOPE"


@dataclass
class Check:
    claim: str
    expected: object
    observed: object
    status: str
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        out = {"claim": self.claim, "expected": self.expected, "observed": self.observed, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _check(claim: str, expected, observed, witness=None) -> Check:
    return Check(claim, expected, observed, PASS if expected == observed else FAIL, witness)


def _skip(claim: str, reason: str) -> Check:
    return Check(claim, None, reason, SKIP)


@dataclass
class SuiteReport:
    suite_id: str
    ring: str
    bound: int
    max_gens: int
    status: str
    checks: list[Check] = field(default_factory=list)
    wall_time: float = 0.0
    reason: str = ""

    @property
    def n_pass(self) -> int:
        return sum(c.status == PASS for c in self.checks)

    @property
    def n_fail(self) -> int:
        return sum(c.status == FAIL for c in self.checks)

    @property
    def n_skip(self) -> int:
        return sum(c.status == SKIP for c in self.checks)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "suite_id": self.suite_id,
            "ring": self.ring,
            "bound": self.bound,
            "max_gens": self.max_gens,
            "status": self.status,
            "pass": self.n_pass,
            "fail": self.n_fail,
            "skipped": self.n_skip,
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.reason:
            out["reason"] = self.reason
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False)


def render_table(reports: list[SuiteReport], timing: bool = False) -> str:
    """One line per suite, then one indented line per failing check."""
    head = f"{'suite':<8} {'ring':<8} {'bound':>5} {'status':<8} {'pass':>5} {'fail':>5} {'skip':>5}"
    if timing:
        head += f" {'secs':>7}"
    lines = [head, "-" * len(head)]
    for r in reports:
        line = f"{r.suite_id:<8} {r.ring:<8} {r.bound:>5} {r.status:<8} {r.n_pass:>5} {r.n_fail:>5} {r.n_skip:>5}"
        if timing:
            line += f" {r.wall_time:>7.2f}"
        if r.reason:
            line += f"  ({r.reason})"
        lines.append(line)
        for c in r.checks:
            if c.status == FAIL:
                lines.append(f"    FAIL {c.claim}: expected {c.expected!r}, observed {c.observed!r}")
    return "\n".join(lines)


# -- shared context ------------------------------------------------------------

class Lab:
    """Per-(ring, catalog) memo of the sets the suites keep asking for."""

    def __init__(self, ring: FiniteRing, cat: Catalog, jobs: int = 1):
        self.ring = ring
        self.cat = cat
        self.jobs = jobs
        self._memo: dict = {}

    def _once(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    # catalog slices
    @property
    def ids(self) -> list[str]:
        return list(self.cat.ids)

    @property
    def nonzero_ids(self) -> list[str]:
        return [c for c in self.cat.ids if not self.cat.module(c).is_zero()]

    @property
    def inj(self) -> frozenset:
        return frozenset(self.cat.injective_ids)

    @property
    def proj(self) -> frozenset:
        return frozenset(self.cat.projective_ids)

    @property
    def cyclic(self) -> list[str]:
        return list(self.cat.cyclic_ids)

    @property
    def simple(self) -> list[str]:
        return list(self.cat.simple_ids)

    def ident(self, M: FiniteModule) -> str:
        return self.cat.identify(M)

    def R_id(self) -> str:
        return self._once("R", lambda: self.ident(regular_module(self.ring)))

    def J_id(self) -> str:
        return self._once("J", lambda: self.ident(jacobson_radical(self.ring).module()))

    def RJ_id(self) -> str:
        def f():
            Q, _ = quotient(regular_module(self.ring), jacobson_radical(self.ring))
            return self.ident(Q)

        return self._once("R/J", f)

    # pairwise predicates by id
    def si(self, a: str, b: str) -> bool:
        """b is a-subinjective, i.e. a lies in InInv(b)."""
        return _memo_pred(self.cat, "si", a, b)

    def sp(self, a: str, b: str) -> bool:
        """a lies in PrInv(b)."""
        return _memo_pred(self.cat, "sp", a, b)

    def tables(self):
        """Fill both memo tables over the catalog (optionally in parallel)."""
        def f():
            pair_table(self.cat, "si", jobs=self.jobs)
            pair_table(self.cat, "sp", jobs=self.jobs)
            return True

        return self._once("tables", f)

    def in_inv(self, n: str) -> frozenset:
        return frozenset(c for c in self.cat.ids if self.si(c, n))

    def pr_inv(self, n: str) -> frozenset:
        return frozenset(c for c in self.cat.ids if self.sp(c, n))

    def cap_in(self, targets) -> frozenset:
        """Catalog slice of the intersection of InInv(N) over N in ``targets``."""
        return frozenset(c for c in self.cat.ids if all(self.si(c, n) for n in targets))

    def cap_pr(self, targets) -> frozenset:
        return frozenset(c for c in self.cat.ids if all(self.sp(c, n) for n in targets))

    def indigent(self, b: str) -> bool:
        return self.in_inv(b) == self.inj

    def p_indigent(self, b: str) -> bool:
        return self.pr_inv(b) == self.proj

    # verdicts
    def sier(self, cid: str):
        return self._once(("sier", cid), lambda: sier_verdict(self.cat.module(cid), self.cat))

    def sper(self, cid: str):
        return self._once(("sper", cid), lambda: sper_verdict(self.cat.module(cid), self.cat))

    def fully_sier(self) -> bool:
        return self._once("fully_sier", lambda: all(self.sier(c).certified for c in self.cat.ids))

    def fully_sper(self) -> bool:
        return self._once("fully_sper", lambda: all(self.sper(c).certified for c in self.cat.ids))

    # ring flags
    def qf(self) -> bool:
        return self._once("qf", lambda: is_qf(self.ring))

    def q(self) -> bool:
        """(Q) by the trace test alone, without the self-injectivity cross-check."""
        return self._once("q", lambda: satisfies_q(self.ring, self.cat, cross_check=False))


# -- suite definitions -----------------------------------------------------------

@dataclass(frozen=True)
class Suite:
    suite_id: str
    claim: str
    requires: Callable[[Lab], str | None]
    run: Callable[[Lab], list[Check]]
    out_of_scope: bool = False


def _always(lab: Lab) -> None:
    return None


def _needs_qf(lab: Lab) -> str | None:
    return None if lab.qf() else "ring is not QF"


def _violations(name: str, bad: list, witness_of=lambda x: x) -> Check:
    return _check(name, 0, len(bad), {"first": witness_of(bad[0])} if bad else None)


def _run_L21(lab: Lab) -> list[Check]:
    cat = lab.cat
    lab.tables()
    bad_in, bad_pr, n = [], [], 0
    for bid in lab.ids:
        for _A, _C, aid, cid in cat.sequences(bid):
            for nid in lab.ids:
                n += 1
                if lab.si(aid, nid) and lab.si(cid, nid) and not lab.si(bid, nid):
                    bad_in.append((nid, aid, bid, cid))
                if lab.sp(aid, nid) and lab.sp(cid, nid) and not lab.sp(bid, nid):
                    bad_pr.append((nid, aid, bid, cid))
    fmt = lambda t: dict(zip(("N", "A", "B", "C"), t))
    return [
        _violations(f"InInv(N) closed under extensions ({n} (N, A<=B) triples)", bad_in, fmt),
        _violations(f"PrInv(N) closed under extensions ({n} (N, A<=B) triples)", bad_pr, fmt),
    ]


def _local_not_qf_socle_is_radical(lab: Lab) -> str | None:
    R = regular_module(lab.ring)
    J = jacobson_radical(lab.ring)
    if len(simple_modules(lab.ring)) != 1 or lab.qf():
        return "needs a local ring that is not QF"
    if not np.array_equal(socle(R).W, J.W):
        return "needs soc(R) = J(R)"
    return None


def _run_E24(lab: Lab) -> list[Check]:
    r, j, rj = lab.R_id(), lab.J_id(), lab.RJ_id()
    v = lab.sier(r)
    out = [
        _check("R is dual Kasch", True, is_dual_kasch(lab.ring)),
        _check("R is QF", False, lab.qf()),
        _check("R in InInv(J)", True, lab.si(r, j)),
        _check("R in InInv(R/J)", True, lab.si(r, rj)),
        _check("R in InInv(R)", False, lab.si(r, r)),
        _check("sier verdict for R", "Counterexample", v.kind, v.to_dict().get("witness")),
    ]
    ids = list(v.witness.ids) if v.witness else None
    out.append(_check("witness sequence is 0 -> J -> R -> R/J -> 0", [j, r, rj], ids))
    out.append(_check("witness re-verifies", True, v.verify()))
    return out


def _run_E25(lab: Lab) -> list[Check]:
    return []


def _run_E26(lab: Lab) -> list[Check]:
    bad_i = [c for c in lab.inj if not lab.sier(c).certified]
    bad_p = [c for c in lab.proj if not lab.sper(c).certified]
    return [
        _violations(f"injective classes are si.e.r ({len(lab.inj)} classes)", sorted(bad_i)),
        _violations(f"projective classes are sp.e.r ({len(lab.proj)} classes)", sorted(bad_p)),
    ]


def _run_P27(lab: Lab) -> list[Check]:
    cat = lab.cat
    lab.tables()
    nz = lab.nonzero_ids
    pairs = [(a, b) for a, b in itertools.combinations_with_replacement(nz, 2)
             if cat.module(a).size * cat.module(b).size <= cat.max_size]
    sums = {(a, b): lab.ident(direct_sum(cat.module(a), cat.module(b))) for a, b in pairs}
    bad = []
    for (a, b), s in sums.items():
        for n in lab.ids:
            for op in ("si", "sp"):
                f = lab.si if op == "si" else lab.sp
                if f(s, n) != (f(a, n) and f(b, n)):
                    bad.append({"op": op, "side": "domain", "M1": a, "M2": b, "N": n})
                if f(n, s) != (f(n, a) and f(n, b)):
                    bad.append({"op": op, "side": "target", "M1": a, "M2": b, "N": n})
    return [_violations(f"domains and their targets respect finite direct sums ({len(pairs)} sums)", bad)]


def _tibs(lab: Lab, c: str) -> bool:
    return all(n in lab.inj for n in lab.ids if lab.si(c, n))


def _run_P28(lab: Lab) -> list[Check]:
    lab.tables()
    tibs = [c for c in lab.ids if _tibs(lab, c)]
    bad = [c for c in tibs if not lab.sier(c).certified]
    return [_violations(f"t.i.b.s. classes are si.e.r ({len(tibs)} classes)", bad)]


def _ip_classes(lab: Lab) -> list[str]:
    return [c for c in lab.ids if c in lab.inj and c in lab.proj and not lab.cat.module(c).is_zero()]


def _run_P210(lab: Lab) -> list[Check]:
    subs = sorted({aid for e in _ip_classes(lab) for _A, _C, aid, _c in lab.cat.sequences(e)})
    bad = [a for a in subs if not lab.sier(a).certified]
    return [_violations(f"submodules of injective-projective classes are si.e.r ({len(subs)} classes)", bad)]


def _run_P211(lab: Lab) -> list[Check]:
    quots = sorted({cid for e in _ip_classes(lab) for _A, _C, _a, cid in lab.cat.sequences(e)})
    bad = [c for c in quots if not lab.sper(c).certified]
    return [_violations(f"quotients of injective-projective classes are sp.e.r ({len(quots)} classes)", bad)]


def _has_middle_free_shape(lab: Lab) -> str | None:
    if is_chain_ring(lab.ring) and not is_semisimple_ring(lab.ring):
        return None
    sims = simple_modules(lab.ring)
    p = zmod.prime_power(lab.ring.m)
    if (p[1] == 1 and lab.ring.rank == 3 and len(sims) == 2 and is_right_hereditary(lab.ring)
            and not is_semisimple_ring(lab.ring)):
        return None
    return "needs an artinian chain ring or a 2x2 upper triangular ring over a field"


def _run_E29(lab: Lab) -> list[Check]:
    from .domains import middle_class_report

    lab.tables()
    rep = middle_class_report(lab.ring, lab.cat)
    bad_i = [c for c in lab.ids if not lab.sier(c).certified]
    bad_p = [c for c in lab.ids if not lab.sper(c).certified]
    return [
        _check("no subinjective middle class", True, rep["no_subinjective_middle_class"]),
        _check("no subprojective middle class", True, rep["no_subprojective_middle_class"]),
        _violations("every class is si.e.r", bad_i),
        _violations("every class is sp.e.r", bad_p),
    ]


def _run_C213(lab: Lab) -> list[Check]:
    out = []
    for label, L in (("right", lab), ("left", _opposite_lab(lab))):
        bad_i = [c for c in L.ids if not L.sier(c).certified]
        bad_p = [c for c in L.ids if not L.sper(c).certified]
        out.append(_violations(f"every {label} module is si.e.r ({len(L.ids)} classes)", bad_i))
        out.append(_violations(f"every {label} module is sp.e.r ({len(L.ids)} classes)", bad_p))
    return out


def _opposite_lab(lab: Lab) -> Lab:
    def f():
        op = opposite_ring(lab.ring)
        return Lab(op, build_catalog(op, lab.cat.max_size, lab.cat.max_gens), lab.jobs)

    return lab._once("opposite", f)


def _run_P214(lab: Lab) -> list[Check]:
    lab.tables()
    out = []
    for op, verdict, flag in (("si", lab.sier, lab.inj), ("sp", lab.sper, lab.proj)):
        f = lab.si if op == "si" else lab.sp
        subjects = [c for c in lab.ids if verdict(c).certified]
        bad = []
        for c in subjects:
            for _A, _C, kid, qid in lab.cat.sequences(c):
                if (f(c, kid) and f(c, qid)) != (c in flag):
                    bad.append({"M": c, "K": kid, "M/K": qid})
        kind = "InInv(K) and InInv(M/K)" if op == "si" else "PrInv(K) and PrInv(M/K)"
        target = "injective" if op == "si" else "projective"
        out.append(_violations(f"for {op}.e.r M and K <= M: M in {kind} iff M {target} ({len(subjects)} subjects)", bad))
    return out


def _indigence_criterion(lab: Lab, op: str) -> list[dict]:
    f = lab.si if op == "si" else lab.sp
    flag = lab.inj if op == "si" else lab.proj
    bad = []
    for b in lab.ids:
        lhs = (lab.in_inv(b) if op == "si" else lab.pr_inv(b)) == flag
        rhs = all(
            frozenset(c for c in lab.ids if f(c, aid) and f(c, qid)) == flag
            for _A, _C, aid, qid in lab.cat.sequences(b)
        )
        if lhs != rhs:
            bad.append({"B": b, "indigent": lhs, "criterion": rhs})
    return bad


def _run_P216(lab: Lab) -> list[Check]:
    lab.tables()
    out = []
    claim = "B indigent iff InInv(A) and InInv(B/A) meet in the injectives for all A <= B"
    if lab.fully_sier():
        out.append(_violations(claim + " [hypothesis: every class si.e.r at scale]", _indigence_criterion(lab, "si")))
    else:
        out.append(_skip(claim + " [hypothesis: every class si.e.r at scale]", "hypothesis fails at scale"))
    if lab.qf():
        out.append(_violations(claim + " [hypothesis: QF ring]", _indigence_criterion(lab, "si")))
    else:
        out.append(_skip(claim + " [hypothesis: QF ring]", "ring is not QF"))
    return out


def _fully_sier_or_qf(lab: Lab) -> str | None:
    return None if lab.qf() or lab.fully_sier() else "neither QF nor every class si.e.r at scale"


def _run_P221(lab: Lab) -> list[Check]:
    lab.tables()
    claim = "B p-indigent iff PrInv(A) and PrInv(B/A) meet in the projectives for all A <= B"
    if not lab.fully_sper():
        return [_skip(claim, "not every class is sp.e.r at scale")]
    return [_violations(claim, _indigence_criterion(lab, "sp"))]


def _fully_sper(lab: Lab) -> str | None:
    return None if lab.fully_sper() else "not every class is sp.e.r at scale"


def _run_P222(lab: Lab) -> list[Check]:
    lab.tables()
    bad = [b for b in lab.ids if lab.indigent(b) != lab.p_indigent(b)]
    return [
        _violations("indigent and p-indigent classes coincide", bad),
        _violations("indigence criterion through A <= B", _indigence_criterion(lab, "si")),
    ]


def _run_P218(lab: Lab) -> list[Check]:
    lab.tables()
    out = []
    for op, verdict in (("si", lab.sier), ("sp", lab.sper)):
        f = lab.si if op == "si" else lab.sp
        subjects = [c for c in lab.ids if verdict(c).certified]
        bad_s = [c for c in subjects if all(f(c, s) for s in lab.simple) != all(f(c, n) for n in lab.ids)]
        bad_c = [c for c in subjects if all(f(c, s) for s in lab.cyclic) != all(f(c, n) for n in lab.ids)]
        out.append(_violations(f"{op}.e.r M: every simple target iff every finite-length target", bad_s))
        out.append(_violations(f"{op}.e.r M: every cyclic target iff every finitely generated target", bad_c))
    return out


def _surjective_hom_exists(A: FiniteModule, B: FiniteModule) -> bool:
    return any(f.is_surjective() for f in hom_set(A, B).elements())


def _cyclic_by_elements(M: FiniteModule) -> bool:
    amb, m = M.ambient, M.m
    for x in M.elements():
        span = zmod.howell(np.vstack([M.U, x[None, :], amb.orbit_rows(x)]), m, M.dim)
        if zmod.log_span_size(span, m) - zmod.log_span_size(M.U, m) == M.log_size:
            return True
    return M.is_zero()


def _run_P226(lab: Lab) -> list[Check]:
    cat = lab.cat
    lab.tables()
    RJ = cat.module(lab.RJ_id())
    ss = [c for c in lab.ids if cat.flags[c].semisimple]
    bad1 = [c for c in ss if cat.flags[c].cyclic != _surjective_hom_exists(RJ, cat.module(c))]
    sims = simple_modules(lab.ring)
    bad2 = []
    for k in range(1, len(sims) + 1):
        for combo in itertools.combinations(range(len(sims)), k):
            if not _cyclic_by_elements(direct_sum(*[sims[i] for i in combo])):
                bad2.append(list(combo))
    out = [
        _violations(f"semisimple class cyclic iff image of R/J ({len(ss)} classes)", bad1),
        _violations("sums of pairwise nonisomorphic simples are cyclic", bad2),
    ]
    rj = lab.RJ_id()
    base = lab.in_inv(rj)
    smallest = [a for a in lab.ids if not base <= lab.in_inv(a)]
    claim = "InInv(R/J) is contained in InInv(A) for every catalog A"
    for reading, ok in (("R_R si.e.r", lab.sier(lab.R_id()).certified), ("every class si.e.r", lab.fully_sier())):
        if ok:
            out.append(_violations(f"{claim} [hypothesis: {reading}]", smallest))
        else:
            out.append(_skip(f"{claim} [hypothesis: {reading}]", "hypothesis fails at scale"))
    return out


def _run_C227(lab: Lab) -> list[Check]:
    lab.tables()
    sims = simple_modules(lab.ring)
    s = lab.ident(direct_sum(*sims))
    out = [_check("InInv(sum of simples) is the injective classes", sorted(lab.inj), sorted(lab.in_inv(s)))]
    classes = {"C": lab.cyclic, "FL": lab.ids, "FG": lab.ids}
    if len(sims) == 1:
        classes = {"S": lab.simple, **classes}
    for name, members in classes.items():
        prof = {a: lab.in_inv(a) for a in members}
        least = [a for a in members if all(prof[a] <= prof[b] for b in members)]
        got = sorted(prof[least[0]]) if least else None
        out.append(_check(f"smallest InInv over {name} equals InInv(sum of simples)", sorted(lab.in_inv(s)), got))
    return out


def _classes(lab: Lab) -> dict[str, list[str]]:
    return {"S": lab.simple, "C": lab.cyclic, "FL": lab.ids, "FG": lab.ids}


def _run_C228(lab: Lab) -> list[Check]:
    lab.tables()
    out = [_check("injective classes equal projective classes", sorted(lab.inj), sorted(lab.proj))]
    for name, members in _classes(lab).items():
        out.append(_check(f"intersection of InInv over {name} is the injectives", sorted(lab.inj), sorted(lab.cap_in(members))))
    return out


def _run_C229(lab: Lab) -> list[Check]:
    lab.tables()
    out = []
    for name, members in _classes(lab).items():
        out.append(_check(f"intersection of PrInv over {name} is the projectives", sorted(lab.proj), sorted(lab.cap_pr(members))))
    return out


def _run_C230(lab: Lab) -> list[Check]:
    lab.tables()
    cl = _classes(lab)
    out = []
    for a, b in itertools.product(cl, cl):
        out.append(_check(f"InInv over {a} equals PrInv over {b}", sorted(lab.cap_in(cl[a])), sorted(lab.cap_pr(cl[b]))))
    out.append(_check("injectives equal projectives", sorted(lab.inj), sorted(lab.proj)))
    return out


def _run_P231(lab: Lab) -> list[Check]:
    lab.tables()
    bad_i = [c for c in lab.ids if lab.sier(c).certified
             and all(lab.si(c, n) for n in lab.ids) != all(lab.si(c, n) for n in lab.cyclic)]
    bad_p = [c for c in lab.ids if lab.sper(c).certified
             and all(lab.sp(c, n) for n in lab.ids) != all(lab.sp(c, n) for n in lab.cyclic)]
    return [
        _violations("si.e.r M: FG-injective iff C-injective", bad_i),
        _violations("sp.e.r M: FG-projective iff C-projective", bad_p),
    ]


def _run_C233(lab: Lab) -> list[Check]:
    lab.tables()
    bad = []
    for c in lab.ids:
        vals = (
            all(lab.si(c, n) for n in lab.ids),
            all(lab.si(c, n) for n in lab.cyclic),
            all(lab.sp(c, n) for n in lab.ids),
            all(lab.sp(c, n) for n in lab.cyclic),
            c in lab.inj,
        )
        if len(set(vals)) != 1:
            bad.append({"M": c, "fg_inj, c_inj, fg_proj, c_proj, inj": list(vals)})
    return [_violations("FG-/C-injective, FG-/C-projective and injective coincide", bad)]


def _run_P31(lab: Lab) -> list[Check]:
    lab.tables()
    r = lab.R_id()
    q = lab.q()
    two = all(lab.si(r, a) for a in lab.ids)
    three = all(lab.si(p, a) for p in lab.proj for a in lab.ids)
    return [
        _check("(Q) iff R in InInv(A) for all A", q, two),
        _check("(Q) iff projectives lie in InInv(A) for all A", q, three),
    ]


def _run_L32(lab: Lab) -> list[Check]:
    return [_check("(Q) by trace test equals self-injectivity", lab.qf(), lab.q())]


def _needs_v_ring(lab: Lab) -> str | None:
    return None if is_v_ring(lab.ring) else "ring is not a V-ring"


def _run_L34(lab: Lab) -> list[Check]:
    return [_check("V-ring satisfies (Q)", True, lab.q())]


def _needs_hereditary(lab: Lab) -> str | None:
    return None if is_right_hereditary(lab.ring) else "ring is not right hereditary"


def _run_L35(lab: Lab) -> list[Check]:
    q = lab.q()
    return [
        _check("(Q) iff dual Kasch", q, is_dual_kasch(lab.ring)),
        _check("(Q) iff V-ring", q, is_v_ring(lab.ring)),
    ]


def _needs_projective_hull(lab: Lab) -> str | None:
    return None if hull_of_ring_is_projective(lab.ring) else "E(R) is not projective"


def _run_P37(lab: Lab) -> list[Check]:
    return [_check("dual Kasch iff (Q)", is_dual_kasch(lab.ring), lab.q())]


MORITA_RING_BOUND = 4


def _needs_small(lab: Lab) -> str | None:
    return None if lab.ring.size <= MORITA_RING_BOUND else f"|R| > {MORITA_RING_BOUND}"


def _run_P38(lab: Lab) -> list[Check]:
    M2 = matrix_ring(lab.ring, 2)
    # M2(R)-modules correspond to R-modules of twice the size, so the bound scales by |R|
    cat2 = build_catalog(M2, lab.cat.max_size * lab.ring.size, 1)
    q2 = satisfies_q(M2, cat2, cross_check=False)
    return [
        _check(f"(Q) for {M2.name} equals (Q) for {lab.ring.name}", lab.q(), q2),
        _check(f"self-injectivity agrees for {M2.name} and {lab.ring.name}", lab.qf(), is_qf(M2)),
    ]


def _is_k4(lab: Lab) -> str | None:
    return None if lab.ring.digest == builtin_ring("K4").digest else "needs F2[x,y]/(x^2, y^2)"


def _run_EX3(lab: Lab) -> list[Check]:
    bound, gens = lab.cat.max_size, lab.cat.max_gens
    quot = factor_ring(lab.ring, [[0, 0, 0, 1]], name="K4/(xy)")
    qcat = build_catalog(quot, bound, gens)
    r8 = builtin_ring("R8")
    rcat = build_catalog(r8, bound, gens)
    return [
        _check("K4 is QF", True, lab.qf()),
        _check("K4 satisfies (Q)", True, lab.q()),
        _check("K4/(xy) is F2[x,y]/(x^2, xy, y^2)", builtin_ring("Q8bar").digest, quot.digest),
        _check("K4/(xy) is QF", False, is_qf(quot)),
        _check("K4/(xy) satisfies (Q)", False, satisfies_q(quot, qcat, cross_check=False)),
        _check("R8 is dual Kasch", True, is_dual_kasch(r8)),
        _check("R8 satisfies (Q)", False, satisfies_q(r8, rcat, cross_check=False)),
    ]


def _S(sid, claim, requires, run, out_of_scope=False) -> Suite:
    return Suite(sid, claim, requires, run, out_of_scope)


SUITES: dict[str, Suite] = {s.suite_id: s for s in [
    _S("L2.1", "InInv(N) and PrInv(N) are closed under extensions", _always, _run_L21),
    _S("E2.4", "the local ring with two-dimensional socle is dual Kasch but R_R is not si.e.r", _local_not_qf_socle_is_radical, _run_E24),
    _S("E2.5", "an abelian group that is not sp.e.r (infinite; not representable)", _always, _run_E25, True),
    _S("E2.6", "injectives are si.e.r and projectives are sp.e.r", _always, _run_E26),
    _S("P2.7", "domains are compatible with finite direct sums", _always, _run_P27),
    _S("P2.8", "t.i.b.s. modules are si.e.r", _always, _run_P28),
    _S("E2.9", "rings without subinjective or subprojective middle classes", _has_middle_free_shape, _run_E29),
    _S("P2.10", "submodules of injective-projective modules are si.e.r", _always, _run_P210),
    _S("P2.11", "quotients of injective-projective modules are sp.e.r", _always, _run_P211),
    _S("C2.13", "over QF rings every left and right module is si.e.r and sp.e.r", _needs_qf, _run_C213),
    _S("P2.14", "si.e.r (sp.e.r) M with M in both domains of K and M/K is injective (projective)", _always, _run_P214),
    _S("P2.16", "indigence through submodule and quotient domains", _fully_sier_or_qf, _run_P216),
    _S("P2.18", "simple (cyclic) targets suffice for si.e.r and sp.e.r subjects", _always, _run_P218),
    _S("P2.21", "p-indigence through submodule and quotient domains", _fully_sper, _run_P221),
    _S("P2.22", "over QF rings indigent equals p-indigent, with the submodule criterion", _needs_qf, _run_P222),
    _S("P2.26", "semisimple cyclic modules and the domain of R/J", _always, _run_P226),
    _S("C2.27", "the sum of the simples is indigent over QF rings", _needs_qf, _run_C227),
    _S("C2.28", "over QF rings the InInv intersections over S, C, FL, FG are the injectives", _needs_qf, _run_C228),
    _S("C2.29", "over QF rings the PrInv intersections over S, C, FL, FG are the projectives", _needs_qf, _run_C229),
    _S("C2.30", "over QF rings all sixteen InInv/PrInv intersections agree", _needs_qf, _run_C230),
    _S("P2.31", "FG- and C-injectivity (projectivity) agree for si.e.r (sp.e.r) modules", _always, _run_P231),
    _S("C2.33", "over QF rings FG-/C-injective, FG-/C-projective and injective coincide", _needs_qf, _run_C233),
    _S("P3.1", "(Q) via the domain of R and of the projectives", _always, _run_P31),
    _S("L3.2", "an artinian ring satisfies (Q) iff it is QF", _always, _run_L32),
    _S("L3.4", "V-rings satisfy (Q)", _needs_v_ring, _run_L34),
    _S("L3.5", "for hereditary rings (Q), dual Kasch and V-ring agree", _needs_hereditary, _run_L35),
    _S("P3.7", "with projective E(R), dual Kasch iff (Q)", _needs_projective_hull, _run_P37),
    _S("P3.8", "(Q) is Morita invariant", _needs_small, _run_P38),
    _S("EX3", "F2[x,y]/(x^2, y^2) satisfies (Q), its factor by xy does not", _is_k4, _run_EX3),
]}


# -- drivers ---------------------------------------------------------------------

def run_suite(suite_id: str, ring: FiniteRing, cat: Catalog, *, lab: Lab | None = None) -> SuiteReport:
    """Run one suite; raises InapplicableSuite when the ring fails its prerequisite."""
    if suite_id not in SUITES:
        raise KeyError(f"unknown suite {suite_id!r}; known: {list(SUITES)}")
    suite = SUITES[suite_id]
    if lab is None:
        lab = Lab(ring, cat)
    t0 = time.perf_counter()
    if suite.out_of_scope:
        return SuiteReport(suite_id, ring.name, cat.max_size, cat.max_gens, SKIP, [], 0.0, OUT_OF_SCOPE)
    reason = suite.requires(lab)
    if reason:
        raise InapplicableSuite(f"{suite_id} on {ring.name}: {reason}")
    checks = suite.run(lab)
    status = FAIL if any(c.status == FAIL for c in checks) else PASS
    return SuiteReport(suite_id, ring.name, cat.max_size, cat.max_gens, status, checks, time.perf_counter() - t0)


def run_all(rings=None, suites=None, *, max_size: int = 64, max_gens: int = 2,
            cache_dir=None, jobs: int = 1, progress=None) -> list[SuiteReport]:
    """Every requested suite on every requested ring; inapplicable pairs become skipped reports."""
    rings = [builtin_ring(r) if isinstance(r, str) else r for r in (rings or CORPUS)]
    suites = list(suites or SUITES)
    reports = []
    for ring in rings:
        cat = load_or_build(ring, max_size, max_gens, cache_dir)
        lab = Lab(ring, cat, jobs)
        for sid in suites:
            try:
                rep = run_suite(sid, ring, cat, lab=lab)
            except InapplicableSuite as exc:
                rep = SuiteReport(sid, ring.name, max_size, max_gens, SKIP, [], 0.0, str(exc).split(": ", 1)[-1])
            reports.append(rep)
            if progress:
                progress(rep)
        if cache_dir is not None:
            from .catalog import cache_store

            cache_store(cache_dir, cat)
    return reports
