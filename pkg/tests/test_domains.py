import pytest

from finmod import (
    builtin_ring,
    classify_at_scale,
    direct_sum,
    domain_at_scale,
    is_injective,
    is_projective,
    is_subinjective,
    is_subprojective,
    jacobson_radical,
    middle_class_report,
    quotient,
    regular_module,
    sier_verdict,
    simple_modules,
    sper_verdict,
    zero_module,
)
from finmod.domains import subinjectivity_witness

import oracles


def _r8_parts():
    R = builtin_ring("R8")
    RR = regular_module(R)
    J = jacobson_radical(R)
    return R, RR, J.module(), quotient(RR, J)[0]


def test_r8_regular_module_memberships():
    _, RR, J, top = _r8_parts()
    assert is_subinjective(RR, J)
    assert is_subinjective(RR, top)
    assert not is_subinjective(RR, RR)
    assert subinjectivity_witness(RR, RR) is not None


def test_r8_sier_counterexample(cat):
    R, RR, J, top = _r8_parts()
    v = sier_verdict(RR, cat("R8"))
    assert v.kind == "Counterexample"
    w = v.witness
    assert [w.A.size, w.B.size, w.C.size] == [4, 8, 2]
    assert w.A.module().size == J.size
    assert v.verify()


def test_r8_domain_contains_j_and_top_not_r(cat):
    c = cat("R8")
    _, RR, J, top = _r8_parts()
    dom = domain_at_scale(RR, "In", c)
    assert c.identify(J) in dom and c.identify(top) in dom
    assert c.identify(RR) not in dom
    assert not classify_at_scale(RR, c)["c_injective"]


@pytest.mark.parametrize("name", ["Z4", "R8", "T2"])
def test_trivial_memberships(name, cat):
    c = cat(name, 32)
    R = builtin_ring(name)
    Z = zero_module(R)
    for _, X in c:
        for _, Y in c:
            if is_injective(X) or is_injective(Y):
                assert is_subinjective(X, Y)
            if is_projective(X) or is_projective(Y):
                assert is_subprojective(X, Y)
        assert is_subprojective(X, Z) and is_subprojective(Z, X)
        assert is_subinjective(X, Z) and is_subinjective(Z, X)


def test_r8_simple_against_regular_by_oracle(cat):
    R, RR, _, _ = _r8_parts()
    S = simple_modules(R)[0]
    covers = [B for _, B in cat("R8")]
    assert is_subprojective(S, RR) == oracles.lifts_along_all(S, RR, covers)
    assert is_subprojective(S, RR)


def test_injective_domains_are_everything(cat):
    c = cat("T2")
    for cid in c.injective_ids:
        dom = domain_at_scale(c.module(cid), "InInv", c)
        assert set(dom.members) >= set(c.ids)


def test_domains_contain_trivial_classes(cat):
    c = cat("R8")
    for cid, M in c:
        assert set(c.injective_ids) <= domain_at_scale(M, "InInv", c).members
        assert set(c.projective_ids) <= domain_at_scale(M, "PrInv", c).members


def test_sum_of_simples_over_z4(cat):
    c = cat("Z4")
    R = builtin_ring("Z4")
    S = simple_modules(R)[0]
    dom = domain_at_scale(S, "InInv", c)
    assert dom.members == frozenset(c.injective_ids)
    flags = classify_at_scale(S, c)
    assert flags["indigent"] and flags["p_indigent"]


def test_injective_is_fg_injective(cat):
    c = cat("T2")
    for cid in c.injective_ids:
        assert classify_at_scale(c.module(cid), c)["fg_injective"]


@pytest.mark.parametrize("name", ["F2", "Z4", "T2"])
def test_no_middle_class(name, cat):
    rep = middle_class_report(builtin_ring(name), cat(name))
    assert rep["no_subinjective_middle_class"] and rep["no_subprojective_middle_class"]
    if name == "F2":
        assert all(r["injective"] and r["projective"] for r in rep["classes"])


@pytest.mark.parametrize("name", ["Z4", "K4"])
def test_qf_rings_certify_everything(name, cat):
    c = cat(name, 32)
    for _, M in c:
        assert sier_verdict(M, c).certified
        assert sper_verdict(M, c).certified


def test_injective_and_projective_verdicts_certify(cat):
    c = cat("R8")
    for cid in c.injective_ids:
        assert sier_verdict(c.module(cid), c).certified
    for cid in c.projective_ids:
        assert sper_verdict(c.module(cid), c).certified


def test_direct_sum_law_examples():
    R = builtin_ring("R8")
    RR = regular_module(R)
    S = simple_modules(R)[0]
    for A in (RR, S):
        for B1 in (RR, S):
            for B2 in (RR, S):
                assert is_subinjective(A, direct_sum(B1, B2)) == (is_subinjective(A, B1) and is_subinjective(A, B2))
                assert is_subinjective(direct_sum(B1, B2), A) == (is_subinjective(B1, A) and is_subinjective(B2, A))


@pytest.mark.parametrize("name", ["Z4", "E2"])
def test_subprojective_matches_oracle_live(name, cat):
    covers = [B for _, B in cat(name)]
    mods = [M for _, M in cat(name, 16)]
    for X in mods:
        for Y in mods:
            assert is_subprojective(X, Y) == oracles.lifts_along_all(X, Y, covers)
