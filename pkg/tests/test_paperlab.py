import json

import pytest

from finmod import InapplicableSuite, builtin_ring
from finmod.paperlab import CORPUS, SUITES, Lab, render_table, run_all, run_suite


def _run(sid, name, cat, bound=64):
    return run_suite(sid, builtin_ring(name), cat(name, bound))


def test_e24_on_r8(cat):
    rep = _run("E2.4", "R8", cat)
    assert rep.status == "pass" and rep.n_fail == 0
    claims = " ".join(c.claim for c in rep.checks)
    assert "dual Kasch" in claims


def test_e25_is_out_of_scope(cat):
    rep = _run("E2.5", "Z4", cat)
    assert rep.status == "skipped" and rep.reason == "OUT_OF_SCOPE"
    assert rep.checks == []


def test_c228_on_z4(cat):
    assert _run("C2.28", "Z4", cat).status == "pass"


def test_l32_on_q8bar(cat):
    rep = _run("L3.2", "Q8bar", cat)
    assert rep.status == "pass"


def test_qf_suites_are_inapplicable_on_r8(cat):
    for sid in ("C2.13", "C2.28", "C2.33"):
        with pytest.raises(InapplicableSuite):
            _run(sid, "R8", cat)


def test_unknown_suite(cat):
    with pytest.raises(KeyError):
        _run("X9.9", "F2", cat)


def test_reports_are_deterministic(cat):
    a = _run("L2.1", "T2", cat, 32)
    b = run_suite("L2.1", builtin_ring("T2"), cat("T2", 32), lab=Lab(builtin_ring("T2"), cat("T2", 32)))
    assert a.to_json() == b.to_json()
    assert a.n_pass + a.n_fail + a.n_skip == len(a.checks)


def test_failing_check_is_rendered():
    from finmod.paperlab import SuiteReport, _check

    bad = _check("demo claim", True, False, {"id": "c2-x"})
    rep = SuiteReport("L2.1", "F2", 4, 2, "fail", [bad])
    text = render_table([rep])
    assert "FAIL demo claim" in text
    assert rep.to_dict()["checks"][0]["witness"] == {"id": "c2-x"}
    assert "wall_time" not in rep.to_dict() and "wall_time" in rep.to_dict(timing=True)


def test_run_all_small_rings_clean():
    reports = run_all(["F2", "Z4", "E2"], max_size=64)
    assert len(reports) == 3 * len(SUITES)
    assert not [r for r in reports if r.status == "fail"]
    ran = {(r.suite_id, r.ring) for r in reports if r.status == "pass"}
    assert ("C2.13", "Z4") in ran and ("L3.4", "F2") in ran
    skipped = [r for r in reports if r.status == "skipped"]
    assert all(r.reason for r in skipped)


def test_corpus_and_suite_ids():
    assert CORPUS == ("F2", "Z4", "Z8", "E2", "R8", "T2", "K4", "Q8bar", "M2F2")
    assert list(SUITES)[:3] == ["L2.1", "E2.4", "E2.5"]
    for s in SUITES.values():
        assert s.claim and callable(s.requires) and callable(s.run)
    json.dumps([s.suite_id for s in SUITES.values()])
