import json
from importlib import resources

import jsonschema
import pytest

from finmod.cli import main

SCHEMA = json.loads(resources.files("finmod").joinpath("schema/report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_ring_info_r8(capsys):
    code, doc = run_json(capsys, "ring-info", "--ring", "R8")
    assert code == 0
    flags = doc["profile"]["flags"]
    assert flags["is_local"] and flags["is_dual_kasch"] and not flags["is_qf"]
    assert doc["config"]["seed"] == 0 and doc["schema_version"] == "1"


def test_ring_info_k4_and_f2(capsys):
    assert run_json(capsys, "ring-info", "--ring", "K4")[1]["profile"]["flags"]["is_qf"]
    assert run_json(capsys, "ring-info", "--ring", "F2")[1]["profile"]["flags"]["is_semisimple"]


def test_ring_info_table(capsys):
    code, out, _ = run(capsys, "ring-info", "--ring", "T2")
    assert code == 0 and "T2" in out


def test_ring_from_file(capsys, tmp_path):
    from finmod import builtin_ring, dump_ring

    p = tmp_path / "r.json"
    p.write_text(dump_ring(builtin_ring("E2")))
    code, doc = run_json(capsys, "ring-info", "--ring", str(p))
    assert code == 0 and doc["ring"]["size"] == 4


def test_check_sier_r8_counterexample(capsys):
    code, doc = run_json(capsys, "check", "sier", "--ring", "R8", "--module", "R")
    v = doc["results"][0]["verdict"]
    assert code == 0
    assert v["kind"] == "Counterexample" and v["witness"]["sizes"] == [4, 8, 2]


def test_check_subinjective_r8(capsys):
    code, doc = run_json(capsys, "check", "subinjective", "--ring", "R8", "--b", "R", "--a", "J")
    assert code == 0 and doc["results"][0]["value"] is True
    code, doc = run_json(capsys, "check", "subinjective", "--ring", "R8", "--b", "R", "--a", "R")
    assert doc["results"][0]["value"] is False and "failing_hom" in doc["results"][0]


def test_check_sier_z4_all_certified(capsys):
    code, doc = run_json(capsys, "check", "sier", "--ring", "Z4", "--module", "all")
    assert code == 0
    assert len(doc["results"]) == 6
    assert all(r["verdict"]["kind"] == "CertifiedUpToBound" and r["verdict"]["bound"] == 64 for r in doc["results"])


@pytest.mark.parametrize("pred", ["sper", "injective-hull", "classify"])
def test_check_other_predicates(capsys, pred):
    code, doc = run_json(capsys, "check", pred, "--ring", "T2", "--module", "sum:simple:0+simple:1", "--max-size", "16")
    assert code == 0 and len(doc["results"]) == 1


def test_check_is_byte_stable(capsys):
    a = run(capsys, "check", "classify", "--ring", "Z4", "--module", "R/J", "--format", "json")[1]
    b = run(capsys, "check", "classify", "--ring", "Z4", "--module", "R/J", "--format", "json")[1]
    assert a == b


def test_unknown_selector_exit_2(capsys):
    code, _, err = run(capsys, "check", "sier", "--ring", "R8", "--module", "nonsense")
    assert code == 2 and "nonsense" in err
    assert run(capsys, "check", "sier", "--ring", "R8", "--module", "simple:7")[0] == 2
    assert run(capsys, "ring-info", "--ring", "NoSuchRing")[0] == 2
    assert run(capsys, "verify", "Z9.9")[0] == 2


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["ring-info", "--max-size", "0"])
    assert exc.value.code == 2


def test_bound_exceeded_exit_3(capsys):
    code, _, err = run(capsys, "check", "injective-hull", "--ring", "R8", "--max-size", "8", "--module", "sum:R+R+R+R")
    assert code == 3 and "bound" in err


def test_verify_single_suite(capsys, tmp_path):
    code, doc = run_json(capsys, "verify", "E2.4", "--rings", "R8")
    assert code == 0 and doc["reports"][0]["status"] == "pass"
    code, doc = run_json(capsys, "verify", "E2.5", "--rings", "F2")
    assert code == 0 and doc["reports"][0]["reason"] == "OUT_OF_SCOPE"


@pytest.mark.slow
def test_verify_all_builtin_corpus(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "all", "--corpus", "builtin", "--out-dir", str(tmp_path), "--cache-dir", str(tmp_path / "cache"))
    assert code == 0
    doc = json.loads((tmp_path / "verify-report.json").read_text())
    jsonschema.validate(doc, SCHEMA)
    assert sum(r["fail"] for r in doc["reports"]) == 0
    assert (tmp_path / "verify-report.txt").read_text().strip() == out.strip()
    # a second run from the cache written above reproduces the same reports
    code2, _, _ = run(capsys, "verify", "E2.4,L3.2", "--rings", "R8,Q8bar", "--out-dir", str(tmp_path / "b"), "--cache-dir", str(tmp_path / "cache"))
    again = json.loads((tmp_path / "b" / "verify-report.json").read_text())
    full = {(r["suite_id"], r["ring"]): r for r in doc["reports"]}
    assert code2 == 0 and all(full[(r["suite_id"], r["ring"])] == r for r in again["reports"])
