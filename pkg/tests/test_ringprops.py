import json

import pytest

from finmod import builtin_ring, matrix_ring, opposite_ring, ring_profile, satisfies_q
from finmod.errors import InternalInconsistency
from finmod.ringprops import FLAG_ORDER, hull_of_ring_is_projective, is_local, is_qf

# one character per flag, in FLAG_ORDER:
# qf, kasch, dual_kasch, (Q), v_ring, hereditary, semisimple, local, chain
PROFILES = {
    "F2": "111111111",
    "Z4": "111100011",
    "Z8": "111100011",
    "E2": "111100011",
    "R8": "011000010",
    "T2": "000001000",
    "K4": "111100010",
    "Q8bar": "011000010",
    "M2F2": "111111100",
}


@pytest.mark.parametrize("name", sorted(PROFILES))
def test_profile(name, cat):
    prof = ring_profile(builtin_ring(name), cat(name))
    got = "".join("1" if prof.flags[k] else "0" for k in FLAG_ORDER)
    assert got == PROFILES[name]
    assert prof.implications_hold()
    assert prof.provenance["satisfies_q"] == "at-scale(64)"
    assert all(prof.provenance[k] == "exact" for k in FLAG_ORDER if k != "satisfies_q")
    doc = json.loads(prof.to_json())
    assert list(doc["flags"]) == list(FLAG_ORDER)


def test_q_is_strictly_stronger_than_dual_kasch(cat):
    R = builtin_ring("R8")
    prof = ring_profile(R, cat("R8"))
    assert prof.flags["is_dual_kasch"] and not prof.flags["satisfies_q"]


def test_satisfies_q_rejects_foreign_catalog(cat):
    with pytest.raises(ValueError):
        satisfies_q(builtin_ring("Z4"), cat("Z8"))


def test_cross_check_raises_on_disagreement(cat, monkeypatch):
    import finmod.ringprops as rp

    monkeypatch.setattr(rp, "is_qf", lambda ring: False)
    with pytest.raises(InternalInconsistency):
        rp.satisfies_q(builtin_ring("Z4"), cat("Z4"))


def test_morita_spot_check(cat):
    F2 = builtin_ring("F2")
    M = matrix_ring(F2, 2)
    assert satisfies_q(M, cat("M2F2")) == satisfies_q(F2, cat("F2"))
    assert is_qf(matrix_ring(builtin_ring("Z4"), 2))


@pytest.mark.parametrize("name", ["Z4", "K4", "M2F2", "R8", "T2"])
def test_opposite_ring_shares_qf_and_locality(name):
    R = builtin_ring(name)
    assert is_qf(opposite_ring(R)) == is_qf(R)
    assert is_local(opposite_ring(R)) == is_local(R)


# over T2 the socle of R_R is S1 + S1 and E(S1) = e00 T2, so E(R_R) is projective
@pytest.mark.parametrize("name, expected", [("Z4", True), ("K4", True), ("R8", False), ("T2", True)])
def test_hull_of_ring_projective(name, expected):
    assert hull_of_ring_is_projective(builtin_ring(name)) == expected
