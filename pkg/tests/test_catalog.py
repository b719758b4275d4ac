import json

import pytest

from finmod import (
    VersionMismatch,
    build_catalog,
    builtin_ring,
    cache_load,
    cache_store,
    composition_length,
    direct_sum,
    load_or_build,
    regular_module,
    short_exact_sequences,
    simple_modules,
)
from finmod.catalog import _cache_path

import oracles

CLASSES_AT_16 = {"F2": 3, "Z4": 6, "Z8": 8, "E2": 6, "R8": 22, "T2": 15, "K4": 23, "Q8bar": 22, "M2F2": 3}


@pytest.mark.parametrize("name", sorted(CLASSES_AT_16))
def test_class_count_at_16(name, cat):
    assert len(cat(name, 16)) == CLASSES_AT_16[name]


@pytest.mark.parametrize("name", ["Z4", "E2", "R8", "T2"])
def test_class_count_matches_oracle_live(name, cat):
    assert len(oracles.quotient_classes(builtin_ring(name), 16, 2)) == len(cat(name, 16))


def test_ids_are_stable_and_well_formed(cat):
    a = build_catalog(builtin_ring("R8"), 32, 2)
    b = build_catalog(builtin_ring("R8"), 32, 2)
    assert a.ids == b.ids
    for cid, M in a:
        size, h = cid[1:].split("-", 1)
        assert cid[0] == "c" and int(size) == M.size and len(h.split(".")[0]) == 10


def test_catalog_sorted_and_distinct(cat):
    c = cat("T2")
    sizes = [M.size for _, M in c]
    assert sizes == sorted(sizes)
    assert len(set(c.ids)) == len(c)


def test_identify_finds_catalog_class(cat):
    c = cat("Z4")
    R = builtin_ring("Z4")
    M = direct_sum(simple_modules(R)[0], regular_module(R))
    cid = c.identify(M)
    assert cid in c.ids and c.module(cid).size == 8


def test_identify_registers_extras(cat):
    R = builtin_ring("F2")
    c = build_catalog(R, 4, 2)
    big = direct_sum(*[regular_module(R)] * 3)
    cid = c.identify(big)
    assert cid.startswith("x8-") and cid in c.extras
    assert c.identify(big) == cid
    assert c.identify(regular_module(R), register=False) in c.ids


@pytest.mark.parametrize("name", ["Z4", "R8", "T2"])
def test_short_exact_sequences_lengths_add(name, cat):
    for _, B in cat(name, 16):
        for A, C, pi in short_exact_sequences(B):
            assert A.size * C.size == B.size
            assert composition_length(A.module()) + composition_length(C) == composition_length(B)
            assert pi.is_surjective()


def test_cache_round_trip(tmp_path):
    R = builtin_ring("T2")
    c = build_catalog(R, 32, 2)
    c.memo[("si", c.ids[0], c.ids[1])] = True
    path = cache_store(tmp_path, c)
    back = cache_load(tmp_path, R, 32, 2)
    assert back.ids == c.ids
    assert back.memo == c.memo
    assert {k: v.to_dict() for k, v in back.flags.items()} == {k: v.to_dict() for k, v in c.flags.items()}
    assert cache_store(tmp_path, back).read_bytes() == path.read_bytes()


def test_cache_version_mismatch(tmp_path):
    R = builtin_ring("Z4")
    path = cache_store(tmp_path, build_catalog(R, 16, 2))
    doc = json.loads(path.read_text())
    doc["format"] = "0"
    path.write_text(json.dumps(doc))
    with pytest.raises(VersionMismatch):
        cache_load(tmp_path, R, 16, 2)
    # load_or_build silently rebuilds over a stale file
    assert len(load_or_build(R, 16, 2, tmp_path)) == 6
    assert json.loads(_cache_path(tmp_path, R, 16, 2).read_text())["format"] != "0"
