import pytest

from finmod import (
    BoundExceeded,
    are_isomorphic,
    builtin_ring,
    character_dual,
    composition_length,
    injective_cogenerator,
    injective_hull,
    is_essential,
    is_injective,
    is_projective,
    regular_module,
    simple_modules,
)

import oracles

# classes at bound 64 / 2 generators: (total, injective, projective, simple, cyclic)
CLASS_COUNTS = {
    "F2": (3, 3, 3, 1, 2),
    "Z4": (6, 3, 3, 1, 3),
    "Z8": (10, 3, 3, 1, 4),
    "E2": (6, 3, 3, 1, 3),
    "R8": (27, 2, 3, 1, 6),
    "T2": (18, 6, 9, 2, 6),
    "K4": (32, 2, 2, 1, 7),
    "Q8bar": (27, 2, 3, 1, 6),
    "M2F2": (4, 4, 4, 1, 3),
}

# |E(R_R)| and the hull sizes of the simples
HULLS = {
    "F2": (2, [2]),
    "Z4": (4, [4]),
    "Z8": (8, [8]),
    "E2": (4, [4]),
    "R8": (64, [8]),
    "T2": (16, [2, 4]),
    "K4": (16, [16]),
    "M2F2": (16, [4]),
}


@pytest.mark.parametrize("name", sorted(CLASS_COUNTS))
def test_class_counts(name, cat):
    c = cat(name)
    assert (len(c), len(c.injective_ids), len(c.projective_ids), len(c.simple_ids), len(c.cyclic_ids)) == CLASS_COUNTS[name]


@pytest.mark.parametrize("name", sorted(HULLS))
def test_hull_sizes(name):
    R = builtin_ring(name)
    er, simples = HULLS[name]
    assert injective_hull(regular_module(R)).hull.size == er
    assert sorted(injective_hull(S).hull.size for S in simple_modules(R)) == simples


@pytest.mark.parametrize("name", ["Z4", "R8", "T2", "K4"])
def test_hull_is_injective_essential_extension(name, cat):
    for _, M in cat(name, 16):
        h = injective_hull(M)
        assert h.embedding.is_injective()
        assert is_injective(h.hull)
        assert is_essential(h.embedding.image(), h.hull)


def test_hull_bound_exceeded():
    M = regular_module(builtin_ring("R8"))
    with pytest.raises(BoundExceeded):
        injective_hull(M, seed=1, bound=8)


@pytest.mark.parametrize("name", ["Z4", "E2", "R8", "T2"])
def test_baer_matches_definitional_oracle(name, cat):
    ext = [C for _, C in cat(name) if C.size <= 32]
    for _, M in cat(name, 16):
        assert is_injective(M) == oracles.injective_by_definition(M, ext)


@pytest.mark.parametrize("name", ["F2", "Z4", "R8", "T2", "K4", "M2F2"])
def test_cogenerator_and_projectivity(name):
    R = builtin_ring(name)
    assert is_injective(injective_cogenerator(R))
    assert is_projective(regular_module(R))


@pytest.mark.parametrize("name", ["Z4", "R8", "T2", "K4"])
def test_double_dual(name, cat):
    for _, M in cat(name, 16):
        D = character_dual(M)
        assert D.size == M.size
        assert composition_length(D) == composition_length(M)
        DD = character_dual(D)
        assert DD.ring.digest == M.ring.digest
        assert are_isomorphic(DD, M)
