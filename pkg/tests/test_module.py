"""Modules, homs and lattices against values computed once by the element-level oracle."""

import numpy as np
import pytest

from finmod import (
    NotASubmodule,
    RingMismatch,
    are_isomorphic,
    builtin_ring,
    composition_length,
    direct_sum,
    free_module,
    hom_set,
    jacobson_radical,
    quotient,
    regular_module,
    simple_modules,
    submodules,
    zero_module,
)
from finmod.homs import identity

import oracles

# (submodules of R_R, composition length of R_R, |End(R_R)|, sizes of the simples)
REGULAR = {
    "F2": (2, 1, 2, [2]),
    "Z4": (3, 2, 4, [2]),
    "Z8": (4, 3, 8, [2]),
    "E2": (3, 2, 4, [2]),
    "R8": (6, 3, 8, [2]),
    "T2": (7, 3, 8, [2, 2]),
    "K4": (7, 4, 16, [2]),
    "Q8bar": (6, 3, 8, [2]),
    "M2F2": (5, 2, 16, [4]),
}


@pytest.mark.parametrize("name", sorted(REGULAR))
def test_regular_module_frozen_values(name):
    R = builtin_ring(name)
    RR = regular_module(R)
    n_sub, length, end, simples = REGULAR[name]
    assert len(submodules(RR)) == n_sub
    assert composition_length(RR) == length
    assert hom_set(RR, RR).size == end
    assert sorted(S.size for S in simple_modules(R)) == simples


def test_z4_plus_z2_lattice():
    Z4 = builtin_ring("Z4")
    M = direct_sum(regular_module(Z4), simple_modules(Z4)[0])
    assert M.size == 8
    assert len(submodules(M)) == 8


def test_small_hom_counts():
    Z4, R8 = builtin_ring("Z4"), builtin_ring("R8")
    assert hom_set(simple_modules(Z4)[0], regular_module(Z4)).size == 2
    k = simple_modules(R8)[0]
    assert hom_set(k, regular_module(R8)).size == 4
    assert hom_set(regular_module(R8), k).size == 2


@pytest.mark.parametrize("name", ["Z4", "E2", "T2"])
def test_hom_counts_match_oracle_live(name, cat):
    mods = [M for _, M in cat(name, 16)]
    for A in mods:
        for B in mods:
            assert hom_set(A, B).size == oracles.hom_count(A, B)


def test_jacobson_radical_r8():
    J = jacobson_radical(builtin_ring("R8"))
    assert J.size == 4
    RR = regular_module(builtin_ring("R8"))
    top = quotient(RR, J)[0]
    assert top.size == 2


def test_isomorphism_of_sum_orderings():
    R = builtin_ring("T2")
    S0, S1 = simple_modules(R)
    assert are_isomorphic(direct_sum(S0, S1), direct_sum(S1, S0))
    assert not are_isomorphic(S0, S1)


def test_elements_and_membership():
    F = free_module(builtin_ring("Z4"), 2)
    els = F.elements()
    assert len(els) == 16
    assert all(F.contains(x) for x in els)


def test_identity_is_iso_and_zero_module():
    M = regular_module(builtin_ring("E2"))
    assert identity(M).is_iso()
    Z = zero_module(builtin_ring("E2"))
    assert Z.size == 1 and hom_set(Z, M).size == 1


def test_ring_mismatch_rejected():
    with pytest.raises(RingMismatch):
        hom_set(regular_module(builtin_ring("Z4")), regular_module(builtin_ring("E2")))


def test_non_submodules_rejected():
    from finmod import Submodule

    T = regular_module(builtin_ring("T2"))
    # e00 alone is not a right ideal: e00 * e01 = e01
    with pytest.raises(NotASubmodule):
        Submodule(T, np.array([[1, 0, 0]]))
    R = builtin_ring("R8")
    top = quotient(regular_module(R), jacobson_radical(R))[0]
    with pytest.raises(NotASubmodule):
        Submodule(top, np.zeros((1, 3), dtype=np.int64))
