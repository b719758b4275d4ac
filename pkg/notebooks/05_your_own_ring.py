"""
Bringing your own ring
======================

Rings are given by structure constants over Z/m: ``mult[i][j]`` is the
coordinate vector of e_i * e_j. Here we write Z/9 + Z/9 t with t^2 = 3 as a
JSON document, load it, and run the usual pipeline with a disk cache.
"""

import json
import tempfile

import numpy as np

from finmod import (
    cache_load,
    composition_length,
    dump_ring,
    injective_hull,
    is_qf,
    load_or_build,
    load_ring,
    regular_module,
    sier_verdict,
)

# basis (1, t); t * t = 3 * 1
mult = np.zeros((2, 2, 2), dtype=int)
mult[0, 0] = [1, 0]
mult[0, 1] = mult[1, 0] = [0, 1]
mult[1, 1] = [3, 0]
doc = {"name": "Z9[t]/(t^2-3)", "m": 9, "rank": 2, "unit": [1, 0], "mult": mult.tolist()}
R = load_ring(json.dumps(doc))
print(R, "| canonical form:", dump_ring(R)[:60], "...")

RR = regular_module(R)
print("length of R_R:", composition_length(RR), "| QF:", is_qf(R), "| |E(R)| =", injective_hull(RR).hull.size)

with tempfile.TemporaryDirectory() as tmp:
    cat = load_or_build(R, 81, 1, cache_dir=tmp)  # builds and stores
    again = cache_load(tmp, R, 81, 1)  # reloads without recomputation
    print(len(cat), "cyclic classes up to 81 elements; reloaded ids match:", again.ids == cat.ids)
    for cid, M in cat:
        print(f"  {cid:18s} size {M.size:3d}  si.e.r verdict: {sier_verdict(M, cat).kind}")
