"""
Condition (Q) across the built-in rings
========================================

(Q) asks that every module be the image of an injective module. We print
the ring profiles, then compare K4 with its factor K4/(xy), and finally
compare F2 with the matrix ring M2(F2).
"""

import numpy as np

from finmod import build_catalog, builtin_ring, factor_ring, matrix_ring, ring_profile, satisfies_q
from finmod.paperlab import CORPUS
from finmod.ringprops import FLAG_ORDER

short = ["QF", "Kasch", "dKasch", "(Q)", "V-ring", "hered", "ss", "local", "chain"]
print(f"{'ring':8s}" + "".join(f"{s:>8s}" for s in short))
for name in CORPUS:
    R = builtin_ring(name)
    prof = ring_profile(R, build_catalog(R, 32, 2))
    print(f"{name:8s}" + "".join(f"{'yes' if prof.flags[k] else '-':>8s}" for k in FLAG_ORDER))

# K4 is Frobenius; killing the socle element xy gives back the local ring R8
K4 = builtin_ring("K4")
xy = np.array([[0, 0, 0, 1]])
K4_xy = factor_ring(K4, xy, name="K4/(xy)")
print("\nK4 satisfies (Q):", satisfies_q(K4, build_catalog(K4, 32, 2)))
print("K4/(xy) satisfies (Q):", satisfies_q(K4_xy, build_catalog(K4_xy, 32, 2)))
print("K4/(xy) has the same structure constants as R8:", K4_xy.digest == builtin_ring("R8").digest)

# a Morita spot check
F2 = builtin_ring("F2")
M2 = matrix_ring(F2, 2)
print("\n(Q) for F2:", satisfies_q(F2, build_catalog(F2, 64, 2)), "| for M2(F2):", satisfies_q(M2, build_catalog(M2, 64, 2)))
