"""
A local ring whose regular module is not si.e.r
===============================================

R8 = F2[u, v]/(u, v)^2 has eight elements, a unique maximal ideal J = (u, v)
and J^2 = 0. Its socle is J itself, which is two-dimensional, so R8 is not
self-injective. We check that it is still dual Kasch and then look for a short
exact sequence that breaks extension-closure of In(R).
"""

from finmod import (
    build_catalog,
    builtin_ring,
    injective_hull,
    is_dual_kasch,
    is_qf,
    is_subinjective,
    jacobson_radical,
    quotient,
    regular_module,
    sier_verdict,
)

R = builtin_ring("R8")
RR = regular_module(R)
J = jacobson_radical(R).module()
top, _ = quotient(RR, jacobson_radical(R))
print(R, "| J:", J.size, "elements | R/J:", top.size, "elements")

# the hull of R_R is two copies of the hull of the simple module
print("QF:", is_qf(R), "| dual Kasch:", is_dual_kasch(R), "| |E(R)| =", injective_hull(RR).hull.size)

# is_subinjective(X, Y) asks whether every map X -> Y extends along every extension of X
for name, Y in [("J", J), ("R/J", top), ("R", RR)]:
    print(f"R in InInv({name}):", is_subinjective(RR, Y))

# J and R/J lie in In(R) but their extension R does not. The catalog search finds this.
cat = build_catalog(R, 32, 2)
v = sier_verdict(RR, cat)
w = v.witness
print(v.kind, "at bound", v.bound, "| sizes (A, B, C) =", [w.A.size, w.B.size, w.C.size])
print("failing map R -> R, generator images:", w.hom.images.tolist())
print("witness re-verified from scratch:", v.verify())
